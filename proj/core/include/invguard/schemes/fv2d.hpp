#ifndef INVGUARD_SCHEMES_FV2D_HPP
#define INVGUARD_SCHEMES_FV2D_HPP

#include <span>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/grid.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::schemes {

// fx[idx(i,j)] lives on the face (i+1/2, j); fy[idx(i,j)] on (i, j+1/2). Periodic only.
struct Fluxes2D {
  std::vector<double> fx;
  std::vector<double> fy;
};

// Face-normal velocities with the same layout as Fluxes2D.
struct FaceVelocities {
  std::vector<double> ux;
  std::vector<double> uy;
};

std::vector<double> fv_rhs_2d(const Fluxes2D& fluxes, const UniformGrid2D& grid);

// u = (psi_y, -psi_x) from corner values of the streamfunction; corners are the average of the
// four surrounding cell averages. The result is exactly divergence-free cell by cell.
FaceVelocities face_velocities(std::span<const double> psi_bar, const UniformGrid2D& grid);

std::vector<double> velocity_divergence(const FaceVelocities& v, const UniformGrid2D& grid);

// Upwind, Centered or MusclMc transport of chi by divergence-free face velocities.
Fluxes2D advective_fluxes_2d(const FvField2D& chi, const FaceVelocities& vel, FluxScheme scheme);

// Standard 5-point Laplacian.
std::vector<double> laplacian_5pt(std::span<const double> u, const UniformGrid2D& grid);

} // namespace invguard::schemes

#endif
