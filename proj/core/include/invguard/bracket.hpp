#ifndef INVGUARD_BRACKET_HPP
#define INVGUARD_BRACKET_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "invguard/fields.hpp"

namespace invguard {

// <a|b> = sum_j a_j b_j |Omega_j|
double bracket(std::span<const double> a, std::span<const double> b, std::span<const double> volumes);
// Same with one shared cell volume (uniform 1D or 2D grids).
double bracket(std::span<const double> a, std::span<const double> b, double volume);

// Volume-weighted mean <a|1>/<1|1>.
double mean(std::span<const double> a, std::span<const double> volumes);
double mean(std::span<const double> a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

FvField1D coarse_grain(const FvField1D& fine, std::size_t factor);
FvField2D coarse_grain(const FvField2D& fine, std::size_t factor);

} // namespace invguard

#endif
