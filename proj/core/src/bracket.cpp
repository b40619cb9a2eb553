#include "invguard/bracket.hpp"

#include <cmath>

#include "invguard/errors.hpp"

namespace invguard {

double bracket(std::span<const double> a, std::span<const double> b, std::span<const double> volumes) {
  if (a.size() != b.size() || a.size() != volumes.size())
    throw ArgumentError("bracket: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j] * volumes[j];
  return s;
}

double bracket(std::span<const double> a, std::span<const double> b, double volume) {
  if (a.size() != b.size()) throw ArgumentError("bracket: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s * volume;
}

double mean(std::span<const double> a, std::span<const double> volumes) {
  if (a.size() != volumes.size()) throw ArgumentError("mean: length mismatch");
  double s = 0.0, w = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    s += a[j] * volumes[j];
    w += volumes[j];
  }
  return s / w;
}

double mean(std::span<const double> a) {
  if (a.empty()) throw ArgumentError("mean: empty input");
  double s = 0.0;
  for (double v : a) s += v;
  return s / static_cast<double>(a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

FvField1D coarse_grain(const FvField1D& fine, std::size_t factor) {
  const std::size_t n = fine.size();
  if (factor == 0 || n % factor != 0) throw ArgumentError("coarse_grain: size not divisible by factor");
  const std::size_t nc = n / factor;
  std::vector<double> vol(nc, 0.0), val(nc, 0.0);
  for (std::size_t c = 0; c < nc; ++c) {
    double m = 0.0, w = 0.0;
    for (std::size_t q = 0; q < factor; ++q) {
      std::size_t j = c * factor + q;
      m += fine[j] * fine.grid.dx(j);
      w += fine.grid.dx(j);
    }
    vol[c] = w;
    val[c] = m / w;
  }
  if (nc < 2) throw ArgumentError("coarse_grain: result would have fewer than 2 cells");
  if (fine.grid.uniform())
    return FvField1D(UniformGrid1D(nc, fine.grid.length(), fine.grid.boundary()), std::move(val));
  return FvField1D(UniformGrid1D(std::move(vol), fine.grid.boundary()), std::move(val));
}

FvField2D coarse_grain(const FvField2D& fine, std::size_t factor) {
  const auto& g = fine.grid;
  if (factor == 0 || g.nx() % factor != 0 || g.ny() % factor != 0)
    throw ArgumentError("coarse_grain: size not divisible by factor");
  UniformGrid2D cg(g.nx() / factor, g.ny() / factor, g.lx(), g.ly());
  FvField2D out(cg);
  const double inv = 1.0 / static_cast<double>(factor * factor);
  for (std::size_t j = 0; j < cg.ny(); ++j)
    for (std::size_t i = 0; i < cg.nx(); ++i) {
      double s = 0.0;
      for (std::size_t q = 0; q < factor; ++q)
        for (std::size_t r = 0; r < factor; ++r) s += fine(i * factor + r, j * factor + q);
      out(i, j) = s * inv;
    }
  return out;
}

} // namespace invguard
