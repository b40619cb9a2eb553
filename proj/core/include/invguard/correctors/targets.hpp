#ifndef INVGUARD_CORRECTORS_TARGETS_HPP
#define INVGUARD_CORRECTORS_TARGETS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace invguard::correctors {

struct L2RateTarget {
  enum class Mode { Clamp, Fixed, Tracked };
  Mode mode = Mode::Clamp;
  double rate = 0.0;

  static L2RateTarget clamp() { return {Mode::Clamp, 0.0}; }
  // Throws ArgumentError for a positive rate.
  static L2RateTarget fixed(double r);
  static L2RateTarget tracked(double r) { return {Mode::Tracked, r}; }

  double resolve(double old_rate) const;
};

// Piecewise-linear rate series read from a `t,rate` CSV; values outside the range are held constant.
class TrackedRateSeries {
public:
  TrackedRateSeries() = default;
  TrackedRateSeries(std::vector<double> t, std::vector<double> rate);

  static TrackedRateSeries read_csv(const std::string& path);
  static TrackedRateSeries parse_csv(std::istream& in, const std::string& origin = "<stream>");
  void write_csv(std::ostream& out) const;

  bool empty() const { return t_.empty(); }
  // Interpolated rate, not clamped.
  double raw(double t) const;
  // Interpolated rate clamped to <= 0, the form used by stability-enforcing runs.
  double at(double t) const;
  L2RateTarget target(double t) const { return L2RateTarget::tracked(at(t)); }

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& rates() const { return r_; }

private:
  std::vector<double> t_;
  std::vector<double> r_;
};

// Common return shape of the rate correctors.
template <class T>
struct Corrected {
  T value;
  double old_rate = 0.0;
  double new_rate = 0.0;
  bool applied = false;
  double coefficient = 0.0; // the scalar multiplying G (or the diffusion coefficient)
};

// |denominator| at or below this is treated as zero.
double degeneracy_threshold(std::span<const double> g, std::span<const double> d);

} // namespace invguard::correctors

#endif
