#include "invguard/correctors/targets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "invguard/bracket.hpp"
#include "invguard/errors.hpp"

namespace invguard::correctors {

L2RateTarget L2RateTarget::fixed(double r) {
  if (!(r <= 0.0)) throw ArgumentError("fixed l2 rate target must be <= 0");
  return {Mode::Fixed, r};
}

double L2RateTarget::resolve(double old_rate) const {
  switch (mode) {
  case Mode::Clamp: return std::min(old_rate, 0.0);
  case Mode::Fixed:
  case Mode::Tracked: return rate;
  }
  return rate;
}

TrackedRateSeries::TrackedRateSeries(std::vector<double> t, std::vector<double> rate)
    : t_(std::move(t)), r_(std::move(rate)) {
  if (t_.size() != r_.size()) throw ArgumentError("TrackedRateSeries: t/rate size mismatch");
  if (t_.empty()) throw ArgumentError("TrackedRateSeries: empty series");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!std::isfinite(t_[i]) || !std::isfinite(r_[i])) throw ArgumentError("TrackedRateSeries: non-finite entry");
    if (i > 0 && !(t_[i] > t_[i - 1])) throw ArgumentError("TrackedRateSeries: times must be strictly increasing");
  }
}

TrackedRateSeries TrackedRateSeries::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open tracked-rate file " + path);
  return parse_csv(in, path);
}

TrackedRateSeries TrackedRateSeries::parse_csv(std::istream& in, const std::string& origin) {
  std::vector<double> t, r;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos) continue; // header
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw ArgumentError(origin + ":" + std::to_string(lineno) + ": expected `t,rate`");
    try {
      t.push_back(std::stod(a));
      r.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw ArgumentError(origin + ":" + std::to_string(lineno) + ": cannot parse numbers");
    }
  }
  try {
    return TrackedRateSeries(std::move(t), std::move(r));
  } catch (const ArgumentError& e) {
    throw ArgumentError(origin + ": " + e.what());
  }
}

void TrackedRateSeries::write_csv(std::ostream& out) const {
  out << "t,rate\n" << std::setprecision(17);
  for (std::size_t i = 0; i < t_.size(); ++i) out << t_[i] << ',' << r_[i] << '\n';
}

double TrackedRateSeries::raw(double t) const {
  if (t_.empty()) throw ArgumentError("TrackedRateSeries: empty series");
  if (t <= t_.front()) return r_.front();
  if (t >= t_.back()) return r_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - t_.begin());
  const double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
  return (1.0 - w) * r_[i - 1] + w * r_[i];
}

double TrackedRateSeries::at(double t) const { return std::min(raw(t), 0.0); }

double degeneracy_threshold(std::span<const double> g, std::span<const double> d) {
  return 1e-13 * norm2(g) * norm2(d);
}

} // namespace invguard::correctors
