#include "bralpha/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bralpha {

void SeparationBoundConfig::validate() const {
  if (!(constant_C > 0.0)) {
    throw std::invalid_argument("separation: constant_C must be positive");
  }
  if (!(vorticity_mass >= 0.0)) {
    throw std::invalid_argument("separation: vorticity_mass must be non-negative");
  }
}

double node_distance(const VortexSheet& sheet, std::size_t i, std::size_t j) {
  PlanarVector d = sheet.nodes()[i] - sheet.nodes()[j];
  if (sheet.topology() == Topology::periodic) {
    d.x1 -= sheet.period() * std::round(d.x1 / sheet.period());
  }
  return norm(d);
}

std::vector<TrackedPair> select_tracked_pairs(const VortexSheet& initial, double alpha,
                                              std::size_t count) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("select_tracked_pairs: alpha must be positive");
  }
  std::vector<TrackedPair> candidates;
  const std::size_t n = initial.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ratio = node_distance(initial, i, j) / alpha;
      if (ratio < 1.0 && ratio > 0.0) {
        candidates.push_back({i, j, ratio});
      }
    }
  }
  if (candidates.size() <= count) {
    return candidates;
  }
  std::vector<TrackedPair> picked;
  picked.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    picked.push_back(candidates[p * candidates.size() / count]);
  }
  return picked;
}

double separation_lower_bound(double initial_ratio, double time, double c1) {
  const double g = std::exp(time * c1);
  // pow(r0, 1) * exp(0) is exact, so the margin at t = 0 is exactly zero.
  return std::pow(initial_ratio, g) * std::exp(1.0 - g);
}

double separation_margin(const VortexSheet& state, double time,
                         const std::vector<TrackedPair>& pairs, double alpha, double c1) {
  double margin = std::numeric_limits<double>::quiet_NaN();
  for (const auto& p : pairs) {
    const double ratio = node_distance(state, p.i, p.j) / alpha;
    const double m = ratio - separation_lower_bound(p.initial_ratio, time, c1);
    margin = std::isnan(margin) ? m : std::min(margin, m);
  }
  return margin;
}

std::vector<double> separation_bound_check(const Trajectory& traj,
                                           const SeparationBoundConfig& cfg, double alpha) {
  cfg.validate();
  std::vector<double> out;
  if (traj.states.empty()) {
    return out;
  }
  const auto pairs = select_tracked_pairs(traj.states.front(), alpha, cfg.sample_pairs);
  const double mass =
      cfg.vorticity_mass > 0.0 ? cfg.vorticity_mass : traj.states.front().total_circulation();
  const double c1 = cfg.constant_C * mass / (alpha * alpha);
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out.push_back(separation_margin(traj.states[k], traj.times[k] - traj.times.front(), pairs,
                                    alpha, c1));
  }
  return out;
}

}  // namespace bralpha
