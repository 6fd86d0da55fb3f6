#ifndef BRALPHA_SEPARATION_HPP
#define BRALPHA_SEPARATION_HPP

#include <cstddef>
#include <vector>

#include "bralpha/sheet.hpp"
#include "bralpha/trajectory.hpp"

namespace bralpha {

/// Lagrangian separation monitor. For pairs of markers closer than alpha the
/// log-Lipschitz velocity modulus gives
///   |x(G,t) - x(G',t)| / alpha >= r0^{e^{t C1}} e^{1 - e^{t C1}},
///   r0 = |x(G,0) - x(G',0)| / alpha,  C1 = C * mass / alpha^2.
/// The constant C has no known value; it is taken from configuration and the
/// check validates the functional form only.
struct SeparationBoundConfig {
  double constant_C = 1.0;
  /// Total vorticity mass; 0 selects the total circulation of the initial
  /// sheet (the mass of a single-signed sheet).
  double vorticity_mass = 0.0;
  std::size_t sample_pairs = 64;

  void validate() const;
};

struct TrackedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double initial_ratio = 0.0;
};

/// Distance between two nodes, modulo the period lattice for periodic sheets.
double node_distance(const VortexSheet& sheet, std::size_t i, std::size_t j);

/// Deterministically pick up to `count` node pairs with initial ratio
/// |x_i - x_j| / alpha < 1, evenly spaced through the candidate list.
std::vector<TrackedPair> select_tracked_pairs(const VortexSheet& initial, double alpha,
                                              std::size_t count);

/// Right-hand side of the lower bound, divided by alpha. Equals r0 at t = 0.
double separation_lower_bound(double initial_ratio, double time, double c1);

/// Minimum over pairs of observed ratio minus bound at one time.
double separation_margin(const VortexSheet& state, double time,
                         const std::vector<TrackedPair>& pairs, double alpha, double c1);

/// Minimum margin at every recorded time of the trajectory, pairs chosen from
/// its first state. Empty pairs give NaN entries.
std::vector<double> separation_bound_check(const Trajectory& traj,
                                           const SeparationBoundConfig& cfg, double alpha);

}  // namespace bralpha

#endif  // BRALPHA_SEPARATION_HPP
