#ifndef BRALPHA_CONVERGENCE_HPP
#define BRALPHA_CONVERGENCE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "bralpha/evolve.hpp"

namespace bralpha {

struct ConvergenceLevel {
  /// Node count (spatial) or time step (temporal).
  double resolution = 0.0;
  /// Max-norm error of this level against the next finer one (spatial) or
  /// against the reference run (temporal).
  double error = 0.0;
  /// log2(error of the previous level / error of this level).
  std::optional<double> order;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  /// Smallest observed order; NaN when there are fewer than two levels.
  double min_order() const;
};

struct SpatialStudyConfig {
  double alpha = 0.2;
  double period = 2.0 * pi;
  double gamma0 = 1.0;
  int mode = 1;
  double eps = 0.05;
  std::vector<std::size_t> counts{64, 128, 256, 512};
  VelocityOptions velocity;
};

/// Velocity on a perturbed periodic sheet at N = counts[l]. Because every
/// count doubles the previous one, the coarse nodes are a subset of the fine
/// ones; the error of level l is max_i |u_l - u_{l+1}| over the coarse nodes,
/// so the last count only serves as reference.
ConvergenceStudy spatial_velocity_study(const SpatialStudyConfig& cfg);

struct TemporalStudyConfig {
  std::size_t n = 128;
  double alpha = 0.2;
  double period = 2.0 * pi;
  double gamma0 = 1.0;
  int mode = 1;
  double eps = 0.05;
  double t_end = 1.0;
  double dt_coarse = 0.1;
  std::size_t levels = 4;
  /// The reference run uses dt_finest / reference_refinement.
  std::size_t reference_refinement = 8;
  Method method = Method::rk4;
  VelocityOptions velocity;
};

/// Integrate the same perturbed sheet to t_end with dt = dt_coarse / 2^l and
/// compare the final nodes against a much finer reference run.
ConvergenceStudy temporal_study(const TemporalStudyConfig& cfg);

}  // namespace bralpha

#endif  // BRALPHA_CONVERGENCE_HPP
