#ifndef BRALPHA_SHEET_HPP
#define BRALPHA_SHEET_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bralpha/kernels.hpp"

namespace bralpha {

/// open: finite curve, nodes at Gamma_0 + i dGamma with i = 0..N-1,
///       dGamma = (Gamma_1 - Gamma_0)/(N-1).
/// periodic: x(Gamma + Gamma_1 - Gamma_0) = x(Gamma) + (L, 0); N nodes per
///       period, dGamma = (Gamma_1 - Gamma_0)/N.
/// closed: a closed curve, same as periodic with zero shift.
enum class Topology { open, periodic, closed };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view name);

/// A vortex sheet sampled at uniform circulation nodes. The vorticity
/// density 1/|x_Gamma| is derived from the node positions, never stored.
class VortexSheet {
 public:
  /// Throws std::invalid_argument on: N < 2 (open) or N < 4 (periodic,
  /// closed), gamma_end <= gamma_start, non-finite coordinates, or a
  /// non-positive period for the periodic topology.
  VortexSheet(std::vector<PlanarVector> nodes, double gamma_start, double gamma_end,
              Topology topology, double period = 0.0);

  std::span<const PlanarVector> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double gamma_start() const { return gamma_start_; }
  double gamma_end() const { return gamma_end_; }
  double total_circulation() const { return gamma_end_ - gamma_start_; }
  Topology topology() const { return topology_; }
  /// 0 unless periodic.
  double period() const { return period_; }
  bool wraps() const { return topology_ != Topology::open; }

  /// Circulation spacing dGamma between neighbouring nodes.
  double spacing() const;
  double gamma_at(std::size_t i) const;
  /// Translation between consecutive periods of the node sequence.
  PlanarVector wrap_shift() const;
  /// Node i for any integer i on wrapping topologies (unwrapped lift).
  PlanarVector node(long i) const;
  /// Trapezoidal circulation weights.
  std::vector<double> weights() const;

  /// Same circulation data, new node positions (same count).
  VortexSheet with_nodes(std::vector<PlanarVector> nodes) const;

 private:
  std::vector<PlanarVector> nodes_;
  double gamma_start_;
  double gamma_end_;
  Topology topology_;
  double period_;
};

using VelocityField = std::vector<PlanarVector>;

struct VelocityOptions {
  /// 1 = serial pairwise loop using kernel antisymmetry; n > 1 splits target
  /// rows over n threads; 0 picks the hardware concurrency.
  unsigned threads = 1;
};

/// u_i = sum_j w_j K(x_i - x_j) with trapezoidal circulation weights and the
/// diagonal term K(0) = 0. Requires a br_alpha or blob kernel; the kernel
/// must carry the sheet's period iff the sheet is periodic.
VelocityField sheet_velocity(const VortexSheet& sheet, const KernelParams& params,
                             const VelocityOptions& options = {});

/// Discrete chord-arc constant: min over node pairs of |x_i - x_j| / |Gamma_i - Gamma_j|.
/// Wrapping topologies use the circulation distance on the circle and the
/// spatial distance modulo the period lattice.
double chord_arc(const VortexSheet& sheet);

/// Interpolate onto new_count uniform circulation nodes: trigonometric
/// interpolation of the periodic part for wrapping topologies, natural cubic
/// splines in Gamma for open sheets. Throws for new_count < 4.
VortexSheet resample(const VortexSheet& sheet, std::size_t new_count);

/// x_Gamma at every node: 4th-order central differences in the interior,
/// 2nd-order one-sided at open endpoints.
std::vector<PlanarVector> tangent(const VortexSheet& sheet);
/// x_GammaGamma at every node, same stencil orders as tangent().
std::vector<PlanarVector> second_derivative(const VortexSheet& sheet);
/// gamma_i = 1 / |x_Gamma|_i.
std::vector<double> density(const VortexSheet& sheet);

/// Circulation-weighted centroid sum_i w_i x_i / sum_i w_i.
PlanarVector centroid(const VortexSheet& sheet);

}  // namespace bralpha

#endif  // BRALPHA_SHEET_HPP
