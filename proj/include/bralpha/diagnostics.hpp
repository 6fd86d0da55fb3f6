#ifndef BRALPHA_DIAGNOSTICS_HPP
#define BRALPHA_DIAGNOSTICS_HPP

#include <limits>
#include <span>
#include <vector>

#include "bralpha/sheet.hpp"

namespace bralpha {

struct DiagnosticsRecord {
  double time = 0.0;
  double chord_arc_value = 0.0;
  double holder_seminorm_xgamma = 0.0;
  double sup_xgamma = 0.0;
  double max_curvature = 0.0;
  double min_density = 0.0;
  double max_density = 0.0;
  PlanarVector centroid;
  /// Minimum over tracked pairs of (observed ratio - lower bound); NaN when
  /// no pair is tracked.
  double separation_bound_margin = std::numeric_limits<double>::quiet_NaN();
};

/// Exact discrete Holder semi-norm max_{i<j} |v_i - v_j| / |Gamma_i - Gamma_j|^beta
/// for samples at uniform circulation spacing. With circle_total > 0 the
/// circulation distance is taken on a circle of that length.
double holder_seminorm(std::span<const double> values, double beta, double spacing,
                       double circle_total = 0.0);
double holder_seminorm(std::span<const PlanarVector> values, double beta, double spacing,
                       double circle_total = 0.0);

/// kappa_i = |x_G x x_GG| / |x_G|^3. Requires N >= 8 and a positive
/// chord-arc constant.
std::vector<double> curvature(const VortexSheet& sheet);

/// phi(r) = 0 at r = 0, r (1 - log r) on (0, 1), 1 for r >= 1.
double phi_comparison(double r);

/// Every monitor except the separation margin, which needs the history.
DiagnosticsRecord compute_diagnostics(const VortexSheet& sheet, double time, double beta);

}  // namespace bralpha

#endif  // BRALPHA_DIAGNOSTICS_HPP
