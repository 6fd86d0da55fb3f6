#include "bralpha/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bralpha {
namespace {

template <class T, class Dist>
double holder_impl(std::span<const T> values, double beta, double spacing, double circle_total,
                   Dist&& distance) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("holder_seminorm: beta must lie in (0, 1)");
  }
  if (values.size() < 2) {
    throw std::invalid_argument("holder_seminorm: need at least two values");
  }
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("holder_seminorm: spacing must be positive");
  }
  const std::size_t n = values.size();
  // |dGamma|^beta only depends on the index offset.
  std::vector<double> scale(n);
  for (std::size_t s = 1; s < n; ++s) {
    double d = static_cast<double>(s) * spacing;
    if (circle_total > 0.0) {
      d = std::min(d, circle_total - d);
    }
    scale[s] = 1.0 / std::pow(d, beta);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      best = std::max(best, distance(values[i], values[j]) * scale[j - i]);
    }
  }
  return best;
}

std::vector<double> curvature_unchecked(const VortexSheet& sheet,
                                        const std::vector<PlanarVector>& t) {
  const auto tt = second_derivative(sheet);
  std::vector<double> k(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double speed = norm(t[i]);
    if (!(speed > 0.0)) {
      throw std::domain_error("curvature: |x_Gamma| vanishes at node " + std::to_string(i));
    }
    k[i] = std::abs(cross(t[i], tt[i])) / (speed * speed * speed);
  }
  return k;
}

}  // namespace

double holder_seminorm(std::span<const double> values, double beta, double spacing,
                       double circle_total) {
  return holder_impl(values, beta, spacing, circle_total,
                     [](double a, double b) { return std::abs(a - b); });
}

double holder_seminorm(std::span<const PlanarVector> values, double beta, double spacing,
                       double circle_total) {
  return holder_impl(values, beta, spacing, circle_total,
                     [](PlanarVector a, PlanarVector b) { return norm(a - b); });
}

std::vector<double> curvature(const VortexSheet& sheet) {
  if (sheet.size() < 8) {
    throw std::invalid_argument("curvature: need at least 8 nodes");
  }
  if (!(chord_arc(sheet) > 0.0)) {
    throw std::domain_error("curvature: sheet has zero chord-arc constant");
  }
  return curvature_unchecked(sheet, tangent(sheet));
}

double phi_comparison(double r) {
  if (!(r >= 0.0)) {
    throw std::domain_error("phi_comparison: r must be non-negative");
  }
  if (r == 0.0) {
    return 0.0;
  }
  if (r >= 1.0) {
    return 1.0;
  }
  return r * (1.0 - std::log(r));
}

DiagnosticsRecord compute_diagnostics(const VortexSheet& sheet, double time, double beta) {
  DiagnosticsRecord rec;
  rec.time = time;
  rec.chord_arc_value = chord_arc(sheet);
  rec.centroid = centroid(sheet);

  const auto t = tangent(sheet);
  const double circle = sheet.wraps() ? sheet.total_circulation() : 0.0;
  rec.holder_seminorm_xgamma = holder_seminorm(std::span<const PlanarVector>(t), beta,
                                               sheet.spacing(), circle);
  double sup = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  for (const auto& v : t) {
    const double s = norm(v);
    sup = std::max(sup, s);
    min_speed = std::min(min_speed, s);
  }
  rec.sup_xgamma = sup;
  rec.max_density = 1.0 / min_speed;
  rec.min_density = 1.0 / sup;

  if (sheet.size() >= 8 && rec.chord_arc_value > 0.0) {
    const auto k = curvature_unchecked(sheet, t);
    rec.max_curvature = *std::max_element(k.begin(), k.end());
  } else {
    rec.max_curvature = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

}  // namespace bralpha
