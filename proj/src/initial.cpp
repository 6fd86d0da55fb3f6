#include "bralpha/initial.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bralpha {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0 && std::isfinite(v))) {
    throw std::invalid_argument(std::string(what) + " must be positive");
  }
}

}  // namespace

VortexSheet make_flat_sheet(std::size_t n, double period, double gamma0) {
  return make_perturbed_sheet(n, period, gamma0, 0, 0.0);
}

VortexSheet make_perturbed_sheet(std::size_t n, double period, double gamma0, int mode, double eps,
                                 std::complex<double> xi_ratio) {
  require_positive(period, "initial condition: L");
  require_positive(gamma0, "initial condition: gamma0");
  std::vector<PlanarVector> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = period * static_cast<double>(i) / static_cast<double>(n);
    // Reduce the phase through the integer index so it is exact at i = 0.
    const double phase =
        2.0 * pi * static_cast<double>((static_cast<long>(i) * mode) % static_cast<long>(n)) /
        static_cast<double>(n);
    const std::complex<double> wave(std::cos(phase), std::sin(phase));
    nodes[i] = {s + eps * (xi_ratio * wave).real(), eps * wave.real()};
  }
  return VortexSheet(std::move(nodes), 0.0, gamma0 * period, Topology::periodic, period);
}

VortexSheet make_circle_sheet(std::size_t n, double radius, double gamma0) {
  require_positive(radius, "initial condition: radius");
  require_positive(gamma0, "initial condition: gamma0");
  std::vector<PlanarVector> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
    nodes[i] = {radius * std::cos(theta), radius * std::sin(theta)};
  }
  return VortexSheet(std::move(nodes), 0.0, 2.0 * pi * radius * gamma0, Topology::closed);
}

}  // namespace bralpha
