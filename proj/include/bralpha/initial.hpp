#ifndef BRALPHA_INITIAL_HPP
#define BRALPHA_INITIAL_HPP

#include <complex>
#include <cstddef>

#include "bralpha/sheet.hpp"

namespace bralpha {

/// Periodic flat sheet of strength gamma0 > 0: x(G) = (G/gamma0, 0) with
/// G in [0, gamma0 L).
VortexSheet make_flat_sheet(std::size_t n, double period, double gamma0);

/// Flat sheet plus one Fourier mode of wavenumber kappa = 2 pi mode / L:
///   x2(s) = eps cos(kappa s),  x1(s) = s + Re(xi_ratio eps e^{i kappa s}),
/// where s = G/gamma0 is the unperturbed position. A non-zero xi_ratio moves
/// nodes along the sheet, which perturbs the density 1/|x_G|.
VortexSheet make_perturbed_sheet(std::size_t n, double period, double gamma0, int mode, double eps,
                                 std::complex<double> xi_ratio = {0.0, 0.0});

/// Closed circle of radius r, uniform density gamma0 (total circulation
/// 2 pi r gamma0), nodes counter-clockwise from (r, 0).
VortexSheet make_circle_sheet(std::size_t n, double radius, double gamma0);

}  // namespace bralpha

#endif  // BRALPHA_INITIAL_HPP
