#ifndef BRALPHA_STABILITY_HPP
#define BRALPHA_STABILITY_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <optional>

#include "bralpha/kernels.hpp"
#include "bralpha/sheet.hpp"
#include "bralpha/trajectory.hpp"

namespace bralpha::stability {

using Complex = std::complex<double>;
using ComplexMatrix2 = std::array<std::array<Complex, 2>, 2>;
/// Fourier amplitudes (x2_hat, gamma_hat) of a perturbation of the flat sheet.
using ModeVector = std::array<Complex, 2>;

/// d(k) = (1 + 1/(alpha k)^2)^{-1/2} - 1, in (-1, 0) for k != 0.
double d_of_k(double k, double alpha);

/// |gamma0| |k| / 2, the unregularized Kelvin-Helmholtz rate.
double euler_growth_rate(double k, double gamma0);
/// (1/2) |gamma0| |k| (1 - (1 + 1/(alpha k)^2)^{-1/2}); 0 at k = 0.
double br_alpha_growth_rate(double k, double gamma0, double alpha);
/// (1/2) e^{-delta |k|} |gamma0| |k|.
double blob_growth_rate(double k, double gamma0, double delta);

/// Coefficient matrix of d/dt (x2_hat, gamma_hat):
///   [[0, (i/2) sgn(k) d(k)], [-i (gamma0^2/2) k^2 sgn(k) d(k), 0]].
ComplexMatrix2 mode_matrix(double k, double gamma0, double alpha);

struct Eigenpair {
  Complex value;
  /// Normalized to unit first component when possible.
  ModeVector vector;
};

/// Closed-form eigen-decomposition of a 2x2 matrix, larger real part first.
std::array<Eigenpair, 2> eigen_decompose(const ComplexMatrix2& m);

struct DispersionPoint {
  double k = 0.0;
  double gamma0 = 0.0;
  /// alpha for br_alpha, delta for blob, 0 for euler.
  double scale = 0.0;
  KernelKind kind = KernelKind::br_alpha;
  /// Only meaningful for br_alpha.
  std::optional<double> d_value;
  double lambda_plus = 0.0;
  /// Growing eigenvector (x2_hat, gamma_hat) where the mode matrix applies.
  std::optional<ModeVector> eigenvector;
};

DispersionPoint dispersion_point(KernelKind kind, double k, double gamma0, double scale);

struct FtIdentityCheck {
  /// 2 * int_0^inf dpsi_alpha(x) sin(k x) dx, i.e. the transform of
  /// sgn(x) dpsi_alpha(|x|) divided by -i.
  double numeric = 0.0;
  /// -(1/2) sgn(k) d(k), the value implied by (i/2) sgn(k) d(k).
  double exact = 0.0;
  double residual = 0.0;
  std::size_t evaluations = 0;
};

/// Evaluate the transform by adaptive Gauss-Kronrod quadrature: split at
/// x = alpha, half-period panels of the oscillation, and the analytic tail of
/// the 1/(2 pi x) far field once the Bessel part is negligible. Throws
/// quadrature::NonConvergence if a panel fails to converge.
FtIdentityCheck verify_ft_identity(double k, double alpha, double quadrature_tolerance = 1e-10);

/// Lagrangian form of the growing mode-matrix eigenvector: with nodes at
/// x(G) = ((G - G0)/gamma0 + xi(G), x2(G)), the density perturbation
/// gamma~ = -gamma0 d(xi)/dx, so xi_hat = i gamma_hat / (gamma0 k). Returns
/// xi_hat / x2_hat.
Complex seeded_displacement_ratio(double k, double gamma0, double alpha);

/// Growth rate of the linearization of the Lagrangian BR-alpha system about
/// the flat sheet when the horizontal velocity response is taken from the
/// kernel itself: lambda^2 = gamma0^2 |k| |d(k)| m(k) / 2 with
/// m(k) = |k|/2 - (sqrt(1 + (alpha k)^2) - 1) / (2 alpha).
/// This is the rate sheet_velocity reproduces; it differs from
/// br_alpha_growth_rate because there the horizontal response is
/// |k| |d(k)| / 2.
double lagrangian_growth_rate(double k, double gamma0, double alpha);
/// xi_hat / x2_hat of the growing eigenvector of that linearization.
double lagrangian_displacement_ratio(double k, double gamma0, double alpha);

/// Complex Fourier coefficient (2/N) sum_i x2_i e^{-2 pi i k i / N} of a
/// periodic sheet's vertical displacement, mode index k.
Complex x2_mode_amplitude(const VortexSheet& sheet, int mode);

struct GrowthFitWindow {
  double t_begin = 0.5;
  double t_end = 2.0;
  /// Amplitudes above linear_limit * L leave the linear regime.
  double linear_limit = 1e-3;
  /// Amplitudes below noise_floor * L are round-off, not a mode.
  double noise_floor = 1e-11;
};

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// max_i |A_i - exp(intercept + slope t_i)| / A_i.
  double max_relative_residual = 0.0;
  std::size_t samples = 0;
  /// True when every amplitude in the window was below the noise floor; the
  /// slope is then reported as 0.
  bool below_noise_floor = false;
};

/// Least-squares fit of log |A_k(t)| over the window. Throws
/// std::invalid_argument for non-periodic states, fewer than 3 samples, or an
/// amplitude that leaves the linear regime inside the window.
GrowthFit measure_growth_rate(const Trajectory& trajectory, int mode,
                              const GrowthFitWindow& window = {});

}  // namespace bralpha::stability

#endif  // BRALPHA_STABILITY_HPP
