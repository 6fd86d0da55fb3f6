#include "bralpha/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bralpha/quadrature.hpp"

namespace bralpha::stability {
namespace {

constexpr Complex imag_unit{0.0, 1.0};

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_nonzero_k(double k, const char* name) {
  if (k == 0.0 || !std::isfinite(k)) {
    throw std::domain_error(std::string(name) + ": k must be finite and non-zero");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0 && std::isfinite(v))) {
    throw std::domain_error(std::string(what) + " must be positive");
  }
}

// int_z^inf sin(t)/t dt = f(z) cos z + g(z) sin z with the auxiliary
// functions' asymptotic series; z >= 100 keeps the truncation far below 1e-16.
double sine_integral_tail(double z) {
  const double inv2 = 1.0 / (z * z);
  double f = 0.0;
  double g = 0.0;
  double term_f = 1.0;  // (2n)! / z^{2n}
  double term_g = 1.0;  // (2n+1)! / z^{2n}
  for (int n = 0; n < 8; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    f += sign * term_f;
    g += sign * term_g;
    term_f *= (2.0 * n + 1.0) * (2.0 * n + 2.0) * inv2;
    term_g *= (2.0 * n + 2.0) * (2.0 * n + 3.0) * inv2;
  }
  f /= z;
  g *= inv2;
  return f * std::cos(z) + g * std::sin(z);
}

}  // namespace

double d_of_k(double k, double alpha) {
  require_nonzero_k(k, "d_of_k");
  require_positive(alpha, "d_of_k: alpha");
  const double ak = alpha * k;
  return 1.0 / std::sqrt(1.0 + 1.0 / (ak * ak)) - 1.0;
}

double euler_growth_rate(double k, double gamma0) {
  return 0.5 * std::abs(gamma0) * std::abs(k);
}

double br_alpha_growth_rate(double k, double gamma0, double alpha) {
  require_positive(alpha, "br_alpha_growth_rate: alpha");
  if (k == 0.0) {
    return 0.0;
  }
  return 0.5 * std::abs(gamma0) * std::abs(k) * -d_of_k(k, alpha);
}

double blob_growth_rate(double k, double gamma0, double delta) {
  require_positive(delta, "blob_growth_rate: delta");
  return 0.5 * std::exp(-delta * std::abs(k)) * std::abs(gamma0) * std::abs(k);
}

ComplexMatrix2 mode_matrix(double k, double gamma0, double alpha) {
  const double d = d_of_k(k, alpha);
  const double s = sgn(k);
  ComplexMatrix2 m{};
  m[0][1] = 0.5 * imag_unit * s * d;
  m[1][0] = -imag_unit * (0.5 * gamma0 * gamma0) * k * k * s * d;
  return m;
}

std::array<Eigenpair, 2> eigen_decompose(const ComplexMatrix2& m) {
  const Complex tr = m[0][0] + m[1][1];
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Complex disc = std::sqrt(0.25 * tr * tr - det);
  std::array<Complex, 2> values{0.5 * tr + disc, 0.5 * tr - disc};
  if (values[1].real() > values[0].real()) {
    std::swap(values[0], values[1]);
  }
  std::array<Eigenpair, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const Complex lambda = values[i];
    ModeVector v;
    if (std::abs(m[0][1]) > 0.0) {
      v = {1.0, (lambda - m[0][0]) / m[0][1]};
    } else if (std::abs(m[1][0]) > 0.0) {
      v = {(lambda - m[1][1]) / m[1][0], 1.0};
    } else {
      v = i == 0 ? ModeVector{1.0, 0.0} : ModeVector{0.0, 1.0};
    }
    out[i] = {lambda, v};
  }
  return out;
}

DispersionPoint dispersion_point(KernelKind kind, double k, double gamma0, double scale) {
  DispersionPoint p;
  p.k = k;
  p.gamma0 = gamma0;
  p.kind = kind;
  switch (kind) {
    case KernelKind::euler:
      p.scale = 0.0;
      p.lambda_plus = euler_growth_rate(k, gamma0);
      if (k != 0.0) {
        // d = -1 in the alpha -> 0 limit of the same matrix.
        p.eigenvector = ModeVector{1.0, p.lambda_plus / (-0.5 * imag_unit * sgn(k))};
      }
      break;
    case KernelKind::br_alpha:
      p.scale = scale;
      p.lambda_plus = br_alpha_growth_rate(k, gamma0, scale);
      if (k != 0.0) {
        p.d_value = d_of_k(k, scale);
        p.eigenvector = eigen_decompose(mode_matrix(k, gamma0, scale))[0].vector;
      }
      break;
    case KernelKind::blob:
      p.scale = scale;
      p.lambda_plus = blob_growth_rate(k, gamma0, scale);
      break;
  }
  return p;
}

FtIdentityCheck verify_ft_identity(double k, double alpha, double quadrature_tolerance) {
  require_nonzero_k(k, "verify_ft_identity");
  require_positive(alpha, "verify_ft_identity: alpha");
  const double kk = std::abs(k);
  const double half_period = pi / kk;

  // Far field: past 50 alpha the Bessel term is below 1e-21 / alpha, so the
  // integrand is 1/(2 pi x) sin(k x) and its tail is a sine integral. End on
  // a multiple of the half period and at least 200/k out.
  const double reach = std::max(50.0 * alpha, 200.0 / kk);
  const auto panels = static_cast<std::size_t>(std::ceil(reach / half_period));
  const double x_end = static_cast<double>(panels) * half_period;

  std::vector<double> cuts;
  cuts.reserve(panels + 2);
  cuts.push_back(0.0);
  for (std::size_t p = 1; p <= panels; ++p) {
    const double c = static_cast<double>(p) * half_period;
    if (alpha > cuts.back() && alpha < c) {
      cuts.push_back(alpha);
    }
    cuts.push_back(c);
  }

  auto integrand = [&](double x) { return 2.0 * dpsi_alpha(x, alpha) * std::sin(kk * x); };
  quadrature::Tolerance tol;
  tol.absolute = std::max(quadrature_tolerance / static_cast<double>(cuts.size()), 1e-16);
  tol.relative = 1e-13;

  FtIdentityCheck out;
  double sum = 0.0;
  for (std::size_t c = 1; c < cuts.size(); ++c) {
    const auto r = quadrature::integrate(integrand, cuts[c - 1], cuts[c], tol);
    sum += r.value;
    out.evaluations += r.evaluations;
  }
  sum += sine_integral_tail(kk * x_end) / pi;

  out.numeric = sgn(k) * sum;
  out.exact = -0.5 * sgn(k) * d_of_k(k, alpha);
  out.residual = std::abs(out.numeric - out.exact);
  return out;
}

Complex seeded_displacement_ratio(double k, double gamma0, double alpha) {
  require_nonzero_k(k, "seeded_displacement_ratio");
  if (gamma0 == 0.0) {
    throw std::domain_error("seeded_displacement_ratio: gamma0 must be non-zero");
  }
  const ModeVector v = eigen_decompose(mode_matrix(k, gamma0, alpha))[0].vector;
  const Complex gamma_hat = v[1] / v[0];
  return imag_unit * gamma_hat / (gamma0 * k);
}

namespace {

double horizontal_response(double k, double alpha) {
  const double kk = std::abs(k);
  const double ak = alpha * kk;
  return 0.5 * kk - (std::sqrt(1.0 + ak * ak) - 1.0) / (2.0 * alpha);
}

}  // namespace

double lagrangian_growth_rate(double k, double gamma0, double alpha) {
  require_positive(alpha, "lagrangian_growth_rate: alpha");
  if (k == 0.0) {
    return 0.0;
  }
  const double d = -d_of_k(k, alpha);
  return std::abs(gamma0) * std::sqrt(0.5 * std::abs(k) * d * horizontal_response(k, alpha));
}

double lagrangian_displacement_ratio(double k, double gamma0, double alpha) {
  require_nonzero_k(k, "lagrangian_displacement_ratio");
  const double d = -d_of_k(k, alpha);
  const double lambda = lagrangian_growth_rate(k, gamma0, alpha);
  return -2.0 * lambda / (gamma0 * std::abs(k) * d);
}

Complex x2_mode_amplitude(const VortexSheet& sheet, int mode) {
  const auto x = sheet.nodes();
  const std::size_t n = x.size();
  const long kk = ((mode % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double phase =
        -2.0 * pi * static_cast<double>((static_cast<std::size_t>(kk) * i) % n) / static_cast<double>(n);
    acc += x[i].x2 * Complex(std::cos(phase), std::sin(phase));
  }
  return (2.0 / static_cast<double>(n)) * acc;
}

GrowthFit measure_growth_rate(const Trajectory& trajectory, int mode, const GrowthFitWindow& window) {
  if (!(window.t_end > window.t_begin)) {
    throw std::invalid_argument("measure_growth_rate: empty fit window");
  }
  std::vector<double> t;
  std::vector<double> amp;
  double period = 0.0;
  const double slack = 1e-9 * std::max(1.0, std::abs(window.t_end));
  for (std::size_t s = 0; s < trajectory.size(); ++s) {
    const double ts = trajectory.times[s];
    if (ts < window.t_begin - slack || ts > window.t_end + slack) {
      continue;
    }
    const auto& state = trajectory.states[s];
    if (state.topology() != Topology::periodic) {
      throw std::invalid_argument("measure_growth_rate: needs a periodic sheet");
    }
    period = state.period();
    t.push_back(ts);
    amp.push_back(std::abs(x2_mode_amplitude(state, mode)));
  }
  if (t.size() < 3) {
    throw std::invalid_argument("measure_growth_rate: fewer than 3 samples in the fit window");
  }

  GrowthFit fit;
  fit.samples = t.size();
  const double largest = *std::max_element(amp.begin(), amp.end());
  if (largest >= window.linear_limit * period) {
    throw std::invalid_argument("measure_growth_rate: amplitude left the linear regime in the window");
  }
  if (largest < window.noise_floor * period) {
    fit.below_noise_floor = true;
    return fit;
  }
  for (const double a : amp) {
    if (!(a > 0.0)) {
      throw std::invalid_argument("measure_growth_rate: zero amplitude inside the window");
    }
  }

  const double n = static_cast<double>(t.size());
  double st = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += std::log(amp[i]);
  }
  const double tm = st / n;
  const double ym = sy / n;
  double stt = 0.0;
  double sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (std::log(amp[i]) - ym);
  }
  fit.slope = sty / stt;
  fit.intercept = ym - fit.slope * tm;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double model = std::exp(fit.intercept + fit.slope * t[i]);
    fit.max_relative_residual = std::max(fit.max_relative_residual, std::abs(amp[i] - model) / amp[i]);
  }
  return fit;
}

}  // namespace bralpha::stability
