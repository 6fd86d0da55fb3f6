#include "bralpha/kernels.hpp"

#include <stdexcept>
#include <string>

#include "bralpha/specfun.hpp"

namespace bralpha {
namespace {

constexpr double inv_two_pi = 1.0 / (2.0 * pi);

// Below this |pi z / L| the regular part of the cotangent kernel is summed
// from its odd Taylor series instead of by subtraction.
constexpr double cot_series_radius = 0.05;

void require_positive_distance(double r, const char* name) {
  if (!(r > 0.0)) {
    throw std::domain_error(std::string(name) + ": r must be positive, got " + std::to_string(r));
  }
}

void require_positive_alpha(double alpha, const char* name) {
  if (!(alpha > 0.0)) {
    throw std::domain_error(std::string(name) + ": alpha must be positive, got " +
                            std::to_string(alpha));
  }
}

PlanarVector euler_free(PlanarVector dx) {
  const double r2 = dot(dx, dx);
  return (inv_two_pi / r2) * perp(dx);
}

PlanarVector br_alpha_free(PlanarVector dx, double alpha) {
  const double r = norm(dx);
  if (r == 0.0) {
    return {0.0, 0.0};
  }
  // (x^perp / r) dpsi(r), with dpsi = (1/(2 pi alpha)) (alpha/r - K1(r/alpha)).
  const double dpsi = inv_two_pi / alpha * specfun::bessel_k1_regular(r / alpha);
  return (dpsi / r) * perp(dx);
}

PlanarVector blob_free(PlanarVector dx, double delta) {
  return (inv_two_pi / (dot(dx, dx) + delta * delta)) * perp(dx);
}

// Sum over m of the free Euler kernel at dx + (mL, 0), for dx not on the
// lattice: (1/2L) (-sinh a, sin b) / (cosh a - cos b), a = 2 pi x2/L,
// b = 2 pi x1/L. Written in terms of e = exp(-|a|) so that it neither
// overflows for large |x2| nor cancels near the origin:
//   cosh a - cos b = ((1 - e)^2 + 4 e sin^2(b/2)) / (2e)
//   sinh a        = sign(a) (1 - e^2) / (2e)
PlanarVector euler_periodic(PlanarVector dx, double period) {
  const double a = 2.0 * pi * dx.x2 / period;
  const double b = 2.0 * pi * dx.x1 / period;
  const double abs_a = std::abs(a);
  const double one_minus_e = -std::expm1(-abs_a);
  const double e = 1.0 - one_minus_e;
  const double s = std::sin(0.5 * b);
  const double c = std::cos(0.5 * b);
  const double denom = one_minus_e * one_minus_e + 4.0 * e * s * s;
  const double one_minus_e2 = one_minus_e * (1.0 + e);
  const double sign_a = a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
  return {-sign_a * one_minus_e2 / (2.0 * period * denom), 2.0 * e * s * c / (period * denom)};
}

// Periodic Euler kernel minus the free Euler kernel of the m = 0 image,
// evaluated at the reduced separation (|x1| <= L/2). Smooth and odd, zero at
// the origin. With w = pi z / L the complex velocity u - i v of the
// difference is (1/(2iL)) (cot w - 1/w).
PlanarVector euler_periodic_regular(PlanarVector dx, double period) {
  const double wr = pi * dx.x1 / period;
  const double wi = pi * dx.x2 / period;
  if (wr * wr + wi * wi < cot_series_radius * cot_series_radius) {
    // cot w - 1/w = -w/3 - w^3/45 - 2 w^5/945 - w^7/4725 - ...
    const double w2r = wr * wr - wi * wi;
    const double w2i = 2.0 * wr * wi;
    // Horner in w^2 on the coefficients, then multiply by w.
    double pr = -1.0 / 4725.0;
    double pi_ = 0.0;
    for (const double c : {-2.0 / 945.0, -1.0 / 45.0, -1.0 / 3.0}) {
      const double nr = pr * w2r - pi_ * w2i + c;
      const double ni = pr * w2i + pi_ * w2r;
      pr = nr;
      pi_ = ni;
    }
    const double sr = pr * wr - pi_ * wi;
    const double si = pr * wi + pi_ * wr;
    // u - i v = -i s / (2L)  =>  u = Im(s)/(2L), v = Re(s)/(2L).
    return {si / (2.0 * period), sr / (2.0 * period)};
  }
  return euler_periodic(dx, period) - euler_free(dx);
}

// Bessel correction of one image: (x^perp / r) K1(r/alpha) / (2 pi alpha).
PlanarVector bessel_correction(PlanarVector dx, double alpha) {
  const double r = norm(dx);
  const double k1 = specfun::bessel_k1(r / alpha);
  return (inv_two_pi / alpha * k1 / r) * perp(dx);
}

double reduce_to_cell(double x1, double period) {
  return x1 - period * std::round(x1 / period);
}

PlanarVector periodic_unchecked(PlanarVector dx, const KernelParams& p) {
  const double period = *p.period;
  const PlanarVector reduced{reduce_to_cell(dx.x1, period), dx.x2};

  if (p.kind == KernelKind::euler) {
    if (reduced.x1 == 0.0 && reduced.x2 == 0.0) {
      throw std::domain_error("kernel_eval_periodic: euler kernel is singular on the lattice");
    }
    return euler_periodic(reduced, period);
  }

  // br_alpha: regular part of the Euler image sum, plus the exact free
  // kernel of the nearest image, minus Bessel corrections of the others.
  PlanarVector out = euler_periodic_regular(reduced, period) + br_alpha_free(reduced, p.alpha);
  const double reach = p.image_tail_threshold * p.alpha;
  PlanarVector correction{0.0, 0.0};
  for (int m = 1;; ++m) {
    const PlanarVector right{reduced.x1 + m * period, reduced.x2};
    const PlanarVector left{reduced.x1 - m * period, reduced.x2};
    const double r_right = norm(right);
    const double r_left = norm(left);
    if (r_right > reach && r_left > reach) {
      break;
    }
    // Pairs are summed symmetrically so that -dx gives exactly the negation.
    PlanarVector pair{0.0, 0.0};
    if (r_right <= reach) {
      pair += bessel_correction(right, p.alpha);
    }
    if (r_left <= reach) {
      pair += bessel_correction(left, p.alpha);
    }
    correction += pair;
  }
  return out - correction;
}

PlanarVector free_unchecked(PlanarVector dx, const KernelParams& p) {
  switch (p.kind) {
    case KernelKind::euler:
      if (dx.x1 == 0.0 && dx.x2 == 0.0) {
        throw std::domain_error("kernel_eval: euler kernel is singular at dx = 0");
      }
      return euler_free(dx);
    case KernelKind::br_alpha:
      return br_alpha_free(dx, p.alpha);
    case KernelKind::blob:
      return blob_free(dx, p.delta);
  }
  return {0.0, 0.0};
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::euler:
      return "euler";
    case KernelKind::br_alpha:
      return "br_alpha";
    case KernelKind::blob:
      return "blob";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "euler") return KernelKind::euler;
  if (name == "br_alpha") return KernelKind::br_alpha;
  if (name == "blob") return KernelKind::blob;
  throw std::invalid_argument("unknown kernel kind '" + std::string(name) +
                              "' (expected euler, br_alpha or blob)");
}

KernelParams KernelParams::euler(std::optional<double> period) {
  KernelParams p;
  p.kind = KernelKind::euler;
  p.period = period;
  return p;
}

KernelParams KernelParams::br_alpha(double alpha, std::optional<double> period) {
  KernelParams p;
  p.kind = KernelKind::br_alpha;
  p.alpha = alpha;
  p.period = period;
  return p;
}

KernelParams KernelParams::blob(double delta) {
  KernelParams p;
  p.kind = KernelKind::blob;
  p.delta = delta;
  return p;
}

void KernelParams::validate() const {
  if (kind == KernelKind::br_alpha && !(alpha > 0.0 && std::isfinite(alpha))) {
    throw std::invalid_argument("kernel: alpha must be positive for br_alpha");
  }
  if (kind == KernelKind::blob && !(delta > 0.0 && std::isfinite(delta))) {
    throw std::invalid_argument("kernel: delta must be positive for blob");
  }
  if (period && !(*period > 0.0 && std::isfinite(*period))) {
    throw std::invalid_argument("kernel: period must be positive");
  }
  if (period && kind == KernelKind::blob) {
    throw std::invalid_argument("kernel: periodic summation is available for euler and br_alpha only");
  }
  if (!(image_tail_threshold >= 10.0)) {
    throw std::invalid_argument("kernel: image_tail_threshold must be at least 10");
  }
}

double psi_alpha(double r, double alpha) {
  require_positive_distance(r, "psi_alpha");
  require_positive_alpha(alpha, "psi_alpha");
  // K0(r/alpha) + log r = [K0(z) + log z] + log alpha.
  return inv_two_pi * (specfun::bessel_k0_plus_log(r / alpha) + std::log(alpha));
}

double dpsi_alpha(double r, double alpha) {
  require_positive_distance(r, "dpsi_alpha");
  require_positive_alpha(alpha, "dpsi_alpha");
  return inv_two_pi / alpha * specfun::bessel_k1_regular(r / alpha);
}

PlanarVector kernel_eval(PlanarVector dx, const KernelParams& params) {
  params.validate();
  return free_unchecked(dx, params);
}

PlanarVector kernel_eval_periodic(PlanarVector dx, const KernelParams& params) {
  params.validate();
  if (!params.period) {
    throw std::invalid_argument("kernel_eval_periodic: params carry no period");
  }
  if (params.kind == KernelKind::blob) {
    throw std::invalid_argument("kernel_eval_periodic: blob kernel is free-space only");
  }
  return periodic_unchecked(dx, params);
}

KernelEvaluator::KernelEvaluator(KernelParams params) : params_(std::move(params)) {
  params_.validate();
}

PlanarVector KernelEvaluator::operator()(PlanarVector dx) const {
  return params_.period ? periodic_unchecked(dx, params_) : free_unchecked(dx, params_);
}

}  // namespace bralpha
