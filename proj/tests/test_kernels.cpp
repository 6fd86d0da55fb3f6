#include <cmath>
#include <random>
#include <stdexcept>

#include "bralpha/kernels.hpp"
#include "bralpha/specfun.hpp"
#include "doctest.h"

using namespace bralpha;

namespace {

constexpr double k0_at_1 = 0.42102443824070834;
constexpr double k1_at_1 = 0.6019072301972346;

PlanarVector euler_direct(PlanarVector d) {
  const double r2 = d.x1 * d.x1 + d.x2 * d.x2;
  return {-d.x2 / (2.0 * pi * r2), d.x1 / (2.0 * pi * r2)};
}

// Brute-force image sum of the free Euler kernel over |m| <= M, with the
// leading 1/m^2 tail of the pairs m, -m added analytically:
//   K(d + mL) + K(d - mL) ~ (1/(2 pi)) (-2 d2, -2 d1) / (m L)^2.
PlanarVector euler_image_sum(PlanarVector d, double period, int M) {
  PlanarVector sum = euler_direct(d);
  for (int m = M; m >= 1; --m) {
    sum += euler_direct({d.x1 + m * period, d.x2}) + euler_direct({d.x1 - m * period, d.x2});
  }
  // sum_{m > M} 1/m^2 = 1/M - 1/(2M^2) + 1/(6M^3) - ...
  const double tail = 1.0 / M - 0.5 / (double(M) * M) + 1.0 / (6.0 * double(M) * M * M);
  sum += (tail / (pi * period * period)) * PlanarVector{-d.x2, -d.x1};
  return sum;
}

PlanarVector br_alpha_image_sum(PlanarVector d, double period, double alpha, int M) {
  PlanarVector sum = euler_image_sum(d, period, M);
  // K^alpha = K - (x^perp / r) K1(r/alpha) / (2 pi alpha) away from 0.
  for (int m = -M; m <= M; ++m) {
    const PlanarVector x{d.x1 + m * period, d.x2};
    const double r = std::hypot(x.x1, x.x2);
    if (r / alpha > 700.0) continue;
    const double c = specfun::bessel_k1(r / alpha) / (2.0 * pi * alpha * r);
    sum -= c * PlanarVector{-x.x2, x.x1};
  }
  return sum;
}

}  // namespace

TEST_CASE("dpsi_alpha examples") {
  CHECK(std::abs(dpsi_alpha(40.0, 1.0) - 1.0 / (2.0 * pi * 40.0)) <= 1e-15 / (2.0 * pi * 40.0));
  const double expected = (1.0 - k1_at_1) / (2.0 * pi);
  CHECK(std::abs(dpsi_alpha(1.0, 1.0) - expected) < 1e-13);
  CHECK(std::abs(dpsi_alpha(1.0, 1.0) - 0.063358432123254121) < 1e-15);
  // Small r: ~ -(1/4pi)(r/alpha^2) log(r/alpha) -> 0 from above.
  const double r = 1e-8;
  CHECK(dpsi_alpha(r, 1.0) > 0.0);
  CHECK(dpsi_alpha(r, 1.0) < 1e-6);
  CHECK_THROWS_AS(dpsi_alpha(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dpsi_alpha(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(dpsi_alpha(1.0, 0.0), std::domain_error);
}

TEST_CASE("psi_alpha examples") {
  CHECK(std::abs(psi_alpha(1.0, 1.0) - k0_at_1 / (2.0 * pi)) < 1e-14);
  CHECK(std::abs(psi_alpha(1.0, 1.0) - 0.067008120508497137) < 1e-15);
  for (const double alpha : {0.1, 1.0, 3.0}) {
    const double limit = (std::log(alpha) + std::log(2.0) - specfun::euler_gamma) / (2.0 * pi);
    CHECK(std::abs(psi_alpha(1e-10 * alpha, alpha) - limit) < 1e-12);
  }
  const double r = 50.0;
  CHECK(std::abs(psi_alpha(r, 1.0) - std::log(r) / (2.0 * pi)) < 1e-20 * std::log(r));
  CHECK_THROWS_AS(psi_alpha(0.0, 1.0), std::domain_error);
}

TEST_CASE("psi_alpha differentiates to dpsi_alpha") {
  const double r = 0.7;
  const double alpha = 0.3;
  auto err = [&](double h) {
    const double fd = (psi_alpha(r + h, alpha) - psi_alpha(r - h, alpha)) / (2.0 * h);
    return std::abs(fd - dpsi_alpha(r, alpha));
  };
  CHECK(err(1e-4) < 1e-7);
  CHECK(std::log2(err(1e-2) / err(5e-3)) >= 1.9);
}

TEST_CASE("free kernel examples") {
  const auto br = KernelParams::br_alpha(1.0);
  CHECK(kernel_eval({0.0, 0.0}, br) == PlanarVector{0.0, 0.0});
  CHECK(kernel_eval({0.0, 0.0}, KernelParams::br_alpha(0.01)) == PlanarVector{0.0, 0.0});

  const PlanarVector k = kernel_eval({1.0, 0.0}, br);
  CHECK(k.x1 == 0.0);
  CHECK(std::abs(k.x2 - dpsi_alpha(1.0, 1.0)) < 1e-16);

  const double delta = 0.1;
  const PlanarVector b = kernel_eval({delta, 0.0}, KernelParams::blob(delta));
  CHECK(b.x1 == 0.0);
  CHECK(std::abs(b.x2 - 1.0 / (4.0 * pi * delta)) < 1e-14);
  CHECK(std::abs(b.x2 - 0.7957747) < 1e-7);

  CHECK_THROWS_AS(kernel_eval({0.0, 0.0}, KernelParams::euler()), std::domain_error);
  const PlanarVector e = kernel_eval({0.0, 2.0}, KernelParams::euler());
  CHECK(std::abs(e.x1 + 1.0 / (4.0 * pi)) < 1e-16);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(KernelParams::br_alpha(0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams::br_alpha(-1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams::blob(0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams::br_alpha(0.1, -2.0).validate(), std::invalid_argument);
  auto p = KernelParams::br_alpha(0.1);
  p.image_tail_threshold = 5.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  auto blob = KernelParams::blob(0.1);
  blob.period = 1.0;
  CHECK_THROWS_AS(blob.validate(), std::invalid_argument);
  CHECK_THROWS_AS(kernel_eval_periodic({0.1, 0.1}, KernelParams::br_alpha(0.1)), std::invalid_argument);
  CHECK(parse_kernel_kind("blob") == KernelKind::blob);
  CHECK(to_string(KernelKind::br_alpha) == "br_alpha");
  CHECK_THROWS_AS(parse_kernel_kind("vortex"), std::invalid_argument);
}

TEST_CASE("antisymmetry is exact for every kind, free and periodic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> scale(0.01, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const PlanarVector dx{coord(rng), coord(rng)};
    const double s = scale(rng);
    for (const auto& p : {KernelParams::br_alpha(s), KernelParams::blob(s), KernelParams::euler(),
                          KernelParams::br_alpha(s, 1.0 + 2.0 * s), KernelParams::euler(2.0)}) {
      const KernelEvaluator k(p);
      const PlanarVector a = k(dx);
      const PlanarVector b = k(-dx);
      REQUIRE(a.x1 == -b.x1);
      REQUIRE(a.x2 == -b.x2);
    }
  }
}

TEST_CASE("kernel is orthogonal to the separation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const PlanarVector dx{coord(rng), coord(rng)};
    for (const auto& p : {KernelParams::br_alpha(0.3), KernelParams::blob(0.3), KernelParams::euler()}) {
      const PlanarVector k = kernel_eval(dx, p);
      CHECK(std::abs(dot(k, dx)) <= 1e-15 * norm(k) * norm(dx));
    }
  }
}

TEST_CASE("alpha -> 0 recovers the Euler kernel") {
  const PlanarVector dx{0.6, -0.8};
  const PlanarVector e = kernel_eval(dx, KernelParams::euler());
  double prev = INFINITY;
  for (const double alpha : {0.5, 0.2, 0.1, 0.05, 0.02}) {
    const double diff = norm(kernel_eval(dx, KernelParams::br_alpha(alpha)) - e);
    CHECK(diff < prev);
    prev = diff;
  }
  const double alpha = norm(dx) / 50.0;
  CHECK(norm(kernel_eval(dx, KernelParams::br_alpha(alpha)) - e) <= 1e-18 * norm(e));
}

TEST_CASE("small-argument law with an O(|x|/alpha^2) remainder") {
  // K^alpha(x) = -(1/4pi)(1/alpha^2) x^perp log(|x|/alpha) + R, |R| = O(|x|/alpha^2).
  // From the series of K1 the remainder tends to (x^perp/alpha^2)(1 - 2 gamma + 2 log 2)/(8 pi).
  const double c_limit = (1.0 - 2.0 * specfun::euler_gamma + 2.0 * std::log(2.0)) / (8.0 * pi);
  for (const double alpha : {0.05, 1.0, 4.0}) {
    for (const double ratio : {1e-6, 1e-5, 1e-4, 1e-3}) {
      const double r = ratio * alpha;
      const PlanarVector dx{0.6 * r, 0.8 * r};
      const PlanarVector k = kernel_eval(dx, KernelParams::br_alpha(alpha));
      const PlanarVector lead = (-std::log(ratio) / (4.0 * pi * alpha * alpha)) * perp(dx);
      const double remainder = norm(k - lead) / (r / (alpha * alpha));
      CHECK(std::abs(remainder - c_limit) < 2e-5);
      // The leading term carries the kernel: its share of the error falls like 1/|log ratio|.
      CHECK(norm(k - lead) / norm(lead) <= 1.01 * c_limit * 4.0 * pi / -std::log(ratio));
    }
  }
}

TEST_CASE("periodic Euler kernel closed form") {
  for (const double L : {1.0, 2.0 * pi, 7.5}) {
    const PlanarVector k = kernel_eval_periodic({L / 4.0, 0.0}, KernelParams::euler(L));
    CHECK(std::abs(k.x1) < 1e-16);
    CHECK(std::abs(k.x2 - 1.0 / (2.0 * L)) < 1e-15 / L);
    const PlanarVector far = kernel_eval_periodic({0.3 * L, 50.0 * L}, KernelParams::euler(L));
    CHECK(std::abs(far.x1 + 1.0 / (2.0 * L)) < 1e-15 / L);
    CHECK(std::abs(far.x2) < 1e-15 / L);
    const PlanarVector below = kernel_eval_periodic({0.3 * L, -1e4 * L}, KernelParams::euler(L));
    CHECK(std::abs(below.x1 - 1.0 / (2.0 * L)) < 1e-15 / L);
    CHECK_THROWS_AS(kernel_eval_periodic({2.0 * L, 0.0}, KernelParams::euler(L)), std::domain_error);
  }
}

TEST_CASE("periodic kernels match brute-force image sums on a cell grid") {
  const double L = 2.0;
  double worst_euler = 0.0;
  double worst_br = 0.0;
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      const PlanarVector d{i * L / 8.0 + 0.013, j * 0.25 + 0.007};
      const PlanarVector e = kernel_eval_periodic(d, KernelParams::euler(L));
      worst_euler = std::max(worst_euler, norm(e - euler_image_sum(d, L, 2000)));
      for (const double alpha : {0.05, 0.3}) {
        const PlanarVector b = kernel_eval_periodic(d, KernelParams::br_alpha(alpha, L));
        worst_br = std::max(worst_br, norm(b - br_alpha_image_sum(d, L, alpha, 2000)));
      }
    }
  }
  CHECK(worst_euler < 1e-10);
  CHECK(worst_br < 1e-10);
  // Shifting by whole periods changes nothing.
  const auto p = KernelParams::br_alpha(0.3, L);
  const PlanarVector d{0.37, -0.21};
  CHECK(norm(kernel_eval_periodic(d, p) - kernel_eval_periodic({d.x1 + 3 * L, d.x2}, p)) < 1e-14);
}

TEST_CASE("periodic br_alpha is finite on the lattice and near it") {
  const auto p = KernelParams::br_alpha(0.2, 1.0);
  CHECK(kernel_eval_periodic({0.0, 0.0}, p) == PlanarVector{0.0, 0.0});
  const PlanarVector lattice = kernel_eval_periodic({1.0, 0.0}, p);
  CHECK(norm(lattice) < 1e-15);
  const PlanarVector near = kernel_eval_periodic({1e-9, 1e-9}, p);
  CHECK(is_finite(near));
  CHECK(norm(near) < 1e-6);
}

TEST_CASE("periodic br_alpha approaches periodic Euler when alpha << L") {
  const double L = 1.0;
  for (const double alpha : {0.05, 0.1}) {
    const PlanarVector d{0.0, L / 2.0};
    const double diff = norm(kernel_eval_periodic(d, KernelParams::br_alpha(alpha, L)) -
                             kernel_eval_periodic(d, KernelParams::euler(L)));
    CHECK(diff <= std::exp(-L / (2.0 * alpha)) / alpha);
  }
}
