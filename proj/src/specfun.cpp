#include "bralpha/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bralpha::specfun {
namespace {

// e^x sqrt(x) K_nu(x) = c0/2 + sum_{k>=1} c_k T_k(t) on three pieces of
// u = 4/x in (0, 2], t = (2u - (a + b)) / (b - a). Generated by
// tools/gen_bessel_cheb.py.
// u in [0.0, 0.5]
constexpr std::array<double, 16> k0_cheb_0{
    2.4879813017369240776,
    -9.1748526910256953107e-3,
    1.444550931775005821e-4,
    -4.0136141754357097287e-6,
    1.5678318108523106726e-7,
    -7.7701104385217377103e-9,
    4.6111825761797178825e-10,
    -3.1585929978605657705e-11,
    2.4350180393650411278e-12,
    -2.0743313873983478977e-13,
    1.9257872805899170847e-14,
    -1.9275548058389561036e-15,
    2.0621980291978182783e-16,
    -2.3416851175792424026e-17,
    2.8059028106430422468e-18,
    -3.5305076311618079459e-19,
};
// u in [0.5, 1.0]
constexpr std::array<double, 14> k0_cheb_1{
    2.4533363984211522474,
    -8.1781776145106078264e-3,
    1.0759629638663573783e-4,
    -2.3452682680630787291e-6,
    6.8202307819410029946e-8,
    -2.4067191054649569897e-9,
    9.7847419364635269507e-11,
    -4.4384455582390524353e-12,
    2.1984688218091494324e-13,
    -1.1710663683848609596e-14,
    6.6328666376365574964e-16,
    -3.9602331502059642481e-17,
    2.4756425069754671177e-18,
    -1.6115138584889916985e-19,
};
// u in [1.0, 2.0]
constexpr std::array<double, 16> k0_cheb_2{
    2.4081387607468030446,
    -1.420866623765680407e-2,
    3.0642728223364419087e-4,
    -1.038807316534850771e-5,
    4.5196910553506404046e-7,
    -2.3153832593402718091e-8,
    1.3338417019301037673e-9,
    -8.402937057782788163e-11,
    5.6833397924747041903e-12,
    -4.0739915436799246824e-13,
    3.0660591456293667778e-14,
    -2.4053531195883757913e-15,
    1.9561245666293757917e-16,
    -1.6417512585820551853e-17,
    1.4169296364153647833e-18,
    -1.2538063181427349466e-19,
};
// u in [0.0, 0.5]
constexpr std::array<double, 16> k1_cheb_0{
    2.5637930834373900104,
    2.8328878130497209358e-2,
    -2.4753706739052503454e-4,
    5.7719724516072488205e-6,
    -2.0689392195365483027e-7,
    9.7399834413818041803e-9,
    -5.5853361403806249847e-10,
    3.7329966340461852402e-11,
    -2.8250519610232254451e-12,
    2.3720190024841441736e-13,
    -2.1766773879917539793e-14,
    2.1579141616160324539e-15,
    -2.290196930718269276e-16,
    2.5828857298232749619e-17,
    -3.0767526412684631876e-18,
    3.851487721280491597e-19,
};
// u in [0.5, 1.0]
constexpr std::array<double, 14> k1_cheb_1{
    2.6735223214616230082,
    2.6580685864012052051e-2,
    -1.9339296854129542988e-4,
    3.5276360817027759299e-6,
    -9.3914861673040995335e-8,
    3.1418658955584004867e-9,
    -1.2322059092468461217e-10,
    5.4456829779721906308e-12,
    -2.6444694464853542991e-13,
    1.3867996813910600619e-14,
    -7.7558342884414648781e-16,
    4.5822822949804907878e-17,
    -2.8391775904319300027e-18,
    1.8341404686747578945e-19,
};
// u in [1.0, 2.0]
constexpr std::array<double, 16> k1_cheb_2{
    2.8258749587157184703,
    4.918607323361965295e-2,
    -5.8239356586793867655e-4,
    1.6436664628652779195e-5,
    -6.5208777578934960488e-7,
    3.1569970883817231904e-8,
    -1.7498519566331615544e-9,
    1.0716938194711566619e-10,
    -7.0930384725803731242e-12,
    4.9976064575340282302e-13,
    -3.7085318602774875051e-14,
    2.8753316640482465061e-15,
    -2.3150486005579584166e-16,
    1.9262989212465561756e-17,
    -1.6500375596541901714e-18,
    1.4504125587911137703e-19,
};

constexpr double series_limit = 2.0;
constexpr double ln2 = 0.69314718055994530941723212145817657;

template <std::size_t N>
double clenshaw(const std::array<double, N>& c, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  const double t2 = 2.0 * t;
  for (std::size_t k = N - 1; k >= 1; --k) {
    const double b0 = t2 * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + 0.5 * c[0];
}

void check_domain(double x, const char* name) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(name) + ": argument must be positive, got " +
                            std::to_string(x));
  }
}

double flush_subnormal(double v) {
  return v < std::numeric_limits<double>::min() ? 0.0 : v;
}

template <class T0, class T1, class T2>
double scaled_sum(const T0& c0, const T1& c1, const T2& c2, double x) {
  const double u = 4.0 / x;
  if (u <= 0.5) {
    return clenshaw(c0, 4.0 * u - 1.0);
  }
  if (u <= 1.0) {
    return clenshaw(c1, 4.0 * u - 3.0);
  }
  return clenshaw(c2, 2.0 * u - 3.0);
}

// e^{-x} x^{-1/2} times the Chebyshev sum.
double large_k0(double x) {
  if (x > 745.0) {
    return 0.0;
  }
  return flush_subnormal(std::exp(-x) / std::sqrt(x) * scaled_sum(k0_cheb_0, k0_cheb_1, k0_cheb_2, x));
}

double large_k1(double x) {
  if (x > 745.0) {
    return 0.0;
  }
  return flush_subnormal(std::exp(-x) / std::sqrt(x) * scaled_sum(k1_cheb_0, k1_cheb_1, k1_cheb_2, x));
}

// Ascending series in t = x^2/4 <= 1, truncated where the coefficients drop
// below 1e-19:
//   I0(x) - 1 = sum_{k>=1} t^k / (k!)^2
//   I1(x)     = (x/2) sum_{k>=0} t^k / (k! (k+1)!)
//   s0        = sum_{k>=1} H_k t^k / (k!)^2
//   s1        = sum_{k>=0} (psi(k+1) + psi(k+2)) t^k / (k! (k+1)!)
constexpr std::size_t series_terms = 15;

struct SeriesTables {
  std::array<double, series_terms> i0m1{};
  std::array<double, series_terms> i1{};
  std::array<double, series_terms> s0{};
  std::array<double, series_terms> s1{};
};

constexpr SeriesTables make_series_tables() {
  SeriesTables tab;
  double fact = 1.0;       // k!
  double fact_next = 1.0;  // (k+1)!
  double harmonic = 0.0;
  for (std::size_t k = 0; k < series_terms; ++k) {
    const double dk = static_cast<double>(k);
    if (k > 0) {
      fact *= dk;
      harmonic += 1.0 / dk;
    }
    fact_next = fact * (dk + 1.0);
    tab.i0m1[k] = k == 0 ? 0.0 : 1.0 / (fact * fact);
    tab.i1[k] = 1.0 / (fact * fact_next);
    tab.s0[k] = harmonic / (fact * fact);
    tab.s1[k] = (2.0 * harmonic + 1.0 / (dk + 1.0) - 2.0 * euler_gamma) / (fact * fact_next);
  }
  return tab;
}

constexpr SeriesTables series_tables = make_series_tables();

double horner(const std::array<double, series_terms>& c, double t) {
  double acc = c[series_terms - 1];
  for (std::size_t k = series_terms - 1; k-- > 0;) {
    acc = acc * t + c[k];
  }
  return acc;
}

struct SmallSeries {
  double i0m1;
  double i1;
  double s0;
  double s1;
};

SmallSeries small_series(double x) {
  const double t = 0.25 * x * x;
  return {horner(series_tables.i0m1, t), 0.5 * x * horner(series_tables.i1, t),
          horner(series_tables.s0, t), horner(series_tables.s1, t)};
}

}  // namespace

double bessel_k0(double x) {
  check_domain(x, "bessel_k0");
  if (x <= series_limit) {
    const SmallSeries s = small_series(x);
    const double lg = std::log(0.5 * x) + euler_gamma;
    return -lg * (1.0 + s.i0m1) + s.s0;
  }
  return large_k0(x);
}

double bessel_k1(double x) {
  check_domain(x, "bessel_k1");
  if (x <= series_limit) {
    const SmallSeries s = small_series(x);
    return 1.0 / x + std::log(0.5 * x) * s.i1 - 0.25 * x * s.s1;
  }
  return large_k1(x);
}

double bessel_k0_plus_log(double x) {
  check_domain(x, "bessel_k0_plus_log");
  if (x <= series_limit) {
    const SmallSeries s = small_series(x);
    const double lg = std::log(0.5 * x) + euler_gamma;
    return ln2 - euler_gamma - lg * s.i0m1 + s.s0;
  }
  return large_k0(x) + std::log(x);
}

double bessel_k1_regular(double x) {
  check_domain(x, "bessel_k1_regular");
  if (x <= series_limit) {
    const SmallSeries s = small_series(x);
    return -std::log(0.5 * x) * s.i1 + 0.25 * x * s.s1;
  }
  return 1.0 / x - large_k1(x);
}

}  // namespace bralpha::specfun
