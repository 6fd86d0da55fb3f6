#ifndef BRALPHA_SPECFUN_HPP
#define BRALPHA_SPECFUN_HPP

// Modified Bessel functions of the second kind, orders zero and one.
//
// For 0 < x <= 2 the ascending series (with the logarithmic term split out)
// is summed directly; for x > 2 a Chebyshev expansion of e^x sqrt(x) K_nu(x)
// in t = 4/x - 1 is used (tables produced by tools/gen_bessel_cheb.py).
// Values that would underflow to a subnormal are returned as exactly 0.

namespace bralpha::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// K_0(x). Throws std::domain_error for x <= 0 or NaN.
double bessel_k0(double x);

/// K_1(x). Throws std::domain_error for x <= 0 or NaN.
double bessel_k1(double x);

/// K_0(x) + log(x), which stays finite as x -> 0+ (limit log 2 - euler_gamma).
double bessel_k0_plus_log(double x);

/// 1/x - K_1(x), evaluated without cancellation for small x. Tends to 0 as
/// x -> 0+ like -(x/2) log(x/2).
double bessel_k1_regular(double x);

}  // namespace bralpha::specfun

#endif  // BRALPHA_SPECFUN_HPP
