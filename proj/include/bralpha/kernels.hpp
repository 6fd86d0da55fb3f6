#ifndef BRALPHA_KERNELS_HPP
#define BRALPHA_KERNELS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace bralpha {

inline constexpr double pi = 3.14159265358979323846264338327950288;

struct PlanarVector {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr PlanarVector& operator+=(PlanarVector o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  constexpr PlanarVector& operator-=(PlanarVector o) {
    x1 -= o.x1;
    x2 -= o.x2;
    return *this;
  }
  constexpr PlanarVector& operator*=(double s) {
    x1 *= s;
    x2 *= s;
    return *this;
  }
  friend constexpr PlanarVector operator+(PlanarVector a, PlanarVector b) { return a += b; }
  friend constexpr PlanarVector operator-(PlanarVector a, PlanarVector b) { return a -= b; }
  friend constexpr PlanarVector operator-(PlanarVector a) { return {-a.x1, -a.x2}; }
  friend constexpr PlanarVector operator*(double s, PlanarVector a) { return a *= s; }
  friend constexpr PlanarVector operator*(PlanarVector a, double s) { return a *= s; }
  friend constexpr bool operator==(PlanarVector, PlanarVector) = default;
};

constexpr double dot(PlanarVector a, PlanarVector b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double cross(PlanarVector a, PlanarVector b) { return a.x1 * b.x2 - a.x2 * b.x1; }
/// x^perp = (-x2, x1).
constexpr PlanarVector perp(PlanarVector a) { return {-a.x2, a.x1}; }
inline double norm(PlanarVector a) { return std::sqrt(dot(a, a)); }
inline bool is_finite(PlanarVector a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

enum class KernelKind { euler, br_alpha, blob };

std::string_view to_string(KernelKind kind);
/// Throws std::invalid_argument for unknown names.
KernelKind parse_kernel_kind(std::string_view name);

struct KernelParams {
  KernelKind kind = KernelKind::br_alpha;
  double alpha = 0.0;
  double delta = 0.0;
  /// x1-period L; empty for free space.
  std::optional<double> period;
  /// Periodic images whose distance exceeds threshold * alpha are dropped
  /// from the Bessel correction.
  double image_tail_threshold = 40.0;

  static KernelParams euler(std::optional<double> period = std::nullopt);
  static KernelParams br_alpha(double alpha, std::optional<double> period = std::nullopt);
  static KernelParams blob(double delta);

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Regularized stream function (1/2pi)[K0(r/alpha) + log r]. Finite as r -> 0+.
double psi_alpha(double r, double alpha);

/// d psi_alpha / dr = (1/2pi)[-(1/alpha) K1(r/alpha) + 1/r].
double dpsi_alpha(double r, double alpha);

/// Free-space kernel of the chosen kind. The br_alpha kernel is continuous
/// with value (0,0) at the origin; the euler kernel raises std::domain_error
/// there. Any period in params is ignored.
PlanarVector kernel_eval(PlanarVector dx, const KernelParams& params);

/// Image sum over the lattice {(mL, 0)} for kind euler or br_alpha.
/// The euler part uses the closed-form cotangent kernel; br_alpha subtracts
/// the Bessel correction of every image within the tail threshold.
PlanarVector kernel_eval_periodic(PlanarVector dx, const KernelParams& params);

/// Validated, reusable evaluator for the hot pairwise loop. Dispatches to the
/// periodic sum when params.period is set.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(KernelParams params);

  PlanarVector operator()(PlanarVector dx) const;
  const KernelParams& params() const { return params_; }

 private:
  KernelParams params_;
};

}  // namespace bralpha

#endif  // BRALPHA_KERNELS_HPP
