#ifndef BRALPHA_EVOLVE_HPP
#define BRALPHA_EVOLVE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bralpha/diagnostics.hpp"
#include "bralpha/kernels.hpp"
#include "bralpha/separation.hpp"
#include "bralpha/sheet.hpp"
#include "bralpha/trajectory.hpp"

namespace bralpha {

enum class Method { rk4, rk2 };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 0.01;
  double t_end = 1.0;
  std::size_t diagnostics_every = 10;
  std::size_t snapshot_every = 100;
  /// Resample onto resample_nodes nodes every this many steps; 0 disables.
  std::size_t resample_every = 0;
  std::size_t resample_nodes = 0;

  /// t_end = 0 is allowed and records the initial state only.
  void validate() const;
  /// Number of steps; the last one is shortened to land on t_end.
  std::size_t step_count() const;
  double time_at(std::size_t step) const;
};

/// Thrown when a step produces a non-finite node.
class NonFiniteState : public std::runtime_error {
 public:
  NonFiniteState(std::size_t node, const std::string& what)
      : std::runtime_error(what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

using PositionField = std::vector<PlanarVector>;

/// One explicit Runge-Kutta step of x' = rhs(x) on a vector of positions.
/// rk2 is the midpoint rule, rk4 the classical scheme.
template <class Rhs>
PositionField rk_step(const PositionField& x, double dt, Rhs&& rhs, Method method) {
  const std::size_t n = x.size();
  auto axpy = [n](const PositionField& base, double a, const PositionField& k) {
    PositionField out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = base[i] + a * k[i];
    }
    return out;
  };
  const PositionField k1 = rhs(x);
  if (method == Method::rk2) {
    const PositionField k2 = rhs(axpy(x, 0.5 * dt, k1));
    return axpy(x, dt, k2);
  }
  const PositionField k2 = rhs(axpy(x, 0.5 * dt, k1));
  const PositionField k3 = rhs(axpy(x, 0.5 * dt, k2));
  const PositionField k4 = rhs(axpy(x, dt, k3));
  PositionField out(n);
  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

/// Advance the sheet by dt under its own induced velocity. The circulation
/// grid is left untouched. Throws NonFiniteState with the offending node.
VortexSheet step(const VortexSheet& sheet, const KernelParams& params, double dt, Method method,
                 const VelocityOptions& options = {});

struct RunSettings {
  KernelParams kernel;
  IntegratorConfig integrator;
  /// Holder exponent of the x_Gamma monitor.
  double beta = 0.5;
  /// Abort once the chord-arc constant falls below this value.
  double chord_arc_floor = 0.0;
  /// Separation monitor; disabled when sample_pairs == 0 or the kernel has
  /// no alpha.
  SeparationBoundConfig separation;
  VelocityOptions velocity;
};

/// Receives every recording event as it happens so output can be streamed
/// (and survives an abort).
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  /// diagnostics_event: the state belongs to the trajectory's diagnostics
  /// cadence. snapshot_event: the snapshot cadence. At least one is true.
  virtual void on_record(std::size_t step, double time, const VortexSheet& state,
                         const DiagnosticsRecord* record, bool snapshot_event) = 0;
  virtual void on_abort(const AbortInfo&) {}
};

/// Integrate from `initial` to t_end. States and diagnostics are recorded at
/// step 0, every diagnostics_every steps and at the final step. Aborts (and
/// returns the partial trajectory with `abort` set) on a non-finite state or
/// when the chord-arc constant drops below the floor.
Trajectory run(const VortexSheet& initial, const RunSettings& settings,
               RunObserver* observer = nullptr);

/// Diagnostics of one state in the context of a run (adds the separation
/// margin relative to the initial state). Used by both run and replay.
class DiagnosticsMonitor {
 public:
  DiagnosticsMonitor(const VortexSheet& initial, const RunSettings& settings);
  DiagnosticsRecord operator()(const VortexSheet& state, double time) const;

 private:
  double beta_;
  std::size_t node_count_;
  double alpha_ = 0.0;
  double c1_ = 0.0;
  std::vector<TrackedPair> pairs_;
};

}  // namespace bralpha

#endif  // BRALPHA_EVOLVE_HPP
