#include "bralpha/evolve.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bralpha {

std::string_view to_string(Method m) {
  return m == Method::rk4 ? "rk4" : "rk2";
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "rk2") return Method::rk2;
  throw std::invalid_argument("unknown integrator method '" + std::string(name) +
                              "' (expected rk4 or rk2)");
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0 && std::isfinite(dt))) {
    throw std::invalid_argument("integrator: dt must be positive");
  }
  if (!(t_end >= 0.0 && std::isfinite(t_end))) {
    throw std::invalid_argument("integrator: t_end must be non-negative");
  }
  if (t_end > 0.0 && dt > t_end) {
    throw std::invalid_argument("integrator: dt must not exceed t_end");
  }
  if (diagnostics_every == 0 || snapshot_every == 0) {
    throw std::invalid_argument("integrator: output cadences must be positive");
  }
  if (resample_every > 0 && resample_nodes < 4) {
    throw std::invalid_argument("integrator: resample_nodes must be at least 4");
  }
}

std::size_t IntegratorConfig::step_count() const {
  if (t_end == 0.0) {
    return 0;
  }
  // Tolerate t_end/dt landing a rounding error above an integer.
  return static_cast<std::size_t>(std::ceil(t_end / dt * (1.0 - 1e-12)));
}

double IntegratorConfig::time_at(std::size_t step) const {
  return step >= step_count() ? t_end : static_cast<double>(step) * dt;
}

VortexSheet step(const VortexSheet& sheet, const KernelParams& params, double dt, Method method,
                 const VelocityOptions& options) {
  auto rhs = [&](const PositionField& x) {
    // Intermediate stages can overflow before the final combination does.
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!is_finite(x[i])) {
        throw NonFiniteState(i, "non-finite position at node " + std::to_string(i));
      }
    }
    return sheet_velocity(sheet.with_nodes(x), params, options);
  };
  const auto start = sheet.nodes();
  PositionField next = rk_step(PositionField(start.begin(), start.end()), dt, rhs, method);
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (!is_finite(next[i])) {
      throw NonFiniteState(i, "non-finite position at node " + std::to_string(i));
    }
  }
  return sheet.with_nodes(std::move(next));
}

DiagnosticsMonitor::DiagnosticsMonitor(const VortexSheet& initial, const RunSettings& settings)
    : beta_(settings.beta), node_count_(initial.size()) {
  const auto& k = settings.kernel;
  alpha_ = k.kind == KernelKind::br_alpha ? k.alpha : (k.kind == KernelKind::blob ? k.delta : 0.0);
  const auto& sep = settings.separation;
  if (alpha_ > 0.0 && sep.sample_pairs > 0) {
    sep.validate();
    pairs_ = select_tracked_pairs(initial, alpha_, sep.sample_pairs);
    const double mass = sep.vorticity_mass > 0.0 ? sep.vorticity_mass : initial.total_circulation();
    c1_ = sep.constant_C * mass / (alpha_ * alpha_);
  }
}

DiagnosticsRecord DiagnosticsMonitor::operator()(const VortexSheet& state, double time) const {
  DiagnosticsRecord rec = compute_diagnostics(state, time, beta_);
  if (!pairs_.empty() && state.size() == node_count_) {
    rec.separation_bound_margin = separation_margin(state, time, pairs_, alpha_, c1_);
  }
  return rec;
}

Trajectory run(const VortexSheet& initial, const RunSettings& settings, RunObserver* observer) {
  const auto& integ = settings.integrator;
  integ.validate();
  settings.kernel.validate();

  const DiagnosticsMonitor monitor(initial, settings);
  Trajectory traj;
  const std::size_t steps = integ.step_count();

  auto abort_run = [&](std::size_t s, double t, std::string reason) {
    traj.abort = AbortInfo{s, t, std::move(reason)};
    if (observer) {
      observer->on_abort(*traj.abort);
    }
  };

  // Returns false when the run must stop.
  auto record = [&](std::size_t s, double t, const VortexSheet& state, bool diag_event,
                    bool snap_event) {
    if (!diag_event) {
      if (observer) {
        observer->on_record(s, t, state, nullptr, snap_event);
      }
      return true;
    }
    const DiagnosticsRecord rec = monitor(state, t);
    traj.times.push_back(t);
    traj.steps.push_back(s);
    traj.states.push_back(state);
    traj.diagnostics.push_back(rec);
    if (observer) {
      observer->on_record(s, t, state, &traj.diagnostics.back(), snap_event);
    }
    if (!(rec.chord_arc_value > settings.chord_arc_floor)) {
      abort_run(s, t,
                "chord-arc constant " + std::to_string(rec.chord_arc_value) +
                    " fell below the floor " + std::to_string(settings.chord_arc_floor));
      return false;
    }
    return true;
  };

  VortexSheet state = initial;
  if (!record(0, 0.0, state, true, true)) {
    return traj;
  }
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t0 = integ.time_at(s - 1);
    const double t1 = integ.time_at(s);
    try {
      state = step(state, settings.kernel, t1 - t0, integ.method, settings.velocity);
    } catch (const NonFiniteState& e) {
      abort_run(s, t1, e.what());
      return traj;
    }
    if (integ.resample_every > 0 && s % integ.resample_every == 0) {
      state = resample(state, integ.resample_nodes);
    }
    const bool diag_event = s % integ.diagnostics_every == 0 || s == steps;
    const bool snap_event = s % integ.snapshot_every == 0 || s == steps;
    if ((diag_event || snap_event) && !record(s, t1, state, diag_event, snap_event)) {
      return traj;
    }
  }
  return traj;
}

}  // namespace bralpha
