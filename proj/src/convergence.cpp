#include "bralpha/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bralpha/initial.hpp"

namespace bralpha {
namespace {

void fill_orders(ConvergenceStudy& study) {
  for (std::size_t l = 1; l < study.levels.size(); ++l) {
    const double prev = study.levels[l - 1].error;
    const double cur = study.levels[l].error;
    if (prev > 0.0 && cur > 0.0) {
      study.levels[l].order = std::log2(prev / cur);
    }
  }
}

VortexSheet integrate(const VortexSheet& start, const KernelParams& params, double t_end,
                      double dt, Method method, const VelocityOptions& velocity) {
  IntegratorConfig ic;
  ic.dt = dt;
  ic.t_end = t_end;
  VortexSheet state = start;
  const std::size_t steps = ic.step_count();
  for (std::size_t s = 1; s <= steps; ++s) {
    state = step(state, params, ic.time_at(s) - ic.time_at(s - 1), method, velocity);
  }
  return state;
}

}  // namespace

double ConvergenceStudy::min_order() const {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& l : levels) {
    if (l.order) {
      m = std::isnan(m) ? *l.order : std::min(m, *l.order);
    }
  }
  return m;
}

ConvergenceStudy spatial_velocity_study(const SpatialStudyConfig& cfg) {
  if (cfg.counts.size() < 2) {
    throw std::invalid_argument("spatial study: need at least two node counts");
  }
  for (std::size_t l = 1; l < cfg.counts.size(); ++l) {
    if (cfg.counts[l] != 2 * cfg.counts[l - 1]) {
      throw std::invalid_argument("spatial study: node counts must double");
    }
  }
  const KernelParams params = KernelParams::br_alpha(cfg.alpha, cfg.period);
  std::vector<VelocityField> fields;
  for (const std::size_t n : cfg.counts) {
    const VortexSheet sheet = make_perturbed_sheet(n, cfg.period, cfg.gamma0, cfg.mode, cfg.eps);
    fields.push_back(sheet_velocity(sheet, params, cfg.velocity));
  }

  ConvergenceStudy study;
  for (std::size_t l = 0; l + 1 < fields.size(); ++l) {
    double err = 0.0;
    for (std::size_t i = 0; i < fields[l].size(); ++i) {
      err = std::max(err, norm(fields[l][i] - fields[l + 1][2 * i]));
    }
    study.levels.push_back({static_cast<double>(cfg.counts[l]), err, std::nullopt});
  }
  fill_orders(study);
  return study;
}

ConvergenceStudy temporal_study(const TemporalStudyConfig& cfg) {
  if (cfg.levels < 2 || cfg.reference_refinement < 2) {
    throw std::invalid_argument("temporal study: need two levels and a refined reference");
  }
  const KernelParams params = KernelParams::br_alpha(cfg.alpha, cfg.period);
  const VortexSheet start = make_perturbed_sheet(cfg.n, cfg.period, cfg.gamma0, cfg.mode, cfg.eps);

  const double dt_finest = cfg.dt_coarse / std::ldexp(1.0, static_cast<int>(cfg.levels) - 1);
  const VortexSheet reference =
      integrate(start, params, cfg.t_end, dt_finest / static_cast<double>(cfg.reference_refinement),
                cfg.method, cfg.velocity);

  ConvergenceStudy study;
  for (std::size_t l = 0; l < cfg.levels; ++l) {
    const double dt = cfg.dt_coarse / std::ldexp(1.0, static_cast<int>(l));
    const VortexSheet end = integrate(start, params, cfg.t_end, dt, cfg.method, cfg.velocity);
    double err = 0.0;
    for (std::size_t i = 0; i < end.size(); ++i) {
      err = std::max(err, norm(end.nodes()[i] - reference.nodes()[i]));
    }
    study.levels.push_back({dt, err, std::nullopt});
  }
  fill_orders(study);
  return study;
}

}  // namespace bralpha
