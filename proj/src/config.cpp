#include "bralpha/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "bralpha/initial.hpp"
#include "bralpha/io.hpp"
#include "bralpha/stability.hpp"
#include "format.hpp"

namespace bralpha {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw std::invalid_argument("expected a finite real number, got '" + v + "'");
  }
  return out;
}

template <class Int>
Int parse_integer(const std::string& v, const char* what) {
  Int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw std::invalid_argument(std::string("expected ") + what + ", got '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

InitialKind parse_initial_kind(const std::string& v) {
  if (v == "flat") return InitialKind::flat;
  if (v == "flat_perturbed") return InitialKind::flat_perturbed;
  if (v == "circle") return InitialKind::circle;
  if (v == "graph") return InitialKind::graph;
  throw std::invalid_argument("unknown initial condition '" + v +
                              "' (expected flat, flat_perturbed, circle or graph)");
}

std::string check_path(const std::string& v) {
  if (v.find('#') != std::string::npos) {
    throw std::invalid_argument("paths must not contain '#'");
  }
  return v;
}

template <class T>
std::string format_integer(T v) {
  return std::to_string(v);
}

struct Field {
  const char* key;
  std::function<void(SimulationConfig&, const std::string&)> set;
  std::function<std::string(const SimulationConfig&)> get;
};

#define BRALPHA_REAL(key, member)                                                         \
  Field {                                                                                 \
    key, [](SimulationConfig& c, const std::string& v) { c.member = parse_real(v); },     \
        [](const SimulationConfig& c) { return detail::format_double(c.member); }         \
  }
#define BRALPHA_COUNT(key, member)                                                        \
  Field {                                                                                 \
    key,                                                                                  \
        [](SimulationConfig& c, const std::string& v) {                                   \
          c.member = parse_integer<std::size_t>(v, "a non-negative integer");             \
        },                                                                                \
        [](const SimulationConfig& c) { return format_integer(c.member); }                \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      {"ic", [](SimulationConfig& c, const std::string& v) { c.ic = parse_initial_kind(v); },
       [](const SimulationConfig& c) { return std::string(to_string(c.ic)); }},
      {"k", [](SimulationConfig& c, const std::string& v) { c.k = parse_integer<int>(v, "an integer"); },
       [](const SimulationConfig& c) { return format_integer(c.k); }},
      BRALPHA_REAL("eps", eps),
      {"eigenvector_seeded",
       [](SimulationConfig& c, const std::string& v) { c.eigenvector_seeded = parse_bool(v); },
       [](const SimulationConfig& c) { return std::string(c.eigenvector_seeded ? "true" : "false"); }},
      BRALPHA_REAL("radius", radius),
      {"graph_file", [](SimulationConfig& c, const std::string& v) { c.graph_file = check_path(v); },
       [](const SimulationConfig& c) { return c.graph_file; }},
      BRALPHA_COUNT("N", N),
      BRALPHA_REAL("L", L),
      BRALPHA_REAL("gamma0", gamma0),
      {"kernel.kind",
       [](SimulationConfig& c, const std::string& v) { c.kernel.kind = parse_kernel_kind(v); },
       [](const SimulationConfig& c) { return std::string(to_string(c.kernel.kind)); }},
      BRALPHA_REAL("kernel.alpha", kernel.alpha),
      BRALPHA_REAL("kernel.delta", kernel.delta),
      BRALPHA_REAL("kernel.image_tail_threshold", kernel.image_tail_threshold),
      {"integrator.method",
       [](SimulationConfig& c, const std::string& v) { c.integrator.method = parse_method(v); },
       [](const SimulationConfig& c) { return std::string(to_string(c.integrator.method)); }},
      BRALPHA_REAL("integrator.dt", integrator.dt),
      BRALPHA_REAL("integrator.t_end", integrator.t_end),
      BRALPHA_COUNT("integrator.diagnostics_every", integrator.diagnostics_every),
      BRALPHA_COUNT("integrator.snapshot_every", integrator.snapshot_every),
      BRALPHA_COUNT("integrator.resample_every", integrator.resample_every),
      BRALPHA_COUNT("integrator.resample_nodes", integrator.resample_nodes),
      BRALPHA_REAL("beta", beta),
      BRALPHA_REAL("chord_arc_floor", chord_arc_floor),
      BRALPHA_REAL("separation.constant_C", separation.constant_C),
      BRALPHA_REAL("separation.vorticity_mass", separation.vorticity_mass),
      BRALPHA_COUNT("separation.sample_pairs", separation.sample_pairs),
      {"output_dir", [](SimulationConfig& c, const std::string& v) { c.output_dir = check_path(v); },
       [](const SimulationConfig& c) { return c.output_dir; }},
      {"seed",
       [](SimulationConfig& c, const std::string& v) {
         c.seed = parse_integer<std::uint64_t>(v, "a non-negative integer");
       },
       [](const SimulationConfig& c) { return format_integer(c.seed); }},
  };
  return table;
}

#undef BRALPHA_REAL
#undef BRALPHA_COUNT

bool periodic_ic(InitialKind kind) {
  return kind == InitialKind::flat || kind == InitialKind::flat_perturbed;
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out = errors.size() == 1 ? "invalid config: " : "invalid config (" +
                                                                   std::to_string(errors.size()) +
                                                                   " errors): ";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    out += (i ? "; " : "") + errors[i];
  }
  return out;
}

// Cross-field checks. `line_of` maps a key to the line that set it (0 when
// the default is in effect).
std::vector<std::string> cross_check(const SimulationConfig& c,
                                     const std::function<std::size_t(const char*)>& line_of) {
  std::vector<std::string> errs;
  auto add = [&](const char* key, const std::string& msg) {
    const std::size_t line = line_of(key);
    errs.push_back(line > 0 ? "line " + std::to_string(line) + ": " + msg
                            : std::string(key) + ": " + msg);
  };

  if (c.ic != InitialKind::graph && c.N < 4) add("N", "N must be at least 4");
  if (!(c.gamma0 > 0.0)) add("gamma0", "gamma0 must be positive");
  if (periodic_ic(c.ic) && !(c.L > 0.0)) add("L", "L must be positive");
  if (c.ic == InitialKind::flat_perturbed) {
    if (!(c.eps > 0.0)) add("eps", "flat_perturbed needs eps > 0");
    if (c.k == 0) add("k", "flat_perturbed needs a non-zero mode k");
    if (2 * static_cast<std::size_t>(std::abs(c.k)) >= c.N) {
      add("k", "mode k must be below N/2");
    }
  }
  if (c.ic == InitialKind::circle && !(c.radius > 0.0)) add("radius", "radius must be positive");
  if (c.ic == InitialKind::graph && c.graph_file.empty()) {
    add("graph_file", "ic = graph needs graph_file");
  }

  switch (c.kernel.kind) {
    case KernelKind::euler:
      add("kernel.kind", "singular kernel not integrable by this quadrature");
      break;
    case KernelKind::br_alpha:
      if (!(c.kernel.alpha > 0.0)) add("kernel.alpha", "br_alpha needs kernel.alpha > 0");
      break;
    case KernelKind::blob:
      if (!(c.kernel.delta > 0.0)) add("kernel.delta", "blob needs kernel.delta > 0");
      if (periodic_ic(c.ic)) {
        add("kernel.kind", "the blob kernel is free-space only; periodic initial conditions need br_alpha");
      }
      break;
  }
  if (!(c.kernel.image_tail_threshold >= 10.0)) {
    add("kernel.image_tail_threshold", "kernel.image_tail_threshold must be at least 10");
  }

  const auto& ig = c.integrator;
  if (!(ig.dt > 0.0)) add("integrator.dt", "integrator.dt must be positive");
  if (!(ig.t_end >= 0.0)) add("integrator.t_end", "integrator.t_end must be non-negative");
  if (ig.dt > 0.0 && ig.t_end > 0.0 && ig.dt > ig.t_end) {
    add("integrator.dt", "integrator.dt must not exceed integrator.t_end");
  }
  if (ig.diagnostics_every == 0) {
    add("integrator.diagnostics_every", "integrator.diagnostics_every must be positive");
  }
  if (ig.snapshot_every == 0) {
    add("integrator.snapshot_every", "integrator.snapshot_every must be positive");
  }
  if (ig.resample_every > 0 && ig.resample_nodes < 4) {
    add("integrator.resample_nodes", "resampling needs integrator.resample_nodes >= 4");
  }

  if (!(c.beta > 0.0 && c.beta < 1.0)) add("beta", "beta must lie in (0, 1)");
  if (!(c.chord_arc_floor >= 0.0)) add("chord_arc_floor", "chord_arc_floor must be non-negative");
  if (!(c.separation.constant_C > 0.0)) {
    add("separation.constant_C", "separation.constant_C must be positive");
  }
  if (!(c.separation.vorticity_mass >= 0.0)) {
    add("separation.vorticity_mass", "separation.vorticity_mass must be non-negative");
  }
  if (c.output_dir.empty()) add("output_dir", "output_dir must not be empty");
  return errs;
}

}  // namespace

std::string_view to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::flat:
      return "flat";
    case InitialKind::flat_perturbed:
      return "flat_perturbed";
    case InitialKind::circle:
      return "circle";
    case InitialKind::graph:
      return "graph";
  }
  return "unknown";
}

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::invalid_argument(join_errors(errors)), errors_(std::move(errors)) {}

SimulationConfig parse_config(std::string_view text) {
  SimulationConfig cfg;
  std::vector<std::string> errs;
  std::map<std::string, std::size_t, std::less<>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string content = trim(line);
    if (content.empty()) {
      continue;
    }
    const auto prefix = "line " + std::to_string(line_no) + ": ";
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      errs.push_back(prefix + "expected 'key = value', got '" + content + "'");
      continue;
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Field& f) { return key == f.key; });
    if (it == table.end()) {
      errs.push_back(prefix + "unknown key '" + key + "'");
      continue;
    }
    if (const auto dup = seen.find(key); dup != seen.end()) {
      errs.push_back(prefix + "duplicate key '" + key + "' (first set on line " +
                     std::to_string(dup->second) + ")");
      continue;
    }
    seen.emplace(key, line_no);
    try {
      it->set(cfg, value);
    } catch (const std::invalid_argument& e) {
      errs.push_back(prefix + key + ": " + e.what());
    }
  }

  auto line_of = [&](const char* key) -> std::size_t {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };
  auto more = cross_check(cfg, line_of);
  errs.insert(errs.end(), more.begin(), more.end());
  if (!errs.empty()) {
    throw ConfigError(std::move(errs));
  }
  return cfg;
}

std::string serialize_config(const SimulationConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) {
    const std::string v = f.get(cfg);
    out += std::string(f.key) + (v.empty() ? " =" : " = " + v) + "\n";
  }
  return out;
}

void validate_config(const SimulationConfig& cfg) {
  auto errs = cross_check(cfg, [](const char*) { return std::size_t{0}; });
  if (!errs.empty()) {
    throw ConfigError(std::move(errs));
  }
}

VortexSheet build_initial_sheet(const SimulationConfig& cfg) {
  switch (cfg.ic) {
    case InitialKind::flat:
      return make_flat_sheet(cfg.N, cfg.L, cfg.gamma0);
    case InitialKind::flat_perturbed: {
      std::complex<double> ratio{0.0, 0.0};
      if (cfg.eigenvector_seeded) {
        const double kappa = 2.0 * pi * cfg.k / cfg.L;
        ratio = stability::seeded_displacement_ratio(kappa, cfg.gamma0, cfg.kernel.alpha);
      }
      return make_perturbed_sheet(cfg.N, cfg.L, cfg.gamma0, cfg.k, cfg.eps, ratio);
    }
    case InitialKind::circle:
      return make_circle_sheet(cfg.N, cfg.radius, cfg.gamma0);
    case InitialKind::graph:
      return read_sheet_file(cfg.graph_file).sheet;
  }
  throw std::logic_error("unreachable initial condition");
}

KernelParams kernel_for(const SimulationConfig& cfg, const VortexSheet& initial) {
  KernelParams p = cfg.kernel;
  p.period.reset();
  if (initial.topology() == Topology::periodic) {
    p.period = initial.period();
  }
  return p;
}

RunSettings run_settings(const SimulationConfig& cfg, const VortexSheet& initial,
                         const VelocityOptions& velocity) {
  RunSettings s;
  s.kernel = kernel_for(cfg, initial);
  s.integrator = cfg.integrator;
  s.beta = cfg.beta;
  s.chord_arc_floor = cfg.chord_arc_floor;
  s.separation = cfg.separation;
  s.velocity = velocity;
  return s;
}

}  // namespace bralpha
