// Command-line front end: simulate, stability, verify-ft, kernel-table,
// convergence, replay.
//
// Exit status: 0 success, 2 invalid input, 3 runtime abort or failure.
// Errors are reported on stderr as one JSON object.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bralpha/config.hpp"
#include "bralpha/convergence.hpp"
#include "bralpha/io.hpp"
#include "bralpha/specfun.hpp"
#include "bralpha/stability.hpp"
#include "json.hpp"

namespace {

using namespace bralpha;
namespace fs = std::filesystem;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_runtime = 3;

struct Globals {
  std::string output_dir;
  bool quiet = false;
  unsigned threads = 1;
};

/// Raised for a completed command whose outcome is a failure (abort, failed
/// verification); carries its own exit status.
struct CommandFailure {
  int status;
  std::string kind;
  std::string message;
};

void report_error(const std::string& kind, const std::string& message,
                  const std::vector<std::string>& details = {}) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  if (!details.empty()) j["details"] = details;
  std::cerr << j.dump() << "\n";
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) {
    throw std::invalid_argument("log grid needs 0 < min <= max and count >= 1");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

// Writes to <output-dir>/<name> when an output directory was given, else stdout.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.output_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(g.output_dir);
  write_text_file(fs::path(g.output_dir) / name, text);
  if (!g.quiet) {
    std::cerr << "wrote " << (fs::path(g.output_dir) / name).string() << "\n";
  }
}

int cmd_simulate(const Globals& g, const std::string& config_path) {
  SimulationConfig cfg = parse_config(read_text_file(config_path));
  if (!g.output_dir.empty()) {
    cfg.output_dir = g.output_dir;
  }
  const auto outcome = simulate_to_directory(cfg, cfg.output_dir, VelocityOptions{g.threads});
  const auto& traj = outcome.trajectory;
  if (!g.quiet) {
    std::cerr << "run written to " << outcome.directory.string() << " (" << traj.size()
              << " diagnostics records, t = " << (traj.times.empty() ? 0.0 : traj.times.back())
              << ")\n";
  }
  if (traj.abort) {
    throw CommandFailure{exit_runtime, "run_aborted",
                         "aborted at step " + std::to_string(traj.abort->step) + ", t = " +
                             fmt(traj.abort->time) + ": " + traj.abort->reason};
  }
  return exit_ok;
}

struct StabilityArgs {
  std::vector<std::string> kinds{"br_alpha"};
  std::vector<double> k;
  std::vector<double> k_range;
  double gamma0 = 1.0;
  std::vector<double> scales;
};

int cmd_stability(const Globals& g, const StabilityArgs& a) {
  std::vector<double> ks = a.k;
  if (!a.k_range.empty()) {
    if (a.k_range.size() != 3) {
      throw std::invalid_argument("--k-range takes MIN MAX COUNT");
    }
    const auto extra = log_grid(a.k_range[0], a.k_range[1], static_cast<std::size_t>(a.k_range[2]));
    ks.insert(ks.end(), extra.begin(), extra.end());
  }
  if (ks.empty()) {
    throw std::invalid_argument("give wavenumbers with --k or --k-range");
  }
  std::string out = "kind,k,gamma0,scale,lambda\n";
  for (const auto& name : a.kinds) {
    const KernelKind kind = parse_kernel_kind(name);
    std::vector<double> scales = kind == KernelKind::euler ? std::vector<double>{0.0} : a.scales;
    if (scales.empty()) {
      throw std::invalid_argument("kind " + name + " needs --scale (alias --alpha, --delta)");
    }
    for (const double s : scales) {
      for (const double k : ks) {
        const auto p = stability::dispersion_point(kind, k, a.gamma0, s);
        out += name + "," + fmt(k) + "," + fmt(a.gamma0) + "," + fmt(p.scale) + "," +
               fmt(p.lambda_plus) + "\n";
      }
    }
  }
  emit(g, "dispersion.csv", out);
  return exit_ok;
}

struct VerifyArgs {
  double alpha = 1.0;
  double ak_min = 0.1;
  double ak_max = 100.0;
  std::size_t count = 20;
  double tolerance = 1e-6;
};

int cmd_verify_ft(const Globals& g, const VerifyArgs& a) {
  if (!(a.alpha > 0.0)) {
    throw std::invalid_argument("--alpha must be positive");
  }
  std::string out = "alpha,k,alpha_k,numeric,exact,residual,pass\n";
  std::size_t failures = 0;
  for (const double ak : log_grid(a.ak_min, a.ak_max, a.count)) {
    const double k = ak / a.alpha;
    const auto r = stability::verify_ft_identity(k, a.alpha);
    const bool pass = r.residual < a.tolerance;
    failures += pass ? 0 : 1;
    out += fmt(a.alpha) + "," + fmt(k) + "," + fmt(ak) + "," + fmt(r.numeric) + "," +
           fmt(r.exact) + "," + fmt(r.residual) + "," + (pass ? "true" : "false") + "\n";
  }
  emit(g, "verify_ft.csv", out);
  if (failures > 0) {
    throw CommandFailure{exit_runtime, "verification_failed",
                         std::to_string(failures) + " residuals exceed " + fmt(a.tolerance)};
  }
  return exit_ok;
}

struct TableArgs {
  double alpha = 1.0;
  double r_min = 1e-4;
  double r_max = 100.0;
  std::size_t count = 200;
};

int cmd_kernel_table(const Globals& g, const TableArgs& a) {
  if (!(a.alpha > 0.0)) {
    throw std::invalid_argument("--alpha must be positive");
  }
  std::string out = "r,r_over_alpha,k0,k1,psi_alpha,dpsi_alpha\n";
  for (const double r : log_grid(a.r_min, a.r_max, a.count)) {
    const double x = r / a.alpha;
    out += fmt(r) + "," + fmt(x) + "," + fmt(specfun::bessel_k0(x)) + "," +
           fmt(specfun::bessel_k1(x)) + "," + fmt(psi_alpha(r, a.alpha)) + "," +
           fmt(dpsi_alpha(r, a.alpha)) + "\n";
  }
  emit(g, "kernel_table.csv", out);
  return exit_ok;
}

struct ConvergenceArgs {
  std::string study = "both";
  double alpha = 0.2;
  double eps = 0.05;
};

int cmd_convergence(const Globals& g, const ConvergenceArgs& a) {
  if (a.study != "spatial" && a.study != "temporal" && a.study != "both") {
    throw std::invalid_argument("--study must be spatial, temporal or both");
  }
  std::string out = "study,resolution,error,order\n";
  auto append = [&](const char* name, const ConvergenceStudy& s) {
    for (const auto& l : s.levels) {
      out += std::string(name) + "," + fmt(l.resolution) + "," + fmt(l.error) + "," +
             (l.order ? fmt(*l.order) : "") + "\n";
    }
  };
  if (a.study != "temporal") {
    SpatialStudyConfig c;
    c.alpha = a.alpha;
    c.eps = a.eps;
    c.velocity.threads = g.threads;
    append("spatial", spatial_velocity_study(c));
  }
  if (a.study != "spatial") {
    TemporalStudyConfig c;
    c.alpha = a.alpha;
    c.eps = a.eps;
    c.velocity.threads = g.threads;
    append("temporal", temporal_study(c));
  }
  emit(g, "convergence.csv", out);
  return exit_ok;
}

int cmd_replay(const Globals& g, const std::string& run_dir) {
  const std::string csv = diagnostics_csv(replay_run(run_dir));
  const fs::path target =
      g.output_dir.empty() ? fs::path(run_dir) / "diagnostics_replay.csv"
                           : fs::path(g.output_dir) / "diagnostics_replay.csv";
  fs::create_directories(target.parent_path());
  write_text_file(target, csv);
  const fs::path original = fs::path(run_dir) / "diagnostics.csv";
  const bool identical = fs::exists(original) && read_text_file(original) == csv;
  if (!g.quiet) {
    std::cerr << "wrote " << target.string() << "; "
              << (identical ? "identical to" : "DIFFERS from") << " " << original.string() << "\n";
  }
  if (!identical) {
    throw CommandFailure{exit_runtime, "replay_mismatch",
                         "replayed diagnostics differ from " + original.string()};
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BR-alpha vortex sheet simulator and analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--output-dir", g.output_dir, "Directory for output files");
  app.add_flag("--quiet", g.quiet, "Suppress progress messages");
  app.add_option("--threads", g.threads, "Worker threads for velocity sums (0 = auto)");

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "Run a simulation from a config file");
  sim->add_option("config", config_path, "Config file (key = value lines)")->required();

  StabilityArgs st;
  auto* stab = app.add_subcommand("stability", "Dispersion relation table");
  stab->add_option("--kind", st.kinds, "euler, br_alpha and/or blob");
  stab->add_option("--k", st.k, "Wavenumbers");
  stab->add_option("--k-range", st.k_range, "MIN MAX COUNT log-spaced wavenumbers")->expected(3);
  stab->add_option("--gamma0", st.gamma0, "Sheet strength");
  stab->add_option("--scale,--alpha,--delta", st.scales, "Regularization lengths");

  VerifyArgs vf;
  auto* ver = app.add_subcommand("verify-ft", "Check the Fourier-transform identity of DPsi");
  ver->add_option("--alpha", vf.alpha, "alpha");
  ver->add_option("--ak-min", vf.ak_min, "Smallest alpha k");
  ver->add_option("--ak-max", vf.ak_max, "Largest alpha k");
  ver->add_option("--count", vf.count, "Number of log-spaced alpha k values");
  ver->add_option("--tolerance", vf.tolerance, "Pass threshold on the residual");

  TableArgs tb;
  auto* tab = app.add_subcommand("kernel-table", "Dump K0, K1, psi_alpha, dpsi_alpha samples");
  tab->add_option("--alpha", tb.alpha, "alpha");
  tab->add_option("--r-min", tb.r_min, "Smallest r");
  tab->add_option("--r-max", tb.r_max, "Largest r");
  tab->add_option("--count", tb.count, "Number of log-spaced samples");

  ConvergenceArgs cv;
  auto* conv = app.add_subcommand("convergence", "Spatial and temporal refinement studies");
  conv->add_option("--study", cv.study, "spatial, temporal or both");
  conv->add_option("--alpha", cv.alpha, "alpha");
  conv->add_option("--eps", cv.eps, "Perturbation amplitude");

  std::string run_dir;
  auto* rep = app.add_subcommand("replay", "Recompute diagnostics from stored snapshots");
  rep->add_option("run_dir", run_dir, "Run directory written by simulate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return exit_invalid;
  }

  try {
    if (*sim) return cmd_simulate(g, config_path);
    if (*stab) return cmd_stability(g, st);
    if (*ver) return cmd_verify_ft(g, vf);
    if (*tab) return cmd_kernel_table(g, tb);
    if (*conv) return cmd_convergence(g, cv);
    if (*rep) return cmd_replay(g, run_dir);
  } catch (const CommandFailure& f) {
    report_error(f.kind, f.message);
    return f.status;
  } catch (const ConfigError& e) {
    report_error("invalid_config", e.what(), e.errors());
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    report_error("invalid_argument", e.what());
    return exit_invalid;
  } catch (const std::domain_error& e) {
    report_error("invalid_argument", e.what());
    return exit_invalid;
  } catch (const std::exception& e) {
    report_error("runtime_error", e.what());
    return exit_runtime;
  }
  return exit_invalid;
}
