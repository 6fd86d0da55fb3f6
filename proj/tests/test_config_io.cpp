#include <cmath>
#include <filesystem>
#include <string>

#include "bralpha/config.hpp"
#include "bralpha/io.hpp"
#include "doctest.h"

using namespace bralpha;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bralpha_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> config_errors(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

bool mentions(const std::vector<std::string>& errs, const std::string& needle) {
  for (const auto& e : errs) {
    if (e.find(needle) != std::string::npos) return true;
  }
  return false;
}

const char* small_run = R"(# short perturbed run
ic = flat_perturbed
k = 1
eps = 0.01
N = 32
kernel.alpha = 0.3
integrator.dt = 0.05
integrator.t_end = 0.2
integrator.diagnostics_every = 2
integrator.snapshot_every = 4
separation.sample_pairs = 8
)";

}  // namespace

TEST_CASE("an empty document gives the defaults") {
  const SimulationConfig c = parse_config("# nothing here\n\n");
  CHECK(c.ic == InitialKind::flat);
  CHECK(c.N == 256);
  CHECK(c.kernel.kind == KernelKind::br_alpha);
  CHECK(c.kernel.alpha == 0.2);
  CHECK(c.integrator.method == Method::rk4);
  CHECK(c.output_dir == "run");
}

TEST_CASE("serialize then parse reproduces the config") {
  SimulationConfig c = parse_config(small_run);
  CHECK(c.ic == InitialKind::flat_perturbed);
  CHECK(c.eps == 0.01);
  CHECK(c.integrator.t_end == 0.2);
  c.L = 0.1 + 0.2;
  c.beta = 1.0 / 3.0;
  const std::string text = serialize_config(c);
  const SimulationConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.L == c.L);
  CHECK(back.beta == c.beta);
}

TEST_CASE("the singular kernel is rejected") {
  const auto errs = config_errors("kernel.kind = euler\n");
  REQUIRE(errs.size() == 1);
  CHECK(mentions(errs, "singular kernel not integrable by this quadrature"));
}

TEST_CASE("every problem is reported with its line") {
  const auto errs = config_errors("N = 12\nbogus = 1\nN = 16\nbeta = abc\nno equals sign\n");
  CHECK(errs.size() == 4);
  CHECK(mentions(errs, "line 2: "));
  CHECK(mentions(errs, "line 3: "));
  CHECK(mentions(errs, "line 4: "));
  CHECK(mentions(errs, "line 5: "));
}

TEST_CASE("cross-field checks") {
  CHECK(mentions(config_errors("ic = flat_perturbed\neps = 0\n"), "eps"));
  CHECK(mentions(config_errors("ic = flat_perturbed\neps = 0.1\nk = 20\nN = 32\n"), "k"));
  CHECK(mentions(config_errors("ic = graph\n"), "graph_file"));
  CHECK(!config_errors("kernel.kind = blob\nkernel.delta = 0.1\n").empty());
  CHECK(config_errors("ic = circle\nkernel.kind = blob\nkernel.delta = 0.1\n").empty());
  CHECK(!config_errors("beta = 1\n").empty());
  CHECK(!config_errors("kernel.alpha = 0\n").empty());
  CHECK(!config_errors("gamma0 = -1\n").empty());
}

TEST_CASE("initial sheets from config") {
  SimulationConfig c = parse_config("ic = flat_perturbed\nk = 3\neps = 0.1\nN = 64\nL = 2\n");
  const VortexSheet s = build_initial_sheet(c);
  CHECK(s.topology() == Topology::periodic);
  CHECK(s.period() == 2.0);
  const auto x = s.nodes();
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(x[i].x2 - 0.1 * std::cos(2.0 * pi * 3.0 * i / 64.0)) < 1e-15);
    CHECK(std::abs(x[i].x1 - 2.0 * i / 64.0) < 1e-15);
  }
  const KernelParams p = kernel_for(c, s);
  REQUIRE(p.period.has_value());
  CHECK(*p.period == 2.0);

  c = parse_config("ic = circle\nradius = 2\nN = 40\nkernel.kind = blob\nkernel.delta = 0.1\n");
  const VortexSheet circ = build_initial_sheet(c);
  CHECK(circ.topology() == Topology::closed);
  CHECK(circ.total_circulation() == doctest::Approx(4.0 * pi));
  CHECK(!kernel_for(c, circ).period.has_value());
}

TEST_CASE("sheet JSON round trip") {
  const VortexSheet s({{0.1, 0.2}, {1.0 / 3.0, -0.5}, {2.0, 1e-300}, {3.0, 4.0}}, -1.0, 2.5,
                      Topology::periodic, 4.0);
  const std::string text = sheet_to_json(s, 0.75, 12, true);
  const SheetSnapshot back = sheet_from_json(text);
  CHECK(back.time == 0.75);
  CHECK(back.step == std::size_t{12});
  CHECK(back.diagnostics_event);
  CHECK(back.sheet.topology() == Topology::periodic);
  CHECK(back.sheet.period() == 4.0);
  CHECK(back.sheet.gamma_start() == -1.0);
  CHECK(back.sheet.gamma_end() == 2.5);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.sheet.nodes()[i] == s.nodes()[i]);
  CHECK(sheet_to_json(back.sheet, 0.75, 12, true) == text);

  CHECK_THROWS_AS(sheet_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(sheet_from_json(R"({"topology":"open","gamma_start":0,"gamma_end":1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(sheet_from_json(R"({"topology":"twisted","gamma_start":0,"gamma_end":1,"nodes":[[0,0],[1,0]]})"),
                  std::invalid_argument);
}

TEST_CASE("diagnostics CSV") {
  CHECK(diagnostics_csv_header() ==
        "time,chord_arc,sup_xgamma,holder_xgamma_beta,max_curvature,min_gamma,max_gamma,"
        "centroid_x1,centroid_x2,sep_margin_min\n");
  DiagnosticsRecord r;
  r.time = 0.1;
  r.chord_arc_value = 1.0;
  r.sup_xgamma = 2.5;
  r.holder_seminorm_xgamma = 0.0;
  r.max_curvature = 3.0;
  r.min_density = 0.4;
  r.max_density = 1.0;
  r.centroid = {0.5, -0.25};
  CHECK(diagnostics_csv_row(r) == "0.1,1,2.5,0,3,0.4,1,0.5,-0.25,nan\n");
  const std::string all = diagnostics_csv({r, r});
  CHECK(all == diagnostics_csv_header() + diagnostics_csv_row(r) + diagnostics_csv_row(r));
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("simulate to a directory, then replay it") {
  const fs::path dir = scratch("replay");
  const SimulationConfig c = parse_config(small_run);
  const SimulationOutcome out = simulate_to_directory(c, dir);
  CHECK(!out.trajectory.aborted());
  CHECK(out.trajectory.steps == std::vector<std::size_t>{0, 2, 4});
  CHECK(fs::exists(dir / "config.txt"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "snapshots" / "step_00000000.json"));
  CHECK(fs::exists(dir / "snapshots" / "step_00000004.json"));
  CHECK(read_text_file(dir / "config.txt") == serialize_config(c));

  const std::string csv = read_text_file(dir / "diagnostics.csv");
  CHECK(csv == diagnostics_csv(out.trajectory.diagnostics));
  const auto replayed = replay_run(dir);
  CHECK(diagnostics_csv(replayed) == csv);
  fs::remove_all(dir);
}

TEST_CASE("graph initial condition from a snapshot file") {
  const fs::path dir = scratch("graph");
  fs::create_directories(dir);
  const VortexSheet s({{0, 0}, {0.5, 0.1}, {1.0, 0.0}, {1.5, -0.1}, {2.0, 0.0}, {2.5, 0.1}}, 0.0, 3.0,
                      Topology::open);
  write_text_file(dir / "sheet.json", sheet_to_json(s));
  SimulationConfig c = parse_config("ic = graph\ngraph_file = " + (dir / "sheet.json").string() + "\n");
  const VortexSheet back = build_initial_sheet(c);
  CHECK(back.topology() == Topology::open);
  CHECK(back.size() == 6);
  CHECK(!kernel_for(c, back).period.has_value());
  CHECK_THROWS(read_sheet_file(dir / "missing.json"));
  fs::remove_all(dir);
}
