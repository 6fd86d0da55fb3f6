#include "bralpha/io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "format.hpp"
#include "json.hpp"

namespace bralpha {
namespace {

using nlohmann::json;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string snapshot_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "step_%08zu.json", step);
  return buf;
}

template <class T>
T require_field(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw std::invalid_argument(std::string("sheet json: missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("sheet json: field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string sheet_to_json(const VortexSheet& sheet, std::optional<double> time,
                          std::optional<std::size_t> step, bool diagnostics_event) {
  json doc;
  doc["topology"] = std::string(to_string(sheet.topology()));
  if (sheet.topology() == Topology::periodic) {
    doc["period"] = sheet.period();
  }
  doc["gamma_start"] = sheet.gamma_start();
  doc["gamma_end"] = sheet.gamma_end();
  json nodes = json::array();
  for (const auto& p : sheet.nodes()) {
    nodes.push_back({p.x1, p.x2});
  }
  doc["nodes"] = std::move(nodes);
  if (time) doc["time"] = *time;
  if (step) doc["step"] = *step;
  if (time || step) doc["diagnostics_event"] = diagnostics_event;
  return doc.dump() + "\n";
}

SheetSnapshot sheet_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sheet json: ") + e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("sheet json: top level must be an object");
  }
  const Topology topology = parse_topology(require_field<std::string>(doc, "topology"));
  const double period = topology == Topology::periodic ? require_field<double>(doc, "period") : 0.0;
  const auto raw = require_field<std::vector<std::vector<double>>>(doc, "nodes");
  std::vector<PlanarVector> nodes;
  nodes.reserve(raw.size());
  for (const auto& p : raw) {
    if (p.size() != 2) {
      throw std::invalid_argument("sheet json: every node must be [x1, x2]");
    }
    nodes.push_back({p[0], p[1]});
  }
  SheetSnapshot snap{VortexSheet(std::move(nodes), require_field<double>(doc, "gamma_start"),
                                 require_field<double>(doc, "gamma_end"), topology, period),
                     std::nullopt, std::nullopt, false};
  if (doc.contains("time")) snap.time = require_field<double>(doc, "time");
  if (doc.contains("step")) snap.step = require_field<std::size_t>(doc, "step");
  if (doc.contains("diagnostics_event")) {
    snap.diagnostics_event = require_field<bool>(doc, "diagnostics_event");
  }
  return snap;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

SheetSnapshot read_sheet_file(const std::filesystem::path& path) {
  return sheet_from_json(read_text_file(path));
}

std::string diagnostics_csv_header() {
  return "time,chord_arc,sup_xgamma,holder_xgamma_beta,max_curvature,min_gamma,max_gamma,"
         "centroid_x1,centroid_x2,sep_margin_min\n";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  using detail::format_double;
  std::string out;
  for (const double v : {r.time, r.chord_arc_value, r.sup_xgamma, r.holder_seminorm_xgamma,
                         r.max_curvature, r.min_density, r.max_density, r.centroid.x1,
                         r.centroid.x2}) {
    out += format_double(v);
    out += ',';
  }
  out += format_double(r.separation_bound_margin);
  out += '\n';
  return out;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = diagnostics_csv_header();
  for (const auto& r : records) {
    out += diagnostics_csv_row(r);
  }
  return out;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunWriter::RunWriter(std::filesystem::path dir, const SimulationConfig& cfg, unsigned threads)
    : dir_(std::move(dir)), config_text_(serialize_config(cfg)), threads_(threads),
      started_at_(utc_now()) {
  std::filesystem::create_directories(dir_ / "snapshots");
  write_text_file(dir_ / "config.txt", config_text_);
  csv_.open(dir_ / "diagnostics.csv", std::ios::binary | std::ios::trunc);
  if (!csv_) {
    throw std::runtime_error("cannot open '" + (dir_ / "diagnostics.csv").string() + "'");
  }
  csv_ << diagnostics_csv_header();
  csv_.flush();
}

void RunWriter::on_record(std::size_t step, double time, const VortexSheet& state,
                          const DiagnosticsRecord* record, bool /*snapshot_event*/) {
  // Every diagnostics event gets a snapshot too, so replay can rebuild the
  // whole CSV.
  const std::string name = snapshot_name(step);
  write_text_file(dir_ / "snapshots" / name, sheet_to_json(state, time, step, record != nullptr));
  snapshot_files_.push_back("snapshots/" + name);
  if (record) {
    csv_ << diagnostics_csv_row(*record);
    csv_.flush();
  }
}

void RunWriter::on_abort(const AbortInfo&) { csv_.flush(); }

void RunWriter::finish(const Trajectory& traj) {
  csv_.close();
  json m;
  m["run_id"] = fnv1a_hex(config_text_);
  m["config"] = config_text_;
  m["status"] = traj.aborted() ? "aborted" : "completed";
  if (traj.abort) {
    m["abort"] = {{"step", traj.abort->step}, {"time", traj.abort->time},
                  {"reason", traj.abort->reason}};
  } else {
    m["abort"] = nullptr;
  }
  m["records"] = traj.size();
  m["final_time"] = traj.times.empty() ? 0.0 : traj.times.back();
  m["threads"] = threads_;
  m["snapshots"] = snapshot_files_;
  m["started_at"] = started_at_;
  m["finished_at"] = utc_now();
  write_text_file(dir_ / "manifest.json", m.dump(2) + "\n");
}

SimulationOutcome simulate_to_directory(const SimulationConfig& cfg,
                                        const std::filesystem::path& dir,
                                        const VelocityOptions& velocity) {
  validate_config(cfg);
  const VortexSheet initial = build_initial_sheet(cfg);
  const RunSettings settings = run_settings(cfg, initial, velocity);
  RunWriter writer(dir, cfg, velocity.threads);
  SimulationOutcome out{run(initial, settings, &writer), dir};
  writer.finish(out.trajectory);
  return out;
}

std::vector<DiagnosticsRecord> replay_run(const std::filesystem::path& dir) {
  const SimulationConfig cfg = parse_config(read_text_file(dir / "config.txt"));
  std::vector<SheetSnapshot> snaps;
  const auto snap_dir = dir / "snapshots";
  if (!std::filesystem::is_directory(snap_dir)) {
    throw std::runtime_error("replay: '" + snap_dir.string() + "' is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(snap_dir)) {
    if (entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    SheetSnapshot s = read_sheet_file(f);
    if (!s.step || !s.time) {
      throw std::runtime_error("replay: snapshot '" + f.string() + "' lacks time or step");
    }
    if (s.diagnostics_event) {
      snaps.push_back(std::move(s));
    }
  }
  std::sort(snaps.begin(), snaps.end(),
            [](const SheetSnapshot& a, const SheetSnapshot& b) { return *a.step < *b.step; });
  if (snaps.empty() || *snaps.front().step != 0) {
    throw std::runtime_error("replay: the step-0 snapshot is missing");
  }
  const RunSettings settings = run_settings(cfg, snaps.front().sheet);
  const DiagnosticsMonitor monitor(snaps.front().sheet, settings);
  std::vector<DiagnosticsRecord> out;
  out.reserve(snaps.size());
  for (const auto& s : snaps) {
    out.push_back(monitor(s.sheet, *s.time));
  }
  return out;
}

}  // namespace bralpha
