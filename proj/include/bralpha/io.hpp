#ifndef BRALPHA_IO_HPP
#define BRALPHA_IO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bralpha/config.hpp"
#include "bralpha/evolve.hpp"

namespace bralpha {

/// A sheet as stored on disk. Snapshot JSON:
///   {"topology": "open"|"periodic"|"closed", "period": L (periodic only),
///    "gamma_start": G0, "gamma_end": G1, "nodes": [[x1, x2], ...],
///    "time": t, "step": s, "diagnostics_event": bool}
/// The last three fields are present in run snapshots only.
struct SheetSnapshot {
  VortexSheet sheet;
  std::optional<double> time;
  std::optional<std::size_t> step;
  bool diagnostics_event = false;
};

std::string sheet_to_json(const VortexSheet& sheet, std::optional<double> time = std::nullopt,
                          std::optional<std::size_t> step = std::nullopt,
                          bool diagnostics_event = false);
/// Throws std::invalid_argument on malformed documents.
SheetSnapshot sheet_from_json(std::string_view text);
SheetSnapshot read_sheet_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// time,chord_arc,sup_xgamma,holder_xgamma_beta,max_curvature,min_gamma,
/// max_gamma,centroid_x1,centroid_x2,sep_margin_min
std::string diagnostics_csv_header();
/// Shortest round-trip numbers, "nan" for undefined entries. Header and rows
/// include the trailing newline.
std::string diagnostics_csv_row(const DiagnosticsRecord& rec);
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);

/// 64-bit FNV-1a of the text as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Streams a run into a directory:
///   config.txt        canonical config echo
///   diagnostics.csv   one row per diagnostics event, flushed as written
///   snapshots/step_<step>.json  at every diagnostics or snapshot event
///   manifest.json     written by finish()
class RunWriter : public RunObserver {
 public:
  RunWriter(std::filesystem::path dir, const SimulationConfig& cfg, unsigned threads);
  void on_record(std::size_t step, double time, const VortexSheet& state,
                 const DiagnosticsRecord* record, bool snapshot_event) override;
  void on_abort(const AbortInfo& info) override;
  /// Write manifest.json with the final status.
  void finish(const Trajectory& traj);

 private:
  std::filesystem::path dir_;
  std::string config_text_;
  unsigned threads_;
  std::string started_at_;
  std::ofstream csv_;
  std::vector<std::string> snapshot_files_;
};

struct SimulationOutcome {
  Trajectory trajectory;
  std::filesystem::path directory;
};

/// Build the initial sheet, run, and write everything to `dir`.
SimulationOutcome simulate_to_directory(const SimulationConfig& cfg,
                                        const std::filesystem::path& dir,
                                        const VelocityOptions& velocity = {});

/// Recompute the diagnostics of a run directory from its config echo and
/// the snapshots flagged as diagnostics events, in step order.
std::vector<DiagnosticsRecord> replay_run(const std::filesystem::path& dir);

}  // namespace bralpha

#endif  // BRALPHA_IO_HPP
