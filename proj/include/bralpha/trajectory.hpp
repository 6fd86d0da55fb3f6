#ifndef BRALPHA_TRAJECTORY_HPP
#define BRALPHA_TRAJECTORY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bralpha/diagnostics.hpp"
#include "bralpha/sheet.hpp"

namespace bralpha {

struct AbortInfo {
  std::size_t step = 0;
  double time = 0.0;
  std::string reason;
};

/// States and diagnostics at every recording event of a run, aligned by index.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::size_t> steps;
  std::vector<VortexSheet> states;
  std::vector<DiagnosticsRecord> diagnostics;
  std::optional<AbortInfo> abort;

  std::size_t size() const { return times.size(); }
  bool aborted() const { return abort.has_value(); }
};

}  // namespace bralpha

#endif  // BRALPHA_TRAJECTORY_HPP
