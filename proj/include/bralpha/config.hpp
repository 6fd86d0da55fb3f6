#ifndef BRALPHA_CONFIG_HPP
#define BRALPHA_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bralpha/evolve.hpp"

namespace bralpha {

enum class InitialKind { flat, flat_perturbed, circle, graph };

std::string_view to_string(InitialKind kind);

/// Everything a `simulate` run needs. Periodic initial conditions (flat,
/// flat_perturbed, or a periodic graph file) give the kernel the period L;
/// the kernel's own period is never set directly.
struct SimulationConfig {
  InitialKind ic = InitialKind::flat;
  /// flat_perturbed: mode index; the wavenumber is 2 pi k / L.
  int k = 1;
  double eps = 0.0;
  /// Seed the density perturbation from the growing eigenvector of the mode
  /// matrix instead of displacing nodes vertically only.
  bool eigenvector_seeded = false;
  double radius = 1.0;
  std::string graph_file;

  std::size_t N = 256;
  double L = 2.0 * pi;
  double gamma0 = 1.0;

  KernelParams kernel = KernelParams::br_alpha(0.2);
  IntegratorConfig integrator;
  double beta = 0.5;
  double chord_arc_floor = 0.0;
  SeparationBoundConfig separation;

  std::string output_dir = "run";
  std::uint64_t seed = 0;
};

/// All problems found in a config document, one message per entry, each
/// prefixed with "line N: " when it can be tied to a line.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parse the flat `key = value` format (one pair per line, `#` starts a
/// comment, blank lines ignored) and validate the result. Missing keys keep
/// their defaults. Throws ConfigError listing every problem.
SimulationConfig parse_config(std::string_view text);

/// Canonical text form: every key in a fixed order, numbers in shortest
/// round-trip form. parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const SimulationConfig& cfg);

/// Cross-field checks of an already typed config, e.g. one assembled in
/// code. Throws ConfigError.
void validate_config(const SimulationConfig& cfg);

/// Build the initial sheet. graph reads a snapshot JSON file.
VortexSheet build_initial_sheet(const SimulationConfig& cfg);

/// Kernel parameters for the given initial sheet (period set iff periodic).
KernelParams kernel_for(const SimulationConfig& cfg, const VortexSheet& initial);

RunSettings run_settings(const SimulationConfig& cfg, const VortexSheet& initial,
                         const VelocityOptions& velocity = {});

}  // namespace bralpha

#endif  // BRALPHA_CONFIG_HPP
