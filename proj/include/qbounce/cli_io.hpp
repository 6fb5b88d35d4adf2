#pragma once
// Run configuration, command execution and CSV export for the qbounce tool.
//
// A configuration comes from command-line flags and an optional plain-text
// file of `key = value` lines (keys are the long flag names); flags win.
// Dimensional inputs take explicit unit suffixes: um for lengths, peV for
// energies, ms (or s) for times.  A bare number is read in those same units.
// Single-mirror families (airy, single, superposition) use the scaled axes
// zeta and k; the others use um and 1/um.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbounce/quadrature.hpp"

namespace qbounce {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { levels, modes, wavefunction, spectrum, wigner, evolve, mixture, yukawa };

/// Names a bad key and the accepted range.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  std::vector<double> samples() const;
  bool operator==(const Axis&) const = default;
};

struct RunConfig {
  Command command = Command::levels;
  std::string family = "single";     // airy | single | superposition | double | region2
  std::string quantity = "density";  // evolve / yukawa output selector
  double g = 9.80665;                // m/s^2
  int n = 1;                         // single-mirror level
  int n2 = 2;                        // second level of a superposition
  int n_max = 6;
  int m = 1;                         // double-mirror mode
  int m_max = 6;
  int N = 15;                        // region-II truncation
  double L = 28.0;                   // um
  double h = 27.0;                   // um
  double p1 = 1.0;
  double p2 = 0.0;
  double W0 = -1.0;                  // peV
  double delta = 10.0;               // um
  int w0_count = 5;                  // W0 sweep size for yukawa levels
  bool normalized = false;
  bool averaged = false;
  Axis z{0.0, 10.0, 201};
  Axis k{-6.0, 6.0, 201};
  Axis t{0.0, 10.0, 201};            // ms
  double time = 0.0;                 // ms, for single-time outputs
  std::string output = "-";
  QuadratureSpec tolerances;

  bool operator==(const RunConfig& o) const;
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);

/// Parses arguments (without the program name); `--config FILE` adds a config
/// file whose values the flags override.  Axes left unset take the defaults of
/// the selected family.
RunConfig parse_config(const std::vector<std::string>& args);

/// Flag reference for --help.
std::string usage();

/// Throws ConfigError for the first violated constraint.
void validate(const RunConfig& cfg);

/// Config-file text that parses back to `cfg`.
std::string emit_config(const RunConfig& cfg);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> notes;  // derived quantities for the metadata block
};

/// Executes the configured command.
Table run(const RunConfig& cfg);

/// CSV text: `# key = value` lines holding the full config (strip the "# " to
/// get a config file that reproduces the run), `## key = value` lines with the
/// version and derived scales, a header line, then rows with 17 significant
/// digits.
std::string format_csv(const Table& table, const RunConfig& cfg);

/// Writes format_csv to `path` ("-" for stdout).  IoError if unwritable.
void export_table(const Table& table, const RunConfig& cfg, const std::string& path);

/// Parses a quantity with an optional unit suffix.  `unit` is "um", "peV" or
/// "ms"; for "ms" a trailing "s" (seconds) is also accepted.
double parse_quantity(const std::string& key, const std::string& text, const std::string& unit);

}  // namespace qbounce
