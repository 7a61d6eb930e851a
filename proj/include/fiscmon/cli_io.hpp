#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fiscmon/errors.hpp"
#include "fiscmon/model.hpp"
#include "fiscmon/policy_rules.hpp"
#include "fiscmon/ramsey.hpp"

namespace fiscmon::cli {

/// Malformed configuration: syntax error, unknown key, missing key, or a
/// value that does not parse.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { Steady, System, Classify, Grid, Ramsey, Sweep, Simulate };
enum class OutputFormat { Csv, Json };
enum class SimPolicy { Ramsey, AdHoc };

struct RunConfig {
  Command command{Command::Steady};
  OutputFormat output_format{OutputFormat::Csv};
  std::string output_path;  ///< empty: standard output

  ModelParamsd model;
  PolicyPreferencesd prefs;
  AdHocRuled rule;

  SimPolicy policy{SimPolicy::AdHoc};
  long horizon{10};
  double b0_dev{0};
  std::uint64_t seed{0};
  Variant variant{Variant::Linear};
  double tol{kDefaultBoundaryTol};

  Interval<double> f_range{0, 2};
  Interval<double> g_range{0, 2};
  long n_f{2};
  long n_g{2};
  std::vector<double> mu_s_grid;

  bool operator==(const RunConfig&) const;
};

struct ParsedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

/// A `key = value` assignment as read from a file (line >= 1) or a flag
/// (line = 0). Keys are canonical after normalization.
struct Assignment {
  std::string key;
  std::string value;
  int line{0};
};

/// Canonical key for a name or alias, or nullopt when unknown.
std::optional<std::string> canonical_key(const std::string& name);

/// Every canonical key with its accepted aliases, in serialization order.
const std::vector<std::pair<std::string, std::vector<std::string>>>& key_table();

/// Tokenizes `key = value` text; `#` starts a comment.
std::vector<Assignment> read_assignments(const std::string& text);

/// Builds a validated RunConfig. File assignments are applied first, flags
/// override them; a key repeated in the file keeps its last value and yields
/// a warning.
ParsedConfig parse_config(const std::optional<std::string>& file_text,
                          const std::vector<std::pair<std::string, std::string>>& flags);

/// Canonical `key = value` text; parse_config(serialize(c), {}) == c.
std::string serialize(const RunConfig& config);

std::string format_double(double v);

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<double, long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& table, const RunConfig& config);
void write_json(std::ostream& out, const Table& table, const RunConfig& config);

/// Computes the table for config.command. Warnings go to `diag`.
Table compute_table(const RunConfig& config, std::ostream& diag);

/// Exit codes: 0 success, 1 configuration or I/O error, 2 invalid parameter,
/// 3 unsupported regime, 4 oracle cross-check failure.
int exit_code_for(const std::exception& e);

/// Writes the command's output to config.output_path (relative paths are
/// resolved against $FISCMON_OUTPUT_DIR when set) or to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Full command-line entry point: argv parsing, config loading, dispatch.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& diag);

}  // namespace fiscmon::cli
