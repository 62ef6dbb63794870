// sweep.hpp
// Parameter sweeps over the nu-family, acceleration, noisy channels and
// swapping. Each sweep produces a CSV table and a gnuplot script.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neur/measures.hpp"
#include "neur/processes.hpp"

namespace neur {

enum class SweepMode { Nu, Acceleration, AdChannel, DephasingChannel, Swap };

const char* to_string(SweepMode mode) noexcept;
SweepMode parse_mode(std::string_view text);
BellIndex parse_bell(std::string_view text);

/// Evenly spaced grid; the last point is exactly `stop`.
struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int points = 201;

  std::vector<double> values() const;
};

/// Parses "start:stop:points". Bounds accept plain numbers, "pi" and "pi/k".
Grid parse_grid(std::string_view text);

struct SweepConfig {
  SweepMode mode = SweepMode::Nu;
  Grid grid;
  double nu = 1.0;
  /// Fixed r_b, or nullopt to track r_b = r_a = param.
  std::optional<double> r_b = 0.0;
  double g_over_gamma = 0.01;
  BellIndex bell = BellIndex::Psi;
  std::filesystem::path out = "sweep.csv";
  /// Worker threads; 0 picks hardware concurrency.
  unsigned threads = 1;

  /// Config with the default grid of `mode`.
  static SweepConfig defaults(SweepMode mode);

  /// Throws Error{InvalidConfig} naming the offending field.
  void validate() const;
};

struct SweepRecord {
  double param = 0.0;
  double s = 0.0;
  double z = 0.0;
  double e_x = 0.0;
  double e_y = 0.0;
  double i_ab = 0.0;

  bool operator==(const SweepRecord&) const = default;
};

/// The state a sweep evaluates at one grid point.
TwoQubitDensity sweep_state(const SweepConfig& cfg, double param);

/// Evaluates every grid point, in parallel when cfg.threads != 1. The result
/// is ordered by grid index and does not depend on the thread count.
std::vector<SweepRecord> evaluate_sweep(const SweepConfig& cfg);

inline constexpr std::string_view kCsvHeader = "param,s,z,e_x,e_y,i_ab";

/// One value in the CSV's fixed 12-digit scientific notation.
std::string format_value(double v);
std::string format_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> parse_csv(std::string_view text);

void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(const std::filesystem::path& path);

/// Path of the plot script that belongs to a CSV (same basename, .gp).
std::filesystem::path plot_script_path(const std::filesystem::path& csv_path);
std::string plot_script(const std::filesystem::path& csv_path, SweepMode mode);
/// Writes the gnuplot script next to an existing CSV and returns its path.
std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path, SweepMode mode);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::filesystem::path csv;
  std::filesystem::path script;
};

SweepResult run_sweep(const SweepConfig& cfg);

/// A named figure panel with its caption parameters.
struct FigureRun {
  std::string name;
  SweepConfig config;
};

/// Sweeps that reproduce every figure panel, writing into `dir`.
std::vector<FigureRun> figure_runs(const std::filesystem::path& dir, unsigned threads = 1);

}  // namespace neur

namespace neur {

/// Optional settings from one source (flags or a JSON config file). Textual
/// fields keep the CLI syntax: grid "start:stop:points", rb "<v>|track".
struct SweepOverrides {
  std::optional<std::string> mode;
  std::optional<std::string> grid;
  std::optional<double> nu;
  std::optional<std::string> rb;
  std::optional<double> g_over_gamma;
  std::optional<std::string> bell;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

/// Reads a JSON object with the keys mode, grid, nu, rb, g_over_gamma, bell,
/// out, threads. Unknown keys are rejected.
SweepOverrides parse_config_json(std::string_view text);

/// Fields set in `top` replace those in `base`.
SweepOverrides merge(SweepOverrides base, const SweepOverrides& top);

/// Builds a validated config: mode defaults first, then the overrides.
SweepConfig resolve_config(const SweepOverrides& settings);

}  // namespace neur
