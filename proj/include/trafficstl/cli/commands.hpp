#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace trafficstl::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kAllConform = 0,
  kSomeViolate = 1,
  kFailure = 2,
};

struct SimulateOptions {
  std::filesystem::path config;  ///< empty: built-in defaults
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<bool> comm_enabled;
};

struct MonitorOptions {
  std::filesystem::path traces_dir;
  std::string spec;                     ///< built-in name
  std::filesystem::path formula_file;  ///< used when `spec` is empty
  std::map<std::string, std::string> params;
  std::filesystem::path out_dir;
  std::size_t threads = 0;  ///< 0: default_thread_count()
};

struct StatsOptions {
  std::filesystem::path verdicts_dir;
  std::string channel;
  /// Report path; both `<stem>.json` and `<stem>.csv` are written.
  std::filesystem::path out;
};

struct SmoothOptions {
  std::filesystem::path in;
  double alpha = 0.3;
  std::filesystem::path out;
};

/// Each command reports progress on `log`, errors on `err`, and returns an
/// ExitCode instead of throwing.

/// Writes `<vehicle>.csv` per trace plus `scenario_summary.json`.
int cmd_simulate(const SimulateOptions& opt, std::ostream& log, std::ostream& err);

/// Writes `<vehicle>.verdict.csv`, `<vehicle>.verdict.json` and
/// `monitor_summary.json`. 0 when every monitored trace conforms, 1 otherwise.
int cmd_monitor(const MonitorOptions& opt, std::ostream& log, std::ostream& err);

/// Conformance report from a verdict directory and the traces it references.
int cmd_stats(const StatsOptions& opt, std::ostream& log, std::ostream& err);

/// `t,vehicle_id,speed,accel,jerk` with smoothed derived channels.
int cmd_smooth(const SmoothOptions& opt, std::ostream& log, std::ostream& err);

}  // namespace trafficstl::cli
