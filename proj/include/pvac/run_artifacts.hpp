#pragma once

#include <string>

#include <json.hpp>

#include "pvac/config.hpp"
#include "pvac/parabolic_solver.hpp"

namespace pvac {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitEarly = 2;

struct RunOutcome {
  int exit_code = kExitOk;
  std::string directory;
  RunResult result;
  nlohmann::json manifest;
};

/// Runs the config and writes snapshots.csv, snapshots.bin, energy.csv,
/// diagnostics.json and manifest.json into `out_dir`, each atomically.
RunOutcome run_single(const RunConfig& config, const std::string& out_dir);

/// Diagnostic summary of a finished run (deterministic; no wall times).
nlohmann::json summarize_run(const RunConfig& config, const InitialData& data, const Grid1D& grid,
                             const RunResult& result);

/// One run_single per ladder rung in rung_XX directories plus
/// sweep_report.json. Exit 2 if any rung stops early.
int run_sweep(const RunConfig& config, const std::string& out_dir, int jobs,
              nlohmann::json* report_out = nullptr);

/// x,u1,...,u4 at the grid nodes.
std::string compat_csv(const RunConfig& config);

/// Energy series re-evaluated from a stored snapshots.bin.
std::string energy_from_frames(const RunConfig& config, const std::string& frames_path);

}  // namespace pvac
