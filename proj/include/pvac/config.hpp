#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvac/initial_data.hpp"
#include "pvac/parabolic_solver.hpp"
#include "pvac/sweep.hpp"

namespace pvac {

inline constexpr int kSchemaVersion = 1;

struct SweepSection {
  std::vector<double> epsilons;
  std::vector<int> grids;
  CompareNorm compare_norm = CompareNorm::PlainL2;
  DtRule dt_rule = DtRule::Fixed;
};

struct OutputSection {
  std::string directory = "pvac_out";
  int cadence = 1;
  std::vector<std::string> diagnostics{"mass", "momentum", "entropy", "vacuum_slope", "energy"};
};

/// Tolerances of the verify suite; each can be overridden from the config.
struct VerifyTolerances {
  double compat_order = 0.9;
  double compat_error = 5e-3;
  double momentum = 1e-6;
  double mass = 1e-12;
  double entropy_ratio = 3.5;
  double vacuum_low = 0.5;
  double vacuum_high = 2.0;
  double energy_ratio = 4.0;
  double cauchy_rate = 0.5;
  double stability_linearity = 0.1;
  double stability_rate = 0.2;
  double hardy_bound = 100.0;
  double hardy_change = 0.05;
  double relaxation_constant = 1.0 + 1e-8;
  double mms_order = 1.5;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  double gamma = 2.0;
  ProfileFamily family = ProfileFamily::Polynomial;
  double amplitude = 1.0;
  std::vector<double> coefficients;
  double kappa = 0.1;
  AnalyticFunction u0 = AnalyticFunction::sine(0.1, 2.0);
  AnalyticFunction s0 = AnalyticFunction::polynomial({0.0, 0.2, 0.1});
  int n_cells = 128;
  std::optional<double> dt;   // exactly one of dt / cfl after resolution
  std::optional<double> cfl;
  TimeScheme scheme = TimeScheme::ImplicitEuler;
  double newton_tol = 1e-12;
  int newton_max = 25;
  double epsilon = 0.0;
  std::optional<SweepSection> sweep;
  double horizon = 0.05;
  OutputSection outputs;
  std::uint64_t seed = 0;
  VerifyTolerances verify;
};

/// Parses and validates a config document. Throws ConfigInvalid whose message
/// names the line and JSON pointer of the offending field.
RunConfig parse_config(const std::string& text, const std::string& source_name = "<config>");
RunConfig load_config(const std::string& path);

/// Fully resolved config (every default written out).
nlohmann::json to_json(const RunConfig& config);

/// Physical data and grid described by the config.
InitialData make_initial_data(const RunConfig& config);
RunOptions make_run_options(const RunConfig& config, const InitialData& data, const Grid1D& grid);

/// 1-based line of the value at `pointer` in `text`, 0 if not found.
int locate_line(const std::string& text, const std::string& pointer);

std::string to_string(TimeScheme scheme);
std::string to_string(ProfileFamily family);

}  // namespace pvac
