#include "pvac/run_artifacts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>

#include "pvac/compatibility.hpp"
#include "pvac/diagnostics.hpp"
#include "pvac/energy.hpp"
#include "pvac/errors.hpp"
#include "pvac/serialization.hpp"
#include "pvac/sweep.hpp"

namespace pvac {

using nlohmann::json;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool wants(const RunConfig& config, const std::string& name) {
  const auto& d = config.outputs.diagnostics;
  return std::find(d.begin(), d.end(), name) != d.end();
}

std::string rung_name(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "rung_%02zu", k);
  return buf;
}

}  // namespace

json summarize_run(const RunConfig& config, const InitialData& data, const Grid1D& grid,
                   const RunResult& result) {
  json out = {{"completed", result.completed}, {"t_valid", result.t_valid},
              {"termination_reason", result.termination_reason}, {"dt", result.dt},
              {"n_steps_planned", result.n_steps_planned}, {"n_steps_taken", result.n_steps_taken},
              {"newton_iterations", result.newton_iterations},
              {"n_snapshots", result.snapshots.size()}};
  double lo = 1e300, hi = -1e300;
  for (const auto& s : result.snapshots) {
    for (double e : s.eta_x) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  out["eta_x_range"] = {lo, hi};

  if (wants(config, "mass")) {
    const double m0 = lagrangian_mass(data, grid);
    double worst = 0.0;
    for (const auto& s : result.snapshots) {
      worst = std::max(worst, std::abs(readback(s, data).mass - m0) / m0);
    }
    out["mass"] = {{"lagrangian", m0}, {"max_relative_error", worst}};
  }
  if (wants(config, "momentum")) {
    const double p0 = momentum(result.snapshots.front().v, data, grid);
    double drift = 0.0;
    for (const auto& s : result.snapshots) {
      drift = std::max(drift, std::abs(momentum(s.v, data, grid) - p0));
    }
    out["momentum"] = {{"initial", p0}, {"max_drift", drift}};
  }
  if (wants(config, "entropy")) {
    double e = 0.0;
    for (const auto& s : result.snapshots) {
      e = std::max(e, entropy_particle_error(readback(s, data), data));
    }
    out["entropy"] = {{"max_particle_error", e}};
  }
  if (wants(config, "vacuum_slope")) {
    const auto base = vacuum_slope(readback(result.snapshots.front(), data));
    const auto last = vacuum_slope(readback(result.snapshots.back(), data));
    double rlo = 1e300, rhi = -1e300;
    for (const auto& s : result.snapshots) {
      const auto sl = vacuum_slope(readback(s, data));
      for (const double q : {sl.first / base.first, sl.second / base.second}) {
        rlo = std::min(rlo, q);
        rhi = std::max(rhi, q);
      }
    }
    out["vacuum_slope"] = {{"initial", {base.first, base.second}},
                           {"final", {last.first, last.second}},
                           {"ratio_range", {rlo, rhi}}};
  }
  return out;
}

RunOutcome run_single(const RunConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  outcome.directory = out_dir;
  const std::string started = utc_now();
  const auto data = make_initial_data(config);
  const Grid1D grid(config.n_cells);
  const auto options = make_run_options(config, data, grid);
  outcome.result = run(data, grid, options);
  const auto& result = outcome.result;

  std::filesystem::create_directories(out_dir);
  json diagnostics = summarize_run(config, data, grid, result);

  std::string energy_text = "t,p,s,k,value,total\n";
  if (wants(config, "energy")) {
    try {
      const auto series = track(result.snapshots, data, grid, config.epsilon);
      energy_text = energy_csv(series);
      diagnostics["energy"] = {{"e0", series.e0}, {"sup", series.sup_total}, {"ratio", series.ratio},
                               {"binding_e0", series.e0_binding}, {"binding_sup", series.sup_binding},
                               {"binding_ratio", series.binding_ratio},
                               {"evaluations", series.series.size()}};
    } catch (const Error& e) {
      diagnostics["energy"] = {{"error", e.what()}};
    }
  }

  const std::pair<std::string, std::string> files[] = {
      {"snapshots.csv", snapshots_csv(result.snapshots, grid)},
      {"snapshots.bin", encode_frames(result.snapshots)},
      {"energy.csv", energy_text},
      {"diagnostics.json", diagnostics.dump(2) + "\n"},
  };
  json inventory = json::array();
  for (const auto& [name, contents] : files) {
    write_atomic((std::filesystem::path(out_dir) / name).string(), contents);
    inventory.push_back({{"name", name}, {"bytes", contents.size()}, {"sha256", sha256_hex(contents)}});
  }

  outcome.exit_code = result.completed ? kExitOk : kExitEarly;
  outcome.manifest = {{"tool", "pvac"},
                      {"version", kToolVersion},
                      {"config", to_json(config)},
                      {"started", started},
                      {"finished", utc_now()},
                      {"horizon", config.horizon},
                      {"t_valid", result.t_valid},
                      {"completed", result.completed},
                      {"termination_reason", result.termination_reason},
                      {"exit_code", outcome.exit_code},
                      {"seed", config.seed},
                      {"files", inventory},
                      {"diagnostics", diagnostics}};
  write_atomic((std::filesystem::path(out_dir) / "manifest.json").string(), outcome.manifest.dump(2) + "\n");
  return outcome;
}

int run_sweep(const RunConfig& config, const std::string& out_dir, int jobs, json* report_out) {
  if (!config.sweep) {
    fail(ErrorCode::ConfigInvalid, "sweep verb needs a 'sweep' section in the config");
  }
  const auto& sec = *config.sweep;
  std::filesystem::create_directories(out_dir);

  RunConfig shared = config;
  if (sec.dt_rule == DtRule::Cfl) {
    // One dt for every rung, taken from the initial state.
    const auto data = make_initial_data(config);
    const Grid1D grid(config.n_cells);
    shared.dt = advisory_dt(initial_state(grid, data), data, config.cfl.value_or(0.25));
    shared.cfl.reset();
  }

  std::vector<RunOutcome> outcomes(sec.epsilons.size());
  parallel_for(outcomes.size(), jobs, [&](std::size_t k) {
    RunConfig rung = shared;
    rung.epsilon = sec.epsilons[k];
    rung.sweep.reset();
    rung.outputs.directory = (std::filesystem::path(out_dir) / rung_name(k)).string();
    outcomes[k] = run_single(rung, rung.outputs.directory);
  });

  json report = {{"ladder", sec.epsilons},
                 {"compare_norm", sec.compare_norm == CompareNorm::Weighted ? "weighted" : "plain_l2"}};
  bool all_valid = true;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& r = outcomes[k].result;
    all_valid = all_valid && r.completed;
    report["rungs"].push_back({{"epsilon", sec.epsilons[k]},
                               {"directory", rung_name(k)},
                               {"manifest", rung_name(k) + "/manifest.json"},
                               {"valid", r.completed},
                               {"t_valid", r.t_valid},
                               {"termination_reason", r.termination_reason}});
  }

  const auto data = make_initial_data(config);
  const Grid1D grid(config.n_cells);
  if (all_valid) {
    SweepPlan plan;
    plan.epsilons = sec.epsilons;
    plan.compare_norm = sec.compare_norm;
    std::vector<RungResult> rungs;
    std::vector<std::vector<double>> fields;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      rungs.push_back({sec.epsilons[k], outcomes[k].result});
      fields.push_back(outcomes[k].result.snapshots.back().v);
    }
    const auto cauchy = cauchy_from_rungs(rungs, plan, data, grid);
    report["cauchy"] = {{"distances", cauchy.distances}, {"monotone", cauchy.monotone},
                        {"rate", cauchy.rate}, {"total", cauchy.total}, {"t_final", cauchy.t_final}};
    try {
      const auto ex = extrapolate_limit(sec.epsilons, fields, grid, sec.compare_norm, WeightField(data));
      report["extrapolation"] = {{"rate", ex.rate}, {"local_rates", ex.local_rates},
                                 {"error_bar", ex.error_bar},
                                 {"distance_to_smallest", ex.distance_to_smallest}};
    } catch (const Error& e) {
      report["extrapolation"] = {{"error", e.what()}};
    }
  } else {
    report["cauchy"] = {{"error", "one or more rungs stopped before the horizon"}};
  }

  if (sec.grids.size() >= 3) {
    try {
      const auto options = make_run_options(config, data, Grid1D(sec.grids.front()));
      const auto rep = refinement_study(data, coupled_levels(sec.grids, options.config.dt), options, 0.5,
                                        {}, {}, jobs);
      report["refinement"] = {{"grids", sec.grids}, {"errors", rep.errors}, {"orders", rep.orders},
                              {"pre_asymptotic", rep.pre_asymptotic}};
    } catch (const Error& e) {
      report["refinement"] = {{"error", e.what()}};
    }
  }

  write_atomic((std::filesystem::path(out_dir) / "sweep_report.json").string(), report.dump(2) + "\n");
  if (report_out) {
    *report_out = report;
  }
  return all_valid ? kExitOk : kExitEarly;
}

std::string compat_csv(const RunConfig& config) {
  const auto data = make_initial_data(config);
  const Grid1D grid(config.n_cells);
  const auto set = compute_compatibility(grid, data, config.epsilon);
  std::string out = "x";
  for (int k = 1; k <= set.order; ++k) {
    out += ",u" + std::to_string(k);
  }
  out += '\n';
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    out += format_double(grid.x(j));
    for (int k = 1; k <= set.order; ++k) {
      out += ',' + format_double(set.field(k)[j]);
    }
    out += '\n';
  }
  return out;
}

std::string energy_from_frames(const RunConfig& config, const std::string& frames_path) {
  const auto snapshots = decode_frames(read_file(frames_path));
  if (snapshots.empty()) {
    fail(ErrorCode::IoFailure, frames_path + ": no snapshot frames");
  }
  const auto data = make_initial_data(config);
  const Grid1D grid(static_cast<int>(snapshots.front().v.size()) - 1);
  return energy_csv(track(snapshots, data, grid, config.epsilon));
}

}  // namespace pvac
