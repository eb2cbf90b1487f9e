#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pvac/config.hpp"
#include "pvac/errors.hpp"
#include "pvac/run_artifacts.hpp"
#include "pvac/serialization.hpp"
#include "pvac/verification.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string snapshots;
};

pvac::RunConfig load(const Flags& f) {
  auto cfg = f.config.empty() ? pvac::parse_config("{\"schema_version\": 1}", "<defaults>")
                              : pvac::load_config(f.config);
  if (f.seed) {
    cfg.seed = *f.seed;
  }
  if (!f.out.empty()) {
    cfg.outputs.directory = f.out;
  }
  return cfg;
}

int cmd_run(const Flags& f) {
  const auto cfg = load(f);
  const auto outcome = pvac::run_single(cfg, cfg.outputs.directory);
  if (outcome.exit_code == pvac::kExitOk) {
    std::printf("run complete: t = %g, %ld steps, outputs in %s\n", outcome.result.t_valid,
                outcome.result.n_steps_taken, outcome.directory.c_str());
  } else {
    std::printf("run stopped early at t = %g: %s (outputs in %s)\n", outcome.result.t_valid,
                outcome.result.termination_reason.c_str(), outcome.directory.c_str());
  }
  return outcome.exit_code;
}

int cmd_sweep(const Flags& f) {
  const auto cfg = load(f);
  nlohmann::json report;
  const int code = pvac::run_sweep(cfg, cfg.outputs.directory, f.jobs, &report);
  std::printf("sweep of %zu rungs written to %s\n", report["rungs"].size(), cfg.outputs.directory.c_str());
  if (report["cauchy"].contains("distances")) {
    std::printf("cauchy rate %.4g, monotone %s\n", report["cauchy"]["rate"].get<double>(),
                report["cauchy"]["monotone"].get<bool>() ? "yes" : "no");
  }
  return code;
}

int cmd_verify(const Flags& f) {
  const auto cfg = load(f);
  pvac::VerifySettings s;
  s.gamma = cfg.gamma;
  s.seed = cfg.seed;
  s.jobs = f.jobs;
  s.tol = cfg.verify;
  const auto results = pvac::run_verify_suite(s);
  std::cout << pvac::format_table(results);
  bool all = true;
  nlohmann::json report = {{"gamma", s.gamma}, {"seed", s.seed}};
  for (const auto& r : results) {
    all = all && r.passed;
    report["criteria"].push_back(
        {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"metrics", r.metrics}});
  }
  if (!f.out.empty()) {
    std::filesystem::create_directories(f.out);
    pvac::write_atomic((std::filesystem::path(f.out) / "verify_report.json").string(), report.dump(2) + "\n");
  }
  std::printf("%s\n", all ? "all checks passed" : "some checks failed");
  return all ? 0 : 1;
}

int cmd_compat(const Flags& f) {
  std::cout << pvac::compat_csv(load(f));
  return 0;
}

int cmd_energy(const Flags& f) {
  const auto cfg = load(f);
  const std::string path = f.snapshots.empty()
                               ? (std::filesystem::path(cfg.outputs.directory) / "snapshots.bin").string()
                               : f.snapshots;
  std::cout << pvac::energy_from_frames(cfg, path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian vacuum gas dynamics solver and verification harness"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "run configuration (JSON)");
    sub->add_option("--out", flags.out, "output directory (overrides outputs.directory)");
    sub->add_option("--jobs", flags.jobs, "parallel child runs")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "seed for randomized families");
  };
  auto* run = app.add_subcommand("run", "single run with snapshots, energy, diagnostics, manifest");
  auto* sweep = app.add_subcommand("sweep", "vanishing-viscosity ladder and refinement study");
  auto* verify = app.add_subcommand("verify", "property suite with a pass/fail table");
  auto* compat = app.add_subcommand("compat", "print compatibility fields u_1..u_4 as CSV");
  auto* energy = app.add_subcommand("energy", "re-evaluate the energy over stored snapshots");
  for (auto* sub : {run, sweep, verify, compat, energy}) {
    add_common(sub);
  }
  energy->add_option("--snapshots", flags.snapshots, "snapshots.bin (default: <out>/snapshots.bin)");
  for (auto* sub : {run, sweep, compat, energy}) {
    sub->needs(sub->get_option("--config"));
  }

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    if (verify->parsed()) return cmd_verify(flags);
    if (compat->parsed()) return cmd_compat(flags);
    if (energy->parsed()) return cmd_energy(flags);
  } catch (const pvac::Error& e) {
    std::cerr << "pvac: " << e.what() << '\n';
    return pvac::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "pvac: " << e.what() << '\n';
    return pvac::kExitConfig;
  }
  return pvac::kExitConfig;
}
