#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"
#include "pvac/parabolic_solver.hpp"

namespace pvac {

enum class DtRule { Fixed, Cfl };
enum class CompareNorm { PlainL2, Weighted };

struct SweepPlan {
  std::vector<double> epsilons;
  std::vector<int> grids;
  DtRule dt_rule = DtRule::Fixed;
  double cfl = 0.25;
  CompareNorm compare_norm = CompareNorm::PlainL2;
  double weight_power = 0.5;  // p in ||omega^p f|| for the weighted comparison
};

/// 0.1 * 2^-k, k = 0..rungs-1.
std::vector<double> default_ladder(int rungs = 7);

/// Throws InvalidArgument unless the ladder is positive, strictly
/// decreasing and has at least 3 rungs.
void validate_ladder(const std::vector<double>& epsilons);

struct RungResult {
  double epsilon = 0.0;
  RunResult run;
  [[nodiscard]] bool valid() const { return run.completed; }
};

/// dt for a plan: the fixed step of `options`, or the CFL advisory step of the
/// initial state, shared by every rung.
double plan_dt(const SweepPlan& plan, const InitialData& data, const Grid1D& grid,
               const RunOptions& options);

/// One run per epsilon with everything else shared. Rungs run on up to `jobs`
/// threads; results are stored by rung index.
std::vector<RungResult> run_ladder(const SweepPlan& plan, const InitialData& data,
                                   const Grid1D& grid, const RunOptions& options, int jobs = 1);

struct CauchyReport {
  std::vector<double> epsilons;
  std::vector<double> distances;  // d_k = ||v^eps_k - v^eps_{k+1}|| at the final time
  bool monotone = false;          // d_k nonincreasing
  double rate = 0.0;              // least-squares p in d_k ~ eps_k^p
  double total = 0.0;             // sum of d_k
  double t_final = 0.0;
};

double field_distance(const std::vector<double>& a, const std::vector<double>& b, const Grid1D& grid,
                      CompareNorm norm, const WeightField& weight, double weight_power);

/// Throws RunInvalid if any rung stopped before the horizon.
CauchyReport cauchy_from_rungs(const std::vector<RungResult>& rungs, const SweepPlan& plan,
                               const InitialData& data, const Grid1D& grid);

CauchyReport cauchy_in_epsilon(const SweepPlan& plan, const InitialData& data, const Grid1D& grid,
                               const RunOptions& options, int jobs = 1);

struct Extrapolation {
  std::vector<double> field;
  double error_bar = 0.0;
  double rate = 0.0;
  std::vector<double> local_rates;
  double distance_to_smallest = 0.0;  // ||field - v^eps_min||
};

/// Richardson step on the last two rungs with the local rate of the last
/// three, p = log(d_{m-2}/d_{m-1}) / log(eps ratio):
/// v0 = v_min - (v_prev - v_min) / (r^p - 1), r = eps_prev / eps_min,
/// error bar d_last / (r^p - 1). Throws RateUnstable when the local rates
/// spread by 50% or more of their mean, InvalidArgument with fewer than 3 rungs.
Extrapolation extrapolate_limit(const std::vector<double>& epsilons,
                                const std::vector<std::vector<double>>& fields, const Grid1D& grid,
                                CompareNorm norm, const WeightField& weight, double weight_power = 0.5);

struct RefinementLevel {
  int n_cells = 0;
  double dt = 0.0;
};

/// Levels n_k with dt_k = dt0 * n_0 / n_k.
std::vector<RefinementLevel> coupled_levels(const std::vector<int>& grids, double dt0);

/// Exact nodal field used in place of self-convergence.
using ExactField = std::function<double(double x, double t)>;

struct RefinementReport {
  std::vector<RefinementLevel> levels;
  std::vector<double> errors;  // vs exact, or successive differences on the coarser grid
  std::vector<double> orders;  // log2 of consecutive error ratios (per halving of dx)
  double observed_order = 0.0; // order of the finest pair
  bool pre_asymptotic = false; // orders disagree by more than 25% or errors do not decrease
  bool used_exact = false;
};

/// Runs every level to the horizon and compares final velocities in the
/// weighted norm ||omega^p e||. Levels must be nested (each n divides the
/// next). With `exact` the error of each level is measured against it,
/// otherwise against the next finer level restricted to the coarse nodes.
/// Throws RunInvalid when a level stops early.
RefinementReport refinement_study(const InitialData& data, const std::vector<RefinementLevel>& levels,
                                  const RunOptions& options, double weight_power,
                                  const ExactField& exact = {},
                                  const std::function<SourceTerm(const Grid1D&)>& source_for = {},
                                  int jobs = 1);

/// v* = sin(pi x) e^-t, eta* = x + sin(pi x)(1 - e^-t), and the continuous
/// forcing that makes v* an exact solution of the regularized equation.
struct ManufacturedSolution {
  InitialData data;
  double epsilon = 0.0;

  [[nodiscard]] double velocity(double x, double t) const;
  [[nodiscard]] double flow_map(double x, double t) const;
  [[nodiscard]] double forcing(double x, double t) const;
  [[nodiscard]] SourceTerm source(const Grid1D& grid) const;
  /// Data identical to `base` except u0 = v*(., 0).
  static InitialData initial_data(const InitialData& base);
};

/// Calls body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace pvac
