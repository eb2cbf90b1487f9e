#include "pvac/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "pvac/errors.hpp"
#include "pvac/quadrature.hpp"

namespace pvac {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

std::vector<double> default_ladder(int rungs) {
  std::vector<double> eps(static_cast<std::size_t>(rungs));
  for (int k = 0; k < rungs; ++k) {
    eps[static_cast<std::size_t>(k)] = 0.1 * std::ldexp(1.0, -k);
  }
  return eps;
}

void validate_ladder(const std::vector<double>& epsilons) {
  if (epsilons.size() < 3) {
    fail(ErrorCode::InvalidArgument, "epsilon ladder needs at least 3 rungs");
  }
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0)) {
      fail(ErrorCode::InvalidArgument, "epsilon ladder must be positive");
    }
    if (k > 0 && !(epsilons[k] < epsilons[k - 1])) {
      fail(ErrorCode::InvalidArgument, "epsilon ladder must be strictly decreasing");
    }
  }
}

double plan_dt(const SweepPlan& plan, const InitialData& data, const Grid1D& grid,
               const RunOptions& options) {
  if (plan.dt_rule == DtRule::Cfl) {
    return advisory_dt(initial_state(grid, data), data, plan.cfl);
  }
  return options.config.dt;
}

std::vector<RungResult> run_ladder(const SweepPlan& plan, const InitialData& data,
                                   const Grid1D& grid, const RunOptions& options, int jobs) {
  validate_ladder(plan.epsilons);
  RunOptions shared = options;
  shared.config.dt = plan_dt(plan, data, grid, options);
  std::vector<RungResult> rungs(plan.epsilons.size());
  parallel_for(rungs.size(), jobs, [&](std::size_t k) {
    RunOptions mine = shared;
    mine.config.epsilon = plan.epsilons[k];
    rungs[k].epsilon = plan.epsilons[k];
    rungs[k].run = run(data, grid, mine);
  });
  return rungs;
}

double field_distance(const std::vector<double>& a, const std::vector<double>& b, const Grid1D& grid,
                      CompareNorm norm, const WeightField& weight, double weight_power) {
  std::vector<double> d(a.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = a[j] - b[j];
  }
  return norm == CompareNorm::PlainL2 ? l2_norm(d, grid) : weighted_l2(d, weight_power, grid, weight);
}

namespace {

// Least-squares slope of log y against log x over the positive entries.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) {
      continue;
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  return (m >= 2 && denom > 0.0) ? (m * sxy - sx * sy) / denom : 0.0;
}

}  // namespace

CauchyReport cauchy_from_rungs(const std::vector<RungResult>& rungs, const SweepPlan& plan,
                               const InitialData& data, const Grid1D& grid) {
  for (const auto& r : rungs) {
    if (!r.valid()) {
      fail(ErrorCode::RunInvalid,
           "rung eps = " + std::to_string(r.epsilon) + " stopped early: " + r.run.termination_reason);
    }
  }
  const WeightField weight(data);
  CauchyReport rep;
  rep.t_final = rungs.front().run.snapshots.back().t;
  std::vector<double> eps_pairs;
  for (std::size_t k = 0; k + 1 < rungs.size(); ++k) {
    const auto& a = rungs[k].run.snapshots.back().v;
    const auto& b = rungs[k + 1].run.snapshots.back().v;
    const double d = field_distance(a, b, grid, plan.compare_norm, weight, plan.weight_power);
    rep.distances.push_back(d);
    eps_pairs.push_back(rungs[k].epsilon);
    rep.total += d;
  }
  for (const auto& r : rungs) {
    rep.epsilons.push_back(r.epsilon);
  }
  rep.monotone = true;
  for (std::size_t k = 1; k < rep.distances.size(); ++k) {
    if (rep.distances[k] > rep.distances[k - 1]) {
      rep.monotone = false;
    }
  }
  rep.rate = log_log_slope(eps_pairs, rep.distances);
  return rep;
}

CauchyReport cauchy_in_epsilon(const SweepPlan& plan, const InitialData& data, const Grid1D& grid,
                               const RunOptions& options, int jobs) {
  return cauchy_from_rungs(run_ladder(plan, data, grid, options, jobs), plan, data, grid);
}

Extrapolation extrapolate_limit(const std::vector<double>& epsilons,
                                const std::vector<std::vector<double>>& fields, const Grid1D& grid,
                                CompareNorm norm, const WeightField& weight, double weight_power) {
  if (epsilons.size() < 3 || fields.size() != epsilons.size()) {
    fail(ErrorCode::InvalidArgument, "extrapolation needs at least 3 rungs with one field each");
  }
  std::vector<double> d;
  for (std::size_t k = 0; k + 1 < fields.size(); ++k) {
    d.push_back(field_distance(fields[k], fields[k + 1], grid, norm, weight, weight_power));
  }
  Extrapolation ex;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) {
    const double r = std::log(epsilons[k] / epsilons[k + 1]);
    ex.local_rates.push_back(std::log(d[k] / d[k + 1]) / r);
  }
  double mean = 0.0;
  for (double p : ex.local_rates) {
    mean += p;
  }
  mean /= static_cast<double>(ex.local_rates.size());
  const auto [lo, hi] = std::minmax_element(ex.local_rates.begin(), ex.local_rates.end());
  if (!std::isfinite(mean) || !(mean > 0.0) || !(*hi - *lo < 0.5 * mean)) {
    fail(ErrorCode::RateUnstable, "local epsilon rates spread too widely to extrapolate");
  }
  // The finest pair is closest to the asymptotic regime.
  ex.rate = ex.local_rates.back();

  const std::size_t m = fields.size() - 1;
  const double factor = std::pow(epsilons[m - 1] / epsilons[m], ex.rate) - 1.0;
  const auto& v_min = fields[m];
  const auto& v_prev = fields[m - 1];
  ex.field.resize(v_min.size());
  for (std::size_t j = 0; j < v_min.size(); ++j) {
    ex.field[j] = v_min[j] - (v_prev[j] - v_min[j]) / factor;
  }
  ex.error_bar = d.back() / factor;
  ex.distance_to_smallest = field_distance(ex.field, v_min, grid, norm, weight, weight_power);
  return ex;
}

std::vector<RefinementLevel> coupled_levels(const std::vector<int>& grids, double dt0) {
  std::vector<RefinementLevel> levels;
  for (int n : grids) {
    levels.push_back({n, dt0 * grids.front() / n});
  }
  return levels;
}

RefinementReport refinement_study(const InitialData& data, const std::vector<RefinementLevel>& levels,
                                  const RunOptions& options, double weight_power,
                                  const ExactField& exact,
                                  const std::function<SourceTerm(const Grid1D&)>& source_for, int jobs) {
  if (levels.size() < 3) {
    fail(ErrorCode::InvalidArgument, "refinement study needs at least 3 levels");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].n_cells < levels[i - 1].n_cells || levels[i].n_cells % levels[i - 1].n_cells != 0) {
      fail(ErrorCode::InvalidArgument, "refinement grids must be nested");
    }
  }
  std::vector<RunResult> runs(levels.size());
  parallel_for(levels.size(), jobs, [&](std::size_t i) {
    const Grid1D grid(levels[i].n_cells);
    RunOptions mine = options;
    mine.config.dt = levels[i].dt;
    if (source_for) {
      mine.source = source_for(grid);
    }
    runs[i] = run(data, grid, mine);
  });
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].completed) {
      fail(ErrorCode::RunInvalid, "refinement level n = " + std::to_string(levels[i].n_cells) +
                                      " stopped early: " + runs[i].termination_reason);
    }
  }

  RefinementReport rep;
  rep.levels = levels;
  rep.used_exact = static_cast<bool>(exact);
  const WeightField weight(data);
  const std::size_t count = exact ? levels.size() : levels.size() - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const Grid1D coarse(levels[i].n_cells);
    const auto& final_snap = runs[i].snapshots.back();
    std::vector<double> err(coarse.n_nodes());
    if (exact) {
      for (std::size_t j = 0; j < err.size(); ++j) {
        err[j] = final_snap.v[j] - exact(coarse.x(j), final_snap.t);
      }
    } else {
      const auto& fine = runs[i + 1].snapshots.back().v;
      const std::size_t stride = static_cast<std::size_t>(levels[i + 1].n_cells / levels[i].n_cells);
      for (std::size_t j = 0; j < err.size(); ++j) {
        err[j] = final_snap.v[j] - fine[j * stride];
      }
    }
    rep.errors.push_back(weighted_l2(err, weight_power, coarse, weight));
  }
  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i) {
    const double refine = std::log2(static_cast<double>(levels[i + 1].n_cells) / levels[i].n_cells);
    rep.orders.push_back(std::log2(rep.errors[i] / rep.errors[i + 1]) / refine);
    if (!(rep.errors[i + 1] < rep.errors[i])) {
      rep.pre_asymptotic = true;
    }
  }
  rep.observed_order = rep.orders.empty() ? 0.0 : rep.orders.back();
  if (rep.orders.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(rep.orders.begin(), rep.orders.end());
    if (*hi - *lo > 0.25 * std::abs(rep.observed_order)) {
      rep.pre_asymptotic = true;
    }
  }
  return rep;
}

double ManufacturedSolution::velocity(double x, double t) const {
  return std::sin(std::numbers::pi * x) * std::exp(-t);
}

double ManufacturedSolution::flow_map(double x, double t) const {
  return x + std::sin(std::numbers::pi * x) * (1.0 - std::exp(-t));
}

double ManufacturedSolution::forcing(double x, double t) const {
  constexpr double pi = std::numbers::pi;
  const double gamma = data.gas.gamma;
  const double decay = std::exp(-t);
  const double v = std::sin(pi * x) * decay;
  const double v_x = pi * std::cos(pi * x) * decay;
  const double v_xx = -pi * pi * v;
  const double eta_x = 1.0 + pi * std::cos(pi * x) * (1.0 - decay);
  const double eta_xx = -pi * pi * std::sin(pi * x) * (1.0 - decay);
  const double es = std::exp(data.s0(x));
  const double g = es * (std::pow(eta_x, -gamma) - epsilon * v_x);
  const double g_x = data.s0.derivative(x, 1) * g +
                     es * (-gamma * std::pow(eta_x, -gamma - 1.0) * eta_xx - epsilon * v_xx);
  const double w = std::max(0.0, data.omega(x));
  const double accel = -data.gas.two_plus_two_mu() * data.omega.derivative(x, 1) * g - w * g_x;
  return -v - accel;
}

SourceTerm ManufacturedSolution::source(const Grid1D& grid) const {
  const ManufacturedSolution self = *this;
  const std::vector<double> xs = grid.nodes();
  return [self, xs](double t) {
    std::vector<double> f(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      f[j] = self.forcing(xs[j], t);
    }
    return f;
  };
}

InitialData ManufacturedSolution::initial_data(const InitialData& base) {
  InitialData out = base;
  out.u0 = AnalyticFunction::sine(1.0, 1.0);
  return out;
}

}  // namespace pvac
