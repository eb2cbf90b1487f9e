#include "pvac/parabolic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "band_solver.hpp"
#include "pvac/errors.hpp"

namespace pvac {

namespace {

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) {
    if (!std::isfinite(x)) {
      return std::numeric_limits<double>::infinity();
    }
    m = std::max(m, std::abs(x));
  }
  return m;
}

void check_band(const std::vector<double>& values, const char* what) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] >= kEtaSlopeMin && values[j] <= kEtaSlopeMax)) {
      std::ostringstream msg;
      msg << what << " = " << values[j] << " at index " << j << " left [1/2, 3/2]";
      fail(ErrorCode::EtaSlopeOutOfBounds, msg.str());
    }
  }
}

double theta_of(TimeScheme scheme) { return scheme == TimeScheme::ImplicitEuler ? 1.0 : 0.5; }

}  // namespace

SolverState initial_state(const Grid1D& grid, const InitialData& data) {
  SolverState s;
  s.v.resize(grid.n_nodes());
  s.eta = grid.nodes();
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    s.v[j] = data.u0(grid.x(j));
  }
  s.eta_x = DiffOps(grid).apply(s.eta, 1);
  return s;
}

ParabolicOperator::ParabolicOperator(const Grid1D& grid, const InitialData& data, double epsilon)
    : grid_(grid),
      ops_(grid),
      gamma_(data.gas.gamma),
      flux_exponent_(data.gas.two_plus_two_mu()),
      epsilon_(epsilon) {
  if (epsilon < 0.0) {
    fail(ErrorCode::InvalidArgument, "epsilon must be non-negative");
  }
  const std::size_t n = grid.n_nodes();
  omega_.resize(n);
  omega_prime_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    omega_[j] = data.omega(grid.x(j));
    omega_prime_[j] = data.omega.derivative(grid.x(j), 1);
  }
  // The vacuum endpoints are structural zeros of the weight.
  omega_.front() = 0.0;
  omega_.back() = 0.0;
  const auto& half = grid.half_nodes();
  exp_s_half_.resize(half.size());
  for (std::size_t k = 0; k < half.size(); ++k) {
    exp_s_half_[k] = std::exp(data.s0(half[k]));
  }
}

std::vector<double> ParabolicOperator::half_slopes(const std::vector<double>& eta) const {
  const double inv_h = 1.0 / grid_.dx();
  std::vector<double> s(eta.size() - 1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] = (eta[k + 1] - eta[k]) * inv_h;
  }
  return s;
}

std::vector<double> ParabolicOperator::half_flux(const std::vector<double>& v,
                                                 const std::vector<double>& slopes) const {
  const double inv_h = 1.0 / grid_.dx();
  std::vector<double> g(slopes.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double vx = (v[k + 1] - v[k]) * inv_h;
    g[k] = exp_s_half_[k] * (std::pow(slopes[k], -gamma_) - epsilon_ * vx);
  }
  return g;
}

std::vector<double> ParabolicOperator::acceleration_from_flux(const std::vector<double>& g) const {
  const std::size_t n = grid_.n_nodes();
  const double inv_h = 1.0 / grid_.dx();
  const double c = flux_exponent_;
  std::vector<double> a(n);
  a.front() = -c * omega_prime_.front() * (1.5 * g[0] - 0.5 * g[1]);
  a.back() = -c * omega_prime_.back() * (1.5 * g[n - 2] - 0.5 * g[n - 3]);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double g_mid = 0.5 * (g[j - 1] + g[j]);
    const double g_x = (g[j] - g[j - 1]) * inv_h;
    a[j] = -c * omega_prime_[j] * g_mid - omega_[j] * g_x;
  }
  return a;
}

std::vector<double> ParabolicOperator::acceleration(const std::vector<double>& v,
                                                    const std::vector<double>& eta) const {
  return acceleration_from_flux(half_flux(v, half_slopes(eta)));
}

struct ParabolicOperator::Trial {
  std::vector<double> slopes;
  std::vector<double> accel;
  std::vector<double> residual;
  double norm = 0.0;
  bool admissible = true;
};

void ParabolicOperator::evaluate(Trial& trial, const std::vector<double>& v,
                                 const std::vector<double>& old_slopes,
                                 const std::vector<double>& v_old, const std::vector<double>& a_old,
                                 const std::vector<double>& src, const StepConfig& config) const {
  const double theta = theta_of(config.scheme);
  const double dt = config.dt;
  const double inv_h = 1.0 / grid_.dx();
  trial.slopes.resize(old_slopes.size());
  trial.admissible = true;
  for (std::size_t k = 0; k < old_slopes.size(); ++k) {
    const double dv_new = (v[k + 1] - v[k]) * inv_h;
    const double dv_old = (v_old[k + 1] - v_old[k]) * inv_h;
    trial.slopes[k] = old_slopes[k] + dt * (theta * dv_new + (1.0 - theta) * dv_old);
    if (!(trial.slopes[k] > 0.0)) {
      trial.admissible = false;
    }
  }
  if (!trial.admissible) {
    trial.norm = std::numeric_limits<double>::infinity();
    return;
  }
  trial.accel = acceleration_from_flux(half_flux(v, trial.slopes));
  trial.residual.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    double rhs = theta * trial.accel[j];
    if (theta < 1.0) {
      rhs += (1.0 - theta) * a_old[j];
    }
    if (!src.empty()) {
      rhs += src[j];
    }
    trial.residual[j] = v[j] - v_old[j] - dt * rhs;
  }
  trial.norm = max_abs(trial.residual);
}

SolverState ParabolicOperator::step(const SolverState& state, const StepConfig& config,
                                    const SourceTerm& source) const {
  if (!(config.dt > 0.0) || !(config.newton_tol > 0.0) || config.newton_max < 1) {
    fail(ErrorCode::InvalidArgument, "step config needs dt > 0, newton_tol > 0, newton_max >= 1");
  }
  const std::size_t n = grid_.n_nodes();
  if (state.v.size() != n || state.eta.size() != n) {
    fail(ErrorCode::InvalidArgument, "state size does not match grid");
  }
  const double theta = theta_of(config.scheme);
  const double dt = config.dt;
  const double t_new = state.t + dt;
  const double inv_h = 1.0 / grid_.dx();

  const auto old_slopes = half_slopes(state.eta);
  std::vector<double> a_old;
  if (theta < 1.0) {
    a_old = acceleration_from_flux(half_flux(state.v, old_slopes));
  }
  std::vector<double> src;
  if (source) {
    src = source(t_new);
    if (theta < 1.0) {
      const auto s_old = source(state.t);
      for (std::size_t j = 0; j < n; ++j) {
        src[j] = 0.5 * (src[j] + s_old[j]);
      }
    }
  }

  std::vector<double> v = state.v;
  Trial current;
  evaluate(current, v, old_slopes, state.v, a_old, src, config);
  if (!current.admissible) {
    fail(ErrorCode::EtaSlopeOutOfBounds, "flow map slope non-positive at step start");
  }

  detail::BandMatrix jac(n, 2, 2);
  const double c = flux_exponent_;
  int iters = 0;
  while (current.norm > config.newton_tol) {
    if (iters >= config.newton_max) {
      std::ostringstream msg;
      msg << "residual " << current.norm << " after " << iters << " iterations at t = " << t_new;
      fail(ErrorCode::NewtonDiverged, msg.str());
    }
    ++iters;

    // J = I - theta dt dA/dv, assembled through dA/dG (half nodes) and dG/dv.
    std::vector<double> q(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      q[k] = exp_s_half_[k] *
             (-gamma_ * std::pow(current.slopes[k], -gamma_ - 1.0) * theta * dt - epsilon_) * inv_h;
    }
    jac.set_zero();
    auto add_flux_dependence = [&](std::size_t row, std::size_t k, double dA_dg) {
      const double scale = -theta * dt * dA_dg;
      jac.add(row, k + 1, scale * q[k]);
      jac.add(row, k, -scale * q[k]);
    };
    for (std::size_t j = 0; j < n; ++j) {
      jac.add(j, j, 1.0);
    }
    add_flux_dependence(0, 0, -1.5 * c * omega_prime_[0]);
    add_flux_dependence(0, 1, 0.5 * c * omega_prime_[0]);
    add_flux_dependence(n - 1, n - 2, -1.5 * c * omega_prime_[n - 1]);
    add_flux_dependence(n - 1, n - 3, 0.5 * c * omega_prime_[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) {
      add_flux_dependence(j, j - 1, -0.5 * c * omega_prime_[j] + omega_[j] * inv_h);
      add_flux_dependence(j, j, -0.5 * c * omega_prime_[j] - omega_[j] * inv_h);
    }

    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      rhs[j] = -current.residual[j];
    }
    const auto delta = jac.solve(std::move(rhs));

    double lambda = 1.0;
    Trial trial;
    std::vector<double> v_trial(n);
    for (int halvings = 0;; ++halvings) {
      for (std::size_t j = 0; j < n; ++j) {
        v_trial[j] = v[j] + lambda * delta[j];
      }
      evaluate(trial, v_trial, old_slopes, state.v, a_old, src, config);
      if (trial.norm < current.norm || halvings >= 30) {
        break;
      }
      lambda *= 0.5;
    }
    if (!std::isfinite(trial.norm)) {
      fail(ErrorCode::NewtonDiverged, "no admissible damped Newton update");
    }
    if (trial.norm >= current.norm) {
      // Stalled at round-off level: accept only if already near tolerance.
      if (current.norm <= 1e3 * config.newton_tol) {
        break;
      }
      fail(ErrorCode::NewtonDiverged, "damped Newton stalled");
    }
    v = v_trial;
    current = std::move(trial);
  }

  SolverState next;
  next.t = t_new;
  next.v = v;
  next.eta.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    next.eta[j] = state.eta[j] + dt * (theta * v[j] + (1.0 - theta) * state.v[j]);
  }
  next.eta_x = ops_.apply(next.eta, 1);
  next.step_index = state.step_index + 1;
  next.newton_iters_last = iters;

  check_band(half_slopes(next.eta), "cell slope eta_x");
  check_band(next.eta_x, "nodal eta_x");
  return next;
}

std::vector<double> flux_potential(const SolverState& state, const InitialData& data, double epsilon) {
  const Grid1D grid(static_cast<int>(state.v.size()) - 1);
  check_band(state.eta_x, "nodal eta_x");
  const auto vx = DiffOps(grid).apply(state.v, 1);
  std::vector<double> g(state.v.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    g[j] = std::exp(data.s0(grid.x(j))) *
           (std::pow(state.eta_x[j], -data.gas.gamma) - epsilon * vx[j]);
  }
  return g;
}

std::vector<double> acceleration(const SolverState& state, const InitialData& data, double epsilon) {
  const Grid1D grid(static_cast<int>(state.v.size()) - 1);
  check_band(state.eta_x, "nodal eta_x");
  return ParabolicOperator(grid, data, epsilon).acceleration(state.v, state.eta);
}

SolverState step(const SolverState& state, const StepConfig& config, const InitialData& data,
                 const SourceTerm& source) {
  const Grid1D grid(static_cast<int>(state.v.size()) - 1);
  return ParabolicOperator(grid, data, config.epsilon).step(state, config, source);
}

double advisory_dt(const SolverState& state, const InitialData& data, double cfl) {
  const Grid1D grid(static_cast<int>(state.v.size()) - 1);
  const double gamma = data.gas.gamma;
  double c_max = 0.0;
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    const double x = grid.x(j);
    const double c2 = gamma * std::max(0.0, data.omega(x)) * std::exp(data.s0(x)) /
                      std::pow(state.eta_x[j], gamma - 1.0);
    c_max = std::max(c_max, std::sqrt(c2));
  }
  return cfl * grid.dx() / std::max(1.0, c_max);
}

std::vector<double> reconstruct_eta(const std::vector<double>& x0,
                                    const std::vector<std::vector<double>>& v_history, double dt,
                                    TimeScheme scheme) {
  std::vector<double> eta = x0;
  const double theta = theta_of(scheme);
  for (std::size_t m = 1; m < v_history.size(); ++m) {
    for (std::size_t j = 0; j < eta.size(); ++j) {
      eta[j] += dt * (theta * v_history[m][j] + (1.0 - theta) * v_history[m - 1][j]);
    }
  }
  return eta;
}

namespace {

Snapshot snapshot_of(const SolverState& s, const std::string& tag) {
  return Snapshot{s.t, s.v, s.eta, s.eta_x, tag};
}

}  // namespace

RunResult run_from(const SolverState& start, const InitialData& data, const Grid1D& grid,
                   const RunOptions& options) {
  if (!(options.horizon > 0.0)) {
    fail(ErrorCode::InvalidArgument, "run horizon must be positive");
  }
  if (options.output_every < 1) {
    fail(ErrorCode::InvalidArgument, "output_every must be >= 1");
  }
  const long n_steps = std::max(
      1L, static_cast<long>(std::ceil(options.horizon / options.config.dt - 1e-9)));
  StepConfig config = options.config;
  config.dt = options.horizon / static_cast<double>(n_steps);

  RunResult result;
  result.dt = config.dt;
  result.n_steps_planned = n_steps;
  const ParabolicOperator op(grid, data, config.epsilon);

  SolverState state = start;
  result.snapshots.push_back(snapshot_of(state, options.source_tag));
  for (long m = 1; m <= n_steps; ++m) {
    try {
      state = op.step(state, config, options.source);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EtaSlopeOutOfBounds && e.code() != ErrorCode::NewtonDiverged) {
        throw;
      }
      result.termination_reason = std::string(to_string(e.code()));
      result.t_valid = state.t;
      return result;
    }
    // Stepping accumulates t; pin it to the exact grid time.
    state.t = start.t + static_cast<double>(m) * config.dt;
    result.n_steps_taken = m;
    result.newton_iterations += state.newton_iters_last;
    if (m % options.output_every == 0 || m == n_steps) {
      result.snapshots.push_back(snapshot_of(state, options.source_tag));
    }
  }
  result.completed = true;
  result.t_valid = state.t;
  return result;
}

RunResult run(const InitialData& data, const Grid1D& grid, const RunOptions& options) {
  return run_from(initial_state(grid, data), data, grid, options);
}

}  // namespace pvac
