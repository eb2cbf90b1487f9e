#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pvac/diff_ops.hpp"
#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"

namespace pvac {

/// Admissible band for the flow-map slope; the well-posedness theory only
/// covers 1/2 <= eta_x <= 3/2.
inline constexpr double kEtaSlopeMin = 0.5;
inline constexpr double kEtaSlopeMax = 1.5;

enum class TimeScheme { ImplicitEuler, CrankNicolson };

struct StepConfig {
  double dt = 1e-3;
  double epsilon = 0.0;
  double newton_tol = 1e-10;
  int newton_max = 25;
  TimeScheme scheme = TimeScheme::ImplicitEuler;
};

/// Nodal Lagrangian fields at one time level.
struct SolverState {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> eta;
  std::vector<double> eta_x;
  long step_index = 0;
  int newton_iters_last = 0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> eta;
  std::vector<double> eta_x;
  std::string source_tag;  // non-empty for runs driven by a manufactured source
};

/// Additive nodal source on the right of v_t = A(v, eta), evaluated at time t.
using SourceTerm = std::function<std::vector<double>(double t)>;

/// v = u0, eta = x at the grid nodes.
SolverState initial_state(const Grid1D& grid, const InitialData& data);

/// Discrete right-hand side of the regularized momentum equation in the
/// factored form v_t = -(2+2mu) omega' G - omega G_x, where
/// G = exp(S0) (eta_x^-gamma - epsilon v_x).
///
/// G lives on the half nodes (flow-map slopes are cell differences of eta),
/// its nodal value is the average of the two neighbours and G_x the centered
/// difference; at x = 0, 1 the weight vanishes and G is extrapolated to
/// second order. The Jacobian is therefore tridiagonal except for one extra
/// entry in each boundary row.
class ParabolicOperator {
 public:
  ParabolicOperator(const Grid1D& grid, const InitialData& data, double epsilon);

  [[nodiscard]] const Grid1D& grid() const { return grid_; }
  [[nodiscard]] double epsilon() const { return epsilon_; }

  [[nodiscard]] std::vector<double> half_slopes(const std::vector<double>& eta) const;
  [[nodiscard]] std::vector<double> half_flux(const std::vector<double>& v,
                                              const std::vector<double>& slopes) const;
  [[nodiscard]] std::vector<double> acceleration_from_flux(const std::vector<double>& half_g) const;
  [[nodiscard]] std::vector<double> acceleration(const std::vector<double>& v,
                                                 const std::vector<double>& eta) const;

  /// Advances one step by damped Newton. Throws NewtonDiverged or
  /// EtaSlopeOutOfBounds; the input state is never modified.
  [[nodiscard]] SolverState step(const SolverState& state, const StepConfig& config,
                                 const SourceTerm& source = {}) const;

 private:
  struct Trial;
  void evaluate(Trial& trial, const std::vector<double>& v, const std::vector<double>& old_slopes,
                const std::vector<double>& v_old, const std::vector<double>& a_old,
                const std::vector<double>& src, const StepConfig& config) const;

  Grid1D grid_;
  DiffOps ops_;
  double gamma_;
  double flux_exponent_;  // 2 + 2 mu
  double epsilon_;
  std::vector<double> omega_;
  std::vector<double> omega_prime_;
  std::vector<double> exp_s_half_;
};

/// Nodal G = exp(S0) (eta_x^-gamma - epsilon v_x) from the stored nodal slope.
std::vector<double> flux_potential(const SolverState& state, const InitialData& data, double epsilon);

/// Discrete v_t of the state (same operator the time stepper integrates).
std::vector<double> acceleration(const SolverState& state, const InitialData& data, double epsilon);

SolverState step(const SolverState& state, const StepConfig& config, const InitialData& data,
                 const SourceTerm& source = {});

/// 0.25 dx / max(1, max_j c_j), c_j^2 = gamma omega exp(S0) / eta_x^(gamma-1).
double advisory_dt(const SolverState& state, const InitialData& data, double cfl = 0.25);

/// eta rebuilt from a velocity history by the scheme's own time quadrature
/// (right-endpoint rule for implicit Euler, trapezoid for Crank-Nicolson).
std::vector<double> reconstruct_eta(const std::vector<double>& x0,
                                    const std::vector<std::vector<double>>& v_history, double dt,
                                    TimeScheme scheme);

struct RunOptions {
  double horizon = 0.05;
  int output_every = 1;
  StepConfig config;
  SourceTerm source;
  std::string source_tag;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  double dt = 0.0;            // step actually used (horizon / n_steps)
  long n_steps_planned = 0;
  long n_steps_taken = 0;
  long newton_iterations = 0;
  double t_valid = 0.0;
  bool completed = false;
  std::string termination_reason;  // empty when completed
};

/// Integrates to the horizon. dt is shrunk so that an integer number of
/// steps lands exactly on the horizon. Step failures end the run early with
/// the reason recorded instead of propagating.
RunResult run(const InitialData& data, const Grid1D& grid, const RunOptions& options);

/// Starts from an explicit state instead of the initial data.
RunResult run_from(const SolverState& start, const InitialData& data, const Grid1D& grid,
                   const RunOptions& options);

}  // namespace pvac
