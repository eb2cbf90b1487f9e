#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pvac/analytic_function.hpp"
#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"
#include "pvac/parabolic_solver.hpp"

namespace pvac {

/// Eulerian fields at the physical particle positions of a snapshot.
struct EulerianView {
  std::vector<double> eta_nodes;
  std::vector<double> rho;      // rho0 / eta_x, zero at the two vacuum nodes
  std::vector<double> entropy;  // S0 carried by each particle
  std::vector<double> c2;       // gamma rho^(gamma-1) e^S
  double boundary_left = 0.0;
  double boundary_right = 0.0;
  double mass = 0.0;  // trapezoid on the image grid
};

EulerianView readback(const Snapshot& snapshot, const InitialData& data);

/// int rho0 dx by the trapezoid rule on the reference grid.
double lagrangian_mass(const InitialData& data, const Grid1D& grid);

/// sum_j w_j rho0(x_j) v_j with trapezoid weights w_j.
double momentum(const std::vector<double>& v, const InitialData& data, const Grid1D& grid);

/// Second-order one-sided d(c^2)/d(eta) at the left and right boundary.
std::pair<double, double> vacuum_slope(const EulerianView& view);

/// Max over cell-midpoint particles of |S_Euler(position) - S0(x_{j+1/2})|,
/// where the particle position and the Eulerian entropy are both linearly
/// interpolated.
double entropy_particle_error(const EulerianView& view, const InitialData& data);

struct StabilityReport {
  std::vector<double> times;
  std::vector<double> distance;  // ||v_A - v_B||_0 per snapshot
  double sup_ratio = 0.0;        // sup_t distance / distance(0)
  double rate = 0.0;             // least-squares slope of log distance vs t
  bool identical = false;        // every snapshot bitwise equal
};

/// Runs both data sets with the same grid and options and compares them.
/// Throws RunInvalid if either run stops early.
StabilityReport two_run_stability(const InitialData& a, const InitialData& b, const Grid1D& grid,
                                  const RunOptions& options);

struct HardyReport {
  double a = 0.0;
  int b = 0;
  double target_order = 0.0;  // b - a/2
  std::vector<double> ratios;
  double max_ratio = 0.0;
  bool approximate_fractional = false;  // interpolated norm was used
};

/// ||u||_s by two-term interpolation between the neighbouring integer norms.
double fractional_sobolev_norm(const std::vector<double>& field, double s, const Grid1D& grid);

/// (sum_{k<=b} int omega^a |D^k u|^2)^(1/2).
double weighted_sobolev_norm(const std::vector<double>& field, double a, int b, const Grid1D& grid,
                             const WeightField& weight);

/// Ratio ||u||_{b-a/2} / ||u||^{a,b} for each sampled function. Throws
/// EmbeddingViolated if any ratio exceeds `bound`.
HardyReport hardy_check(double a, int b, const std::vector<std::vector<double>>& family,
                        const Grid1D& grid, const WeightField& weight, double bound = 100.0);

/// Seeded random polynomials times (x(1-x))^m, m in {0,1,2}.
std::vector<AnalyticFunction> hardy_test_family(int count, std::uint64_t seed);

/// Uniform doubles in [0,1) from mt19937_64 with a fixed bit recipe, so
/// seeded families are identical across standard libraries.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed);
  double operator()();
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 engine_;
};

/// g(t) = offset + amplitude sin(frequency t + phase).
struct ScalarForcing {
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 1.0;
  double phase = 0.0;

  [[nodiscard]] double operator()(double t) const;
  /// Exact sup of |g| over [0, T].
  [[nodiscard]] double sup_abs(double horizon) const;
};

struct RelaxationReport {
  double sup_f = 0.0;
  double sup_g = 0.0;
  double f0 = 0.0;
  double bound_constant = 1.0 + 1e-8;
  bool passed = false;
};

/// Exact solution of f + (epsilon/gamma) f_t = g, f(0) = f0.
double relaxation_solution(double epsilon, double gamma, const ScalarForcing& g, double f0, double t);

RelaxationReport relaxation_check(double epsilon, double gamma, const ScalarForcing& g, double f0,
                            double horizon, int n_samples = 4001);

}  // namespace pvac
