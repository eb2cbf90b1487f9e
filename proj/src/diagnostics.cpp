#include "pvac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pvac/diff_ops.hpp"
#include "pvac/errors.hpp"
#include "pvac/quadrature.hpp"

namespace pvac {

EulerianView readback(const Snapshot& snapshot, const InitialData& data) {
  const std::size_t n = snapshot.eta.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!(snapshot.eta_x[j] >= kEtaSlopeMin && snapshot.eta_x[j] <= kEtaSlopeMax)) {
      fail(ErrorCode::EtaSlopeOutOfBounds, "snapshot eta_x outside [1/2, 3/2]");
    }
    if (j > 0 && !(snapshot.eta[j] > snapshot.eta[j - 1])) {
      fail(ErrorCode::EtaSlopeOutOfBounds, "flow map not injective");
    }
  }
  const Grid1D grid(static_cast<int>(n) - 1);
  const double gamma = data.gas.gamma;
  EulerianView view;
  view.eta_nodes = snapshot.eta;
  view.rho.resize(n);
  view.entropy.resize(n);
  view.c2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.x(j);
    const bool vacuum = (j == 0 || j + 1 == n);
    view.rho[j] = vacuum ? 0.0 : data.rho0(x) / snapshot.eta_x[j];
    view.entropy[j] = data.s0(x);
    view.c2[j] = vacuum ? 0.0 : gamma * std::pow(view.rho[j], gamma - 1.0) * std::exp(view.entropy[j]);
  }
  view.boundary_left = snapshot.eta.front();
  view.boundary_right = snapshot.eta.back();
  // Trapezoid on the (non-uniform) image grid.
  double mass = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double width = snapshot.eta[j + 1] - snapshot.eta[j];
    mass += 0.5 * width * (view.rho[j] + view.rho[j + 1]);
  }
  view.mass = mass;
  return view;
}

double lagrangian_mass(const InitialData& data, const Grid1D& grid) {
  std::vector<double> rho0(grid.n_nodes());
  for (std::size_t j = 0; j < rho0.size(); ++j) {
    rho0[j] = data.rho0(grid.x(j));
  }
  rho0.front() = rho0.back() = 0.0;
  return integrate(rho0, grid);
}

double momentum(const std::vector<double>& v, const InitialData& data, const Grid1D& grid) {
  const auto w = quadrature_weights(grid);
  double m = 0.0;
  for (std::size_t j = 1; j + 1 < v.size(); ++j) {
    m += w[j] * data.rho0(grid.x(j)) * v[j];
  }
  return m;
}

std::pair<double, double> vacuum_slope(const EulerianView& view) {
  const auto& eta = view.eta_nodes;
  const std::size_t n = eta.size();
  const double left_pts[3] = {eta[0], eta[1], eta[2]};
  const double right_pts[3] = {eta[n - 3], eta[n - 2], eta[n - 1]};
  const auto wl = fd_weights(eta[0], left_pts, 1);
  const auto wr = fd_weights(eta[n - 1], right_pts, 1);
  double left = 0.0;
  double right = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    left += wl[i] * view.c2[i];
    right += wr[i] * view.c2[n - 3 + i];
  }
  return {left, right};
}

double entropy_particle_error(const EulerianView& view, const InitialData& data) {
  const auto& eta = view.eta_nodes;
  const std::size_t n = eta.size();
  const Grid1D grid(static_cast<int>(n) - 1);
  double err = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    // Particle x_{j+1/2}: position by linear interpolation of the flow map.
    const double position = 0.5 * (eta[j] + eta[j + 1]);
    const auto it = std::upper_bound(eta.begin(), eta.end(), position);
    const std::size_t cell = std::min<std::size_t>(
        n - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - eta.begin()) - 1)));
    const double theta = (position - eta[cell]) / (eta[cell + 1] - eta[cell]);
    const double s_euler = (1.0 - theta) * view.entropy[cell] + theta * view.entropy[cell + 1];
    err = std::max(err, std::abs(s_euler - data.s0(grid.half_nodes()[j])));
  }
  return err;
}

StabilityReport two_run_stability(const InitialData& a, const InitialData& b, const Grid1D& grid,
                                  const RunOptions& options) {
  const auto ra = run(a, grid, options);
  const auto rb = run(b, grid, options);
  if (!ra.completed || !rb.completed) {
    fail(ErrorCode::RunInvalid, "stability run ended early: " +
                                    (ra.completed ? rb.termination_reason : ra.termination_reason));
  }
  StabilityReport rep;
  rep.identical = true;
  for (std::size_t i = 0; i < ra.snapshots.size(); ++i) {
    const auto& va = ra.snapshots[i].v;
    const auto& vb = rb.snapshots[i].v;
    std::vector<double> d(va.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
      d[j] = va[j] - vb[j];
      if (va[j] != vb[j]) {
        rep.identical = false;
      }
    }
    rep.times.push_back(ra.snapshots[i].t);
    rep.distance.push_back(l2_norm(d, grid));
  }
  const double d0 = rep.distance.front();
  if (d0 > 0.0) {
    for (double d : rep.distance) {
      rep.sup_ratio = std::max(rep.sup_ratio, d / d0);
    }
    // Least squares of log(d) = c + rate * t.
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const double m = static_cast<double>(rep.times.size());
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
      const double t = rep.times[i];
      const double y = std::log(rep.distance[i]);
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
    }
    const double denom = m * stt - st * st;
    rep.rate = denom > 0.0 ? (m * sty - st * sy) / denom : 0.0;
  }
  return rep;
}

double weighted_sobolev_norm(const std::vector<double>& field, double a, int b, const Grid1D& grid,
                             const WeightField& weight) {
  const DiffOps ops(grid);
  double acc = 0.0;
  for (int k = 0; k <= b; ++k) {
    const auto dk = k == 0 ? field : diff_any(field, k, ops);
    const double n = weighted_l2(dk, 0.5 * a, grid, weight);
    acc += n * n;
  }
  return std::sqrt(acc);
}

double fractional_sobolev_norm(const std::vector<double>& field, double s, const Grid1D& grid) {
  if (s < 0.0) {
    fail(ErrorCode::InvalidArgument, "Sobolev order must be non-negative");
  }
  const int lo = static_cast<int>(std::floor(s));
  const double theta = s - lo;
  const double n_lo = sobolev_norm(field, lo, grid);
  if (theta == 0.0) {
    return n_lo;
  }
  const double n_hi = sobolev_norm(field, lo + 1, grid);
  return std::pow(n_lo, 1.0 - theta) * std::pow(n_hi, theta);
}

HardyReport hardy_check(double a, int b, const std::vector<std::vector<double>>& family,
                        const Grid1D& grid, const WeightField& weight, double bound) {
  if (a < 0.0 || !(b > 0.5 * a)) {
    fail(ErrorCode::InvalidArgument, "embedding needs a >= 0 and b > a/2");
  }
  HardyReport rep;
  rep.a = a;
  rep.b = b;
  rep.target_order = b - 0.5 * a;
  rep.approximate_fractional = rep.target_order != std::floor(rep.target_order);
  for (const auto& u : family) {
    const double ratio =
        fractional_sobolev_norm(u, rep.target_order, grid) / weighted_sobolev_norm(u, a, b, grid, weight);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  if (!(rep.max_ratio <= bound)) {
    fail(ErrorCode::EmbeddingViolated,
         "norm ratio " + std::to_string(rep.max_ratio) + " exceeds bound " + std::to_string(bound));
  }
  return rep;
}

SeededUniform::SeededUniform(std::uint64_t seed) : engine_(seed) {}

double SeededUniform::operator()() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<AnalyticFunction> hardy_test_family(int count, std::uint64_t seed) {
  SeededUniform rng(seed);
  std::vector<AnalyticFunction> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(4);
    for (auto& c : p) {
      c = rng(-1.0, 1.0);
    }
    p[0] += rng() < 0.5 ? -1.5 : 1.5;  // keep the family away from u = 0
    const int m = static_cast<int>(rng() * 3.0);
    for (int r = 0; r < m; ++r) {
      // multiply by x(1-x) = x - x^2
      std::vector<double> q(p.size() + 2, 0.0);
      for (std::size_t k = 0; k < p.size(); ++k) {
        q[k + 1] += p[k];
        q[k + 2] -= p[k];
      }
      p = std::move(q);
    }
    out.push_back(AnalyticFunction::polynomial(std::move(p)));
  }
  return out;
}

double ScalarForcing::operator()(double t) const {
  return offset + amplitude * std::sin(frequency * t + phase);
}

double ScalarForcing::sup_abs(double horizon) const {
  double sup = std::max(std::abs((*this)(0.0)), std::abs((*this)(horizon)));
  if (amplitude != 0.0 && frequency != 0.0) {
    // Interior extrema at frequency t + phase = pi/2 + k pi.
    const double w = std::abs(frequency);
    const double sign = frequency > 0 ? 1.0 : -1.0;
    const double lo = std::min(phase, frequency * horizon + phase);
    const double hi = std::max(phase, frequency * horizon + phase);
    const double k0 = std::ceil((lo - 0.5 * std::numbers::pi) / std::numbers::pi);
    for (double k = k0; 0.5 * std::numbers::pi + k * std::numbers::pi <= hi; k += 1.0) {
      const double t = (0.5 * std::numbers::pi + k * std::numbers::pi - phase) / (sign * w);
      sup = std::max(sup, std::abs((*this)(t)));
    }
  }
  return sup;
}

double relaxation_solution(double epsilon, double gamma, const ScalarForcing& g, double f0, double t) {
  if (!(epsilon > 0.0) || !(gamma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "relaxation ODE needs epsilon > 0 and gamma > 0");
  }
  const double tau = epsilon / gamma;
  // tau y' + y = sin(w t + phi), y(0) = 0:  y = y_p(t) - y_p(0) e^{-t/tau}.
  const double w = g.frequency;
  auto particular = [&](double s) {
    return (std::sin(w * s + g.phase) - tau * w * std::cos(w * s + g.phase)) / (1.0 + tau * tau * w * w);
  };
  const double decay = std::exp(-t / tau);
  return (f0 - g.offset - g.amplitude * particular(0.0)) * decay + g.offset + g.amplitude * particular(t);
}

RelaxationReport relaxation_check(double epsilon, double gamma, const ScalarForcing& g, double f0,
                            double horizon, int n_samples) {
  RelaxationReport rep;
  rep.f0 = f0;
  rep.sup_g = g.sup_abs(horizon);
  for (int i = 0; i < n_samples; ++i) {
    const double t = horizon * static_cast<double>(i) / (n_samples - 1);
    rep.sup_f = std::max(rep.sup_f, std::abs(relaxation_solution(epsilon, gamma, g, f0, t)));
  }
  rep.passed = rep.sup_f <= rep.bound_constant * std::max(std::abs(f0), rep.sup_g);
  return rep;
}

}  // namespace pvac
