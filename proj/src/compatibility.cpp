#include "pvac/compatibility.hpp"

#include <cmath>
#include <string>

#include "pvac/errors.hpp"
#include "pvac/jet.hpp"

namespace pvac {

std::vector<double> initial_derivative_1(const Grid1D& grid, const InitialData& data, double epsilon) {
  const double ratio = data.gas.gamma / (data.gas.gamma - 1.0);
  std::vector<double> u1(grid.n_nodes());
  for (std::size_t j = 0; j < u1.size(); ++j) {
    const double x = grid.x(j);
    const double w = data.omega(x);
    const double wp = data.omega.derivative(x, 1);
    const double es = std::exp(data.s0(x));
    const double sp = data.s0.derivative(x, 1);
    const double up = data.u0.derivative(x, 1);
    const double upp = data.u0.derivative(x, 2);
    u1[j] = -w * es * sp + ratio * wp * (epsilon * up - 1.0) * es + epsilon * w * (upp + up * sp) * es;
  }
  return u1;
}

std::vector<std::vector<double>> compatibility_jets(double x, const InitialData& data, double epsilon,
                                                    int k, int spatial_order) {
  if (k < 1 || k > kMaxCompatibilityOrder) {
    fail(ErrorCode::UnsupportedOrder,
         "compatibility order " + std::to_string(k) + " outside 1.." +
             std::to_string(kMaxCompatibilityOrder));
  }
  // Each time level spends two spatial derivatives (eta_x or v_x, then G_x).
  const int n = 2 * k + spatial_order;
  const Jet omega(data.omega.taylor(x, n + 1));
  const Jet omega_p = omega.derivative();
  const Jet exp_s = Jet(data.s0.taylor(x, n)).exp();
  const double flux_exp = data.gas.two_plus_two_mu();
  const double alpha = -data.gas.gamma;

  // Time-Taylor coefficients (each an x-jet) of v, eta_x and eta_x^-gamma.
  std::vector<Jet> v{Jet(data.u0.taylor(x, n))};
  std::vector<Jet> slope{Jet::constant(1.0, static_cast<std::size_t>(n) + 1)};
  std::vector<Jet> power{Jet::constant(1.0, static_cast<std::size_t>(n) + 1)};

  for (int m = 0; m < k; ++m) {
    if (m >= 1) {
      slope.push_back(v[static_cast<std::size_t>(m - 1)].derivative() * (1.0 / m));
      // b = a^alpha with a_0 = 1:  m b_m = sum_{j=1}^m ((alpha+1) j - m) a_j b_{m-j}.
      Jet acc;
      for (int j = 1; j <= m; ++j) {
        const Jet term = slope[static_cast<std::size_t>(j)] * power[static_cast<std::size_t>(m - j)] *
                         ((alpha + 1.0) * j - m);
        acc = (j == 1) ? term : acc + term;
      }
      power.push_back(acc * (1.0 / m));
    }
    Jet inner = power[static_cast<std::size_t>(m)];
    if (epsilon != 0.0) {
      inner = inner - v[static_cast<std::size_t>(m)].derivative() * epsilon;
    }
    const Jet g = exp_s * inner;
    const Jet accel = omega_p * g * (-flux_exp) - omega * g.derivative();
    v.push_back(accel * (1.0 / (m + 1)));
  }

  std::vector<std::vector<double>> out;
  double factorial = 1.0;
  for (int kk = 1; kk <= k; ++kk) {
    factorial *= kk;
    const Jet& c = v[static_cast<std::size_t>(kk)];
    const int available = static_cast<int>(c.size()) - 1;
    const int want = kk == k ? spatial_order : std::min(spatial_order, available);
    if (available < want) {
      fail(ErrorCode::InsufficientSmoothness,
           "data too rough for u_" + std::to_string(kk) + " with " + std::to_string(want) +
               " spatial derivatives");
    }
    std::vector<double> d(static_cast<std::size_t>(want) + 1);
    for (int r = 0; r <= want; ++r) {
      d[static_cast<std::size_t>(r)] = factorial * c.derivative_value(static_cast<std::size_t>(r));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<double> initial_derivative_k(const Grid1D& grid, const InitialData& data,
                                         double epsilon, int k, int spatial_order) {
  std::vector<double> out(grid.n_nodes());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto jets = compatibility_jets(grid.x(j), data, epsilon, k, spatial_order);
    out[j] = jets.back()[static_cast<std::size_t>(spatial_order)];
  }
  return out;
}

CompatibilitySet compute_compatibility(const Grid1D& grid, const InitialData& data, double epsilon,
                                       int order) {
  CompatibilitySet set;
  set.order = order;
  set.epsilon = epsilon;
  set.x = grid.nodes();
  set.u.assign(static_cast<std::size_t>(order), std::vector<double>(grid.n_nodes()));
  for (std::size_t j = 0; j < grid.n_nodes(); ++j) {
    const auto jets = compatibility_jets(grid.x(j), data, epsilon, order, 0);
    for (int k = 1; k <= order; ++k) {
      set.u[static_cast<std::size_t>(k - 1)][j] = jets[static_cast<std::size_t>(k - 1)][0];
    }
  }
  return set;
}

}  // namespace pvac
