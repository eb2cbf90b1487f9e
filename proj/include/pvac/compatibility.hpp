#pragma once

#include <vector>

#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"

namespace pvac {

/// Highest time order exposed by the recursion.
inline constexpr int kMaxCompatibilityOrder = 4;

/// u_k = d^k v / dt^k at t = 0 on the grid nodes, k = 1..order.
struct CompatibilitySet {
  int order = 0;
  double epsilon = 0.0;
  std::vector<double> x;
  std::vector<std::vector<double>> u;  // u[k-1] holds u_k

  [[nodiscard]] const std::vector<double>& field(int k) const { return u.at(static_cast<std::size_t>(k - 1)); }
};

/// Closed form of v_t at t = 0:
/// -omega e^S0 S0' + gamma/(gamma-1) omega' (eps u0' - 1) e^S0 + eps omega (u0'' + u0' S0') e^S0.
std::vector<double> initial_derivative_1(const Grid1D& grid, const InitialData& data, double epsilon);

/// u_k from recursive time differentiation of the factored equation,
/// carried out with truncated Taylor series in x at each node nested inside
/// a Taylor recursion in t (eta_x(0) = 1, d_t eta_x = v_x). Spatial
/// derivatives of order r of u_k are returned in `spatial_order` > 0 mode.
/// Throws UnsupportedOrder for k outside 1..4 and InsufficientSmoothness when
/// the data do not carry enough derivatives.
std::vector<double> initial_derivative_k(const Grid1D& grid, const InitialData& data,
                                         double epsilon, int k, int spatial_order = 0);

/// Same recursion at a single point, all orders 1..k; result[k-1][r] is
/// d^r/dx^r u_k(x). Exposed for oracles and point probes.
std::vector<std::vector<double>> compatibility_jets(double x, const InitialData& data, double epsilon,
                                                    int k, int spatial_order);

CompatibilitySet compute_compatibility(const Grid1D& grid, const InitialData& data, double epsilon,
                                       int order = kMaxCompatibilityOrder);

}  // namespace pvac
