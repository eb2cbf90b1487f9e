#include "pvac/quadrature.hpp"

#include <cmath>

#include "pvac/diff_ops.hpp"
#include "pvac/errors.hpp"

namespace pvac {

std::vector<double> quadrature_weights(const Grid1D& grid, QuadratureRule rule) {
  const std::size_t n = grid.n_nodes();
  const double h = grid.dx();
  std::vector<double> w(n, h);
  if (rule == QuadratureRule::Trapezoid) {
    w.front() = w.back() = 0.5 * h;
    return w;
  }
  if (grid.n_cells() % 2 != 0) {
    fail(ErrorCode::InvalidArgument, "Simpson rule needs an even number of cells");
  }
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = (j == 0 || j + 1 == n) ? h / 3.0 : (j % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
  }
  return w;
}

double integrate(std::span<const double> values, const Grid1D& grid, QuadratureRule rule) {
  if (values.size() != grid.n_nodes()) {
    fail(ErrorCode::InvalidArgument, "field size does not match grid");
  }
  const auto w = quadrature_weights(grid, rule);
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    acc += w[j] * values[j];
  }
  return acc;
}

double weighted_l2(std::span<const double> field, double p, const Grid1D& grid,
                   const WeightField& weight, QuadratureRule rule) {
  if (p < 0.0) {
    fail(ErrorCode::NegativeExponent, "weighted_l2 requires p >= 0");
  }
  std::vector<double> integrand(field.size());
  for (std::size_t j = 0; j < field.size(); ++j) {
    integrand[j] = weight.omega_pow(grid.x(j), 2.0 * p) * field[j] * field[j];
  }
  return std::sqrt(integrate(integrand, grid, rule));
}

double l2_norm(std::span<const double> field, const Grid1D& grid, QuadratureRule rule) {
  std::vector<double> sq(field.size());
  for (std::size_t j = 0; j < field.size(); ++j) {
    sq[j] = field[j] * field[j];
  }
  return std::sqrt(integrate(sq, grid, rule));
}

double sobolev_norm(std::span<const double> field, int k, const Grid1D& grid, QuadratureRule rule) {
  if (k > kMaxDiffOrder) {
    fail(ErrorCode::OrderTooHigh, "sobolev_norm supports k <= 4");
  }
  const DiffOps ops(grid);
  double acc = 0.0;
  for (int a = 0; a <= k; ++a) {
    const auto d = ops.apply(field, a);
    const double n = l2_norm(d, grid, rule);
    acc += n * n;
  }
  return std::sqrt(acc);
}

}  // namespace pvac
