#pragma once

#include <span>
#include <vector>

#include "pvac/grid.hpp"

namespace pvac {

/// Finite-difference weights for the m-th derivative at `z` from samples at
/// `points` (Fornberg's recursion). Exact on polynomials of degree < points.size().
std::vector<double> fd_weights(double z, std::span<const double> points, int m);

inline constexpr int kMaxDiffOrder = 4;

/// Stencil tables for derivatives of order 1..4 on a Grid1D. Interior nodes
/// use centered stencils; nodes too close to an end use the nearest
/// one-sided window of d+2 points, so every stencil is second-order accurate
/// and exact on polynomials of degree d+1.
class DiffOps {
 public:
  explicit DiffOps(const Grid1D& grid);

  struct Stencil {
    std::size_t first = 0;          // index of the leftmost node
    std::vector<double> weights;
  };

  [[nodiscard]] const Stencil& stencil(int order, std::size_t node) const;
  [[nodiscard]] std::vector<double> apply(std::span<const double> field, int order) const;
  [[nodiscard]] const Grid1D& grid() const { return grid_; }

 private:
  Grid1D grid_;
  std::vector<std::vector<Stencil>> tables_;  // [order-1][node]
};

/// order-th derivative of nodal values; throws OrderTooHigh for order > 4.
std::vector<double> diff(std::span<const double> field, int order, const Grid1D& grid);

/// Repeated differentiation for orders beyond the stencil tables
/// (composition of order-4 and lower stencils).
std::vector<double> diff_any(std::span<const double> field, int order, const DiffOps& ops);

}  // namespace pvac
