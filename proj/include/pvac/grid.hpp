#pragma once

#include <cstddef>
#include <vector>

namespace pvac {

/// Uniform grid on the reference interval [0,1]; nodes x_j = j/n.
class Grid1D {
 public:
  static constexpr int kMinCells = 32;

  explicit Grid1D(int n_cells);

  [[nodiscard]] int n_cells() const { return n_cells_; }
  [[nodiscard]] std::size_t n_nodes() const { return nodes_.size(); }
  [[nodiscard]] double dx() const { return dx_; }
  [[nodiscard]] double x(std::size_t j) const { return nodes_[j]; }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  /// x_{j+1/2}, j = 0..n-1.
  [[nodiscard]] const std::vector<double>& half_nodes() const { return half_nodes_; }

 private:
  int n_cells_;
  double dx_;
  std::vector<double> nodes_;
  std::vector<double> half_nodes_;
};

}  // namespace pvac
