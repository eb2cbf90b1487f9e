#include "pvac/diff_ops.hpp"

#include <algorithm>
#include <string>

#include "pvac/errors.hpp"

namespace pvac {

std::vector<double> fd_weights(double z, std::span<const double> points, int m) {
  const int n = static_cast<int>(points.size()) - 1;
  if (n < m) {
    fail(ErrorCode::InvalidArgument, "stencil too small for derivative order");
  }
  // c[i][k]: weight of point i for derivative k.
  std::vector<std::vector<double>> c(points.size(), std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = points[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = points[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = points[i] - points[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    w[i] = c[i][m];
  }
  return w;
}

DiffOps::DiffOps(const Grid1D& grid) : grid_(grid), tables_(kMaxDiffOrder) {
  const std::size_t n_nodes = grid.n_nodes();
  for (int d = 1; d <= kMaxDiffOrder; ++d) {
    auto& table = tables_[static_cast<std::size_t>(d - 1)];
    table.resize(n_nodes);
    // Centered width: d+1 points for even d, d+2 for odd d (both 2nd order).
    const std::size_t centered = static_cast<std::size_t>(d % 2 == 0 ? d + 1 : d + 2);
    const std::size_t half = centered / 2;
    const std::size_t one_sided = static_cast<std::size_t>(d + 2);
    for (std::size_t j = 0; j < n_nodes; ++j) {
      std::size_t first;
      std::size_t width;
      if (j >= half && j + half < n_nodes) {
        first = j - half;
        width = centered;
      } else {
        width = one_sided;
        first = j < half ? 0 : n_nodes - width;
      }
      std::vector<double> pts(width);
      for (std::size_t i = 0; i < width; ++i) {
        pts[i] = grid.x(first + i);
      }
      table[j] = Stencil{first, fd_weights(grid.x(j), pts, d)};
    }
  }
}

const DiffOps::Stencil& DiffOps::stencil(int order, std::size_t node) const {
  if (order < 1 || order > kMaxDiffOrder) {
    fail(ErrorCode::OrderTooHigh, "derivative order " + std::to_string(order) + " not in 1..4");
  }
  return tables_[static_cast<std::size_t>(order - 1)][node];
}

std::vector<double> DiffOps::apply(std::span<const double> field, int order) const {
  if (order > kMaxDiffOrder) {
    fail(ErrorCode::OrderTooHigh, "derivative order " + std::to_string(order) + " exceeds 4");
  }
  if (field.size() != grid_.n_nodes()) {
    fail(ErrorCode::InvalidArgument, "field size does not match grid");
  }
  if (order <= 0) {
    return {field.begin(), field.end()};
  }
  std::vector<double> out(field.size());
  for (std::size_t j = 0; j < field.size(); ++j) {
    const auto& s = stencil(order, j);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.weights.size(); ++i) {
      acc += s.weights[i] * field[s.first + i];
    }
    out[j] = acc;
  }
  return out;
}

std::vector<double> diff(std::span<const double> field, int order, const Grid1D& grid) {
  if (order > kMaxDiffOrder) {
    fail(ErrorCode::OrderTooHigh, "derivative order " + std::to_string(order) + " exceeds 4");
  }
  return DiffOps(grid).apply(field, order);
}

std::vector<double> diff_any(std::span<const double> field, int order, const DiffOps& ops) {
  std::vector<double> out(field.begin(), field.end());
  while (order > 0) {
    const int step = std::min(order, kMaxDiffOrder);
    out = ops.apply(out, step);
    order -= step;
  }
  return out;
}

}  // namespace pvac
