#include "pvac/grid.hpp"

#include <string>

#include "pvac/errors.hpp"

namespace pvac {

Grid1D::Grid1D(int n_cells) : n_cells_(n_cells), dx_(1.0 / n_cells) {
  if (n_cells < kMinCells) {
    fail(ErrorCode::InvalidArgument,
         "grid needs at least " + std::to_string(kMinCells) + " cells, got " + std::to_string(n_cells));
  }
  nodes_.resize(static_cast<std::size_t>(n_cells) + 1);
  for (int j = 0; j <= n_cells; ++j) {
    nodes_[static_cast<std::size_t>(j)] = static_cast<double>(j) / n_cells;
  }
  half_nodes_.resize(static_cast<std::size_t>(n_cells));
  for (int j = 0; j < n_cells; ++j) {
    half_nodes_[static_cast<std::size_t>(j)] = (j + 0.5) / n_cells;
  }
}

}  // namespace pvac
