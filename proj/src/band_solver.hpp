#pragma once

#include <cstddef>
#include <vector>

namespace pvac::detail {

/// Square band matrix in LAPACK general-band storage, solved with dgbsv
/// (LU with partial pivoting).
class BandMatrix {
 public:
  BandMatrix(std::size_t n, int kl, int ku);

  void set_zero();
  void add(std::size_t row, std::size_t col, double value);
  [[nodiscard]] double at(std::size_t row, std::size_t col) const;

  /// Solves A x = rhs in place of a copy; A is left untouched.
  [[nodiscard]] std::vector<double> solve(std::vector<double> rhs) const;

 private:
  [[nodiscard]] std::size_t index(std::size_t row, std::size_t col) const;

  std::size_t n_;
  int kl_;
  int ku_;
  int ldab_;
  std::vector<double> ab_;
};

}  // namespace pvac::detail
