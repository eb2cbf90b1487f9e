#include "band_solver.hpp"

#include <string>

#include "pvac/errors.hpp"

extern "C" void dgbsv_(const int* n, const int* kl, const int* ku, const int* nrhs, double* ab,
                       const int* ldab, int* ipiv, double* b, const int* ldb, int* info);

namespace pvac::detail {

BandMatrix::BandMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ldab_) * n, 0.0) {}

void BandMatrix::set_zero() { std::fill(ab_.begin(), ab_.end(), 0.0); }

std::size_t BandMatrix::index(std::size_t row, std::size_t col) const {
  const auto r = static_cast<long>(row);
  const auto c = static_cast<long>(col);
  if (r - c > kl_ || c - r > ku_) {
    fail(ErrorCode::InvalidArgument, "band matrix entry outside the band");
  }
  return static_cast<std::size_t>(kl_ + ku_ + r - c) + col * static_cast<std::size_t>(ldab_);
}

void BandMatrix::add(std::size_t row, std::size_t col, double value) { ab_[index(row, col)] += value; }

double BandMatrix::at(std::size_t row, std::size_t col) const { return ab_[index(row, col)]; }

std::vector<double> BandMatrix::solve(std::vector<double> rhs) const {
  auto ab = ab_;
  const int n = static_cast<int>(n_);
  const int nrhs = 1;
  std::vector<int> ipiv(n_);
  int info = 0;
  dgbsv_(&n, &kl_, &ku_, &nrhs, ab.data(), &ldab_, ipiv.data(), rhs.data(), &n, &info);
  if (info != 0) {
    fail(ErrorCode::NewtonDiverged, "singular Jacobian (dgbsv info = " + std::to_string(info) + ")");
  }
  return rhs;
}

}  // namespace pvac::detail
