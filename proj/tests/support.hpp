#pragma once

#include <doctest.h>

#include <cmath>
#include <vector>

#include "pvac/errors.hpp"
#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"

namespace testing {

inline constexpr double kPi = 3.14159265358979323846;

template <class F>
pvac::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const pvac::Error& e) {
    return e.code();
  }
  FAIL("expected pvac::Error");
  return pvac::ErrorCode::InvalidArgument;
}

template <class F>
std::vector<double> sample(const pvac::Grid1D& grid, F&& f) {
  std::vector<double> out(grid.n_nodes());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = f(grid.x(j));
  }
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b,
                           std::size_t skip = 0) {
  double m = 0.0;
  for (std::size_t j = skip; j + skip < a.size(); ++j) {
    m = std::max(m, std::abs(a[j] - b[j]));
  }
  return m;
}

inline pvac::InitialData polynomial_data(double gamma, pvac::AnalyticFunction u0 = {},
                                         pvac::AnalyticFunction s0 = {}) {
  pvac::ProfileSpec spec;
  spec.u0 = std::move(u0);
  spec.s0 = std::move(s0);
  return pvac::make_vacuum_profile(spec, pvac::derive_exponents(gamma));
}

}  // namespace testing
