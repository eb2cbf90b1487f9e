#include "pvac/gas.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "pvac/errors.hpp"

namespace pvac {

GasParameters derive_exponents(double gamma, int ell_cap) {
  if (!(gamma > 1.0 && gamma < 3.0)) {
    fail(ErrorCode::OutOfRangeGamma,
         "gamma = " + std::to_string(gamma) + " outside admissible range (1, 3)");
  }
  GasParameters gas;
  gas.gamma = gamma;
  gas.ell_cap = ell_cap;
  gas.mu = (2.0 - gamma) / (2.0 * (gamma - 1.0));
  if (gamma >= 2.0) {
    gas.ell = 5;
  } else {
    // 1/2 + mu can land a few ulps above an integer (e.g. gamma = 5/4).
    const double q = 0.5 + gas.mu;
    gas.ell = 3 + 2 * static_cast<int>(std::ceil(q - 1e-12 * std::max(1.0, q)));
  }
  if (gas.ell > ell_cap) {
    fail(ErrorCode::UnsupportedOrder, "energy order l = " + std::to_string(gas.ell) +
                                          " exceeds cap " + std::to_string(ell_cap));
  }
  if (gas.ell > kDefaultEllCap) {
    std::cerr << "warning: l = " << gas.ell
              << " exceeds the default cap; time derivatives of this order are low-confidence\n";
  }
  return gas;
}

}  // namespace pvac
