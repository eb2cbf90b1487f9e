#include "support.hpp"

#include <cmath>
#include <limits>

#include "pvac/analytic_function.hpp"
#include "pvac/errors.hpp"
#include "pvac/gas.hpp"
#include "pvac/initial_data.hpp"

using namespace pvac;

using testing::code_of;
using testing::kPi;

namespace {

InitialData unchecked(const AnalyticFunction& omega, double gamma, double kappa = 0.1) {
  InitialData d;
  d.gas = derive_exponents(gamma);
  d.omega = omega;
  d.kappa = kappa;
  return d;
}

}  // namespace

TEST_CASE("derive_exponents on the reference gammas") {
  auto g2 = derive_exponents(2.0);
  CHECK(g2.mu == 0.0);
  CHECK(g2.ell == 5);
  CHECK(g2.c_gamma == 1.0);
  CHECK(g2.case_one());

  auto g15 = derive_exponents(1.5);
  CHECK(g15.mu == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g15.ell == 5);
  CHECK_FALSE(g15.case_one());

  CHECK(derive_exponents(2.5).mu == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));

  // ceil(1/2 + 2) = 3, l = 3 + 6
  auto g12 = derive_exponents(1.2);
  CHECK(g12.mu == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g12.ell == 9);
}

TEST_CASE("exponent identities hold to roundoff") {
  for (double gamma : {1.2, 1.4, 1.5, 1.75, 2.0, 2.25, 2.5, 2.9}) {
    const auto g = derive_exponents(gamma);
    const double eps = std::numeric_limits<double>::epsilon();
    CHECK(std::abs(g.one_plus_two_mu() - 1.0 / (gamma - 1.0)) <= 4 * eps * (1.0 / (gamma - 1.0)));
    CHECK(std::abs(g.two_plus_two_mu() - gamma / (gamma - 1.0)) <= 4 * eps * (gamma / (gamma - 1.0)));
  }
}

TEST_CASE("gamma outside (1,3) is rejected") {
  for (double gamma : {0.5, 1.0, 3.0, 3.5}) {
    CHECK(code_of([&] { (void)derive_exponents(gamma); }) == ErrorCode::OutOfRangeGamma);
  }
  CHECK(code_of([] { (void)derive_exponents(std::nan("")); }) == ErrorCode::OutOfRangeGamma);
}

TEST_CASE("energy order above the cap") {
  // gamma = 1.1: mu = 4.5, ceil(5) = 5, l = 13
  CHECK(code_of([] { (void)derive_exponents(1.1); }) == ErrorCode::UnsupportedOrder);
  const auto g = derive_exponents(1.1, 13);
  CHECK(g.ell == 13);
  CHECK(g.ell_cap == 13);
}

TEST_CASE("ell at integer crossings of 1/2 + mu") {
  // gamma = 5/4: mu = 3/2, 1/2 + mu = 2 exactly, l = 7
  CHECK(derive_exponents(1.25).ell == 7);
  // gamma = 1.3: mu = 7/6, ceil(5/3) = 2, l = 7
  CHECK(derive_exponents(1.3).ell == 7);
  // gamma = 1.75: mu = 1/6, ceil(2/3) = 1, l = 5
  CHECK(derive_exponents(1.75).ell == 5);
}

TEST_CASE("mu decreases with gamma") {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 200; ++i) {
    const double gamma = 1.2 + 1.79 * i / 200.0;
    const double mu = derive_exponents(gamma).mu;
    CHECK(mu < prev);
    prev = mu;
  }
}

TEST_CASE("analytic functions differentiate exactly") {
  const auto f = AnalyticFunction({1.0, -2.0, 3.0}, {SineMode{0.5, 2.0, 0.3}});
  const double x = 0.37;
  const double w = 2.0 * kPi;
  CHECK(f(x) == doctest::Approx(1 - 2 * x + 3 * x * x + 0.5 * std::sin(w * x + 0.3)).epsilon(1e-14));
  CHECK(f.derivative(x, 1) == doctest::Approx(-2 + 6 * x + 0.5 * w * std::cos(w * x + 0.3)).epsilon(1e-14));
  CHECK(f.derivative(x, 2) == doctest::Approx(6 - 0.5 * w * w * std::sin(w * x + 0.3)).epsilon(1e-14));
  CHECK(f.derivative(x, 3) == doctest::Approx(-0.5 * w * w * w * std::cos(w * x + 0.3)).epsilon(1e-13));

  const auto t = f.taylor(x, 3);
  REQUIRE(t.size() == 4);
  CHECK(t[2] == doctest::Approx(f.derivative(x, 2) / 2.0).epsilon(1e-14));
  CHECK(t[3] == doctest::Approx(f.derivative(x, 3) / 6.0).epsilon(1e-14));
}

TEST_CASE("limited smoothness is enforced") {
  const AnalyticFunction f({0.0, 1.0}, {}, 2);
  CHECK(f.derivative(0.5, 2) == 0.0);
  CHECK(code_of([&] { (void)f.derivative(0.5, 3); }) == ErrorCode::InsufficientSmoothness);
}

TEST_CASE("polynomial profile") {
  ProfileSpec spec;
  const auto d2 = make_vacuum_profile(spec, derive_exponents(2.0));
  for (double x : {0.0, 0.1, 0.5, 0.77, 1.0}) {
    CHECK(d2.omega(x) == doctest::Approx(x * (1 - x)).epsilon(1e-15));
  }
  CHECK(d2.omega.derivative(0.0, 1) == doctest::Approx(1.0));

  const auto d15 = make_vacuum_profile(spec, derive_exponents(1.5));
  for (double x : {0.1, 0.5, 0.77}) {
    CHECK(d15.omega(x) == doctest::Approx(x * (1 - x)).epsilon(1e-15));
    CHECK(d15.rho0(x) == doctest::Approx(std::pow(x * (1 - x), 2)).epsilon(1e-14));
  }
  CHECK(d15.rho0(0.0) == 0.0);
  CHECK(d15.rho0(1.0) == 0.0);
}

TEST_CASE("sine profile has slope pi at the boundary") {
  ProfileSpec spec;
  spec.family = ProfileFamily::Sine;
  const auto d = make_vacuum_profile(spec, derive_exponents(2.0));
  CHECK(d.omega.derivative(0.0, 1) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(d.omega.derivative(1.0, 1) == doctest::Approx(-kPi).epsilon(1e-14));
}

TEST_CASE("invalid profiles") {
  const auto gas = derive_exponents(2.0);
  ProfileSpec flat;
  flat.family = ProfileFamily::Custom;
  flat.coefficients = {0.0, 0.0, 1.0, -2.0, 1.0};  // x^2 (1-x)^2
  CHECK(code_of([&] { (void)make_vacuum_profile(flat, gas); }) == ErrorCode::InvalidProfile);

  ProfileSpec constant;
  constant.family = ProfileFamily::Custom;
  constant.coefficients = {1.0};
  CHECK(code_of([&] { (void)make_vacuum_profile(constant, gas); }) == ErrorCode::InvalidProfile);

  ProfileSpec negative;
  negative.family = ProfileFamily::Custom;
  negative.coefficients = {0.0, -1.0, 1.0};  // x(x-1) < 0 inside
  CHECK(code_of([&] { (void)make_vacuum_profile(negative, gas); }) == ErrorCode::InvalidProfile);

  ProfileSpec wide;
  wide.kappa = 0.6;
  CHECK(code_of([&] { (void)make_vacuum_profile(wide, gas); }) == ErrorCode::InvalidProfile);
}

TEST_CASE("physical vacuum report") {
  ProfileSpec spec;
  const auto d = make_vacuum_profile(spec, derive_exponents(2.0));
  const auto r = validate_physical_vacuum(d, 256);
  CHECK(r.passed);
  // |1 - 2x| >= 0.8 on the collar [0, 0.1]
  CHECK(r.min_collar_slope >= 0.8 - 1e-12);
  CHECK(r.min_collar_slope == doctest::Approx(0.8));
  CHECK(r.min_interior_omega == doctest::Approx(0.09));
  CHECK(d.c_kappa == doctest::Approx(0.09));

  const auto degenerate = unchecked(AnalyticFunction::polynomial({0.0, 0.0, 1.0, -2.0, 1.0}), 2.0);
  const auto rd = validate_physical_vacuum(degenerate, 256);
  CHECK_FALSE(rd.passed);
  CHECK_FALSE(rd.failures.empty());

  const auto no_vacuum = unchecked(AnalyticFunction::constant(1.0), 2.0);
  CHECK_FALSE(validate_physical_vacuum(no_vacuum, 64).passed);

  CHECK(code_of([&] { (void)validate_physical_vacuum(d, 8); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("canonical families pass the vacuum check for every gamma") {
  for (double gamma : {1.4, 1.5, 2.0, 2.5, 2.9}) {
    for (auto fam : {ProfileFamily::Polynomial, ProfileFamily::Sine}) {
      ProfileSpec spec;
      spec.family = fam;
      spec.s0 = AnalyticFunction::polynomial({0.0, 0.2, 0.1});
      const auto d = make_vacuum_profile(spec, derive_exponents(gamma));
      const auto r = validate_physical_vacuum(d, 512);
      CHECK(r.passed);
      CHECK(r.min_entropy_slope >= d.s_lower);
      CHECK(r.max_entropy_slope <= d.s_upper);
    }
  }
}

TEST_CASE("weight powers reproduce rho0 and rho0^gamma") {
  for (double gamma : {1.2, 1.5, 2.0, 2.5, 2.9}) {
    ProfileSpec spec;
    const auto d = make_vacuum_profile(spec, derive_exponents(gamma));
    const WeightField w(d);
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      const double rho = std::pow(x * (1 - x), 1.0 / (gamma - 1.0));
      CHECK(std::abs(w.omega_pow(x, d.gas.one_plus_two_mu()) - rho) <= 1e-12 * rho);
      CHECK(std::abs(w.omega_pow(x, d.gas.two_plus_two_mu()) - std::pow(rho, gamma)) <=
            1e-12 * std::pow(rho, gamma));
    }
    CHECK(w.omega(0.0) == 0.0);
    CHECK(w.omega(1.0) == 0.0);
    CHECK(w.omega_pow(0.0, 0.0) == 1.0);
    CHECK(w.omega_pow(0.0, 1.5) == 0.0);
    CHECK(code_of([&] { (void)w.omega_pow(0.5, -0.5); }) == ErrorCode::NegativeExponent);
  }
}
