#include "support.hpp"

#include <array>
#include <cmath>

#include "pvac/diff_ops.hpp"
#include "pvac/grid.hpp"
#include "pvac/quadrature.hpp"
#include "band_solver.hpp"

using namespace pvac;
using testing::code_of;
using testing::kPi;
using testing::sample;

TEST_CASE("grid layout") {
  Grid1D g(64);
  CHECK(g.n_nodes() == 65);
  CHECK(g.dx() == 1.0 / 64);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(64) == 1.0);
  CHECK(g.half_nodes().size() == 64);
  CHECK(g.half_nodes()[10] == doctest::Approx(10.5 / 64));
  CHECK(code_of([] { Grid1D tiny(16); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fd_weights reproduce the classical stencils") {
  const std::array<double, 3> pts{-1.0, 0.0, 1.0};
  const auto d1 = fd_weights(0.0, pts, 1);
  CHECK(d1[0] == doctest::Approx(-0.5));
  CHECK(d1[1] == doctest::Approx(0.0));
  CHECK(d1[2] == doctest::Approx(0.5));
  const auto d2 = fd_weights(0.0, pts, 2);
  CHECK(d2[0] == doctest::Approx(1.0));
  CHECK(d2[1] == doctest::Approx(-2.0));
  CHECK(d2[2] == doctest::Approx(1.0));

  // backward 3-point first derivative: (3f0 - 4f-1 + f-2)/2
  const std::array<double, 3> back{-2.0, -1.0, 0.0};
  const auto b1 = fd_weights(0.0, back, 1);
  CHECK(b1[0] == doctest::Approx(0.5));
  CHECK(b1[1] == doctest::Approx(-2.0));
  CHECK(b1[2] == doctest::Approx(1.5));

  CHECK(code_of([&] { (void)fd_weights(0.0, pts, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("diff is exact on low-degree polynomials") {
  Grid1D g(64);
  const auto f = sample(g, [](double x) { return x * x; });
  const auto d1 = diff(f, 1, g);
  const auto d2 = diff(f, 2, g);
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    CHECK(d1[j] == doctest::Approx(2.0 * g.x(j)).epsilon(1e-10).scale(1.0));
    CHECK(d2[j] == doctest::Approx(2.0).epsilon(1e-8));
  }
  for (int order = 1; order <= 4; ++order) {
    // degree order+1 polynomial x^(order+1): D^order = (order+1)! x
    const int deg = order + 1;
    const auto p = sample(g, [&](double x) { return std::pow(x, deg); });
    const auto d = diff(p, order, g);
    double fact = 1.0;
    for (int i = 2; i <= deg; ++i) {
      fact *= i;
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n_nodes(); ++j) {
      worst = std::max(worst, std::abs(d[j] - fact * g.x(j)));
    }
    CHECK(worst < 1e-5 * fact);
  }
}

TEST_CASE("second-order accuracy on sin 2 pi x") {
  Grid1D g(128);
  const double w = 2.0 * kPi;
  const auto f = sample(g, [&](double x) { return std::sin(w * x); });
  const auto d = diff(f, 1, g);
  const double dx = g.dx();
  // centered truncation w^3 dx^2/6; one-sided ends w^3 dx^2/3
  const double bound = std::pow(w, 4) * dx * dx / 12.0 * 1.1;
  for (std::size_t j = 0; j < g.n_nodes(); ++j) {
    CHECK(std::abs(d[j] - w * std::cos(w * g.x(j))) <= bound);
  }

  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    Grid1D gn(n);
    const auto fn = sample(gn, [&](double x) { return std::sin(w * x); });
    const auto d2 = diff(fn, 2, gn);
    double err = 0.0;
    for (std::size_t j = 0; j < gn.n_nodes(); ++j) {
      err = std::max(err, std::abs(d2[j] + w * w * std::sin(w * gn.x(j))));
    }
    if (prev > 0.0) {
      CHECK(std::log2(prev / err) > 1.9);
    }
    prev = err;
  }
}

TEST_CASE("diff is linear") {
  Grid1D g(64);
  const auto f = sample(g, [](double x) { return std::exp(x); });
  const auto h = sample(g, [](double x) { return std::cos(3 * x); });
  std::vector<double> combo(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    combo[j] = 2.5 * f[j] - 0.75 * h[j];
  }
  for (int order = 1; order <= 4; ++order) {
    const auto df = diff(f, order, g);
    const auto dh = diff(h, order, g);
    const auto dc = diff(combo, order, g);
    for (std::size_t j = 0; j < f.size(); ++j) {
      CHECK(dc[j] == doctest::Approx(2.5 * df[j] - 0.75 * dh[j]).epsilon(1e-9).scale(1e3));
    }
  }
}

TEST_CASE("diff order limits") {
  Grid1D g(64);
  std::vector<double> f(g.n_nodes(), 1.0);
  CHECK(code_of([&] { (void)diff(f, 5, g); }) == ErrorCode::OrderTooHigh);
  CHECK(diff(f, 0, g) == f);
  std::vector<double> wrong(10, 1.0);
  CHECK(code_of([&] { (void)diff(wrong, 1, g); }) == ErrorCode::InvalidArgument);

  DiffOps ops(g);
  const auto p = sample(g, [](double x) { return std::pow(x, 6); });
  const auto d6 = diff_any(p, 6, ops);
  // sixth derivative of x^6 is 720 everywhere
  CHECK(d6[32] == doctest::Approx(720.0).epsilon(1e-3));
}

TEST_CASE("quadrature weights") {
  Grid1D g(64);
  const auto tw = quadrature_weights(g);
  const auto sw = quadrature_weights(g, QuadratureRule::Simpson);
  double ts = 0.0;
  double ss = 0.0;
  for (std::size_t j = 0; j < tw.size(); ++j) {
    ts += tw[j];
    ss += sw[j];
  }
  CHECK(ts == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ss == doctest::Approx(1.0).epsilon(1e-14));
  const auto cubic = sample(g, [](double x) { return x * x * x; });
  CHECK(integrate(cubic, g, QuadratureRule::Simpson) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(code_of([] { (void)quadrature_weights(Grid1D(33), QuadratureRule::Simpson); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("weighted_l2 against Beta integrals") {
  // omega = x(1-x): int omega^(2p) = B(2p+1, 2p+1)
  const auto data = testing::polynomial_data(2.0);
  const WeightField w(data);
  Grid1D g(256);
  const std::vector<double> one(g.n_nodes(), 1.0);

  // Simpson is exact on the quadratic, O(dx^4) on the quartic
  CHECK(weighted_l2(one, 0.5, g, w, QuadratureRule::Simpson) ==
        doctest::Approx(std::sqrt(std::beta(2.0, 2.0))).epsilon(1e-13));
  CHECK(weighted_l2(one, 1.0, g, w, QuadratureRule::Simpson) ==
        doctest::Approx(std::sqrt(std::beta(3.0, 3.0))).epsilon(1e-8));

  // trapezoid undershoots int x(1-x) by exactly dx^2/6
  const double dx = g.dx();
  const double trap = weighted_l2(one, 0.5, g, w);
  CHECK(trap * trap == doctest::Approx(1.0 / 6.0 - dx * dx / 6.0).epsilon(1e-13));
  CHECK(std::abs(trap - std::sqrt(1.0 / 6.0)) <= dx * dx);

  CHECK(weighted_l2(one, 0.0, g, w) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(code_of([&] { (void)weighted_l2(one, -0.1, g, w); }) == ErrorCode::NegativeExponent);
}

TEST_CASE("weighted_l2 converges at least at order 2") {
  const auto data = testing::polynomial_data(2.0);
  const WeightField w(data);
  for (double p : {0.5, 0.75, 1.5}) {
    const double exact = std::sqrt(std::beta(2 * p + 1, 2 * p + 1));
    double prev = 0.0;
    for (int n : {64, 128, 256, 512}) {
      Grid1D g(n);
      const std::vector<double> one(g.n_nodes(), 1.0);
      const double err = std::abs(weighted_l2(one, p, g, w) - exact);
      if (prev > 0.0) {
        CHECK(std::log2(prev / err) >= 1.9);
      }
      prev = err;
    }
  }
}

TEST_CASE("weighted_l2 is a seminorm") {
  const auto data = testing::polynomial_data(1.5);
  const WeightField w(data);
  Grid1D g(128);
  const auto f = sample(g, [](double x) { return std::sin(5 * x) + x; });
  const auto h = sample(g, [](double x) { return std::exp(-x) - 0.3; });
  std::vector<double> sum(f.size());
  std::vector<double> scaled(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    sum[j] = f[j] + h[j];
    scaled[j] = -3.0 * f[j];
  }
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    CHECK(weighted_l2(sum, p, g, w) <= weighted_l2(f, p, g, w) + weighted_l2(h, p, g, w) + 1e-15);
    CHECK(weighted_l2(scaled, p, g, w) == doctest::Approx(3.0 * weighted_l2(f, p, g, w)).epsilon(1e-14));
  }
}

TEST_CASE("sobolev_norm") {
  Grid1D g(256);
  const auto lin = sample(g, [](double x) { return x; });
  // ||x||^2 + ||1||^2 = 1/3 + 1, trapezoid adds dx^2/6 to the first
  CHECK(sobolev_norm(lin, 1, g) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-5));
  CHECK(sobolev_norm(lin, 1, g, QuadratureRule::Simpson) ==
        doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-13));

  // sin 2 pi x: 1/2 (1 + w^2 + w^4)
  const double w = 2.0 * kPi;
  const double exact2 = std::sqrt(0.5 * (1 + w * w + std::pow(w, 4)));
  double prev = 0.0;
  for (int n : {128, 256, 512}) {
    Grid1D gn(n);
    const auto s = sample(gn, [&](double x) { return std::sin(w * x); });
    const double err = std::abs(sobolev_norm(s, 2, gn) - exact2) / exact2;
    if (n == 256) {
      CHECK(err < 5e-4);
    }
    if (prev > 0.0) {
      CHECK(std::log2(prev / err) > 1.8);
    }
    prev = err;
  }
  CHECK(code_of([&] { (void)sobolev_norm(lin, 5, g); }) == ErrorCode::OrderTooHigh);
}

TEST_CASE("band solver matches a dense solve") {
  const std::size_t n = 7;
  detail::BandMatrix m(n, 2, 2);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = (i >= 2 ? i - 2 : 0); j < std::min(n, i + 3); ++j) {
      const double v = (i == j) ? 6.0 + i : 1.0 / (1.0 + i + 2.0 * j);
      m.add(i, j, v);
      dense[i][j] = v;
    }
  }
  std::vector<double> x_true(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_true[i] = std::cos(static_cast<double>(i));
  }
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rhs[i] += dense[i][j] * x_true[j];
    }
  }
  const auto x = m.solve(rhs);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-13));
  }
  CHECK(m.at(3, 3) == 9.0);
  CHECK(m.at(0, 2) == doctest::Approx(0.2));
  CHECK(code_of([&] { (void)m.at(0, 5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { m.add(0, 4, 1.0); }) == ErrorCode::InvalidArgument);
}
