#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "pvac/energy.hpp"

using namespace pvac;
using testing::code_of;
using testing::polynomial_data;

namespace {

using Index = std::tuple<double, int, int>;

// Index set written straight from the two functionals: leading pair at
// order top, odd family j <= odd_count, even family j <= even_count.
std::set<Index> hand_enumeration(double mu, int top, int odd_count, int even_count) {
  std::set<Index> out;
  out.insert({1 + mu, top, 1});
  out.insert({1 + mu, top, 0});
  for (int j = 1; j <= odd_count; ++j) {
    out.insert({1.5 + mu, top + 1 - 2 * j, j + 1});
    for (int i = 1; i <= j; ++i) {
      out.insert({0.5 + mu, top + 1 - 2 * j, i});
    }
  }
  for (int j = 1; j <= even_count; ++j) {
    out.insert({2 + mu, top - 2 * j, j + 2});
    for (int i = -1; i <= j; ++i) {
      out.insert({1 + mu, top - 2 * j, i + 1});
    }
  }
  return out;
}

std::set<Index> as_set(const std::vector<EnergyTerm>& catalog) {
  std::set<Index> out;
  for (const auto& t : catalog) {
    out.insert({t.p, t.s, t.k});
  }
  return out;
}

bool has(const std::vector<EnergyTerm>& catalog, double p, int s, int k) {
  return std::any_of(catalog.begin(), catalog.end(), [&](const EnergyTerm& t) {
    return std::abs(t.p - p) < 1e-12 && t.s == s && t.k == k;
  });
}

Snapshot uniform_snapshot(const Grid1D& g, double t, double value) {
  Snapshot s;
  s.t = t;
  s.v.assign(g.n_nodes(), value);
  s.eta = g.nodes();
  s.eta_x.assign(g.n_nodes(), 1.0);
  return s;
}

RunOptions cn_options(double horizon, double dt, double eps) {
  RunOptions o;
  o.horizon = horizon;
  o.config.dt = dt;
  o.config.epsilon = eps;
  o.config.newton_tol = 1e-13;
  o.config.scheme = TimeScheme::CrankNicolson;
  return o;
}

const AnalyticFunction kS0 = AnalyticFunction::polynomial({0.0, 0.2, 0.1});

}  // namespace

TEST_CASE("catalog for gamma >= 2") {
  const auto gas = derive_exponents(2.0);
  const auto cat = term_catalog(gas);
  CHECK(cat.size() == 16);
  CHECK(as_set(cat).size() == 16);
  CHECK(as_set(cat) == hand_enumeration(0.0, 4, 2, 2));
  CHECK(has(cat, 1.0, 4, 1));
  CHECK(has(cat, 2.0, 0, 4));

  const auto g25 = derive_exponents(2.5);
  CHECK(as_set(term_catalog(g25)) == hand_enumeration(g25.mu, 4, 2, 2));
}

TEST_CASE("catalog for gamma < 2") {
  const auto g15 = derive_exponents(1.5);
  const auto cat = term_catalog(g15);
  CHECK(cat.size() == 20);
  CHECK(as_set(cat) == hand_enumeration(0.5, 5, 3, 2));
  // j = 3 of the odd family: omega^(3/2+mu) d_x^4 v
  CHECK(has(cat, 1.5 + g15.mu, 0, 4));

  const auto g12 = derive_exponents(1.2);
  REQUIRE(g12.ell == 9);
  const auto cat9 = term_catalog(g12);
  CHECK(cat9.size() == 44);
  CHECK(as_set(cat9) == hand_enumeration(g12.mu, 9, 5, 4));
}

TEST_CASE("gamma = 2 catalog strictly contains the isentropic weighted terms") {
  const auto cat = term_catalog(derive_exponents(2.0));
  const std::set<Index> isentropic{{1.5, 1, 3}, {1.5, 3, 2}, {0.5, 1, 2}, {0.5, 3, 1}};
  const auto built = as_set(cat);
  CHECK(std::includes(built.begin(), built.end(), isentropic.begin(), isentropic.end()));
  CHECK(built.size() > isentropic.size());
  // the extra entropy-driven terms
  CHECK(has(cat, 2.0, 2, 3));
  CHECK(has(cat, 2.0, 0, 4));
  CHECK(has(cat, 0.5, 1, 1));
}

TEST_CASE("weights stay non-negative") {
  for (double gamma : {1.2, 1.5, 1.9, 2.0, 2.5, 2.9}) {
    for (const auto& t : term_catalog(derive_exponents(gamma))) {
      CHECK(t.p > 0.0);
      CHECK(t.s >= 0);
      CHECK(t.k >= 0);
      CHECK_FALSE(t.family.empty());
    }
  }
}

TEST_CASE("single term against an analytic integral") {
  // u0 = x(1-x), omega = x(1-x): int x(1-x)(1-2x)^2 dx = 1/30
  const auto d = polynomial_data(2.0, AnalyticFunction::polynomial({0.0, 1.0, -1.0}));
  const WeightField w(d);
  const EnergyTerm term{0.5, 0, 1, "probe"};
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    Grid1D g(n);
    const DiffOps ops(g);
    const auto u0 = testing::sample(g, [](double x) { return x * (1 - x); });
    const double err = std::abs(evaluate_term(u0, term, ops, w) - 1.0 / 30.0);
    if (n == 256) {
      CHECK(err < 1e-5);
    }
    if (prev > 0.0) {
      CHECK(std::log2(prev / err) > 1.9);
    }
    prev = err;
  }
}

TEST_CASE("snapshot ring") {
  Grid1D g(32);
  SnapshotRing ring(7);
  CHECK(ring.capacity() == 7);
  CHECK(code_of([&] { (void)ring.time_derivative(1); }) == ErrorCode::RingNotFull);
  ring.push(uniform_snapshot(g, 0.0, 0.0));
  ring.push(uniform_snapshot(g, 0.1, 0.0));
  CHECK(code_of([&] { ring.push(uniform_snapshot(g, 0.25, 0.0)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { ring.push(uniform_snapshot(g, 0.1, 0.0)); }) == ErrorCode::InvalidArgument);
  CHECK(ring.can_differentiate(0));
  CHECK_FALSE(ring.can_differentiate(1));
  CHECK(code_of([&] { (void)ring.time_derivative(1); }) == ErrorCode::RingNotFull);
  for (int m = 2; m < 10; ++m) {
    ring.push(uniform_snapshot(g, 0.1 * m, 0.0));
  }
  CHECK(ring.size() == 7);
  CHECK(ring.newest_time() == doctest::Approx(0.9));
  CHECK(ring.can_differentiate(5));
  CHECK_FALSE(ring.can_differentiate(6));
}

TEST_CASE("ring derivatives are exact on polynomials of degree s + 1") {
  Grid1D g(32);
  const double dt = 0.01;
  for (int s = 1; s <= 5; ++s) {
    SnapshotRing ring(7);
    const double t0 = 0.3;
    for (int m = 0; m < 7; ++m) {
      const double t = t0 + m * dt;
      ring.push(uniform_snapshot(g, t, std::pow(t, s + 1)));
    }
    const double t = t0 + 6 * dt;
    double expected = 1.0;
    for (int i = 0; i < s; ++i) {
      expected *= (s + 1 - i);
    }
    expected *= t;
    const auto d = ring.time_derivative(s);
    CHECK(d[7] == doctest::Approx(expected).epsilon(1e-6 * std::pow(10.0, s)));
  }
}

TEST_CASE("ring derivatives are second order") {
  Grid1D g(32);
  for (int s = 1; s <= 3; ++s) {
    double prev = 0.0;
    for (double dt : {0.02, 0.01, 0.005}) {
      SnapshotRing ring(7);
      for (int m = 0; m < 7; ++m) {
        ring.push(uniform_snapshot(g, m * dt, std::exp(m * dt)));
      }
      const double err = std::abs(ring.time_derivative(s)[0] - std::exp(6 * dt));
      if (prev > 0.0) {
        CHECK(std::log2(prev / err) == doctest::Approx(2.0).epsilon(0.1));
      }
      prev = err;
    }
  }
}

TEST_CASE("ring capacity follows the catalog") {
  CHECK(ring_capacity_for(term_catalog(derive_exponents(2.0))) == 7);
  CHECK(ring_capacity_for(term_catalog(derive_exponents(1.5))) == 7);
  CHECK(ring_capacity_for(term_catalog(derive_exponents(1.2))) >= 11);
}

TEST_CASE("zero velocity has zero energy") {
  Grid1D g(64);
  const auto d = polynomial_data(2.0);
  // cancel the pressure so v stays at rest
  const ParabolicOperator op(g, d, 0.0);
  const auto s0 = initial_state(g, d);
  const auto a0 = op.acceleration(s0.v, s0.eta);
  RunOptions o;
  o.horizon = 0.01;
  o.config.dt = 1e-3;
  o.source = [a0](double) {
    auto out = a0;
    for (double& x : out) {
      x = -x;
    }
    return out;
  };
  const auto r = run(d, g, o);
  REQUIRE(r.completed);
  SnapshotRing ring(7);
  for (const auto& s : r.snapshots) {
    for (double v : s.v) {
      CHECK(v == 0.0);
    }
    ring.push(s);
  }
  const auto b = evaluate(ring, term_catalog(d.gas), g, WeightField(d));
  CHECK(b.total == 0.0);
  for (const auto& t : b.terms) {
    CHECK(t.value == 0.0);
  }

  CompatibilitySet rest;
  rest.order = 4;
  rest.x = g.nodes();
  rest.u.assign(4, std::vector<double>(g.n_nodes(), 0.0));
  const auto b0 = evaluate_initial(r.snapshots.front(), rest, term_catalog(d.gas), g, WeightField(d));
  CHECK(b0.total == 0.0);
}

TEST_CASE("energy is quadratic in v") {
  Grid1D g(64);
  const auto d = polynomial_data(2.0, AnalyticFunction::sine(0.1, 2.0), kS0);
  const auto r = run(d, g, cn_options(0.01, 1e-3, 0.01));
  REQUIRE(r.completed);
  SnapshotRing ring(7);
  SnapshotRing doubled(7);
  for (const auto& s : r.snapshots) {
    ring.push(s);
    Snapshot t = s;
    for (double& v : t.v) {
      v *= 2.0;
    }
    doubled.push(t);
  }
  const auto cat = term_catalog(d.gas);
  const auto a = evaluate(ring, cat, g, WeightField(d));
  const auto b = evaluate(doubled, cat, g, WeightField(d));
  REQUIRE(a.terms.size() == b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    CHECK(b.terms[i].value == 4.0 * a.terms[i].value);
  }
}

TEST_CASE("initial breakdown flags") {
  Grid1D g(64);
  const auto d = polynomial_data(1.5, AnalyticFunction::sine(0.1, 2.0), kS0);
  const auto r = run(d, g, cn_options(0.01, 1e-3, 0.01));
  const auto compat = compute_compatibility(g, d, 0.01);
  const auto cat = term_catalog(d.gas);
  const auto b = evaluate_initial(r.snapshots.front(), compat, cat, g, WeightField(d), r.snapshots);
  double sum = 0.0;
  for (const auto& t : b.terms) {
    CHECK(t.value >= 0.0);
    CHECK(std::isfinite(t.value));
    CHECK(t.exact_time_derivative == (t.term.s <= 4));
    CHECK(t.binding == (t.term.s <= kBindingTimeOrder));
    CHECK(t.low_confidence == (t.term.s > kConfidentTimeOrder));
    sum += t.value;
  }
  CHECK(b.total == doctest::Approx(sum).epsilon(1e-14));
  CHECK(code_of([&] {
          (void)evaluate_initial(r.snapshots.front(), compat, cat, g, WeightField(d),
                                 {r.snapshots.begin(), r.snapshots.begin() + 2});
        }) == ErrorCode::RingNotFull);
}

TEST_CASE("tracking a smooth run") {
  Grid1D g(128);
  for (double gamma : {1.5, 2.0}) {
    const auto d = polynomial_data(gamma, AnalyticFunction::sine(0.1, 2.0), kS0);
    RunOptions o;
    o.horizon = 0.05;
    o.config.dt = 1e-3;
    o.config.newton_tol = 1e-12;
    const auto r = run(d, g, o);
    REQUIRE(r.completed);
    const auto series = track(r.snapshots, d, g, 0.0);
    REQUIRE_FALSE(series.series.empty());
    CHECK(series.series.front().t == 0.0);
    CHECK(series.series.back().t == doctest::Approx(0.05));
    CHECK(series.binding_ratio <= 4.0);
    CHECK(series.binding_ratio >= 1.0);
    for (const auto& b : series.series) {
      double sum = 0.0;
      double binding = 0.0;
      for (const auto& t : b.terms) {
        CHECK(t.value >= 0.0);
        sum += t.value;
        binding += t.binding ? t.value : 0.0;
      }
      CHECK(b.total == doctest::Approx(sum).epsilon(1e-13));
      CHECK(b.binding_total == doctest::Approx(binding).epsilon(1e-13));
    }

    const auto again = track(r.snapshots, d, g, 0.0);
    REQUIRE(again.series.size() == series.series.size());
    for (std::size_t i = 0; i < again.series.size(); ++i) {
      CHECK(again.series[i].total == series.series[i].total);
    }
  }
}

TEST_CASE("late breakdown only depends on the ring contents") {
  Grid1D g(64);
  const auto d = polynomial_data(2.0, AnalyticFunction::sine(0.1, 2.0), kS0);
  const auto r = run(d, g, cn_options(0.02, 1e-3, 0.01));
  const auto series = track(r.snapshots, d, g, 0.01);
  SnapshotRing ring(7);
  for (std::size_t i = r.snapshots.size() - 7; i < r.snapshots.size(); ++i) {
    ring.push(r.snapshots[i]);
  }
  const auto b = evaluate(ring, term_catalog(d.gas), g, WeightField(d));
  CHECK(b.total == series.series.back().total);
}

TEST_CASE("low time orders converge at second order in dt") {
  Grid1D g(128);
  const auto d = polynomial_data(2.0, AnalyticFunction::sine(0.1, 2.0), kS0);
  const auto cat = term_catalog(d.gas);
  std::vector<std::vector<double>> values;
  for (double dt : {1e-3, 5e-4, 2.5e-4}) {
    const auto r = run(d, g, cn_options(0.02, dt, 0.01));
    SnapshotRing ring(7);
    for (const auto& s : r.snapshots) {
      ring.push(s);
    }
    std::vector<double> v;
    for (const auto& t : evaluate(ring, cat, g, WeightField(d)).terms) {
      if (t.term.s <= 2) {
        v.push_back(t.value);
      }
    }
    values.push_back(v);
  }
  REQUIRE_FALSE(values[0].empty());
  for (std::size_t i = 0; i < values[0].size(); ++i) {
    const double d1 = std::abs(values[0][i] - values[1][i]);
    const double d2 = std::abs(values[1][i] - values[2][i]);
    CHECK(std::log2(d1 / d2) >= 1.8);
  }
}
