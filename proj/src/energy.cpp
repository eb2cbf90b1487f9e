#include "pvac/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pvac/errors.hpp"
#include "pvac/quadrature.hpp"

namespace pvac {

std::vector<EnergyTerm> term_catalog(const GasParameters& params) {
  if (!params.case_one() && params.ell > params.ell_cap) {
    fail(ErrorCode::UnsupportedOrder, "energy order l = " + std::to_string(params.ell) +
                                          " exceeds cap " + std::to_string(params.ell_cap));
  }
  const double mu = params.mu;
  // For gamma >= 2 the catalog is the l = 4 instance of the general pattern, with the j ranges
  // as l = 5 for the middle family and l = 4 for the last.
  const bool case_one = params.case_one();
  const int top = case_one ? 4 : params.ell;
  const int odd_base = case_one ? 5 : params.ell + 1;  // time order l+1-2j
  const int odd_count = case_one ? 2 : (params.ell + 1) / 2;
  const int even_base = case_one ? 4 : params.ell;     // time order l-2j
  const int even_count = case_one ? 2 : (params.ell - 1) / 2;

  std::vector<EnergyTerm> out;
  out.push_back({1.0 + mu, top, 1, "top"});
  out.push_back({1.0 + mu, top, 0, "top"});
  for (int j = 1; j <= odd_count; ++j) {
    const int s = odd_base - 2 * j;
    const std::string fam = "odd j=" + std::to_string(j);
    out.push_back({1.5 + mu, s, j + 1, fam});
    for (int i = 1; i <= j; ++i) {
      out.push_back({0.5 + mu, s, i, fam});
    }
  }
  for (int j = 1; j <= even_count; ++j) {
    const int s = even_base - 2 * j;
    const std::string fam = "even j=" + std::to_string(j);
    out.push_back({2.0 + mu, s, j + 2, fam});
    for (int i = -1; i <= j; ++i) {
      out.push_back({1.0 + mu, s, i + 1, fam});
    }
  }
  return out;
}

SnapshotRing::SnapshotRing(std::size_t capacity) : capacity_(capacity) {
  if (capacity < 2) {
    fail(ErrorCode::InvalidArgument, "ring capacity must be at least 2");
  }
}

void SnapshotRing::push(const Snapshot& snap) {
  if (!buffer_.empty()) {
    const double dt_new = snap.t - buffer_.back().t;
    if (!(dt_new > 0.0)) {
      fail(ErrorCode::InvalidArgument, "snapshot times must increase");
    }
    if (buffer_.size() >= 2) {
      const double dt_old = buffer_.back().t - buffer_[buffer_.size() - 2].t;
      if (std::abs(dt_new - dt_old) > 1e-12 * std::max(1.0, std::abs(snap.t)) + 1e-9 * dt_old) {
        fail(ErrorCode::InvalidArgument, "snapshot spacing is not uniform");
      }
    }
  }
  buffer_.push_back(snap);
  if (buffer_.size() > capacity_) {
    buffer_.pop_front();
  }
}

bool SnapshotRing::can_differentiate(int s) const {
  const std::size_t need = s == 0 ? 1 : static_cast<std::size_t>(s) + 2;
  return buffer_.size() >= need;
}

std::vector<double> SnapshotRing::time_derivative(int s) const {
  if (!can_differentiate(s)) {
    fail(ErrorCode::RingNotFull, "ring holds " + std::to_string(buffer_.size()) +
                                     " snapshots, order " + std::to_string(s) + " needs " +
                                     std::to_string(s + 2));
  }
  if (s == 0) {
    return buffer_.back().v;
  }
  const std::size_t width = static_cast<std::size_t>(s) + 2;
  const std::size_t first = buffer_.size() - width;
  std::vector<double> times(width);
  for (std::size_t i = 0; i < width; ++i) {
    times[i] = buffer_[first + i].t;
  }
  const auto w = fd_weights(buffer_.back().t, times, s);
  std::vector<double> out(buffer_.back().v.size(), 0.0);
  for (std::size_t i = 0; i < width; ++i) {
    const auto& v = buffer_[first + i].v;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += w[i] * v[j];
    }
  }
  return out;
}

std::size_t ring_capacity_for(const std::vector<EnergyTerm>& catalog) {
  int s_max = 0;
  for (const auto& t : catalog) {
    s_max = std::max(s_max, t.s);
  }
  return std::max<std::size_t>(7, static_cast<std::size_t>(s_max) + 2);
}

double evaluate_term(const std::vector<double>& time_field, const EnergyTerm& term,
                     const DiffOps& ops, const WeightField& weight) {
  const auto field = diff_any(time_field, term.k, ops);
  const double n = weighted_l2(field, term.p, ops.grid(), weight);
  return n * n;
}

namespace {

TermValue make_value(const EnergyTerm& term, double value, bool exact) {
  TermValue tv;
  tv.term = term;
  tv.value = value;
  tv.exact_time_derivative = exact;
  tv.low_confidence = term.s > kConfidentTimeOrder;
  tv.binding = term.s <= kBindingTimeOrder;
  return tv;
}

void finish(EnergyBreakdown& b) {
  b.total = 0.0;
  b.binding_total = 0.0;
  for (const auto& tv : b.terms) {
    b.total += tv.value;
    if (tv.binding) {
      b.binding_total += tv.value;
    }
  }
}

}  // namespace

EnergyBreakdown evaluate(const SnapshotRing& ring, const std::vector<EnergyTerm>& catalog,
                         const Grid1D& grid, const WeightField& weight) {
  const DiffOps ops(grid);
  EnergyBreakdown b;
  b.t = ring.newest_time();
  std::vector<std::vector<double>> cache;
  std::vector<bool> have;
  for (const auto& term : catalog) {
    const auto s = static_cast<std::size_t>(term.s);
    if (s >= cache.size()) {
      cache.resize(s + 1);
      have.resize(s + 1, false);
    }
    if (!have[s]) {
      cache[s] = ring.time_derivative(term.s);
      have[s] = true;
    }
    b.terms.push_back(make_value(term, evaluate_term(cache[s], term, ops, weight), false));
  }
  finish(b);
  return b;
}

EnergyBreakdown evaluate_initial(const Snapshot& initial, const CompatibilitySet& compat,
                                 const std::vector<EnergyTerm>& catalog, const Grid1D& grid,
                                 const WeightField& weight, const std::vector<Snapshot>& leading) {
  const DiffOps ops(grid);
  EnergyBreakdown b;
  b.t = initial.t;
  for (const auto& term : catalog) {
    std::vector<double> field;
    bool exact = true;
    if (term.s == 0) {
      field = initial.v;
    } else if (term.s <= compat.order) {
      field = compat.field(term.s);
    } else {
      const std::size_t width = static_cast<std::size_t>(term.s) + 2;
      if (leading.size() < width) {
        fail(ErrorCode::RingNotFull, "time order " + std::to_string(term.s) +
                                         " at t = 0 needs " + std::to_string(width) +
                                         " leading snapshots");
      }
      std::vector<double> times(width);
      for (std::size_t i = 0; i < width; ++i) {
        times[i] = leading[i].t;
      }
      const auto w = fd_weights(leading.front().t, times, term.s);
      field.assign(initial.v.size(), 0.0);
      for (std::size_t i = 0; i < width; ++i) {
        for (std::size_t j = 0; j < field.size(); ++j) {
          field[j] += w[i] * leading[i].v[j];
        }
      }
      exact = false;
    }
    b.terms.push_back(make_value(term, evaluate_term(field, term, ops, weight), exact));
  }
  finish(b);
  return b;
}

EnergySeries track(const std::vector<Snapshot>& snapshots, const InitialData& data,
                   const Grid1D& grid, double epsilon) {
  if (snapshots.empty()) {
    fail(ErrorCode::InvalidArgument, "track needs at least one snapshot");
  }
  const auto catalog = term_catalog(data.gas);
  int s_max = 0;
  for (const auto& t : catalog) {
    s_max = std::max(s_max, t.s);
  }
  const WeightField weight(data);
  const auto compat =
      compute_compatibility(grid, data, epsilon, std::min(s_max, kMaxCompatibilityOrder));

  EnergySeries out;
  out.series.push_back(evaluate_initial(snapshots.front(), compat, catalog, grid, weight, snapshots));

  // An off-cadence final snapshot (horizon not a multiple of the output
  // spacing) ends the uniformly spaced series.
  std::size_t uniform = snapshots.size();
  if (snapshots.size() > 2) {
    const double h = snapshots[1].t - snapshots[0].t;
    for (std::size_t i = 2; i < snapshots.size(); ++i) {
      if (std::abs(snapshots[i].t - snapshots[i - 1].t - h) > 1e-9 * h) {
        uniform = i;
        break;
      }
    }
  }
  SnapshotRing ring(ring_capacity_for(catalog));
  for (std::size_t i = 0; i < uniform; ++i) {
    const auto& snap = snapshots[i];
    ring.push(snap);
    if (snap.t > snapshots.front().t && ring.can_differentiate(s_max)) {
      out.series.push_back(evaluate(ring, catalog, grid, weight));
    }
  }

  out.e0 = out.series.front().total;
  out.e0_binding = out.series.front().binding_total;
  for (const auto& b : out.series) {
    out.sup_total = std::max(out.sup_total, b.total);
    out.sup_binding = std::max(out.sup_binding, b.binding_total);
  }
  out.ratio = out.e0 > 0.0 ? out.sup_total / out.e0 : 0.0;
  out.binding_ratio = out.e0_binding > 0.0 ? out.sup_binding / out.e0_binding : 0.0;
  return out;
}

}  // namespace pvac
