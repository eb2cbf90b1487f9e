#pragma once

#include <deque>
#include <string>
#include <vector>

#include "pvac/compatibility.hpp"
#include "pvac/diff_ops.hpp"
#include "pvac/gas.hpp"
#include "pvac/grid.hpp"
#include "pvac/initial_data.hpp"
#include "pvac/parabolic_solver.hpp"

namespace pvac {

/// One summand ||omega^p d_t^s d_x^k v||_0^2 of the higher-order energy.
struct EnergyTerm {
  double p = 0.0;
  int s = 0;
  int k = 0;
  std::string family;  // which line of the functional the term comes from
};

/// Time orders above this come from finite differences with amplified noise.
inline constexpr int kConfidentTimeOrder = 5;
/// Terms with s up to this order are the ones acceptance bounds bind on.
inline constexpr int kBindingTimeOrder = 4;

/// Index set of the energy functional: for 2 <= gamma < 3 it uses the
/// fixed orders 4/5, for 1 < gamma < 2 the order l of `params`.
std::vector<EnergyTerm> term_catalog(const GasParameters& params);

struct TermValue {
  EnergyTerm term;
  double value = 0.0;
  bool exact_time_derivative = false;  // taken from the compatibility recursion
  bool low_confidence = false;         // s above kConfidentTimeOrder
  bool binding = false;                // s <= kBindingTimeOrder
};

struct EnergyBreakdown {
  double t = 0.0;
  std::vector<TermValue> terms;
  double total = 0.0;
  double binding_total = 0.0;
};

/// Last few snapshots at uniform spacing; time derivatives at the newest
/// snapshot come from second-order backward differences over s+2 points.
class SnapshotRing {
 public:
  explicit SnapshotRing(std::size_t capacity = 7);

  /// Throws InvalidArgument if the spacing is not uniform (1e-12 relative)
  /// or times do not increase.
  void push(const Snapshot& snap);
  [[nodiscard]] std::size_t size() const { return buffer_.size(); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] double newest_time() const { return buffer_.back().t; }
  [[nodiscard]] bool can_differentiate(int s) const;
  /// d^s v / dt^s at the newest time; RingNotFull when too few snapshots.
  [[nodiscard]] std::vector<double> time_derivative(int s) const;

 private:
  std::size_t capacity_;
  std::deque<Snapshot> buffer_;
};

/// Ring capacity that covers every time order of the catalog (at least 7).
std::size_t ring_capacity_for(const std::vector<EnergyTerm>& catalog);

/// Single term from a ready nodal field d_t^s v.
double evaluate_term(const std::vector<double>& time_field, const EnergyTerm& term,
                     const DiffOps& ops, const WeightField& weight);

/// Energy at the newest ring time.
EnergyBreakdown evaluate(const SnapshotRing& ring, const std::vector<EnergyTerm>& catalog,
                         const Grid1D& grid, const WeightField& weight);

/// Energy at t = 0: s = 0 from the snapshot, 1 <= s <= 4 from `compat`,
/// higher s by second-order forward differences over `leading` (the first
/// snapshots of a uniform run). Throws RingNotFull if `leading` is too short.
EnergyBreakdown evaluate_initial(const Snapshot& initial, const CompatibilitySet& compat,
                                 const std::vector<EnergyTerm>& catalog, const Grid1D& grid,
                                 const WeightField& weight,
                                 const std::vector<Snapshot>& leading = {});

struct EnergySeries {
  std::vector<EnergyBreakdown> series;
  double e0 = 0.0;
  double sup_total = 0.0;
  double ratio = 0.0;          // sup_total / e0
  double e0_binding = 0.0;
  double sup_binding = 0.0;
  double binding_ratio = 0.0;  // sup over binding terms / binding E(0)
};

/// Energy along a run with uniform snapshot spacing: t = 0 via
/// evaluate_initial, then every snapshot once the ring can supply all orders.
EnergySeries track(const std::vector<Snapshot>& snapshots, const InitialData& data,
                   const Grid1D& grid, double epsilon);

}  // namespace pvac
