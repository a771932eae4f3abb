#pragma once

#include <compare>
#include <map>
#include <vector>

namespace qlift {

struct OutcomeKey {
  std::vector<int> xs;
  std::vector<int> ys;
  std::vector<int> zs;
  auto operator<=>(const OutcomeKey&) const = default;
};

/// Probability-mass view of a run's final measurement. Abort masses keep the
/// distribution complete: mass total + aborts == 1 for normalized inputs.
struct OutcomeDist {
  std::map<OutcomeKey, double> mass;
  double abort_duplicate = 0.0;    // coherent duplicate check tripped
  double abort_equivalence = 0.0;  // final control/output mismatch

  double total() const {
    double t = abort_duplicate + abort_equivalence;
    for (const auto& [k, w] : mass) t += w;
    return t;
  }
  void add_scaled(const OutcomeDist& o, double w) {
    for (const auto& [k, m] : o.mass) mass[k] += w * m;
    abort_duplicate += w * o.abort_duplicate;
    abort_equivalence += w * o.abort_equivalence;
  }
};

/// One exhaustive branch (or sampled trajectory): the per-query noise coins,
/// the measurement outcomes seen along the way, and the branch probability.
struct Trajectory {
  std::vector<bool> classical_coins;
  std::vector<int> measurements;
  double weight = 0.0;
};

}  // namespace qlift
