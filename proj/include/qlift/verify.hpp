#pragma once

#include <functional>
#include <string>

#include "qlift/adversaries.hpp"
#include "qlift/experiment.hpp"

namespace qlift::verify {

using experiment::AdversaryCircuit;

/// A circuit that may depend on the sampled challenge.
using CircuitFamily = std::function<AdversaryCircuit(const std::vector<int>& challenge)>;

CircuitFamily fixed_circuit(AdversaryCircuit c);

/// Exact win probability of one game execution: the circuit runs against the
/// oracle, the challenger's k verification queries compute the images, and
/// the predicate (up to joint reordering of the answer pairs) decides.
double play_game(const GameSpec& game, const CircuitFamily& circuit, const OracleTable& oracle,
                 const std::vector<int>& challenge);

/// Average win probability over all oracle tables and the game's challenge
/// distribution (exhaustive).
double average_win_probability(const GameSpec& game, const CircuitFamily& circuit,
                               uint64_t cell_cap = uint64_t(1) << 20);

struct CellResult {
  uint64_t h_index = 0;
  uint64_t g_index = 0;
  std::vector<int> xo;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  std::string mode;
  uint64_t seed = 0;
};

struct InequalityReport {
  std::string name;
  std::vector<CellResult> cells;
  bool pass = true;
  double min_margin = 0;
  double tolerance = 1e-9;
  // structural counters aggregated over every simulator run
  unsigned g_queries_min = 0;
  unsigned g_queries_max = 0;
  double max_norm_drift = 0;
  double max_branch_sum_error = 0;

  void finish();
};

struct GridOptions {
  double tolerance = 1e-9;
  uint64_t cell_cap = uint64_t(1) << 20;  // H-tables * G-tables * xo tuples
};

/// Per-cell Sim >= Adv / hybrid_loss_exact(k,q,c) over exhaustive
/// (H, G, xo) enumeration with exhaustive schedule averaging. The game's
/// challenge must be fixed (challenge-free relations).
InequalityReport check_reprogram_inequality(const GameSpec& game, const AdversaryCircuit& circuit,
                                            const GridOptions& opts = {});

/// Noisy variant at noise probability p with exhaustive coin enumeration;
/// loss is noisy_loss_exact(p, T, k).
InequalityReport check_noisy_inequality(const GameSpec& game, const AdversaryCircuit& circuit,
                                        const mpq_class& p, const GridOptions& opts = {});

/// Average-over-oracles game bound: Pr[win] <= hybrid_loss_exact * p(R).
InequalityReport check_lifting(const GameSpec& game, const CircuitFamily& circuit,
                               const GridOptions& opts = {});

/// g independent instances over disjoint oracle rows (domain g*M, block i
/// owns inputs [i*M, (i+1)*M)); the circuit must output block-prefixed
/// tuples. Exact win probability for one big oracle table.
double play_direct_product(unsigned g, const GameSpec& game, const AdversaryCircuit& circuit,
                           const OracleTable& oracle, const std::vector<std::vector<int>>& chs);

/// g instances sharing one oracle; the circuit outputs g tuples of k points.
double play_multi_instance(unsigned g, const GameSpec& game, const AdversaryCircuit& circuit,
                           const OracleTable& oracle, const std::vector<std::vector<int>>& chs);

struct Estimate {
  double estimate = 0;
  double lower = 0;  // two-sided Clopper-Pearson 99%
  double upper = 1;
  unsigned long successes = 0;
  unsigned long trials = 0;
};

Estimate monte_carlo_estimate(const std::function<bool(std::mt19937_64&)>& event,
                              unsigned long trials, uint64_t seed);

}  // namespace qlift::verify
