#pragma once

#include "qlift/relation.hpp"
#include "qlift/sim.hpp"

namespace qlift::adversaries {

using statevec::AdversaryCircuit;

/// k-stage hybrid search: per stage, v classical probes at fresh points,
/// u Grover iterations over the unprobed/uncommitted span marking preimages
/// of the target set, then one committed point. At N = 2 the marking costs
/// one query per iteration (phase kickback); otherwise compute-flip-uncompute
/// costs N queries per iteration, which the declared pattern reflects.
struct StagedGroverSpec {
  unsigned k = 1;
  unsigned u = 1;  // Grover iterations per stage
  unsigned v = 0;  // classical probes per stage
  std::vector<int> targets;
  unsigned M = 4;
  unsigned N = 4;
};

AdversaryCircuit build_staged_grover(const StagedGroverSpec& spec);

/// `budget` classical probes at points 0..budget-1, then the best-scoring
/// output tuple under the game predicate restricted to the recorded pairs;
/// unresolvable answer patterns fall back to distinct unprobed points.
AdversaryCircuit build_classical_exhaustive(unsigned k, unsigned budget, const GameSpec& game,
                                            const std::vector<int>& challenge);

/// Zero-query circuit with the fixed distinct output (0, 1, ..., k-1).
AdversaryCircuit build_random_guess(unsigned k, unsigned M, unsigned N);

/// Fixed output vector, one quantum query at 0 and one classical query at a
/// point outside the output set (budgets q = 1, c = 1).
AdversaryCircuit build_fixed_output(unsigned M, unsigned N, const std::vector<int>& outs);

/// Two-output search circuit: u Grover iterations over the full domain for
/// the first point, then one classical probe at M-1 and a value-driven
/// second commit (budgets q = u, c = 1, k = 2, N = 2).
AdversaryCircuit build_grover_probe_pair(unsigned M, unsigned u);

/// T quantum queries scanning points 0..T-1 with a constant decision;
/// the noisy-model baseline circuit.
AdversaryCircuit build_fixed_scan(unsigned M, unsigned N, unsigned T, int decision);

/// T = 2 quantum scan over points 0,1 committing the first preimage of
/// `target` (else point 0); adaptive cousin of build_fixed_scan.
AdversaryCircuit build_adaptive_scan(unsigned M, unsigned N, int target);

}  // namespace qlift::adversaries
