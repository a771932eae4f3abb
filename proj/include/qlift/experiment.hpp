#pragma once

#include "qlift/relation.hpp"
#include "qlift/sim.hpp"

namespace qlift::experiment {

using statevec::AdversaryCircuit;

/// Result of one simulator evaluation: the outcome distribution plus the
/// structural counters the contracts assert on.
struct SimRun {
  OutcomeDist dist;
  unsigned g_queries_min = 0;
  unsigned g_queries_max = 0;
  unsigned paths = 0;
};

/// Plain circuit run against the reprogrammed oracle H_{xo,yo}, with the k
/// appended verification queries computing the y vector.
OutcomeDist run_reprogrammed_adversary(const AdversaryCircuit& circuit, const OracleTable& H,
                                       const std::vector<int>& xo, const std::vector<int>& yo);

/// The coherent measure-and-reprogram experiment for one fixed schedule:
/// every query is answered through the control-register patch over H, the
/// scheduled positions update the control register from G (with the
/// coherent duplicate check), and the final control measurement enforces
/// output equivalence.
SimRun run_simulator_scheduled(const AdversaryCircuit& circuit, const OracleTable& H,
                               const OracleTable& G, const ReprogramSchedule& schedule);

/// Exact average over all (t, v, b) schedule choices with their alpha-law
/// weights.
SimRun run_simulator(const AdversaryCircuit& circuit, const OracleTable& H, const OracleTable& G);

/// Noisy variant: exhaustively enumerates the per-query noise coins; each
/// realized coin pattern is simulated with the schedule law of that pattern.
/// Requires an all-quantum circuit (the noise decides classical answers).
SimRun run_noisy_simulator(const AdversaryCircuit& circuit, const OracleTable& H,
                           const OracleTable& G, const mpq_class& p);

/// Noisy adversary side under the same coin enumeration.
OutcomeDist run_noisy_adversary(const AdversaryCircuit& circuit, const OracleTable& H_patched,
                                const mpq_class& p);

/// Sampled-schedule demo variant (exhaustive averaging is the default for
/// inequality checks; this exists for large-parameter runs).
SimRun run_simulator_sampled(const AdversaryCircuit& circuit, const OracleTable& H,
                             const OracleTable& G, unsigned samples, uint64_t seed);

/// Success mass of a distribution: outcomes equivalent to xo that satisfy
/// the predicate V^{H_{xo,yo}} of the given game/challenge.
double success_mass(const OutcomeDist& dist, const GameSpec& game,
                    const std::vector<int>& challenge, const OracleTable& H_patched,
                    const std::vector<int>& xo);

}  // namespace qlift::experiment
