#include "qlift/experiment.hpp"

#include <climits>

#include "qlift/bounds.hpp"
#include "qlift/errors.hpp"

namespace qlift::experiment {

using statevec::ExecConfig;
using statevec::ExecResult;
using statevec::QueryMode;

namespace {

std::vector<QueryMode> modes_from_pattern(const AdversaryCircuit& c) {
  std::vector<QueryMode> modes;
  for (bool cl : c.classical_pattern())
    modes.push_back(cl ? QueryMode::ClassicalPurified : QueryMode::Quantum);
  return modes;
}

SimRun exec_simulator(const AdversaryCircuit& circuit, const std::vector<QueryMode>& modes,
                      const OracleTable& H, const OracleTable& G,
                      const ReprogramSchedule& schedule) {
  ExecConfig cfg;
  cfg.circuit = &circuit;
  cfg.modes = modes;
  cfg.answer_oracle = &H;
  cfg.controlled = true;
  cfg.g_oracle = &G;
  cfg.schedule = &schedule;
  cfg.with_verification = true;
  ExecResult r = statevec::execute(cfg);
  return {std::move(r.dist), r.g_queries_min, r.g_queries_max, r.paths};
}

/// Schedule-weighted average over the (t, v, b) law for a given coin/mode
/// assignment; alpha is evaluated at the assignment's (q, c) split.
SimRun average_schedules(const AdversaryCircuit& circuit, const std::vector<QueryMode>& modes,
                         const OracleTable& H, const OracleTable& G) {
  unsigned q = 0, c = 0;
  for (QueryMode m : modes) (m == QueryMode::Quantum ? q : c)++;
  SimRun total;
  total.g_queries_min = UINT_MAX;
  for (const auto& ws : enumerate_schedules(circuit.k, q, c)) {
    SimRun one = exec_simulator(circuit, modes, H, G, ws.schedule);
    total.dist.add_scaled(one.dist, ws.weight.get_d());
    total.g_queries_min = std::min(total.g_queries_min, one.g_queries_min);
    total.g_queries_max = std::max(total.g_queries_max, one.g_queries_max);
    total.paths += one.paths;
  }
  require(total.g_queries_min == circuit.k && total.g_queries_max == circuit.k,
          Errc::ShapeMismatch, "simulator must query G exactly k times");
  return total;
}

}  // namespace

OutcomeDist run_reprogrammed_adversary(const AdversaryCircuit& circuit, const OracleTable& H,
                                       const std::vector<int>& xo, const std::vector<int>& yo) {
  OracleTable patched = materialize(reprogram(H, xo, yo));
  ExecConfig cfg;
  cfg.circuit = &circuit;
  cfg.modes = modes_from_pattern(circuit);
  cfg.answer_oracle = &patched;
  cfg.with_verification = true;
  return statevec::execute(cfg).dist;
}

SimRun run_simulator_scheduled(const AdversaryCircuit& circuit, const OracleTable& H,
                               const OracleTable& G, const ReprogramSchedule& schedule) {
  return exec_simulator(circuit, modes_from_pattern(circuit), H, G, schedule);
}

SimRun run_simulator(const AdversaryCircuit& circuit, const OracleTable& H,
                     const OracleTable& G) {
  return average_schedules(circuit, modes_from_pattern(circuit), H, G);
}

SimRun run_noisy_simulator(const AdversaryCircuit& circuit, const OracleTable& H,
                           const OracleTable& G, const mpq_class& p) {
  unsigned T = 0;
  for (bool cl : circuit.classical_pattern()) {
    require(!cl, Errc::ShapeMismatch, "noisy runs take all-quantum circuits");
    ++T;
  }
  SimRun total;
  total.g_queries_min = UINT_MAX;
  mpq_class one_minus = 1 - p;
  for (uint64_t bits = 0; bits < (uint64_t(1) << T); ++bits) {
    mpq_class w = 1;
    std::vector<QueryMode> modes(T, QueryMode::Quantum);
    for (unsigned i = 0; i < T; ++i) {
      if ((bits >> i) & 1) {
        modes[i] = QueryMode::ClassicalMeasured;
        w *= p;
      } else {
        w *= one_minus;
      }
    }
    if (w == 0) continue;
    SimRun one = average_schedules(circuit, modes, H, G);
    total.dist.add_scaled(one.dist, w.get_d());
    total.g_queries_min = std::min(total.g_queries_min, one.g_queries_min);
    total.g_queries_max = std::max(total.g_queries_max, one.g_queries_max);
    total.paths += one.paths;
  }
  return total;
}

OutcomeDist run_noisy_adversary(const AdversaryCircuit& circuit, const OracleTable& H_patched,
                                const mpq_class& p) {
  unsigned T = 0;
  for (bool cl : circuit.classical_pattern()) {
    require(!cl, Errc::ShapeMismatch, "noisy runs take all-quantum circuits");
    ++T;
  }
  OutcomeDist total;
  mpq_class one_minus = 1 - p;
  for (uint64_t bits = 0; bits < (uint64_t(1) << T); ++bits) {
    mpq_class w = 1;
    std::vector<QueryMode> modes(T, QueryMode::Quantum);
    for (unsigned i = 0; i < T; ++i) {
      if ((bits >> i) & 1) {
        modes[i] = QueryMode::ClassicalMeasured;
        w *= p;
      } else {
        w *= one_minus;
      }
    }
    if (w == 0) continue;
    ExecConfig cfg;
    cfg.circuit = &circuit;
    cfg.modes = modes;
    cfg.answer_oracle = &H_patched;
    cfg.with_verification = true;
    total.add_scaled(statevec::execute(cfg).dist, w.get_d());
  }
  return total;
}

SimRun run_simulator_sampled(const AdversaryCircuit& circuit, const OracleTable& H,
                             const OracleTable& G, unsigned samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto modes = modes_from_pattern(circuit);
  unsigned q = circuit.quantum_queries(), c = circuit.classical_queries();
  SimRun total;
  total.g_queries_min = UINT_MAX;
  for (unsigned i = 0; i < samples; ++i) {
    ReprogramSchedule s = sample_schedule(circuit.k, q, c, rng);
    SimRun one = exec_simulator(circuit, modes, H, G, s);
    total.dist.add_scaled(one.dist, 1.0 / double(samples));
    total.g_queries_min = std::min(total.g_queries_min, one.g_queries_min);
    total.g_queries_max = std::max(total.g_queries_max, one.g_queries_max);
    total.paths += one.paths;
  }
  return total;
}

double success_mass(const OutcomeDist& dist, const GameSpec& game,
                    const std::vector<int>& challenge, const OracleTable& H_patched,
                    const std::vector<int>& xo) {
  double mass = 0;
  auto oracle = [&H_patched](int x) { return H_patched(x); };
  for (const auto& [key, w] : dist.mass) {
    if (!vectors_equivalent(key.xs, xo)) continue;
    OutputTuple out{key.xs, key.ys, key.zs};
    if (wins_game(game, oracle, challenge, out)) mass += w;
  }
  return mass;
}

}  // namespace qlift::experiment
