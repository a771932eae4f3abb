#pragma once

#include <optional>

#include "qlift/circuit.hpp"
#include "qlift/oracle.hpp"
#include "qlift/outcome.hpp"
#include "qlift/schedule.hpp"

namespace qlift::statevec {

enum class QueryMode { Quantum, ClassicalPurified, ClassicalMeasured };

/// Fully-resolved execution request for one circuit run. The appended
/// verification queries (one per output index, reading x_out[j] into a fresh
/// answer register) model the challenger's classical queries; they are
/// always exact and are classical positions q+c+1 .. q+c+k for scheduling.
struct ExecConfig {
  const AdversaryCircuit* circuit = nullptr;
  std::vector<QueryMode> modes;  // per circuit query position
  const OracleTable* answer_oracle = nullptr;
  bool controlled = false;                              // consult control-slot patches
  const OracleTable* g_oracle = nullptr;                // control updates
  const experiment::ReprogramSchedule* schedule = nullptr;
  bool with_verification = true;
  unsigned dephase_every = 0;  // depth-bounded runs: measure all after every d queries
  std::vector<Trajectory>* trajectories = nullptr;
};

struct ExecResult {
  OutcomeDist dist;
  unsigned g_queries_min = 0;  // update_control invocations per path
  unsigned g_queries_max = 0;
  unsigned paths = 0;
};

ExecResult execute(const ExecConfig& cfg);

struct RunMode {
  enum class Kind { Pure, Noisy, Depth } kind = Kind::Pure;
  mpq_class p = 0;       // Noisy
  unsigned depth = 0;    // Depth
  bool exhaustive = true;
  unsigned trials = 0;   // sampled backend
  uint64_t seed = 0;
};

/// Outcome distribution of a plain circuit run (no verification queries,
/// no control machinery). Keys carry x_out and z_out values.
OutcomeDist run_circuit(const AdversaryCircuit& circuit, const OracleTable& oracle,
                        const RunMode& mode, std::vector<Trajectory>* trajectories = nullptr);

/// Same circuit with its query steps re-tagged (true = classical).
AdversaryCircuit with_pattern(const AdversaryCircuit& circuit, const std::vector<bool>& classical);

}  // namespace qlift::statevec
