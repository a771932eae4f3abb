#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace qlift::experiment {

/// The simulator's random choices: t quantum reprogrammings, the k target
/// positions v (1-based, strictly increasing over the q + c + k query
/// positions, the last k being the appended verification queries), and the
/// before/after bit for each target.
struct ReprogramSchedule {
  unsigned t = 0;
  std::vector<unsigned> positions;  // sorted, size k
  std::vector<uint8_t> before;      // b_j = 0 -> update control before the query

  /// index into positions for a 1-based query position, or -1
  int slot_of(unsigned pos) const {
    for (size_t j = 0; j < positions.size(); ++j)
      if (positions[j] == pos) return int(j);
    return -1;
  }
};

struct WeightedSchedule {
  ReprogramSchedule schedule;
  mpq_class weight;
};

/// `classical_tags[i]` marks query position i+1 (circuit order, then the k
/// appended positions) as classical. Enforces the schedule invariants.
void validate_schedule(const ReprogramSchedule& s, unsigned k,
                       const std::vector<bool>& classical_tags);

/// All (t, v, b) choices with their exact probabilities: t follows
/// alpha_{t}(k, q, c), v is uniform over index sets with exactly t quantum
/// positions, b is uniform over {0,1}^k. Weights sum to 1 exactly.
std::vector<WeightedSchedule> enumerate_schedules(unsigned k, unsigned q, unsigned c);

/// One draw from the same law.
ReprogramSchedule sample_schedule(unsigned k, unsigned q, unsigned c, std::mt19937_64& rng);

/// Position tags for a circuit pattern: circuit queries then k appended
/// classical positions.
std::vector<bool> position_tags(const std::vector<bool>& circuit_classical, unsigned k);

}  // namespace qlift::experiment
