#include "qlift/schedule.hpp"

#include <algorithm>

#include "qlift/bounds.hpp"
#include "qlift/errors.hpp"

namespace qlift::experiment {

std::vector<bool> position_tags(const std::vector<bool>& circuit_classical, unsigned k) {
  std::vector<bool> tags = circuit_classical;
  tags.insert(tags.end(), k, true);
  return tags;
}

void validate_schedule(const ReprogramSchedule& s, unsigned k,
                       const std::vector<bool>& classical_tags) {
  require(s.positions.size() == k && s.before.size() == k, Errc::ShapeMismatch,
          "schedule must target exactly k positions");
  require(std::is_sorted(s.positions.begin(), s.positions.end()) &&
              std::adjacent_find(s.positions.begin(), s.positions.end()) == s.positions.end(),
          Errc::ShapeMismatch, "schedule positions must be strictly increasing");
  unsigned quantum = 0;
  for (unsigned p : s.positions) {
    require(p >= 1 && p <= classical_tags.size(), Errc::ShapeMismatch,
            "schedule position outside the query universe");
    if (!classical_tags[p - 1]) ++quantum;
  }
  require(quantum == s.t, Errc::ShapeMismatch, "t disagrees with the quantum position count");
}

namespace {

void subsets(const std::vector<unsigned>& pool, unsigned want, unsigned start,
             std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == want) {
    out.push_back(cur);
    return;
  }
  for (unsigned i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    subsets(pool, want, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<unsigned>> choose(const std::vector<unsigned>& pool, unsigned want) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  subsets(pool, want, 0, cur, out);
  return out;
}

}  // namespace

std::vector<WeightedSchedule> enumerate_schedules(unsigned k, unsigned q, unsigned c) {
  auto alpha = bounds::alpha_distribution(k, q, c);
  // universe: q quantum positions, then c classical, then k appended classical
  std::vector<unsigned> quantum_pos, classical_pos;
  std::vector<bool> tags;
  for (unsigned i = 0; i < q + c + k; ++i) tags.push_back(i >= q);
  for (unsigned i = 0; i < tags.size(); ++i)
    (tags[i] ? classical_pos : quantum_pos).push_back(i + 1);

  std::vector<WeightedSchedule> out;
  mpq_class half(1, 2);
  for (unsigned t = 0; t <= k; ++t) {
    if (alpha[t].sign() == 0) continue;
    auto qsets = choose(quantum_pos, t);
    auto csets = choose(classical_pos, k - t);
    mpq_class per_v = alpha[t].rational() / mpq_class(long(qsets.size() * csets.size()));
    mpq_class per_b = per_v;
    for (unsigned i = 0; i < k; ++i) per_b *= half;
    for (const auto& qs : qsets) {
      for (const auto& cs : csets) {
        ReprogramSchedule base;
        base.t = t;
        base.positions = qs;
        base.positions.insert(base.positions.end(), cs.begin(), cs.end());
        std::sort(base.positions.begin(), base.positions.end());
        for (uint64_t bits = 0; bits < (uint64_t(1) << k); ++bits) {
          ReprogramSchedule s = base;
          s.before.resize(k);
          for (unsigned j = 0; j < k; ++j) s.before[j] = uint8_t((bits >> j) & 1) ^ 1;
          out.push_back({std::move(s), per_b});
        }
      }
    }
  }
  return out;
}

ReprogramSchedule sample_schedule(unsigned k, unsigned q, unsigned c, std::mt19937_64& rng) {
  auto alpha = bounds::alpha_distribution(k, q, c);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  unsigned t = k;
  double acc = 0;
  for (unsigned i = 0; i <= k; ++i) {
    acc += alpha[i].to_double();
    if (r < acc) {
      t = i;
      break;
    }
  }
  std::vector<unsigned> quantum_pos, classical_pos;
  for (unsigned i = 0; i < q + c + k; ++i) (i >= q ? classical_pos : quantum_pos).push_back(i + 1);
  auto draw = [&](std::vector<unsigned> pool, unsigned want) {
    std::vector<unsigned> picked;
    for (unsigned i = 0; i < want; ++i) {
      std::uniform_int_distribution<size_t> d(0, pool.size() - 1);
      size_t j = d(rng);
      picked.push_back(pool[j]);
      pool.erase(pool.begin() + long(j));
    }
    return picked;
  };
  ReprogramSchedule s;
  s.t = t;
  s.positions = draw(quantum_pos, t);
  auto cls = draw(classical_pos, k - t);
  s.positions.insert(s.positions.end(), cls.begin(), cls.end());
  std::sort(s.positions.begin(), s.positions.end());
  s.before.resize(k);
  for (unsigned j = 0; j < k; ++j) s.before[j] = uint8_t(rng() & 1);
  return s;
}

}  // namespace qlift::experiment
