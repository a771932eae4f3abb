#include "qlift/adversaries.hpp"

#include <algorithm>
#include <set>

#include "qlift/errors.hpp"

namespace qlift::adversaries {

using statevec::op_add_const;
using statevec::op_copy_add;
using statevec::op_diffusion;
using statevec::op_hadamard;
using statevec::op_phase_flip;
using statevec::op_prepare_uniform;
using statevec::op_sub_from;
using statevec::QueryStep;
using statevec::Register;

namespace {

using Controls = std::vector<std::pair<std::string, uint32_t>>;

void emit_probe(AdversaryCircuit& c, unsigned& input_at, unsigned point, const std::string& wreg) {
  // move input to the probe point, query classically, copy the answer out,
  // restore the output register to 0
  if (point != input_at)
    c.steps.push_back(op_add_const("input", c.M, (point + c.M - input_at) % c.M));
  input_at = point;
  c.steps.push_back(QueryStep{true});
  c.steps.push_back(op_copy_add("output", c.N, wreg, c.N));
  c.steps.push_back(op_sub_from(wreg, c.N, "output", c.N));
}

/// Marking of target preimages as a relative phase. N = 2 uses kickback off
/// the |-> output state (one query); otherwise compute, flip, uncompute with
/// N-1 inverse additions.
void emit_marking(AdversaryCircuit& c, const std::set<int>& target_values) {
  if (c.N == 2) {
    c.steps.push_back(QueryStep{false});
    return;
  }
  c.steps.push_back(QueryStep{false});
  std::vector<uint32_t> pts(target_values.begin(), target_values.end());
  c.steps.push_back(op_phase_flip("output", c.N, pts));
  for (unsigned i = 0; i + 1 < c.N; ++i) c.steps.push_back(QueryStep{false});
}

void emit_minus_state(AdversaryCircuit& c) {
  if (c.N != 2) return;
  c.steps.push_back(op_add_const("output", c.N, 1));
  c.steps.push_back(op_hadamard("output"));
}

std::vector<uint32_t> complement(unsigned M, const std::set<unsigned>& excluded) {
  std::vector<uint32_t> pts;
  for (unsigned x = 0; x < M; ++x)
    if (!excluded.count(x)) pts.push_back(x);
  return pts;
}

}  // namespace

AdversaryCircuit build_staged_grover(const StagedGroverSpec& spec) {
  AdversaryCircuit c;
  c.name = "staged-grover";
  c.M = spec.M;
  c.N = spec.N;
  c.k = spec.k;
  require(spec.targets.size() == spec.k, Errc::BudgetMismatch, "one target per stage");
  require(spec.k * spec.v + spec.k <= spec.M, Errc::BudgetMismatch,
          "per-stage probes exhaust the domain");
  std::set<int> target_values(spec.targets.begin(), spec.targets.end());

  for (unsigned s = 0; s < spec.k; ++s) {
    c.work.push_back({"xa" + std::to_string(s), spec.M});
    for (unsigned i = 0; i < spec.v; ++i) {
      c.work.push_back({"w" + std::to_string(s) + "_" + std::to_string(i), spec.N});
      c.work.push_back({"f" + std::to_string(s) + "_" + std::to_string(i), 2});
    }
  }

  unsigned input_at = 0;
  bool minus_active = false;
  unsigned probes_done = 0;
  for (unsigned s = 0; s < spec.k; ++s) {
    std::string xa = "xa" + std::to_string(s);
    // classical probes need the output register back in the zero state
    if (minus_active && spec.v > 0) {
      c.steps.push_back(op_hadamard("output"));
      c.steps.push_back(op_add_const("output", 2, 1));
      minus_active = false;
    }
    std::vector<std::string> flags;
    for (unsigned i = 0; i < spec.v; ++i) {
      std::string w = "w" + std::to_string(s) + "_" + std::to_string(i);
      std::string f = "f" + std::to_string(s) + "_" + std::to_string(i);
      emit_probe(c, input_at, probes_done, w);
      ++probes_done;
      for (int y : target_values)
        c.steps.push_back(op_add_const(f, 2, 1, {{w, uint32_t(y)}}));
      flags.push_back(f);
    }
    // reset the input register to 0 for the search stage
    if (input_at != 0) {
      c.steps.push_back(op_add_const("input", c.M, (c.M - input_at) % c.M));
      input_at = 0;
    }
    Controls miss;  // all probe flags of this stage are 0
    for (const auto& f : flags) miss.emplace_back(f, 0);

    // previous commits are excluded from the search span, conditioned on
    // their register values
    std::vector<Controls> span_conditions;
    std::vector<std::set<unsigned>> span_excluded;
    {
      std::vector<Controls> conds{{}};
      std::vector<std::set<unsigned>> excl{{}};
      for (unsigned prev = 0; prev < s; ++prev) {
        std::vector<Controls> conds2;
        std::vector<std::set<unsigned>> excl2;
        std::string xprev = "xa" + std::to_string(prev);
        for (size_t ci = 0; ci < conds.size(); ++ci) {
          for (unsigned a = 0; a < spec.M; ++a) {
            Controls cc = conds[ci];
            cc.emplace_back(xprev, a);
            auto ee = excl[ci];
            ee.insert(a);
            conds2.push_back(std::move(cc));
            excl2.push_back(std::move(ee));
          }
        }
        conds = std::move(conds2);
        excl = std::move(excl2);
      }
      span_conditions = std::move(conds);
      span_excluded = std::move(excl);
    }

    auto emit_over_spans = [&](bool diffusion) {
      for (size_t ci = 0; ci < span_conditions.size(); ++ci) {
        std::set<unsigned> excluded = span_excluded[ci];
        for (unsigned pnt = 0; pnt < probes_done; ++pnt) excluded.insert(pnt);
        auto span = complement(spec.M, excluded);
        if (span.empty()) continue;
        Controls cc = span_conditions[ci];
        cc.insert(cc.end(), miss.begin(), miss.end());
        c.steps.push_back(diffusion ? op_diffusion("input", spec.M, span, cc)
                                    : op_prepare_uniform("input", spec.M, 0, span, cc));
      }
    };
    // zero-iteration stages still commit an arbitrary unprobed point
    if (spec.u > 0 && spec.N == 2 && !minus_active) {
      emit_minus_state(c);
      minus_active = true;
    }
    emit_over_spans(false);
    for (unsigned it = 0; it < spec.u; ++it) {
      emit_marking(c, target_values);
      emit_over_spans(true);
    }

    // commit: first probe hit wins, otherwise the search result
    for (unsigned i = 0; i < spec.v; ++i) {
      Controls cc;
      for (unsigned j = 0; j < i; ++j) cc.emplace_back(flags[j], 0);
      cc.emplace_back(flags[i], 1);
      unsigned point = probes_done - spec.v + i;
      if (point != 0) c.steps.push_back(op_add_const(xa, spec.M, point, cc));
    }
    c.steps.push_back(op_copy_add("input", spec.M, xa, spec.M, miss));
    c.steps.push_back(op_sub_from(xa, spec.M, "input", spec.M, miss));
  }
  for (unsigned s = 0; s < spec.k; ++s) c.x_out.push_back("xa" + std::to_string(s));
  c.validate();
  require(c.quantum_queries() == spec.u * spec.k * (spec.N == 2 ? 1 : spec.N) &&
              c.classical_queries() == spec.v * spec.k,
          Errc::BudgetMismatch, "staged circuit budget mismatch");
  return c;
}

AdversaryCircuit build_classical_exhaustive(unsigned k, unsigned budget, const GameSpec& game,
                                            const std::vector<int>& challenge) {
  require(budget <= game.M, Errc::BudgetExceedsDomain, "budget exceeds the domain");
  AdversaryCircuit c;
  c.name = "classical-exhaustive";
  c.M = game.M;
  c.N = game.N;
  c.k = k;
  for (unsigned i = 0; i < budget; ++i) c.work.push_back({"w" + std::to_string(i), game.N});
  for (unsigned j = 0; j < k; ++j) c.work.push_back({"xa" + std::to_string(j), game.M});

  unsigned input_at = 0;
  for (unsigned i = 0; i < budget; ++i) emit_probe(c, input_at, i, "w" + std::to_string(i));

  // decision table over the recorded answers
  uint64_t combos = 1;
  for (unsigned i = 0; i < budget; ++i) combos *= game.N;
  for (uint64_t combo = 0; combo < combos; ++combo) {
    std::vector<int> answers(budget);
    uint64_t rem = combo;
    for (unsigned i = 0; i < budget; ++i) {
      answers[i] = int(rem % game.N);
      rem /= game.N;
    }
    auto recorded = [&](int x) { return answers[size_t(x)]; };
    // best tuple among probed points under the game predicate
    std::vector<int> best;
    std::vector<int> tuple(k, 0);
    std::function<bool(unsigned)> search = [&](unsigned depth) -> bool {
      if (depth == k) {
        OutputTuple out;
        out.xs = tuple;
        for (int x : tuple) out.ys.push_back(recorded(x));
        if (wins_game(game, recorded, challenge, out)) {
          best = tuple;
          return true;
        }
        return false;
      }
      for (int x = 0; x < int(budget); ++x) {
        if (game.outputs_distinct_required &&
            std::find(tuple.begin(), tuple.begin() + depth, x) != tuple.begin() + depth)
          continue;
        tuple[depth] = x;
        if (search(depth + 1)) return true;
      }
      return false;
    };
    if (!search(0)) {
      // fallback: distinct points, unprobed first
      best.clear();
      for (unsigned x = budget; x < game.M && best.size() < k; ++x) best.push_back(int(x));
      for (unsigned x = 0; best.size() < k; ++x) best.push_back(int(x % game.M));
    }
    Controls cc;
    for (unsigned i = 0; i < budget; ++i) cc.emplace_back("w" + std::to_string(i),
                                                          uint32_t(answers[i]));
    for (unsigned j = 0; j < k; ++j)
      if (best[j] != 0)
        c.steps.push_back(op_add_const("xa" + std::to_string(j), game.M, unsigned(best[j]), cc));
  }
  for (unsigned j = 0; j < k; ++j) c.x_out.push_back("xa" + std::to_string(j));
  c.validate();
  return c;
}

AdversaryCircuit build_random_guess(unsigned k, unsigned M, unsigned N) {
  require(k <= M, Errc::BudgetExceedsDomain, "k distinct outputs need k <= M");
  AdversaryCircuit c;
  c.name = "random-guess";
  c.M = M;
  c.N = N;
  c.k = k;
  for (unsigned j = 0; j < k; ++j) {
    c.work.push_back({"xg" + std::to_string(j), M});
    if (j > 0) c.steps.push_back(op_add_const("xg" + std::to_string(j), M, j));
    c.x_out.push_back("xg" + std::to_string(j));
  }
  c.validate();
  return c;
}

AdversaryCircuit build_fixed_output(unsigned M, unsigned N, const std::vector<int>& outs) {
  AdversaryCircuit c;
  c.name = "fixed-output";
  c.M = M;
  c.N = N;
  c.k = unsigned(outs.size());
  int cpoint = -1;
  for (unsigned x = 0; x < M; ++x)
    if (std::find(outs.begin(), outs.end(), int(x)) == outs.end()) {
      cpoint = int(x);
      break;
    }
  require(cpoint >= 0, Errc::BudgetExceedsDomain, "need a non-output point for the probe");
  c.work.push_back({"wc", N});
  for (unsigned j = 0; j < c.k; ++j) c.work.push_back({"xf" + std::to_string(j), M});

  c.steps.push_back(QueryStep{false});  // quantum query at input = 0
  unsigned input_at = 0;
  emit_probe(c, input_at, unsigned(cpoint), "wc");
  for (unsigned j = 0; j < c.k; ++j) {
    if (outs[j] != 0)
      c.steps.push_back(op_add_const("xf" + std::to_string(j), M, unsigned(outs[j])));
    c.x_out.push_back("xf" + std::to_string(j));
  }
  c.validate();
  return c;
}

AdversaryCircuit build_grover_probe_pair(unsigned M, unsigned u) {
  require(M >= 3, Errc::BudgetExceedsDomain, "needs at least three points");
  AdversaryCircuit c;
  c.name = "grover-probe-pair";
  c.M = M;
  c.N = 2;
  c.k = 2;
  c.work.push_back({"xa", M});
  c.work.push_back({"xb", M});
  c.work.push_back({"wp", 2});
  c.work.push_back({"fp", 2});

  std::vector<uint32_t> full;
  for (unsigned x = 0; x < M; ++x) full.push_back(x);

  // stage 1: u Grover iterations over the full domain
  emit_minus_state(c);
  c.steps.push_back(op_prepare_uniform("input", M, 0, full));
  for (unsigned it = 0; it < u; ++it) {
    c.steps.push_back(QueryStep{false});
    c.steps.push_back(op_diffusion("input", M, full));
  }
  c.steps.push_back(op_copy_add("input", M, "xa", M));
  c.steps.push_back(op_sub_from("xa", M, "input", M));
  // restore the output register before the classical probe
  c.steps.push_back(op_hadamard("output"));
  c.steps.push_back(op_add_const("output", 2, 1));

  // stage 2: probe the last point, commit it on a hit, otherwise a point
  // distinct from the stage-1 commit
  unsigned input_at = 0;
  unsigned probe_point = M - 1;
  emit_probe(c, input_at, probe_point, "wp");
  c.steps.push_back(op_add_const("fp", 2, 1, {{"wp", 0}}));
  c.steps.push_back(op_add_const("xb", M, probe_point, {{"fp", 1}}));
  for (unsigned a = 0; a < M; ++a) {
    unsigned pick = 0;
    while (pick == a || pick == probe_point) ++pick;
    if (pick != 0)
      c.steps.push_back(op_add_const("xb", M, pick, {{"fp", 0}, {"xa", a}}));
  }
  c.x_out = {"xa", "xb"};
  c.validate();
  return c;
}

AdversaryCircuit build_fixed_scan(unsigned M, unsigned N, unsigned T, int decision) {
  require(T <= M, Errc::BudgetExceedsDomain, "scan budget exceeds the domain");
  AdversaryCircuit c;
  c.name = "fixed-scan";
  c.M = M;
  c.N = N;
  c.k = 1;
  c.work.push_back({"xa", M});
  for (unsigned i = 0; i < T; ++i) {
    if (i > 0) c.steps.push_back(op_add_const("input", M, 1));
    c.steps.push_back(QueryStep{false});
  }
  if (decision != 0) c.steps.push_back(op_add_const("xa", M, unsigned(decision)));
  c.x_out = {"xa"};
  c.validate();
  return c;
}

AdversaryCircuit build_adaptive_scan(unsigned M, unsigned N, int target) {
  require(M >= 2, Errc::BudgetExceedsDomain, "needs two points");
  AdversaryCircuit c;
  c.name = "adaptive-scan";
  c.M = M;
  c.N = N;
  c.k = 1;
  c.work.push_back({"w0", N});
  c.work.push_back({"w1", N});
  c.work.push_back({"xa", M});
  c.steps.push_back(QueryStep{false});
  c.steps.push_back(op_copy_add("output", N, "w0", N));
  c.steps.push_back(op_sub_from("w0", N, "output", N));
  c.steps.push_back(op_add_const("input", M, 1));
  c.steps.push_back(QueryStep{false});
  c.steps.push_back(op_copy_add("output", N, "w1", N));
  c.steps.push_back(op_sub_from("w1", N, "output", N));
  // first preimage of target wins, else point 0
  for (uint32_t a = 0; a < N; ++a) {
    if (int(a) == target) continue;
    c.steps.push_back(op_add_const("xa", M, 1, {{"w0", a}, {"w1", uint32_t(target)}}));
  }
  c.x_out = {"xa"};
  c.validate();
  return c;
}

}  // namespace qlift::adversaries
