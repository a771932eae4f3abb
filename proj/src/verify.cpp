#include "qlift/verify.hpp"

#include <boost/math/distributions/beta.hpp>

#include <algorithm>
#include <climits>
#include <cmath>

#include "qlift/bounds.hpp"
#include "qlift/errors.hpp"

namespace qlift::verify {

CircuitFamily fixed_circuit(AdversaryCircuit c) {
  return [c = std::move(c)](const std::vector<int>&) { return c; };
}

double play_game(const GameSpec& game, const CircuitFamily& circuit, const OracleTable& oracle,
                 const std::vector<int>& challenge) {
  AdversaryCircuit c = circuit(challenge);
  require(c.k == game.k() && c.M == game.M && c.N == game.N, Errc::ArityMismatch,
          "circuit shape must match the game");
  statevec::ExecConfig cfg;
  cfg.circuit = &c;
  std::vector<statevec::QueryMode> modes;
  for (bool cl : c.classical_pattern())
    modes.push_back(cl ? statevec::QueryMode::ClassicalPurified : statevec::QueryMode::Quantum);
  cfg.modes = std::move(modes);
  cfg.answer_oracle = &oracle;
  cfg.with_verification = true;
  OutcomeDist dist = statevec::execute(cfg).dist;
  double win = 0;
  auto ofn = [&oracle](int x) { return oracle(x); };
  for (const auto& [key, w] : dist.mass) {
    OutputTuple out{key.xs, key.ys, key.zs};
    if (wins_game(game, ofn, challenge, out)) win += w;
  }
  return win;
}

double average_win_probability(const GameSpec& game, const CircuitFamily& circuit,
                               uint64_t cell_cap) {
  uint64_t tables = OracleTable::table_count(game.M, game.N);
  auto challenges = game.enumerate_challenges();
  require(tables * challenges.size() <= cell_cap, Errc::CellCapExceeded,
          "exhaustive enumeration exceeds the cell cap");
  double acc = 0;
  for (uint64_t h = 0; h < tables; ++h) {
    OracleTable H = OracleTable::from_index(game.M, game.N, h);
    for (const auto& [ch, pch] : challenges) acc += pch * play_game(game, circuit, H, ch);
  }
  return acc / double(tables);
}

void InequalityReport::finish() {
  min_margin = cells.empty() ? 0.0 : cells.front().margin;
  pass = true;
  for (const CellResult& c : cells) {
    min_margin = std::min(min_margin, c.margin);
    if (c.margin < -tolerance) pass = false;
  }
  max_norm_drift = statevec::stats().max_unitary_norm_drift;
}

namespace {

std::vector<std::vector<int>> distinct_tuples(unsigned M, unsigned k) {
  // sorted tuples are enough: the success events are permutation-invariant
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x < int(M); ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<int> patched_values(const OracleTable& G, const std::vector<int>& xo) {
  std::vector<int> yo;
  for (int x : xo) yo.push_back(G(x));
  return yo;
}

}  // namespace

InequalityReport check_reprogram_inequality(const GameSpec& game, const AdversaryCircuit& circuit,
                                            const GridOptions& opts) {
  require(game.challenge.type == ChallengeSpec::Type::None, Errc::UnsupportedRelation,
          "reprogram grids use challenge-free games");
  game.validate();
  const unsigned k = circuit.k;
  require(k == game.k(), Errc::ArityMismatch, "circuit arity must match the game");
  uint64_t tables = OracleTable::table_count(game.M, game.N);
  auto xos = distinct_tuples(game.M, k);
  require(tables * tables * xos.size() <= opts.cell_cap, Errc::CellCapExceeded,
          "grid exceeds the cell cap");

  double loss =
      bounds::hybrid_loss_exact(k, circuit.quantum_queries(), circuit.classical_queries())
          .to_double();

  InequalityReport rep;
  rep.name = "hybrid-reprogram/" + circuit.name + "/" + game.name;
  rep.tolerance = opts.tolerance;
  rep.g_queries_min = UINT_MAX;
  std::vector<int> no_challenge;
  for (uint64_t h = 0; h < tables; ++h) {
    OracleTable H = OracleTable::from_index(game.M, game.N, h);
    for (uint64_t g = 0; g < tables; ++g) {
      OracleTable G = OracleTable::from_index(game.M, game.N, g);
      experiment::SimRun sim = experiment::run_simulator(circuit, H, G);
      rep.g_queries_min = std::min(rep.g_queries_min, sim.g_queries_min);
      rep.g_queries_max = std::max(rep.g_queries_max, sim.g_queries_max);
      rep.max_branch_sum_error =
          std::max(rep.max_branch_sum_error, std::abs(sim.dist.total() - 1.0));
      for (const auto& xo : xos) {
        std::vector<int> yo = patched_values(G, xo);
        OracleTable patched = materialize(reprogram(H, xo, yo));
        OutcomeDist adv = experiment::run_reprogrammed_adversary(circuit, H, xo, yo);
        double lhs = experiment::success_mass(sim.dist, game, no_challenge, patched, xo);
        double adv_mass = experiment::success_mass(adv, game, no_challenge, patched, xo);
        double rhs = adv_mass / loss;
        rep.cells.push_back({h, g, xo, lhs, rhs, lhs - rhs, "reprogram", 0});
      }
    }
  }
  rep.finish();
  return rep;
}

InequalityReport check_noisy_inequality(const GameSpec& game, const AdversaryCircuit& circuit,
                                        const mpq_class& p, const GridOptions& opts) {
  require(game.challenge.type == ChallengeSpec::Type::None, Errc::UnsupportedRelation,
          "noisy grids use challenge-free games");
  const unsigned k = circuit.k;
  const unsigned T = circuit.quantum_queries();
  require(circuit.classical_queries() == 0, Errc::ShapeMismatch,
          "noisy grids take all-quantum circuits");
  uint64_t tables = OracleTable::table_count(game.M, game.N);
  auto xos = distinct_tuples(game.M, k);
  require(tables * tables * xos.size() <= opts.cell_cap, Errc::CellCapExceeded,
          "grid exceeds the cell cap");

  double loss = bounds::noisy_loss_exact(p, T, k).to_double();

  InequalityReport rep;
  rep.name = "noisy-reprogram/" + circuit.name + "/" + game.name + "/p=" + p.get_str();
  rep.tolerance = opts.tolerance;
  rep.g_queries_min = UINT_MAX;
  std::vector<int> no_challenge;
  for (uint64_t h = 0; h < tables; ++h) {
    OracleTable H = OracleTable::from_index(game.M, game.N, h);
    for (uint64_t g = 0; g < tables; ++g) {
      OracleTable G = OracleTable::from_index(game.M, game.N, g);
      experiment::SimRun sim = experiment::run_noisy_simulator(circuit, H, G, p);
      rep.g_queries_min = std::min(rep.g_queries_min, sim.g_queries_min);
      rep.g_queries_max = std::max(rep.g_queries_max, sim.g_queries_max);
      rep.max_branch_sum_error =
          std::max(rep.max_branch_sum_error, std::abs(sim.dist.total() - 1.0));
      for (const auto& xo : xos) {
        std::vector<int> yo = patched_values(G, xo);
        OracleTable patched = materialize(reprogram(H, xo, yo));
        OutcomeDist adv = experiment::run_noisy_adversary(circuit, patched, p);
        double lhs = experiment::success_mass(sim.dist, game, no_challenge, patched, xo);
        double adv_mass = experiment::success_mass(adv, game, no_challenge, patched, xo);
        double rhs = adv_mass / loss;
        rep.cells.push_back({h, g, xo, lhs, rhs, lhs - rhs, "noisy(p=" + p.get_str() + ")", 0});
      }
    }
  }
  rep.finish();
  return rep;
}

InequalityReport check_lifting(const GameSpec& game, const CircuitFamily& circuit,
                               const GridOptions& opts) {
  game.validate();
  Relation rel = game.relation;
  require(rel.kind != RelationKind::Custom, Errc::UnsupportedRelation,
          "p(R) is undefined for oracle-dependent relations; use the game harness");
  AdversaryCircuit probe = circuit(game.enumerate_challenges().front().first);
  double loss =
      bounds::hybrid_loss_exact(game.k(), probe.quantum_queries(), probe.classical_queries())
          .to_double();
  double pr = p_of_r_exact(rel).to_double();
  double lhs = average_win_probability(game, circuit, opts.cell_cap);
  double rhs = loss * pr;
  InequalityReport rep;
  rep.name = "lifting/" + probe.name + "/" + game.name;
  rep.tolerance = opts.tolerance;
  rep.cells.push_back({0, 0, {}, lhs, rhs, rhs - lhs, "lifting", 0});
  rep.finish();
  return rep;
}

double play_direct_product(unsigned g, const GameSpec& game, const AdversaryCircuit& circuit,
                           const OracleTable& oracle, const std::vector<std::vector<int>>& chs) {
  require(g >= 1 && chs.size() == g, Errc::ShapeMismatch, "one challenge per instance");
  require(oracle.domain_size == g * game.M && oracle.codomain_size == game.N, Errc::ShapeMismatch,
          "direct-product oracle must have g*M rows");
  require(circuit.M == g * game.M && circuit.k == g * game.k(), Errc::ShapeMismatch,
          "circuit must output g blocks over the packed domain");
  statevec::ExecConfig cfg;
  cfg.circuit = &circuit;
  std::vector<statevec::QueryMode> modes;
  for (bool cl : circuit.classical_pattern())
    modes.push_back(cl ? statevec::QueryMode::ClassicalPurified : statevec::QueryMode::Quantum);
  cfg.modes = std::move(modes);
  cfg.answer_oracle = &oracle;
  cfg.with_verification = true;
  OutcomeDist dist = statevec::execute(cfg).dist;
  const unsigned k = game.k();
  double win = 0;
  for (const auto& [key, w] : dist.mass) {
    bool all = true;
    for (unsigned i = 0; i < g && all; ++i) {
      OutputTuple block;
      for (unsigned j = 0; j < k; ++j) {
        int x = key.xs[i * k + j];
        require(x >= int(i * game.M) && x < int((i + 1) * game.M), Errc::ShapeMismatch,
                "block outputs must carry the instance prefix");
        block.xs.push_back(x - int(i * game.M));
        block.ys.push_back(key.ys[i * k + j]);
      }
      auto row = [&](int x) { return oracle(int(i * game.M) + x); };
      all = wins_game(game, row, chs[i], block);
    }
    if (all) win += w;
  }
  return win;
}

double play_multi_instance(unsigned g, const GameSpec& game, const AdversaryCircuit& circuit,
                           const OracleTable& oracle, const std::vector<std::vector<int>>& chs) {
  require(g >= 1 && chs.size() == g, Errc::ShapeMismatch, "one challenge per instance");
  require(oracle.domain_size == game.M && oracle.codomain_size == game.N, Errc::ShapeMismatch,
          "multi-instance games share one oracle");
  require(circuit.M == game.M && circuit.k == g * game.k(), Errc::ShapeMismatch,
          "circuit must output g tuples");
  statevec::ExecConfig cfg;
  cfg.circuit = &circuit;
  std::vector<statevec::QueryMode> modes;
  for (bool cl : circuit.classical_pattern())
    modes.push_back(cl ? statevec::QueryMode::ClassicalPurified : statevec::QueryMode::Quantum);
  cfg.modes = std::move(modes);
  cfg.answer_oracle = &oracle;
  cfg.with_verification = true;
  OutcomeDist dist = statevec::execute(cfg).dist;
  const unsigned k = game.k();
  auto ofn = [&oracle](int x) { return oracle(x); };
  double win = 0;
  for (const auto& [key, w] : dist.mass) {
    bool all = true;
    for (unsigned i = 0; i < g && all; ++i) {
      OutputTuple block;
      for (unsigned j = 0; j < k; ++j) {
        block.xs.push_back(key.xs[i * k + j]);
        block.ys.push_back(key.ys[i * k + j]);
      }
      all = wins_game(game, ofn, chs[i], block);
    }
    if (all) win += w;
  }
  return win;
}

Estimate monte_carlo_estimate(const std::function<bool(std::mt19937_64&)>& event,
                              unsigned long trials, uint64_t seed) {
  require(trials >= 1, Errc::UsageError, "trials must be >= 1");
  std::mt19937_64 rng(seed);
  unsigned long hits = 0;
  for (unsigned long i = 0; i < trials; ++i)
    if (event(rng)) ++hits;
  Estimate est;
  est.successes = hits;
  est.trials = trials;
  est.estimate = double(hits) / double(trials);
  const double alpha = 0.01;  // 99% two-sided
  if (hits == 0)
    est.lower = 0;
  else {
    boost::math::beta_distribution<double> lo(double(hits), double(trials - hits + 1));
    est.lower = boost::math::quantile(lo, alpha / 2);
  }
  if (hits == trials)
    est.upper = 1;
  else {
    boost::math::beta_distribution<double> hi(double(hits + 1), double(trials - hits));
    est.upper = boost::math::quantile(hi, 1 - alpha / 2);
  }
  return est;
}

}  // namespace qlift::verify
