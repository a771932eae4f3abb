#include "qlift/sim.hpp"

#include <climits>
#include <cmath>

#include "qlift/errors.hpp"

namespace qlift::statevec {

namespace {

struct ResolvedUnitary {
  std::vector<int> targets;
  const Matrix* matrix;
  std::vector<ControlCond> controls;
};

struct QueryItem {
  unsigned pos;  // 1-based over q + c + k
  int in_reg;
  int out_reg;
  QueryMode mode;
  int hist_slot = -1;
  bool appended = false;
};

struct Item {
  bool is_query;
  ResolvedUnitary u;
  QueryItem q;
};

struct Program {
  RegisterLayout layout;
  std::vector<Item> items;
  unsigned query_count = 0;
};

Program build_program(const ExecConfig& cfg) {
  const AdversaryCircuit& c = *cfg.circuit;
  c.validate();
  require(cfg.modes.size() == c.classical_pattern().size(), Errc::ShapeMismatch,
          "one query mode per circuit query");

  Program prog;
  RegisterLayout& lay = prog.layout;
  for (const auto& r : c.work) lay.add(r.name, r.dim);
  lay.input = lay.add("input", c.M);
  lay.output = lay.add("output", c.N);
  lay.M = c.M;
  lay.N = c.N;
  if (cfg.with_verification)
    for (unsigned j = 0; j < c.k; ++j)
      lay.y_slots.push_back(lay.add("yv" + std::to_string(j), c.N));
  unsigned hist_needed = 0;
  for (QueryMode m : cfg.modes)
    if (m == QueryMode::ClassicalPurified) ++hist_needed;
  for (unsigned i = 0; i < hist_needed; ++i)
    lay.history.push_back(lay.add("h" + std::to_string(i), c.M * c.N + 1));
  if (cfg.controlled)
    for (unsigned j = 0; j < c.k; ++j)
      lay.control.push_back(lay.add("r" + std::to_string(j), c.M * c.N + 1));
  lay.finalize();

  for (const auto& name : c.x_out) lay.x_out.push_back(lay.index_of(name));
  for (const auto& name : c.z_out) lay.z_out.push_back(lay.index_of(name));

  unsigned pos = 0, hist_next = 0;
  for (const Step& s : c.steps) {
    if (auto* qs = std::get_if<QueryStep>(&s)) {
      QueryItem item;
      item.pos = ++pos;
      item.in_reg = lay.input;
      item.out_reg = lay.output;
      item.mode = cfg.modes[pos - 1];
      require(qs->classical == (item.mode != QueryMode::Quantum), Errc::ShapeMismatch,
              "query mode tag mismatch");
      if (item.mode == QueryMode::ClassicalPurified) item.hist_slot = lay.history[hist_next++];
      prog.items.push_back({true, {}, item});
    } else {
      const auto& u = std::get<UnitaryStep>(s);
      ResolvedUnitary ru;
      for (const auto& t : u.targets) ru.targets.push_back(lay.index_of(t));
      ru.matrix = &u.matrix;
      for (const auto& [reg, val] : u.controls) ru.controls.push_back({lay.index_of(reg), val});
      prog.items.push_back({false, std::move(ru), {}});
    }
  }
  if (cfg.with_verification) {
    for (unsigned j = 0; j < c.k; ++j) {
      QueryItem item;
      item.pos = ++pos;
      item.in_reg = lay.x_out[j];
      item.out_reg = lay.y_slots[j];
      item.mode = QueryMode::Quantum;  // exact addition; classical for scheduling
      item.appended = true;
      prog.items.push_back({true, {}, item});
    }
  }
  prog.query_count = pos;
  return prog;
}

struct ExecCtx {
  const ExecConfig* cfg;
  const Program* prog;
  OutcomeDist dist;
  unsigned gq_min = UINT_MAX;
  unsigned gq_max = 0;
  unsigned paths = 0;
  std::vector<int> meas;
  std::vector<bool> coins;
};

LookupFn make_lookup(const ExecCtx& ctx) {
  const OracleTable* base = ctx.cfg->answer_oracle;
  if (!ctx.cfg->controlled) {
    return [base](uint64_t, int x) { return (*base)(x); };
  }
  const RegisterLayout* lay = &ctx.prog->layout;
  return [base, lay](uint64_t idx, int x) {
    for (const auto& [px, py] : control_pairs(*lay, idx))
      if (px == x) return py;
    return (*base)(x);
  };
}

void finalize(ExecCtx& ctx, const QuantumState& s) {
  const RegisterLayout& lay = ctx.prog->layout;
  const bool check_control = ctx.cfg->schedule != nullptr;
  double leaf_mass = 0;
  for (const Amp& amp : s.amps()) {
    double w = std::norm(amp.a);
    leaf_mass += w;
    OutcomeKey key;
    for (int r : lay.x_out) key.xs.push_back(int(lay.digit(amp.idx, r)));
    if (check_control) {
      std::vector<int> lx;
      for (const auto& [px, py] : control_pairs(lay, amp.idx)) lx.push_back(px);
      std::vector<int> xs = key.xs;
      std::sort(xs.begin(), xs.end());
      std::sort(lx.begin(), lx.end());
      if (xs != lx) {
        ctx.dist.abort_equivalence += w;
        continue;
      }
    }
    if (ctx.cfg->with_verification)
      for (int r : lay.y_slots) key.ys.push_back(int(lay.digit(amp.idx, r)));
    for (int r : lay.z_out) key.zs.push_back(int(lay.digit(amp.idx, r)));
    ctx.dist.mass[std::move(key)] += w;
  }
  if (ctx.cfg->trajectories) {
    Trajectory t;
    t.classical_coins = ctx.coins;
    t.measurements = ctx.meas;
    t.weight = leaf_mass;
    ctx.cfg->trajectories->push_back(std::move(t));
  }
}

void exec_from(ExecCtx& ctx, size_t i, QuantumState s, unsigned updates) {
  if (s.empty()) return;
  const auto& items = ctx.prog->items;
  if (i == items.size()) {
    unsigned expect = ctx.cfg->schedule ? unsigned(ctx.cfg->schedule->positions.size()) : 0;
    require(updates == expect, Errc::ShapeMismatch, "control update count must equal k");
    ctx.gq_min = std::min(ctx.gq_min, updates);
    ctx.gq_max = std::max(ctx.gq_max, updates);
    ctx.paths++;
    finalize(ctx, s);
    return;
  }
  const Item& item = items[i];
  if (!item.is_query) {
    exec_from(ctx, i + 1, apply_unitary(s, item.u.targets, *item.u.matrix, item.u.controls),
              updates);
    return;
  }
  const QueryItem& q = item.q;
  int j = ctx.cfg->schedule ? ctx.cfg->schedule->slot_of(q.pos) : -1;
  LookupFn lookup = make_lookup(ctx);
  auto g_fn = [&ctx](int x) { return (*ctx.cfg->g_oracle)(x); };
  auto do_update = [&](QuantumState st, unsigned& upd) {
    auto r = update_control(st, q.in_reg, g_fn);
    ctx.dist.abort_duplicate += r.abort_weight;
    ++upd;
    return std::move(r.state);
  };

  auto continue_after = [&](QuantumState st, unsigned upd) {
    if (ctx.cfg->dephase_every > 0 && q.pos % ctx.cfg->dephase_every == 0 && !q.appended) {
      for (auto& [idx, branch] : dephase(st)) {
        ctx.meas.push_back(int(idx));
        exec_from(ctx, i + 1, std::move(branch), upd);
        ctx.meas.pop_back();
      }
    } else {
      exec_from(ctx, i + 1, std::move(st), upd);
    }
  };

  if (q.mode != QueryMode::ClassicalMeasured) {
    if (j >= 0 && ctx.cfg->schedule->before[j]) s = do_update(std::move(s), updates);
    if (s.empty()) return;
    if (q.mode == QueryMode::ClassicalPurified)
      s = classical_query(s, q.in_reg, q.out_reg, q.hist_slot, ctx.prog->layout.history, lookup);
    else
      s = apply_query(s, q.in_reg, q.out_reg, lookup);
    if (j >= 0 && !ctx.cfg->schedule->before[j]) s = do_update(std::move(s), updates);
    continue_after(std::move(s), updates);
    return;
  }

  // classical answer: the input register is measured before answering
  if (j >= 0 && ctx.cfg->schedule->before[j]) s = do_update(std::move(s), updates);
  if (s.empty()) return;
  for (auto& branch : noisy_query(s, q.in_reg, q.out_reg, lookup, true)) {
    QuantumState bs = std::move(branch.state);
    unsigned upd = updates;
    if (j >= 0 && !ctx.cfg->schedule->before[j]) {
      bs = do_update(std::move(bs), upd);
      if (bs.empty()) continue;
    }
    ctx.meas.push_back(branch.measured_input);
    continue_after(std::move(bs), upd);
    ctx.meas.pop_back();
  }
}

}  // namespace

ExecResult execute(const ExecConfig& cfg) {
  require(cfg.circuit && cfg.answer_oracle, Errc::UsageError, "incomplete exec config");
  if (cfg.schedule) {
    require(cfg.controlled && cfg.g_oracle, Errc::UsageError,
            "scheduled runs need control machinery");
    auto tags = experiment::position_tags(cfg.circuit->classical_pattern(), cfg.circuit->k);
    // modes override the circuit's static tags (noisy coin assignments)
    for (size_t i = 0; i < cfg.modes.size(); ++i)
      tags[i] = cfg.modes[i] != QueryMode::Quantum;
    experiment::validate_schedule(*cfg.schedule, cfg.circuit->k, tags);
  }
  Program prog = build_program(cfg);
  ExecCtx ctx;
  ctx.cfg = &cfg;
  ctx.prog = &prog;
  for (QueryMode m : cfg.modes) ctx.coins.push_back(m == QueryMode::ClassicalMeasured);
  exec_from(ctx, 0, QuantumState::initial(&prog.layout), 0);
  ExecResult res;
  res.dist = std::move(ctx.dist);
  res.g_queries_min = ctx.paths == 0 ? 0 : ctx.gq_min;
  res.g_queries_max = ctx.gq_max;
  res.paths = ctx.paths;
  return res;
}

AdversaryCircuit with_pattern(const AdversaryCircuit& circuit, const std::vector<bool>& classical) {
  AdversaryCircuit out = circuit;
  size_t qi = 0;
  for (Step& s : out.steps)
    if (auto* q = std::get_if<QueryStep>(&s)) {
      require(qi < classical.size(), Errc::ShapeMismatch, "pattern length mismatch");
      q->classical = classical[qi++];
    }
  require(qi == classical.size(), Errc::ShapeMismatch, "pattern length mismatch");
  return out;
}

namespace {

std::vector<QueryMode> pure_modes(const AdversaryCircuit& c) {
  std::vector<QueryMode> modes;
  for (bool cl : c.classical_pattern())
    modes.push_back(cl ? QueryMode::ClassicalPurified : QueryMode::Quantum);
  return modes;
}

OutcomeDist run_noisy_exhaustive(const AdversaryCircuit& circuit, const OracleTable& oracle,
                                 const mpq_class& p, std::vector<Trajectory>* trajectories) {
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
    cfg.answer_oracle = &oracle;
    cfg.with_verification = false;
    std::vector<Trajectory> local;
    cfg.trajectories = trajectories ? &local : nullptr;
    ExecResult r = execute(cfg);
    double wd = w.get_d();
    total.add_scaled(r.dist, wd);
    if (trajectories)
      for (Trajectory& t : local) {
        t.weight *= wd;
        trajectories->push_back(std::move(t));
      }
  }
  return total;
}

QuantumState renormalized(const QuantumState& s) {
  double n = std::sqrt(s.norm2());
  std::vector<Amp> amps = s.amps();
  for (Amp& a : amps) a.a /= n;
  return QuantumState::from_amps(s.layout(), std::move(amps));
}

/// One seeded trajectory per trial: noise coins, classical-answer input
/// measurements and dephasing outcomes are all sampled instead of branched.
OutcomeDist run_sampled(const AdversaryCircuit& circuit, const OracleTable& oracle,
                        const RunMode& mode, std::vector<Trajectory>* trajectories) {
  require(mode.trials >= 1, Errc::UsageError, "sampled runs need trials >= 1");
  std::mt19937_64 rng(mode.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double p = mode.p.get_d();
  OutcomeDist freq;
  for (unsigned trial = 0; trial < mode.trials; ++trial) {
    std::vector<QueryMode> modes;
    std::vector<bool> coins;
    double traj_prob = 1.0;
    for (bool cl : circuit.classical_pattern()) {
      require(mode.kind != RunMode::Kind::Noisy || !cl, Errc::ShapeMismatch,
              "noisy runs take all-quantum circuits");
      bool coin = mode.kind == RunMode::Kind::Noisy && unif(rng) < p;
      if (mode.kind == RunMode::Kind::Noisy) traj_prob *= coin ? p : 1.0 - p;
      modes.push_back(coin ? QueryMode::ClassicalMeasured
                           : (cl ? QueryMode::ClassicalPurified : QueryMode::Quantum));
      coins.push_back(coin);
    }
    ExecConfig cfg;
    cfg.circuit = &circuit;
    cfg.modes = modes;
    cfg.answer_oracle = &oracle;
    cfg.with_verification = false;
    Program prog = build_program(cfg);
    LookupFn lookup = [&oracle](uint64_t, int x) { return oracle(x); };

    QuantumState s = QuantumState::initial(&prog.layout);
    std::vector<int> meas;
    auto born_pick = [&](auto&& branches) {
      double roll = unif(rng), acc = 0;
      size_t pick = branches.size() - 1;
      for (size_t bi = 0; bi < branches.size(); ++bi) {
        acc += branches[bi].second.norm2();
        if (roll < acc) {
          pick = bi;
          break;
        }
      }
      return pick;
    };
    for (const Item& item : prog.items) {
      if (!item.is_query) {
        s = apply_unitary(s, item.u.targets, *item.u.matrix, item.u.controls);
        continue;
      }
      const QueryItem& q = item.q;
      if (q.mode == QueryMode::ClassicalMeasured) {
        auto branches = split_by_register(s, q.in_reg);
        size_t pick = born_pick(branches);
        traj_prob *= branches[pick].second.norm2();
        meas.push_back(int(branches[pick].first));
        s = apply_query(renormalized(branches[pick].second), q.in_reg, q.out_reg, lookup);
      } else if (q.mode == QueryMode::ClassicalPurified) {
        s = classical_query(s, q.in_reg, q.out_reg, q.hist_slot, prog.layout.history, lookup);
      } else {
        s = apply_query(s, q.in_reg, q.out_reg, lookup);
      }
      if (mode.kind == RunMode::Kind::Depth && mode.depth > 0 && q.pos % mode.depth == 0) {
        auto branches = dephase(s);
        size_t pick = born_pick(branches);
        traj_prob *= branches[pick].second.norm2();
        meas.push_back(int(branches[pick].first));
        s = renormalized(branches[pick].second);
      }
    }
    // final outcome sample
    double roll = unif(rng) * s.norm2(), acc = 0;
    const RegisterLayout& lay = prog.layout;
    for (const Amp& amp : s.amps()) {
      acc += std::norm(amp.a);
      if (roll < acc) {
        OutcomeKey key;
        for (int r : lay.x_out) key.xs.push_back(int(lay.digit(amp.idx, r)));
        for (int r : lay.z_out) key.zs.push_back(int(lay.digit(amp.idx, r)));
        freq.mass[key] += 1.0 / double(mode.trials);
        meas.push_back(int(amp.idx));
        traj_prob *= std::norm(amp.a);
        break;
      }
    }
    if (trajectories) trajectories->push_back({coins, meas, traj_prob});
  }
  return freq;
}

}  // namespace

OutcomeDist run_circuit(const AdversaryCircuit& circuit, const OracleTable& oracle,
                        const RunMode& mode, std::vector<Trajectory>* trajectories) {
  require(oracle.domain_size == circuit.M && oracle.codomain_size == circuit.N,
          Errc::LayoutMismatch, "oracle shape must match the circuit");
  if (!mode.exhaustive) return run_sampled(circuit, oracle, mode, trajectories);
  switch (mode.kind) {
    case RunMode::Kind::Pure: {
      ExecConfig cfg;
      cfg.circuit = &circuit;
      cfg.modes = pure_modes(circuit);
      cfg.answer_oracle = &oracle;
      cfg.with_verification = false;
      cfg.trajectories = trajectories;
      return execute(cfg).dist;
    }
    case RunMode::Kind::Noisy:
      return run_noisy_exhaustive(circuit, oracle, mode.p, trajectories);
    case RunMode::Kind::Depth: {
      ExecConfig cfg;
      cfg.circuit = &circuit;
      cfg.modes = pure_modes(circuit);
      cfg.answer_oracle = &oracle;
      cfg.with_verification = false;
      cfg.dephase_every = mode.depth;
      cfg.trajectories = trajectories;
      return execute(cfg).dist;
    }
  }
  throw Error(Errc::UsageError, "unhandled run mode");
}

}  // namespace qlift::statevec
