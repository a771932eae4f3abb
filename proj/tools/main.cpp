#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qlift/bounds.hpp"
#include "qlift/errors.hpp"
#include "qlift/manifest.hpp"

namespace {

using namespace qlift;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.find('.') != std::string::npos) {
    // decimal notation: digits after the point become a power-of-ten divisor
    std::string digits;
    long scale = 0;
    bool seen = false;
    for (char ch : s) {
      if (ch == '.') {
        seen = true;
        continue;
      }
      digits.push_back(ch);
      if (seen) ++scale;
    }
    mpz_class den = 1;
    for (long i = 0; i < scale; ++i) den *= 10;
    q = mpq_class(mpz_class(digits), den);
  } else {
    q = mpq_class(s);
  }
  q.canonicalize();
  return q;
}

std::string render_value(const ExactValue& v) {
  if (v.is_exact()) return v.to_string();
  return v.to_string();  // carries the explicit approximation marker
}

int cmd_bound(const bounds::Params& params, const std::string& game_kind, unsigned long pr_n,
              bool json_out) {
  std::optional<mpq_class> pr;
  if (!game_kind.empty()) {
    Relation rel;
    rel.kind = kind_from_name(game_kind);
    rel.k = unsigned(params.k);
    rel.codomain_size = unsigned(pr_n);
    if (rel.kind == RelationKind::MultiImage)
      for (unsigned i = 0; i < rel.k; ++i) rel.targets.push_back(int(i % pr_n));
    if (rel.kind == RelationKind::ThreeSum) {
      rel.range = unsigned((pr_n - 1) / 2);
      rel.codomain_size = 2 * rel.range + 1;
    }
    pr = p_of_r_closed_form(rel).rational();
  }
  bounds::BoundReport rep = bounds::full_report(params, pr);
  if (json_out) {
    nlohmann::json j;
    j["k"] = params.k;
    j["q"] = params.q;
    j["c"] = params.c;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : rep.entries)
      entries.push_back({{"name", e.name},
                         {"value", render_value(e.value)},
                         {"value_approx", e.value.to_double()},
                         {"tag", bounds::tag_name(e.tag)}});
    j["entries"] = entries;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "bounds for k=" << params.k << " q=" << params.q << " c=" << params.c << "\n";
    for (const auto& e : rep.entries)
      std::cout << "  " << e.name << " = " << render_value(e.value) << "  ["
                << bounds::tag_name(e.tag) << "]\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact NISQ security bounds and measure-and-reprogram verification"};
  app.require_subcommand(1);

  // ---- bound ----
  auto* bound = app.add_subcommand("bound", "compute every applicable closed-form bound");
  bounds::Params params;
  std::string p_str, game_kind;
  unsigned long T = 0, d = 0, N = 0, M = 0, S = 0, K = 0;
  bool json_out = false;
  bound->add_option("--k", params.k, "outputs / reprogrammings")->required();
  bound->add_option("--q", params.q, "quantum queries");
  bound->add_option("--c", params.c, "classical queries");
  bound->add_option("--T", T, "noisy query budget");
  bound->add_option("--p", p_str, "noise probability (rational or decimal)");
  bound->add_option("--d", d, "depth bound");
  bound->add_option("--N", N, "codomain size");
  bound->add_option("--M", M, "domain size");
  bound->add_option("--S", S, "advice bits");
  bound->add_option("--K", K, "salt space size");
  bound->add_option("--g", params.g, "direct-product instances");
  bound->add_option("--game", game_kind, "relation kind for p(R)-based bounds");
  bound->add_flag("--json", json_out, "machine-readable output");

  // ---- p-of-r ----
  auto* pofr = app.add_subcommand("p-of-r", "p(R) of a game, exact and closed form");
  std::string game_file;
  pofr->add_option("--game", game_file, "game JSON file")->required();

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "run a circuit against an oracle table");
  std::string circ_file, table_str, sim_mode = "pure";
  unsigned long sim_depth = 1, trials = 0;
  uint64_t seed = 0;
  std::string sim_p = "0";
  simulate->add_option("--circuit", circ_file, "circuit JSON file")->required();
  simulate->add_option("--table", table_str, "comma-separated oracle table")->required();
  simulate->add_option("--mode", sim_mode, "pure | noisy | depth");
  simulate->add_option("--p", sim_p, "noise probability for noisy mode");
  simulate->add_option("--depth", sim_depth, "dephasing interval for depth mode");
  simulate->add_option("--trials", trials, "sampled backend trial count (0 = exhaustive)");
  simulate->add_option("--seed", seed, "trajectory seed");

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run an experiment manifest");
  std::string manifest_file, csv_out;
  verify_cmd->add_option("manifest", manifest_file, "manifest JSON file")->required();
  verify_cmd->add_option("--out", csv_out, "write the results CSV here");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "tabulate a bound over a parameter range");
  std::string quantity = "noisy-loss-exact", sweep_out;
  unsigned long sw_k = 1, sw_T = 2, sw_q = 0, sw_c = 0;
  unsigned long steps = 10;
  sweep->add_option("--quantity", quantity,
                    "noisy-loss-exact | noisy-loss-asymptotic | hybrid-loss-exact | capital-a");
  sweep->add_option("--k", sw_k, "k (or sweep variable bound for hybrid sweeps)");
  sweep->add_option("--T", sw_T, "noisy budget");
  sweep->add_option("--q", sw_q, "quantum queries");
  sweep->add_option("--c", sw_c, "classical queries");
  sweep->add_option("--steps", steps, "grid steps for p in [0,1]");
  sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (bound->parsed()) {
      if (T) params.T = T;
      if (!p_str.empty()) params.p = parse_rational(p_str);
      if (d) params.d = d;
      if (N) params.big_n = N;
      if (M) params.big_m = M;
      if (S) params.S = S;
      if (K) params.big_k = K;
      if (!game_kind.empty() && N == 0)
        throw Error(Errc::UsageError, "--game needs --N for p(R)");
      return cmd_bound(params, game_kind, N, json_out);
    }
    if (pofr->parsed()) {
      GameSpec game = GameSpec::load(game_file);
      if (game.challenge.type != ChallengeSpec::Type::None) {
        std::cout << "p(R) undefined for challenge-dependent relations before instantiation;\n"
                     "closed form uses the placeholder targets\n";
      }
      std::cout << "exact      = " << p_of_r_exact(game.relation).to_string() << "\n";
      try {
        std::cout << "closed     = " << p_of_r_closed_form(game.relation).to_string() << "\n";
      } catch (const Error&) {
        std::cout << "closed     = (no closed form for this kind)\n";
      }
      return kExitPass;
    }
    if (simulate->parsed()) {
      auto circuit = statevec::AdversaryCircuit::load(circ_file);
      std::vector<int> table;
      std::stringstream ss(table_str);
      std::string item;
      while (std::getline(ss, item, ',')) table.push_back(std::stoi(item));
      OracleTable oracle(circuit.M, circuit.N, table);
      statevec::RunMode mode;
      if (sim_mode == "pure")
        mode.kind = statevec::RunMode::Kind::Pure;
      else if (sim_mode == "noisy") {
        mode.kind = statevec::RunMode::Kind::Noisy;
        mode.p = parse_rational(sim_p);
      } else if (sim_mode == "depth") {
        mode.kind = statevec::RunMode::Kind::Depth;
        mode.depth = unsigned(sim_depth);
      } else {
        throw Error(Errc::UsageError, "unknown mode: " + sim_mode);
      }
      mode.exhaustive = trials == 0;
      mode.trials = unsigned(trials);
      mode.seed = seed;
      OutcomeDist dist = statevec::run_circuit(circuit, oracle, mode);
      std::cout.precision(12);
      for (const auto& [key, w] : dist.mass) {
        std::cout << "x=(";
        for (size_t i = 0; i < key.xs.size(); ++i) std::cout << (i ? "," : "") << key.xs[i];
        std::cout << ")";
        if (!key.zs.empty()) {
          std::cout << " z=(";
          for (size_t i = 0; i < key.zs.size(); ++i) std::cout << (i ? "," : "") << key.zs[i];
          std::cout << ")";
        }
        std::cout << "  " << w << "\n";
      }
      return kExitPass;
    }
    if (verify_cmd->parsed()) {
      auto manifest = verify::Manifest::load(manifest_file);
      auto result = verify::run_manifest(manifest);
      std::string csv = verify::to_csv(result);
      if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << csv;
      } else {
        std::cout << csv;
      }
      for (const auto& rep : result.reports)
        std::cerr << (rep.pass ? "PASS " : "FAIL ") << rep.name
                  << " min_margin=" << rep.min_margin << "\n";
      if (!result.pass) {
        for (const auto& rep : result.reports)
          for (const auto& c : rep.cells)
            if (c.margin < -rep.tolerance)
              std::cout << "FAIL," << c.h_index << ',' << c.g_index << ',' << c.lhs << ','
                        << c.rhs << ',' << c.margin << ',' << c.mode << "\n";
        return kExitFail;
      }
      return kExitPass;
    }
    if (sweep->parsed()) {
      std::ostringstream os;
      os.precision(17);
      if (quantity == "noisy-loss-exact" || quantity == "noisy-loss-asymptotic") {
        os << "p,value\n";
        for (unsigned long i = 0; i <= steps; ++i) {
          mpq_class p{long(i), long(steps)};
          p.canonicalize();
          auto v = quantity == "noisy-loss-exact" ? bounds::noisy_loss_exact(p, sw_T, sw_k)
                                                  : bounds::noisy_loss_asymptotic(p, sw_T, sw_k);
          os << p.get_str() << ',' << v.to_double() << "\n";
        }
      } else if (quantity == "hybrid-loss-exact" || quantity == "capital-a") {
        os << "k,value\n";
        for (unsigned long kk = 1; kk <= sw_k; ++kk) {
          if (kk > sw_q + sw_c) break;
          auto v = quantity == "capital-a" ? bounds::capital_a(kk, sw_q, sw_c)
                                           : bounds::hybrid_loss_exact(kk, sw_q, sw_c);
          os << kk << ',' << v.to_double() << "\n";
        }
      } else {
        throw Error(Errc::UsageError, "unknown sweep quantity: " + quantity);
      }
      if (!sweep_out.empty()) {
        std::ofstream out(sweep_out);
        out << os.str();
      } else {
        std::cout << os.str();
      }
      return kExitPass;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::MemoryCapExceeded:
      case Errc::CellCapExceeded:
      case Errc::EnumerationTooLarge:
        return kExitResource;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
