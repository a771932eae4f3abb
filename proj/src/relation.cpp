#include "qlift/relation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

#include "qlift/errors.hpp"

namespace qlift {

bool vectors_equivalent(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

std::string kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::MultiImage: return "multi-image";
    case RelationKind::MultiCollision: return "multi-collision";
    case RelationKind::MultiSearch: return "multi-search";
    case RelationKind::ThreeSum: return "three-sum";
    case RelationKind::Custom: return "custom";
  }
  return "?";
}

RelationKind kind_from_name(const std::string& s) {
  if (s == "multi-image") return RelationKind::MultiImage;
  if (s == "multi-collision") return RelationKind::MultiCollision;
  if (s == "multi-search") return RelationKind::MultiSearch;
  if (s == "three-sum") return RelationKind::ThreeSum;
  if (s == "custom") return RelationKind::Custom;
  throw Error(Errc::BadFormat, "unknown relation kind: " + s);
}

bool Relation::member(const std::vector<int>& ys) const {
  if (ys.size() != k) return false;
  switch (kind) {
    case RelationKind::MultiImage:
      return ys == targets;
    case RelationKind::MultiCollision:
      return std::all_of(ys.begin(), ys.end(), [&](int y) { return y == ys[0]; });
    case RelationKind::MultiSearch:
      return std::all_of(ys.begin(), ys.end(), [&](int y) { return y == target_value; });
    case RelationKind::ThreeSum: {
      // codomain {-R..R} stored as [0, 2R] with offset R
      long sum = 0;
      for (int y : ys) sum += y - long(range);
      return sum == 0;
    }
    case RelationKind::Custom:
      return custom && custom(ys);
  }
  return false;
}

bool Relation::permutation_invariant() const {
  switch (kind) {
    case RelationKind::MultiCollision:
    case RelationKind::MultiSearch:
    case RelationKind::ThreeSum:
      return true;
    default:
      return false;
  }
}

void Relation::validate() const {
  require(k >= 1, Errc::ArityMismatch, "relation arity must be >= 1");
  require(codomain_size >= 1, Errc::ShapeMismatch, "codomain must be nonempty");
  switch (kind) {
    case RelationKind::MultiImage:
      require(targets.size() == k, Errc::ArityMismatch, "multi-image needs k targets");
      for (int y : targets)
        require(y >= 0 && unsigned(y) < codomain_size, Errc::ShapeMismatch, "target out of range");
      break;
    case RelationKind::MultiSearch:
      require(target_value >= 0 && unsigned(target_value) < codomain_size, Errc::ShapeMismatch,
              "target out of range");
      break;
    case RelationKind::ThreeSum:
      require(k == 3, Errc::ArityMismatch, "3SUM forces k = 3");
      require(codomain_size == 2 * range + 1, Errc::ShapeMismatch,
              "3SUM codomain must be 2*range+1");
      break;
    default:
      break;
  }
}

namespace {

bool exists_permutation_member(const Relation& r, std::vector<int> ys) {
  std::sort(ys.begin(), ys.end());
  do {
    if (r.member(ys)) return true;
  } while (std::next_permutation(ys.begin(), ys.end()));
  return false;
}

}  // namespace

ExactValue p_of_r_exact(const Relation& r, PiScanMode mode, uint64_t enumeration_limit) {
  r.validate();
  const unsigned N = r.codomain_size, k = r.k;
  require(r.kind != RelationKind::Custom || bool(r.custom), Errc::UnsupportedRelation,
          "custom relation has no membership function");
  uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) {
    require(total <= enumeration_limit / N + 1 && total * N <= enumeration_limit,
            Errc::EnumerationTooLarge, "N^k exceeds the enumeration limit");
    total *= N;
  }
  bool single = mode == PiScanMode::SingleTest ||
                (mode == PiScanMode::Auto && r.permutation_invariant());
  uint64_t hits = 0;
  std::vector<int> ys(k, 0);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rem = idx;
    for (unsigned i = 0; i < k; ++i) {
      ys[i] = int(rem % N);
      rem /= N;
    }
    bool in = single ? r.member(ys) : exists_permutation_member(r, ys);
    if (in) ++hits;
  }
  return ExactValue::from_rational(mpq_class(mpz_class(hits), mpz_class(total)));
}

ExactValue p_of_r_closed_form(const Relation& r) {
  r.validate();
  const unsigned N = r.codomain_size, k = r.k;
  mpz_class n_pow;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), N, k);
  switch (r.kind) {
    case RelationKind::MultiImage: {
      // #distinct permutations of the target multiset
      std::map<int, unsigned> mult;
      for (int y : r.targets) mult[y]++;
      mpz_class perms = factorial(k);
      for (auto& [y, m] : mult) perms /= factorial(m);
      return ExactValue::from_rational(mpq_class(perms, n_pow));
    }
    case RelationKind::MultiCollision: {
      mpz_class d;
      mpz_ui_pow_ui(d.get_mpz_t(), N, k - 1);
      return ExactValue::from_rational(mpq_class(1, d));
    }
    case RelationKind::MultiSearch:
      return ExactValue::from_rational(mpq_class(1, n_pow));
    case RelationKind::ThreeSum: {
      unsigned long R = r.range;
      mpz_class num = 3 * mpz_class(R) * R + 3 * mpz_class(R) + 1;
      mpz_class den = mpz_class(2 * R + 1);
      den = den * den * den;
      return ExactValue::from_rational(mpq_class(num, den));
    }
    case RelationKind::Custom:
      throw Error(Errc::UnsupportedKind, "no closed form for custom relations");
  }
  throw Error(Errc::UnsupportedKind, "unhandled relation kind");
}

void GameSpec::validate() const {
  relation.validate();
  require(M >= 1 && N >= 1, Errc::ShapeMismatch, "oracle shape must be nonempty");
  require(relation.codomain_size == N, Errc::ShapeMismatch,
          "relation codomain must match oracle codomain");
  if (challenge.type == ChallengeSpec::Type::UniformTargets)
    require(relation.kind == RelationKind::MultiImage, Errc::UnsupportedKind,
            "uniform-targets challenges apply to multi-image games");
}

Relation GameSpec::instantiate(const std::vector<int>& ch) const {
  Relation r = relation;
  if (challenge.type == ChallengeSpec::Type::UniformTargets) {
    require(ch.size() == relation.k, Errc::ArityMismatch, "challenge arity mismatch");
    r.targets = ch;
  }
  return r;
}

std::vector<std::pair<std::vector<int>, double>> GameSpec::enumerate_challenges() const {
  std::vector<std::pair<std::vector<int>, double>> out;
  if (challenge.type == ChallengeSpec::Type::None) {
    out.push_back({{}, 1.0});
    return out;
  }
  uint64_t total = 1;
  for (unsigned i = 0; i < relation.k; ++i) total *= N;
  out.reserve(total);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rem = idx;
    std::vector<int> ch(relation.k);
    for (unsigned i = 0; i < relation.k; ++i) {
      ch[i] = int(rem % N);
      rem /= N;
    }
    out.push_back({std::move(ch), 1.0 / double(total)});
  }
  return out;
}

GameSpec GameSpec::from_json(const nlohmann::json& j) {
  GameSpec g;
  g.relation.kind = kind_from_name(j.at("kind").get<std::string>());
  g.relation.k = j.at("k").get<unsigned>();
  g.M = j.at("M").get<unsigned>();
  g.N = j.at("N").get<unsigned>();
  g.relation.codomain_size = g.N;
  g.outputs_distinct_required = j.value("outputs_distinct_required", true);
  g.name = j.value("name", std::string{});
  if (j.contains("parameters")) {
    const auto& p = j["parameters"];
    if (p.contains("targets")) g.relation.targets = p["targets"].get<std::vector<int>>();
    if (p.contains("target")) g.relation.target_value = p["target"].get<int>();
    if (p.contains("range")) g.relation.range = p["range"].get<unsigned>();
  }
  if (j.contains("challenge")) {
    const auto& c = j["challenge"];
    std::string type = c.value("type", "none");
    if (type == "none")
      g.challenge.type = ChallengeSpec::Type::None;
    else if (type == "uniform-targets")
      g.challenge.type = ChallengeSpec::Type::UniformTargets;
    else
      throw Error(Errc::BadFormat, "unknown challenge type: " + type);
    g.challenge.seed = c.value("seed", uint64_t(0));
  }
  // uniform-targets games carry placeholder targets until instantiated
  if (g.challenge.type == ChallengeSpec::Type::UniformTargets && g.relation.targets.empty())
    g.relation.targets.assign(g.relation.k, 0);
  g.validate();
  return g;
}

nlohmann::json GameSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(relation.kind);
  j["k"] = relation.k;
  j["M"] = M;
  j["N"] = N;
  j["outputs_distinct_required"] = outputs_distinct_required;
  if (!name.empty()) j["name"] = name;
  nlohmann::json p = nlohmann::json::object();
  if (relation.kind == RelationKind::MultiImage) p["targets"] = relation.targets;
  if (relation.kind == RelationKind::MultiSearch) p["target"] = relation.target_value;
  if (relation.kind == RelationKind::ThreeSum) p["range"] = relation.range;
  j["parameters"] = p;
  nlohmann::json c;
  c["type"] = challenge.type == ChallengeSpec::Type::None ? "none" : "uniform-targets";
  c["seed"] = challenge.seed;
  j["challenge"] = c;
  return j;
}

GameSpec GameSpec::load(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Errc::BadFormat, "cannot open game file: " + path);
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

bool evaluate_predicate(const GameSpec& game, const std::function<int(int)>& oracle,
                        const std::vector<int>& challenge, const OutputTuple& out) {
  require(out.xs.size() == game.k() && out.ys.size() == game.k(), Errc::ArityMismatch,
          "output arity must match the game");
  if (game.outputs_distinct_required) {
    std::vector<int> xs = out.xs;
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) return false;
  }
  for (size_t i = 0; i < out.xs.size(); ++i)
    if (oracle(out.xs[i]) != out.ys[i]) return false;
  Relation r = game.instantiate(challenge);
  return r.member(out.ys);
}

bool wins_game(const GameSpec& game, const std::function<int(int)>& oracle,
               const std::vector<int>& challenge, const OutputTuple& out) {
  Relation r = game.instantiate(challenge);
  if (r.permutation_invariant()) return evaluate_predicate(game, oracle, challenge, out);
  std::vector<size_t> order(out.xs.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    OutputTuple perm;
    perm.zs = out.zs;
    for (size_t i : order) {
      perm.xs.push_back(out.xs[i]);
      perm.ys.push_back(out.ys[i]);
    }
    if (evaluate_predicate(game, oracle, challenge, perm)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace qlift
