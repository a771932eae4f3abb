#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlift/exact.hpp"
#include "qlift/oracle.hpp"

namespace qlift {

/// Multiset equality of two index vectors.
bool vectors_equivalent(const std::vector<int>& a, const std::vector<int>& b);

enum class RelationKind { MultiImage, MultiCollision, MultiSearch, ThreeSum, Custom };

std::string kind_name(RelationKind k);
RelationKind kind_from_name(const std::string& s);

/// Winning relation over Y^k (plus an opaque z slot for custom predicates).
/// Membership is ordered; permutation closure is applied at game level.
struct Relation {
  RelationKind kind = RelationKind::MultiSearch;
  unsigned k = 1;
  unsigned codomain_size = 2;  // N; for ThreeSum this is 2*range+1
  std::vector<int> targets;    // MultiImage
  int target_value = 0;        // MultiSearch
  unsigned range = 0;          // ThreeSum range parameter
  /// Custom membership over y-tuples; may close over (x, z, oracle).
  std::function<bool(const std::vector<int>&)> custom;

  bool member(const std::vector<int>& ys) const;
  bool permutation_invariant() const;
  void validate() const;
};

enum class PiScanMode { Auto, FullScan, SingleTest };

/// p(R) = Pr[exists pi: y_pi in R] over uniform y in [N]^k, as an exact count
/// over N^k tuples. SingleTest replaces the pi scan with one membership test
/// (valid for permutation-invariant relations; used as a differential check).
ExactValue p_of_r_exact(const Relation& r, PiScanMode mode = PiScanMode::Auto,
                        uint64_t enumeration_limit = uint64_t(1) << 24);

/// Closed forms: multi-image (#distinct permutations of targets)/N^k,
/// multi-collision 1/N^{k-1}, multi-search 1/N^k,
/// 3SUM (3R^2+3R+1)/(2R+1)^3. Custom relations are unsupported.
ExactValue p_of_r_closed_form(const Relation& r);

struct ChallengeSpec {
  enum class Type { None, UniformTargets };
  Type type = Type::None;
  uint64_t seed = 0;
};

/// A multi-output k-search game: relation template, oracle shape and
/// challenge distribution. For UniformTargets games the relation's target
/// vector is filled from the challenge.
struct GameSpec {
  Relation relation;
  unsigned M = 2;
  unsigned N = 2;
  bool outputs_distinct_required = true;
  ChallengeSpec challenge;
  std::string name;

  unsigned k() const { return relation.k; }
  void validate() const;

  Relation instantiate(const std::vector<int>& ch) const;
  /// All challenge values with their probabilities (exhaustive mode).
  std::vector<std::pair<std::vector<int>, double>> enumerate_challenges() const;

  static GameSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static GameSpec load(const std::string& path);
};

struct OutputTuple {
  std::vector<int> xs;
  std::vector<int> ys;
  std::vector<int> zs;
};

/// Ordered predicate of the game: relation membership, oracle consistency
/// y_i = oracle(x_i), and pairwise-distinct inputs when required.
bool evaluate_predicate(const GameSpec& game, const std::function<int(int)>& oracle,
                        const std::vector<int>& challenge, const OutputTuple& out);

/// Game-level win check: accepts any joint reordering of the (x_i, y_i)
/// pairs, matching the up-to-permutation convention of the success events.
bool wins_game(const GameSpec& game, const std::function<int(int)>& oracle,
               const std::vector<int>& challenge, const OutputTuple& out);

}  // namespace qlift
