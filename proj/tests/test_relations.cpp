#include <doctest.h>

#include "qlift/errors.hpp"
#include "qlift/relation.hpp"

using namespace qlift;

namespace {

Relation make(RelationKind kind, unsigned k, unsigned N) {
  Relation r;
  r.kind = kind;
  r.k = k;
  r.codomain_size = N;
  return r;
}

}  // namespace

TEST_CASE("vectors_equivalent is multiset equality") {
  CHECK(vectors_equivalent({1, 2, 3}, {3, 1, 2}));
  CHECK(!vectors_equivalent({1, 1, 2}, {1, 2, 2}));
  CHECK(!vectors_equivalent({1, 2}, {1, 2, 3}));
  CHECK(vectors_equivalent({}, {}));
}

TEST_CASE("reprogrammed oracle lookups") {
  OracleTable base(3, 2, {0, 0, 0});
  SUBCASE("empty patch is the identity") {
    auto o = reprogram(base, {}, {});
    for (int x = 0; x < 3; ++x) CHECK(o(x) == base(x));
  }
  SUBCASE("redundant patch") {
    auto o = reprogram(base, {1}, {0});
    for (int x = 0; x < 3; ++x) CHECK(o(x) == base(x));
  }
  SUBCASE("patch overrides one point") {
    auto o = reprogram(base, {1}, {1});
    CHECK(o(0) == 0);
    CHECK(o(1) == 1);
    CHECK(o(2) == 0);
  }
  SUBCASE("duplicate inputs rejected") {
    CHECK_THROWS_AS(reprogram(base, {1, 1}, {0, 1}), Error);
  }
  SUBCASE("patch idempotence: re-patching with the same pairs changes nothing") {
    auto once = materialize(reprogram(base, {0, 2}, {1, 1}));
    auto twice = materialize(reprogram(once, {0, 2}, {1, 1}));
    CHECK(once.table == twice.table);
  }
}

TEST_CASE("p_of_r exact brute force") {
  auto ms = make(RelationKind::MultiSearch, 2, 2);
  CHECK(p_of_r_exact(ms).eq_rational(mpq_class(1, 4)));
  auto mc = make(RelationKind::MultiCollision, 2, 2);
  CHECK(p_of_r_exact(mc).eq_rational(mpq_class(1, 2)));
  auto ts = make(RelationKind::ThreeSum, 3, 3);
  ts.range = 1;
  CHECK(p_of_r_exact(ts).eq_rational(mpq_class(7, 27)));
}

TEST_CASE("p_of_r closed forms") {
  auto mi = make(RelationKind::MultiImage, 2, 3);
  mi.targets = {0, 1};
  CHECK(p_of_r_closed_form(mi).eq_rational(mpq_class(2, 9)));
  auto mc = make(RelationKind::MultiCollision, 3, 4);
  CHECK(p_of_r_closed_form(mc).eq_rational(mpq_class(1, 16)));
  auto ts = make(RelationKind::ThreeSum, 3, 5);
  ts.range = 2;
  CHECK(p_of_r_closed_form(ts).eq_rational(mpq_class(19, 125)));
  auto custom = make(RelationKind::Custom, 1, 2);
  custom.custom = [](const std::vector<int>&) { return false; };
  CHECK_THROWS_AS(p_of_r_closed_form(custom), Error);
}

TEST_CASE("closed form equals brute force on the grid") {
  for (unsigned N = 2; N <= 6; ++N) {
    for (unsigned k = 1; k <= 3; ++k) {
      auto mi = make(RelationKind::MultiImage, k, N);
      for (unsigned j = 0; j < k; ++j) mi.targets.push_back(int(j % N));
      CHECK(p_of_r_exact(mi).rational() == p_of_r_closed_form(mi).rational());
      auto mc = make(RelationKind::MultiCollision, k, N);
      CHECK(p_of_r_exact(mc).rational() == p_of_r_closed_form(mc).rational());
      auto ms = make(RelationKind::MultiSearch, k, N);
      CHECK(p_of_r_exact(ms).rational() == p_of_r_closed_form(ms).rational());
    }
  }
  for (unsigned R = 1; R <= 3; ++R) {
    auto ts = make(RelationKind::ThreeSum, 3, 2 * R + 1);
    ts.range = R;
    CHECK(p_of_r_exact(ts).rational() == p_of_r_closed_form(ts).rational());
  }
}

TEST_CASE("pi-scan differential for permutation-invariant relations") {
  for (unsigned N = 2; N <= 4; ++N) {
    auto mc = make(RelationKind::MultiCollision, 3, N);
    CHECK(p_of_r_exact(mc, PiScanMode::FullScan).rational() ==
          p_of_r_exact(mc, PiScanMode::SingleTest).rational());
    auto ms = make(RelationKind::MultiSearch, 2, N);
    CHECK(p_of_r_exact(ms, PiScanMode::FullScan).rational() ==
          p_of_r_exact(ms, PiScanMode::SingleTest).rational());
  }
}

TEST_CASE("enumeration limit") {
  auto ms = make(RelationKind::MultiSearch, 3, 300);
  CHECK_THROWS_AS(p_of_r_exact(ms, PiScanMode::Auto, 1 << 20), Error);
}

TEST_CASE("predicate evaluation") {
  GameSpec game;
  game.relation = make(RelationKind::MultiImage, 2, 2);
  game.relation.targets = {1, 0};
  game.M = 3;
  game.N = 2;
  game.outputs_distinct_required = true;
  game.validate();
  OracleTable table(3, 2, {1, 0, 0});
  auto oracle = [&](int x) { return table(x); };

  SUBCASE("ordered membership per the relation") {
    CHECK(evaluate_predicate(game, oracle, {}, {{0, 1}, {1, 0}, {}}));
    CHECK(!evaluate_predicate(game, oracle, {}, {{1, 0}, {0, 0}, {}}));
  }
  SUBCASE("oracle consistency clause") {
    CHECK(!evaluate_predicate(game, oracle, {}, {{0, 1}, {0, 0}, {}}));
  }
  SUBCASE("distinctness clause") {
    GameSpec g2 = game;
    g2.relation.targets = {1, 1};
    CHECK(!evaluate_predicate(g2, oracle, {}, {{0, 0}, {1, 1}, {}}));
  }
  SUBCASE("game-level win accepts reordered pairs") {
    CHECK(wins_game(game, oracle, {}, {{1, 0}, {0, 1}, {}}));
    CHECK(!wins_game(game, oracle, {}, {{1, 2}, {0, 0}, {}}));
  }
}

TEST_CASE("constant oracle wins multi-search") {
  GameSpec game;
  game.relation = make(RelationKind::MultiSearch, 2, 2);
  game.M = 4;
  game.N = 2;
  game.validate();
  OracleTable zeros(4, 2, {0, 0, 0, 0});
  auto oracle = [&](int x) { return zeros(x); };
  CHECK(evaluate_predicate(game, oracle, {}, {{0, 3}, {0, 0}, {}}));
  CHECK(!evaluate_predicate(game, oracle, {}, {{0, 3}, {0, 1}, {}}));
}

TEST_CASE("game JSON round trip") {
  GameSpec game;
  game.relation = make(RelationKind::ThreeSum, 3, 3);
  game.relation.range = 1;
  game.M = 5;
  game.N = 3;
  game.outputs_distinct_required = false;
  game.name = "threesum-tiny";
  auto j = game.to_json();
  GameSpec back = GameSpec::from_json(j);
  CHECK(back.relation.kind == RelationKind::ThreeSum);
  CHECK(back.relation.range == 1);
  CHECK(back.M == 5);
  CHECK(back.outputs_distinct_required == false);
  CHECK(back.to_json() == j);
}

TEST_CASE("arity mismatch raises") {
  GameSpec game;
  game.relation = make(RelationKind::MultiSearch, 2, 2);
  game.M = 3;
  game.N = 2;
  auto oracle = [](int) { return 0; };
  CHECK_THROWS_AS(evaluate_predicate(game, oracle, {}, {{0}, {0}, {}}), Error);
}
