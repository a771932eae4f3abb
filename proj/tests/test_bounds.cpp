#include <doctest.h>

#include "qlift/bounds.hpp"
#include "qlift/errors.hpp"

using namespace qlift;
using namespace qlift::bounds;

TEST_CASE("capital_a on hand-summed points") {
  CHECK(capital_a(1, 2, 3).eq_rational(7));
  CHECK(capital_a(2, 2, 2).eq_rational(18));
  CHECK(capital_a(2, 3, 0).eq_rational(9));
}

TEST_CASE("capital_a(1,q,c) = q^2 + c") {
  for (unsigned long q = 0; q <= 1000; q += (q < 30 ? 1 : 13))
    for (unsigned long c = 0; c <= 1000; c += (c < 30 ? 1 : 17)) {
      if (q + c == 0) continue;
      CHECK(capital_a(1, q, c).eq_rational(mpq_class(long(q * q + c))));
    }
}

TEST_CASE("alpha distribution sums to one exactly") {
  SUBCASE("hand point") {
    auto a = alpha_distribution(1, 2, 3);
    CHECK(a[0].eq_rational(mpq_class(3, 7)));
    CHECK(a[1].eq_rational(mpq_class(4, 7)));
  }
  SUBCASE("no quantum budget forces t=0") {
    auto a = alpha_distribution(1, 0, 1);
    CHECK(a[0].eq_rational(1));
    CHECK(a[1].eq_rational(0));
  }
  SUBCASE("zero mass") {
    CHECK_THROWS_AS(alpha_distribution(3, 1, 1), Error);
  }
  SUBCASE("normalization over the full grid") {
    for (unsigned long total = 1; total <= 24; ++total)
      for (unsigned long q = 0; q <= total; ++q) {
        unsigned long c = total - q;
        for (unsigned long k = 1; k <= total; ++k) {
          auto a = alpha_distribution(k, q, c);
          mpq_class sum = 0;
          for (const auto& v : a) {
            CHECK(v.rational() >= 0);
            sum += v.rational();
          }
          CHECK(sum == 1);
        }
      }
  }
}

TEST_CASE("hybrid loss on hand points, positivity, monotonicity") {
  CHECK(hybrid_loss_exact(1, 1, 1).eq_rational(8));
  CHECK(hybrid_loss_exact(1, 2, 3).eq_rational(28));
  CHECK(hybrid_loss_exact(2, 2, 2).eq_rational(576));
  for (unsigned long k = 1; k <= 3; ++k)
    for (unsigned long q = 0; q <= 6; ++q)
      for (unsigned long c = 0; c <= 6; ++c) {
        if (k > q + c) continue;
        auto v = hybrid_loss_exact(k, q, c);
        CHECK(v.rational() >= 1);
        CHECK(hybrid_loss_exact(k, q + 1, c).rational() >= v.rational());
        CHECK(hybrid_loss_exact(k, q, c + 1).rational() >= v.rational());
        CHECK(dfm_loss(k, q).rational() >= 1);
      }
}

TEST_CASE("simplified loss dominates capital_a") {
  // exact-rational comparison with e^2 replaced by its rational upper bound
  for (unsigned long k = 1; k <= 12; ++k)
    for (unsigned long q = k; q <= 12; ++q)
      for (unsigned long c = k; c <= 12; ++c) {
        auto lhs = capital_a(k, q, c);
        auto rhs = hybrid_loss_simplified(k, q, c).bare;
        CHECK(lhs.leq(rhs));
      }
  CHECK(hybrid_loss_simplified(1, 0, 1).bare.eq_rational(mpq_class(8 * 739, 100)));
  CHECK(hybrid_loss_simplified(1, 1, 0).bare.eq_rational(mpq_class(8 * 739, 100)));
}

TEST_CASE("classical measure-and-reprogram loss") {
  CHECK(dfm_loss(1, 2).eq_rational(25));
  CHECK(dfm_loss(2, 1).eq_rational(81));
  CHECK(dfm_loss(1, 0).eq_rational(1));
}

TEST_CASE("noisy loss exact ratio") {
  CHECK(noisy_loss_exact(mpq_class(0), 2, 1).eq_rational(4));
  // p=1 kills every t>0 term: ratio k*C(T,k)
  CHECK(noisy_loss_exact(mpq_class(1), 5, 2).eq_rational(2 * 10));
  CHECK(noisy_loss_exact(mpq_class(1), 7, 3).eq_rational(3 * 35));

  SUBCASE("p=1/2 denominator geometric sum is (k+1)/2^k") {
    for (unsigned long k = 1; k <= 6; ++k) {
      mpq_class p(1, 2);
      mpq_class den = 0;
      for (unsigned long t = 0; t <= k; ++t) {
        mpq_class w = 1;
        for (unsigned long i = 0; i < k; ++i) w *= p;
        den += w;
      }
      mpz_class two_k;
      mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
      CHECK(den == mpq_class(mpz_class(k + 1), two_k));
    }
  }
}

TEST_CASE("noisy loss asymptotic form and grid domination") {
  CHECK(noisy_loss_asymptotic(mpq_class(1), 5, 2).eq_rational(20));
  CHECK(noisy_loss_asymptotic(mpq_class(0), 2, 1).eq_rational(6));
  std::vector<mpq_class> ps = {mpq_class(0), mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4),
                               mpq_class(1)};
  for (unsigned long T = 1; T <= 10; ++T)
    for (unsigned long k = 1; k <= T; ++k)
      for (const auto& p : ps) {
        auto exact = noisy_loss_exact(p, T, k);
        auto bound = noisy_loss_asymptotic(p, T, k).mul(ExactValue::from_int(long(k)));
        CHECK(exact.leq(bound));
      }
}

TEST_CASE("noisy loss is continuous in p and matches closed endpoints") {
  const unsigned long T = 6, k = 2;
  mpq_class prev;
  bool first = true;
  for (long i = 0; i <= 24; ++i) {
    mpq_class p(i, 24);
    p.canonicalize();
    mpq_class v = noisy_loss_exact(p, T, k).rational();
    if (!first) {
      // adjacent grid values stay within a bounded factor
      CHECK(v <= 4 * prev);
      CHECK(prev <= 4 * v);
    }
    prev = v;
    first = false;
  }
  // endpoints computed independently
  CHECK(noisy_loss_exact(mpq_class(0), T, k).rational() ==
        mpq_class(k) * binomial(T, k) * binomial(T, k) * binomial(k, k));
  CHECK(noisy_loss_exact(mpq_class(1), T, k).rational() == mpq_class(k) * binomial(T, k));
}

TEST_CASE("bounded depth parameter map") {
  auto [p1, t1] = bounded_depth_params(1, 5);
  CHECK(p1 == 1);
  CHECK(t1 == 10);
  auto [p2, t2] = bounded_depth_params(10, 3);
  CHECK(p2 == mpq_class(1, 10));
  CHECK(t2 == 6);
  // composition with the asymptotic bound
  auto v = noisy_loss_asymptotic(p2, t2, 2);
  CHECK(v.eq_rational(mpq_class(binomial(6, 2)) *
                      (mpq_class(9, 10) * 12 * mpq_class(9, 10) * 12 + 2)));
}

TEST_CASE("lifting bound with cap") {
  CHECK(lifting_bound(1, 1, 1, mpq_class(1, 8)).value.eq_rational(1));
  CHECK(lifting_bound(1, 2, 3, mpq_class(1, 100)).value.eq_rational(mpq_class(28, 100)));
  CHECK(lifting_bound(1, 2, 3, mpq_class(0)).value.eq_rational(0));
}

TEST_CASE("direct product bound") {
  CHECK(dpt_bound(1, 1, 2, 3, mpq_class(1, 100))
            .eq_rational(lifting_bound(1, 2, 3, mpq_class(1, 100)).value.rational()));
  CHECK(dpt_bound(2, 1, 2, 3, mpq_class(1, 100)).eq_rational(mpq_class(28 * 28, 100 * 100)));
  CHECK(dpt_bound(3, 1, 2, 3, mpq_class(0)).eq_rational(0));
}

TEST_CASE("advice bound") {
  // S=1 reduces to 4 * lifting with plain budgets
  auto one = advice_bound(1, 2, 3, 1, mpq_class(1, 1000));
  CHECK(one.eq_rational(mpq_class(4 * 28, 1000)));
  CHECK(advice_bound(2, 2, 2, 3, mpq_class(0)).eq_rational(0));
  // monotone nondecreasing in q, c and pR
  double base = advice_bound(1, 2, 2, 2, mpq_class(1, 1 << 16)).to_double();
  CHECK(advice_bound(1, 3, 2, 2, mpq_class(1, 1 << 16)).to_double() >= base - 1e-15);
  CHECK(advice_bound(1, 2, 3, 2, mpq_class(1, 1 << 16)).to_double() >= base - 1e-15);
  CHECK(advice_bound(1, 2, 2, 2, mpq_class(1, 1 << 15)).to_double() >= base - 1e-15);
}

TEST_CASE("salted bound") {
  auto no_advice = salted_bound(1, 2, 3, 0, 64, mpq_class(1, 100));
  CHECK(no_advice.eq_rational(mpq_class(28, 100)));
  CHECK(salted_bound(1, 2, 3, 64, 64, mpq_class(1, 100)).eq_rational(1));
  // additivity before the cap
  auto v = salted_bound(1, 2, 3, 2, 1000, mpq_class(1, 100));
  CHECK(v.eq_rational(mpq_class(8, 1000) + mpq_class(28, 100)));
}

TEST_CASE("staged-algorithm success formula") {
  CHECK(multi_image_alg_success(1, 2, 3, 100).eq_rational(mpq_class(7, 200)));
  CHECK(multi_image_alg_success(2, 2, 2, 16).eq_rational(mpq_class(1, 128)));
  CHECK_THROWS_AS(multi_image_alg_success(2, 3, 2, 16), Error);
  // saturated budgets return the trivial bound
  CHECK(multi_image_alg_success(1, 4, 0, 10).eq_rational(1));
}

TEST_CASE("hybrid search floor") {
  CHECK(hybrid_search_floor(0, 1, 2).eq_rational(mpq_class(1, 4)));
  CHECK(hybrid_search_floor(1, 0, 4).eq_rational(mpq_class(1, 8)));
  CHECK_THROWS_AS(hybrid_search_floor(1, 5, 5), Error);
  for (unsigned long u = 0; u <= 3; ++u)
    for (unsigned long v = 0; v + 1 <= 6; ++v) {
      auto base = hybrid_search_floor(u, v, 8);
      CHECK(base.leq(hybrid_search_floor(u + 1, v, 8)));
      CHECK(base.leq(hybrid_search_floor(u, v + 1, 8)));
    }
}

TEST_CASE("full report carries unique names and tags") {
  Params p;
  p.k = 1;
  p.q = 2;
  p.c = 3;
  p.T = 4;
  p.p = mpq_class(1, 2);
  p.big_n = 100;
  p.S = 2;
  p.big_k = 64;
  p.g = 2;
  auto rep = full_report(p, mpq_class(1, 100));
  CHECK(rep.find("hybrid_loss_exact") != nullptr);
  CHECK(rep.find("hybrid_loss_exact")->value.eq_rational(28));
  CHECK(rep.find("lifting_bound") != nullptr);
  CHECK(rep.find("dpt_bound") != nullptr);
  CHECK(rep.find("salted_bound") != nullptr);
  CHECK(rep.find("noisy_loss_exact") != nullptr);
}

TEST_CASE("parameter validation") {
  Params p;
  p.k = 1;
  p.q = 0;
  p.c = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.q = 1;
  p.p = mpq_class(1, 2);
  p.d = 4;
  CHECK_THROWS_AS(p.validate(), Error);  // both p and d
}
