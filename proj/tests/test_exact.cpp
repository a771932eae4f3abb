#include <doctest.h>

#include "qlift/errors.hpp"
#include "qlift/exact.hpp"

using namespace qlift;

TEST_CASE("exact rationals stay exact and canonical") {
  ExactValue a = ExactValue::from_rational(mpq_class(28, 100));
  CHECK(a.is_exact());
  CHECK(a.to_string() == "7/25");
  CHECK(a.eq_rational(mpq_class(7, 25)));

  ExactValue b = a.mul(ExactValue::from_int(100));
  CHECK(b.eq_rational(28));
  CHECK(a.add(a).eq_rational(mpq_class(14, 25)));
  CHECK(a.pow_ui(2).eq_rational(mpq_class(49, 625)));
}

TEST_CASE("cap at one") {
  CHECK(ExactValue::from_rational(mpq_class(9, 8)).cap_one().eq_rational(1));
  CHECK(ExactValue::from_rational(mpq_class(1, 8)).cap_one().eq_rational(mpq_class(1, 8)));
  CHECK(ExactValue::from_log2(1, 5.0, Rounding::Up).cap_one().eq_rational(1));
}

TEST_CASE("bit limit demotes to the log domain with directed rounding") {
  mpz_class big = 1;
  for (int i = 0; i < 100; ++i) big *= 1000003;  // ~2000 bits
  mpq_class q(big * big, 3);                     // ~4000 bits over the 256 limit
  ExactValue v = ExactValue::from_rational(q, Rounding::Up, 256);
  CHECK(!v.is_exact());
  double reference = log2_directed(q, Rounding::Down);
  CHECK(v.log2_magnitude() >= reference);
  CHECK(v.log2_magnitude() == doctest::Approx(reference).epsilon(1e-12));

  ExactValue down = ExactValue::from_rational(q, Rounding::Down, 256);
  CHECK(down.log2_magnitude() <= v.log2_magnitude());
}

TEST_CASE("log-domain ordering is preserved") {
  ExactValue small = ExactValue::from_log2(1, 10.0, Rounding::Up);
  ExactValue large = ExactValue::from_log2(1, 20.0, Rounding::Up);
  CHECK(small.less_than(large));
  CHECK(small.mul(large).log2_magnitude() == doctest::Approx(30.0));
  CHECK(large.root_ui(2).log2_magnitude() == doctest::Approx(10.0));
  // log-sum-exp: 2^10 + 2^10 = 2^11
  CHECK(small.add(small).log2_magnitude() == doctest::Approx(11.0));
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 7) == 0);  // upper index below lower evaluates to zero
  CHECK(binomial(0, 0) == 1);
  CHECK(factorial(5) == 120);
}
