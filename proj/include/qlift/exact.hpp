#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qlift {

/// Rounding direction used once a value has left exact mode. Upper bounds
/// are kept rounded up, lower bounds rounded down, so inequalities checked
/// on converted values stay sound.
enum class Rounding { Up, Down };

/// A probability/bound value that is an exact rational while its numerator
/// and denominator fit in `bit_limit` bits, and a (sign, log2-magnitude)
/// pair beyond that. Conversions and arithmetic preserve ordering in the
/// stated rounding direction.
class ExactValue {
 public:
  static constexpr unsigned kDefaultBitLimit = 4096;

  ExactValue() : exact_(true), q_(0), sign_(0), log2_(0.0), rounding_(Rounding::Up) {}

  static ExactValue from_rational(const mpq_class& q, Rounding r = Rounding::Up,
                                  unsigned bit_limit = kDefaultBitLimit);
  static ExactValue from_int(long n, Rounding r = Rounding::Up);
  static ExactValue from_log2(int sign, double log2_magnitude, Rounding r);

  bool is_exact() const { return exact_; }
  const mpq_class& rational() const;  // valid only in exact mode
  int sign() const;
  double log2_magnitude() const;  // valid only for nonzero values
  Rounding rounding() const { return rounding_; }

  double to_double() const;
  /// Exact values print as "a/b" (or "a"); log-domain values print as an
  /// approximate decimal with an explicit log2 annotation.
  std::string to_string() const;

  ExactValue mul(const ExactValue& o) const;
  ExactValue div(const ExactValue& o) const;
  ExactValue add(const ExactValue& o) const;
  ExactValue pow_ui(unsigned long e) const;
  /// s-th root; always computed in the log domain (s > 1).
  ExactValue root_ui(unsigned long s) const;
  /// min(value, 1)
  ExactValue cap_one() const;

  bool less_than(const ExactValue& o) const;
  bool leq(const ExactValue& o) const;
  bool eq_rational(const mpq_class& q) const;

  unsigned bit_limit() const { return bit_limit_; }

 private:
  ExactValue demoted() const;
  void maybe_demote();

  bool exact_;
  mpq_class q_;
  int sign_;      // -1, 0, +1 (log mode)
  double log2_;   // log2 |value| (log mode)
  Rounding rounding_;
  unsigned bit_limit_ = kDefaultBitLimit;
};

/// Directed log2 of a positive rational via MPFR.
double log2_directed(const mpq_class& q, Rounding r);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

}  // namespace qlift
