#include "qlift/exact.hpp"

#include <mpfr.h>

#include <cmath>
#include <sstream>

#include "qlift/errors.hpp"

namespace qlift {

namespace {

double next_toward(double x, Rounding r) {
  if (r == Rounding::Up) return std::nextafter(x, std::numeric_limits<double>::infinity());
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

size_t bits(const mpq_class& q) {
  size_t n = mpz_sizeinbase(q.get_num().get_mpz_t(), 2);
  size_t d = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
  return n > d ? n : d;
}

}  // namespace

double log2_directed(const mpq_class& q, Rounding r) {
  mpfr_t t;
  mpfr_init2(t, 128);
  mpfr_set_q(t, q.get_mpq_t(), r == Rounding::Up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_log2(t, t, r == Rounding::Up ? MPFR_RNDU : MPFR_RNDD);
  double out = mpfr_get_d(t, r == Rounding::Up ? MPFR_RNDU : MPFR_RNDD);
  mpfr_clear(t);
  return out;
}

ExactValue ExactValue::from_rational(const mpq_class& q, Rounding r, unsigned bit_limit) {
  ExactValue v;
  v.exact_ = true;
  v.q_ = q;
  v.q_.canonicalize();
  v.rounding_ = r;
  v.bit_limit_ = bit_limit;
  v.maybe_demote();
  return v;
}

ExactValue ExactValue::from_int(long n, Rounding r) {
  return from_rational(mpq_class(n), r);
}

ExactValue ExactValue::from_log2(int sign, double log2_magnitude, Rounding r) {
  ExactValue v;
  v.exact_ = false;
  v.sign_ = sign;
  v.log2_ = log2_magnitude;
  v.rounding_ = r;
  return v;
}

const mpq_class& ExactValue::rational() const {
  require(exact_, Errc::UsageError, "value is in log-domain mode");
  return q_;
}

int ExactValue::sign() const {
  if (exact_) return sgn(q_);
  return sign_;
}

double ExactValue::log2_magnitude() const {
  if (exact_) return log2_directed(mpq_class(abs(q_)), rounding_);
  return log2_;
}

double ExactValue::to_double() const {
  if (exact_) return q_.get_d();
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp2(log2_);
}

std::string ExactValue::to_string() const {
  std::ostringstream os;
  if (exact_) {
    os << q_;
    return os.str();
  }
  if (sign_ == 0) return "0";
  os.precision(6);
  os << "~" << (sign_ < 0 ? "-" : "") << std::exp2(log2_) << " (log2=" << log2_ << ")";
  return os.str();
}

ExactValue ExactValue::demoted() const {
  if (!exact_) return *this;
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.bit_limit_ = bit_limit_;
  v.sign_ = sgn(q_);
  v.log2_ = v.sign_ == 0 ? 0.0 : log2_directed(mpq_class(abs(q_)), rounding_);
  return v;
}

void ExactValue::maybe_demote() {
  if (exact_ && bits(q_) > bit_limit_) *this = demoted();
}

ExactValue ExactValue::mul(const ExactValue& o) const {
  if (exact_ && o.exact_) {
    ExactValue v = from_rational(q_ * o.q_, rounding_, bit_limit_);
    return v;
  }
  ExactValue a = demoted(), b = o.demoted();
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.sign_ = a.sign_ * b.sign_;
  v.log2_ = v.sign_ == 0 ? 0.0 : next_toward(a.log2_ + b.log2_, rounding_);
  return v;
}

ExactValue ExactValue::div(const ExactValue& o) const {
  require(o.sign() != 0, Errc::UsageError, "division by zero ExactValue");
  if (exact_ && o.exact_) return from_rational(q_ / o.q_, rounding_, bit_limit_);
  ExactValue a = demoted(), b = o.demoted();
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.sign_ = a.sign_ * b.sign_;
  v.log2_ = v.sign_ == 0 ? 0.0 : next_toward(a.log2_ - b.log2_, rounding_);
  return v;
}

ExactValue ExactValue::add(const ExactValue& o) const {
  if (exact_ && o.exact_) return from_rational(q_ + o.q_, rounding_, bit_limit_);
  ExactValue a = demoted(), b = o.demoted();
  require(a.sign_ >= 0 && b.sign_ >= 0, Errc::UsageError,
          "log-domain addition requires nonnegative operands");
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  double hi = std::max(a.log2_, b.log2_);
  double lo = std::min(a.log2_, b.log2_);
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.sign_ = 1;
  v.log2_ = next_toward(hi + std::log2(1.0 + std::exp2(lo - hi)), rounding_);
  return v;
}

ExactValue ExactValue::pow_ui(unsigned long e) const {
  if (e == 0) return from_int(1, rounding_);
  if (exact_) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), e);
    return from_rational(mpq_class(num, den), rounding_, bit_limit_);
  }
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.sign_ = (sign_ < 0 && e % 2 == 1) ? -1 : (sign_ == 0 ? 0 : 1);
  v.log2_ = v.sign_ == 0 ? 0.0 : next_toward(log2_ * double(e), rounding_);
  return v;
}

ExactValue ExactValue::root_ui(unsigned long s) const {
  require(s >= 1, Errc::UsageError, "root order must be >= 1");
  if (s == 1) return *this;
  require(sign() >= 0, Errc::UsageError, "root of negative value");
  ExactValue a = demoted();
  ExactValue v;
  v.exact_ = false;
  v.rounding_ = rounding_;
  v.sign_ = a.sign_;
  v.log2_ = a.sign_ == 0 ? 0.0 : next_toward(a.log2_ / double(s), rounding_);
  return v;
}

ExactValue ExactValue::cap_one() const {
  if (exact_) {
    if (q_ > 1) return from_int(1, rounding_);
    return *this;
  }
  if (sign_ > 0 && log2_ > 0.0) return from_int(1, rounding_);
  return *this;
}

bool ExactValue::less_than(const ExactValue& o) const {
  if (exact_ && o.exact_) return q_ < o.q_;
  ExactValue a = demoted(), b = o.demoted();
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  if (a.sign_ > 0) return a.log2_ < b.log2_;
  return a.log2_ > b.log2_;
}

bool ExactValue::leq(const ExactValue& o) const { return !o.less_than(*this); }

bool ExactValue::eq_rational(const mpq_class& q) const {
  mpq_class canon = q;
  canon.canonicalize();
  return exact_ && q_ == canon;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace qlift
