#include "qlift/bounds.hpp"

#include "qlift/errors.hpp"

namespace qlift::bounds {

namespace {

ExactValue ev(const mpq_class& q) { return ExactValue::from_rational(q); }

// e^2 = 7.389056...; 739/100 is the rational upper bound fixed for the
// simplified-loss comparisons.
const mpq_class kESquaredUpper(739, 100);

}  // namespace

void Params::validate() const {
  require(k >= 1, Errc::UsageError, "k must be >= 1");
  require(k <= q + c, Errc::UsageError, "hybrid loss requires k <= q + c");
  if (p) require(*p >= 0 && *p <= 1, Errc::UsageError, "p must lie in [0,1]");
  if (p && d) throw Error(Errc::UsageError, "give either a noise probability or a depth bound");
  if (d) require(*d >= 1, Errc::UsageError, "d must be >= 1");
  if (big_n) require(*big_n >= 1, Errc::UsageError, "N must be >= 1");
  if (big_m) require(*big_m >= 1, Errc::UsageError, "M must be >= 1");
  if (big_k) require(*big_k >= 1, Errc::UsageError, "K must be >= 1");
  require(g >= 1, Errc::UsageError, "g must be >= 1");
}

std::string tag_name(Tag t) {
  switch (t) {
    case Tag::HybridReprogram: return "hybrid-reprogram";
    case Tag::ClassicalReprogram: return "classical-reprogram";
    case Tag::SimplifiedLoss: return "simplified-loss";
    case Tag::NoisyLifting: return "noisy-lifting";
    case Tag::BoundedDepth: return "bounded-depth";
    case Tag::HybridLifting: return "hybrid-lifting";
    case Tag::DirectProduct: return "direct-product";
    case Tag::Advice: return "advice";
    case Tag::Salting: return "salting";
    case Tag::MultiImage: return "multi-image-algorithm";
    case Tag::SearchFloor: return "search-floor";
  }
  return "?";
}

std::vector<Tag> all_tags() {
  return {Tag::HybridReprogram, Tag::ClassicalReprogram, Tag::SimplifiedLoss,
          Tag::NoisyLifting,    Tag::BoundedDepth,       Tag::HybridLifting,
          Tag::DirectProduct,   Tag::Advice,             Tag::Salting,
          Tag::MultiImage,      Tag::SearchFloor};
}

void BoundReport::add(std::string name, ExactValue v, Tag t) {
  require(find(name) == nullptr, Errc::UsageError, "duplicate report entry: " + name);
  entries.push_back({std::move(name), std::move(v), t});
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

ExactValue capital_a(unsigned long k, unsigned long q, unsigned long c) {
  require(k >= 1, Errc::UsageError, "capital_a requires k >= 1");
  mpz_class acc = 0;
  for (unsigned long t = 0; t <= k; ++t) {
    mpz_class term = binomial(q, t);
    term *= term;
    term *= binomial(k, t);
    term *= binomial(c, k - t);
    acc += term;
  }
  return ev(mpq_class(acc));
}

std::vector<ExactValue> alpha_distribution(unsigned long k, unsigned long q, unsigned long c) {
  ExactValue a = capital_a(k, q, c);
  require(a.sign() > 0, Errc::ZeroMass, "A_{k,q,c} = 0 (k exceeds q + c)");
  const mpq_class& total = a.rational();
  std::vector<ExactValue> out;
  out.reserve(k + 1);
  for (unsigned long t = 0; t <= k; ++t) {
    mpz_class term = binomial(q, t);
    term *= term;
    term *= binomial(k, t);
    term *= binomial(c, k - t);
    out.push_back(ev(mpq_class(term) / total));
  }
  return out;
}

ExactValue hybrid_loss_exact(unsigned long k, unsigned long q, unsigned long c) {
  mpz_class pow4;
  mpz_ui_pow_ui(pow4.get_mpz_t(), 2, 2 * k);
  ExactValue a = capital_a(k, q, c);
  return ev(mpq_class(pow4 * k)).mul(a);
}

SimplifiedLoss hybrid_loss_simplified(unsigned long k, unsigned long q, unsigned long c) {
  require(k >= 1, Errc::UsageError, "k must be >= 1");
  mpq_class inner = mpq_class(q * q, k * k) + mpq_class(c, k);
  ExactValue bare = ev(8 * kESquaredUpper * inner).pow_ui(k);
  mpz_class pow4;
  mpz_ui_pow_ui(pow4.get_mpz_t(), 2, 2 * k);
  ExactValue full = bare.mul(ev(mpq_class(pow4 * k)));
  return {bare, full};
}

ExactValue dfm_loss(unsigned long k, unsigned long q) {
  require(k >= 1, Errc::UsageError, "k must be >= 1");
  mpz_class base = 2 * mpz_class(q) + 1;
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), 2 * k);
  return ev(mpq_class(r));
}

ExactValue noisy_loss_exact(const mpq_class& p, unsigned long T, unsigned long k) {
  require(p >= 0 && p <= 1, Errc::UsageError, "p must lie in [0,1]");
  require(k >= 1 && k <= T, Errc::UsageError, "need 1 <= k <= T");
  // p^{k-t} (1-p)^t terms, shared by numerator and denominator.
  mpq_class one_minus = 1 - p;
  mpq_class num = 0, den = 0;
  for (unsigned long t = 0; t <= k; ++t) {
    mpq_class w = 1;
    for (unsigned long i = 0; i < k - t; ++i) w *= p;
    for (unsigned long i = 0; i < t; ++i) w *= one_minus;
    num += w * mpq_class(binomial(T, t) * binomial(k, t));
    den += w;
  }
  num *= k;
  den /= mpq_class(binomial(T, k));
  // den > 0 for all p in [0,1]: the t = 0 and t = k terms cannot both vanish.
  return ev(num / den);
}

ExactValue noisy_loss_asymptotic(const mpq_class& p, unsigned long T, unsigned long k) {
  require(p >= 0 && p <= 1, Errc::UsageError, "p must lie in [0,1]");
  require(k >= 1 && k <= T, Errc::UsageError, "need 1 <= k <= T");
  mpq_class base = (1 - p) * T * k;
  mpq_class pw = 1;
  for (unsigned long i = 0; i < k; ++i) pw *= base;
  return ev(mpq_class(binomial(T, k)) * (pw + k));
}

std::pair<mpq_class, unsigned long> bounded_depth_params(unsigned long d, unsigned long T) {
  require(d >= 1, Errc::UsageError, "d must be >= 1");
  return {mpq_class(1, d), 2 * T};
}

CappedBound lifting_bound(unsigned long k, unsigned long q, unsigned long c, const mpq_class& pR) {
  require(pR >= 0 && pR <= 1, Errc::UsageError, "p(R) must lie in [0,1]");
  ExactValue raw = hybrid_loss_exact(k, q, c).mul(ev(pR));
  return {raw.cap_one(), raw};
}

ExactValue dpt_bound(unsigned long g, unsigned long k, unsigned long q, unsigned long c,
                     const mpq_class& pR) {
  require(g >= 1, Errc::UsageError, "g must be >= 1");
  return lifting_bound(k, q, c, pR).value.pow_ui(g);
}

ExactValue advice_bound(unsigned long k, unsigned long q, unsigned long c, unsigned long S,
                        const mpq_class& pR_mis_S) {
  require(S >= 1, Errc::UsageError, "S must be >= 1");
  require(pR_mis_S >= 0 && pR_mis_S <= 1, Errc::UsageError, "p(R) must lie in [0,1]");
  if (pR_mis_S == 0) return ExactValue::from_int(0);
  ExactValue inner = hybrid_loss_exact(k, S * q, S * c).mul(ev(pR_mis_S));
  ExactValue rooted = S == 1 ? inner : inner.root_ui(S);
  return ExactValue::from_int(4).mul(rooted).cap_one();
}

ExactValue salted_bound(unsigned long k, unsigned long q, unsigned long c, unsigned long S,
                        unsigned long bigK, const mpq_class& pR) {
  require(bigK >= 1, Errc::UsageError, "K must be >= 1");
  ExactValue adv = ev(mpq_class(4 * mpz_class(S), bigK));
  return adv.add(lifting_bound(k, q, c, pR).value).cap_one();
}

ExactValue multi_image_alg_success(unsigned long k, unsigned long q, unsigned long c,
                                   unsigned long bigN) {
  require(k >= 1 && bigN >= 1, Errc::UsageError, "need k >= 1 and N >= 1");
  require(q % k == 0 && c % k == 0, Errc::IndivisibleBudget,
          "per-stage budgets need k | q and k | c");
  unsigned long u = q / k, v = c / k;
  if (v + u * u > bigN) return ExactValue::from_int(1);
  mpz_class n_pow;
  mpz_ui_pow_ui(n_pow.get_mpz_t(), bigN, k);
  mpz_class stage_pow;
  mpz_class stage = v + u * u;
  mpz_pow_ui(stage_pow.get_mpz_t(), stage.get_mpz_t(), k);
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, k);
  mpq_class val = mpq_class(factorial(k) * stage_pow, two_pow * n_pow);
  return ev(val).cap_one();
}

ExactValue hybrid_search_floor(unsigned long u, unsigned long v, unsigned long bigN) {
  require(v < bigN, Errc::DomainExhausted, "classical budget exhausts the search space");
  mpq_class val = mpq_class(v, bigN) + mpq_class(u * u, bigN - v);
  return ev(val / 2);
}

BoundReport full_report(const Params& params, const std::optional<mpq_class>& pR) {
  params.validate();
  BoundReport rep;
  rep.params = params;
  const auto k = params.k, q = params.q, c = params.c;
  rep.add("A", capital_a(k, q, c), Tag::HybridReprogram);
  rep.add("hybrid_loss_exact", hybrid_loss_exact(k, q, c), Tag::HybridReprogram);
  auto simp = hybrid_loss_simplified(k, q, c);
  rep.add("simplified_loss_bare", simp.bare, Tag::SimplifiedLoss);
  rep.add("simplified_loss_full", simp.full, Tag::SimplifiedLoss);
  if (c == 0) rep.add("classical_reprogram_loss", dfm_loss(k, q), Tag::ClassicalReprogram);

  mpq_class p_eff;
  unsigned long t_eff = 0;
  bool have_noisy = false;
  if (params.p && params.T) {
    p_eff = *params.p;
    t_eff = *params.T;
    have_noisy = true;
  } else if (params.d && params.T) {
    auto [pp, tt] = bounded_depth_params(*params.d, *params.T);
    p_eff = pp;
    t_eff = tt;
    have_noisy = true;
    rep.add("depth_noise_p", ExactValue::from_rational(p_eff), Tag::BoundedDepth);
    rep.add("depth_noise_T", ExactValue::from_int(long(t_eff)), Tag::BoundedDepth);
  }
  if (have_noisy && k <= t_eff) {
    rep.add("noisy_loss_exact", noisy_loss_exact(p_eff, t_eff, k), Tag::NoisyLifting);
    rep.add("noisy_loss_asymptotic", noisy_loss_asymptotic(p_eff, t_eff, k), Tag::NoisyLifting);
  }

  if (pR) {
    auto lift = lifting_bound(k, q, c, *pR);
    rep.add("lifting_bound", lift.value, Tag::HybridLifting);
    rep.add("lifting_bound_raw", lift.raw, Tag::HybridLifting);
    if (params.g > 1) rep.add("dpt_bound", dpt_bound(params.g, k, q, c, *pR), Tag::DirectProduct);
    if (params.S) {
      rep.add("advice_bound", advice_bound(k, q, c, *params.S, *pR), Tag::Advice);
      if (params.big_k)
        rep.add("salted_bound", salted_bound(k, q, c, *params.S, *params.big_k, *pR),
                Tag::Salting);
    }
  }

  if (params.big_n && q % k == 0 && c % k == 0) {
    rep.add("multi_image_alg_success", multi_image_alg_success(k, q, c, *params.big_n),
            Tag::MultiImage);
    unsigned long u = q / k, v = c / k;
    if (v < *params.big_n)
      rep.add("hybrid_search_floor", hybrid_search_floor(u, v, *params.big_n), Tag::SearchFloor);
  }
  return rep;
}

}  // namespace qlift::bounds
