#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlift/exact.hpp"

namespace qlift::bounds {

/// Parameter set for the security-bound formulas. Unset optional fields mean
/// the corresponding bounds are not requested.
struct Params {
  unsigned long k = 1;   // reprogrammings / outputs
  unsigned long q = 0;   // quantum queries
  unsigned long c = 0;   // classical queries
  std::optional<unsigned long> T;       // noisy query budget
  std::optional<mpq_class> p;           // noise probability in [0,1]
  std::optional<unsigned long> d;       // depth bound
  std::optional<unsigned long> big_n;   // codomain size
  std::optional<unsigned long> big_m;   // domain size
  std::optional<unsigned long> S;       // advice bits
  std::optional<unsigned long> big_k;   // salt space size
  unsigned long g = 1;                  // direct-product instances

  void validate() const;  // throws Errc::UsageError on violated invariants
};

/// Semantic provenance tags for report entries.
enum class Tag {
  HybridReprogram,    // coherent hybrid measure-and-reprogram loss
  ClassicalReprogram, // baseline measure-and-reprogram loss (2q+1)^{2k}
  SimplifiedLoss,     // (8e^2 (q^2/k^2 + c/k))^k closed form
  NoisyLifting,       // noisy-oracle lifting loss
  BoundedDepth,       // depth-to-noise parameter map
  HybridLifting,      // loss * p(R) game bound
  DirectProduct,      // g-fold product bound
  Advice,             // non-uniform classical-advice bound
  Salting,            // salted-game bound
  MultiImage,         // staged-search success lower bound
  SearchFloor,        // single-image hybrid search floor
};

std::string tag_name(Tag t);
std::vector<Tag> all_tags();

struct BoundEntry {
  std::string name;
  ExactValue value;
  Tag tag;
};

struct BoundReport {
  Params params;
  std::vector<BoundEntry> entries;

  void add(std::string name, ExactValue v, Tag t);
  const BoundEntry* find(const std::string& name) const;
};

// A_{k,q,c} = sum_t C(q,t)^2 C(k,t) C(c,k-t); zero binomials drop terms.
ExactValue capital_a(unsigned long k, unsigned long q, unsigned long c);

// alpha_t = C(q,t)^2 C(k,t) C(c,k-t) / A_{k,q,c}; throws ZeroMass when A = 0.
std::vector<ExactValue> alpha_distribution(unsigned long k, unsigned long q, unsigned long c);

// 2^{2k} * k * A_{k,q,c}
ExactValue hybrid_loss_exact(unsigned long k, unsigned long q, unsigned long c);

// Bare factor (8 * 7.39 * (q^2/k^2 + c/k))^k and the same times 2^{2k} * k.
// 7.39 is a rational upper bound on e^2 so exact comparisons stay sound.
struct SimplifiedLoss {
  ExactValue bare;
  ExactValue full;
};
SimplifiedLoss hybrid_loss_simplified(unsigned long k, unsigned long q, unsigned long c);

// (2q+1)^{2k}
ExactValue dfm_loss(unsigned long k, unsigned long q);

// Ratio of the noisy proof-chain bounds:
//   k * sum_t p^{k-t}(1-p)^t C(T,t) C(k,t)   over
//   (1/C(T,k)) * sum_t p^{k-t}(1-p)^t
ExactValue noisy_loss_exact(const mpq_class& p, unsigned long T, unsigned long k);

// C(T,k) * (((1-p) T k)^k + k), constant fixed to 1.
ExactValue noisy_loss_asymptotic(const mpq_class& p, unsigned long T, unsigned long k);

// Depth-d, T-query algorithm maps to a noisy run with p = 1/d and 2T queries.
std::pair<mpq_class, unsigned long> bounded_depth_params(unsigned long d, unsigned long T);

// min(1, hybrid_loss_exact * pR); `raw` carries the uncapped product.
struct CappedBound {
  ExactValue value;
  ExactValue raw;
};
CappedBound lifting_bound(unsigned long k, unsigned long q, unsigned long c, const mpq_class& pR);

// lifting_bound^g
ExactValue dpt_bound(unsigned long g, unsigned long k, unsigned long q, unsigned long c,
                     const mpq_class& pR);

// min(1, 4 * (hybrid_loss_exact(k, S q, S c) * pR_mis_S)^{1/S}); the S-th
// root leaves exact mode for S > 1.
ExactValue advice_bound(unsigned long k, unsigned long q, unsigned long c, unsigned long S,
                        const mpq_class& pR_mis_S);

// min(1, 4S/K + lifting_bound)
ExactValue salted_bound(unsigned long k, unsigned long q, unsigned long c, unsigned long S,
                        unsigned long bigK, const mpq_class& pR);

// (1/2^k) k! (1/N^k) (v + u^2)^k with u = q/k, v = c/k; returns 1 when
// v + u^2 > N. Throws IndivisibleBudget when k does not divide q and c.
ExactValue multi_image_alg_success(unsigned long k, unsigned long q, unsigned long c,
                                   unsigned long bigN);

// (1/2) (v/N + u^2/(N-v)); throws DomainExhausted when v >= N.
ExactValue hybrid_search_floor(unsigned long u, unsigned long v, unsigned long bigN);

/// Every bound applicable to `params`, with provenance tags.
BoundReport full_report(const Params& params, const std::optional<mpq_class>& pR);

}  // namespace qlift::bounds
