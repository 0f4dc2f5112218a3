#ifndef PITKIT_ORACLE_HPP
#define PITKIT_ORACLE_HPP

#include <random>

#include "pitkit/circuit.hpp"

namespace pitkit {

// Seeded, cross-platform PRNG: the standard-specified mt19937_64 engine with
// a rejection-sampled bounded draw (uniform_int_distribution is not
// reproducible across implementations).
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 next() { return eng_(); }
  u64 below(u64 n) {
    if (n == 0) fail("unsupported-parameters", "empty draw range");
    u64 lim = UINT64_MAX - UINT64_MAX % n;
    u64 v;
    do {
      v = eng_();
    } while (v >= lim);
    return v % n;
  }
  Fp field(const FpCtx* ctx) { return Fp(below(ctx->p), ctx); }
  Fp field_nonzero(const FpCtx* ctx) { return Fp(1 + below(ctx->p - 1), ctx); }
  // independent stream for parallel trials
  Rng split(u64 stream) { return Rng(next() ^ (0x9e3779b97f4a7c15ull * (stream + 1))); }

 private:
  std::mt19937_64 eng_;
};

// Syntactic total-degree bound of a circuit.
template <class K>
u32 circuit_degree_bound(const CircuitExpr<K>& c);

// Randomized tester: NonZero on the first nonzero evaluation (with witness),
// "probably-zero" when all trials vanish.
Verdict schwartz_zippel(const CircuitExpr<Fp>& c, u32 trials, u64 seed, const FpCtx* ctx);

// Exact verdict through expansion; the acceptance oracle.
Verdict brute_zero_test(const CircuitExpr<Fp>& c, const FpCtx* ctx,
                        const ExpandOptions& opts = {expansion_cap_from_env()});

// ------------------------------------------------------------ random family

enum class CircuitClass {
  TopSumUni,     // sums of products of sums of univariates
  TopSumSparse,  // sums of products of bounded-degree sparse polynomials
  ProductSparse, // single product of sparse factors
  ProductUni,    // single product of sums of univariates
  PowerSumUni,   // sums of powers of sums of univariates
  Sparse,
  RoabpClass,
};

CircuitClass circuit_class_from_name(const std::string& s);
std::string circuit_class_name(CircuitClass c);

struct GenParams {
  u32 nvars = 2;
  u32 degree = 2;       // per-univariate / per-factor degree bound
  u32 k = 2;            // top fan-in
  u32 delta = 2;        // sparse factor degree bound
  u32 factors = 2;      // max factors per product
  u32 sparsity = 3;     // max terms per sparse factor
  u32 exponent = 2;     // max power in power sums
  u32 width = 2;        // roabp width
  u32 retry_cap = 200;
};

// Seeded random member of the class; with force_zero (top-sum classes only)
// an identically-zero instance built by negating the sum of the other
// products, oracle-verified before emission.
CircuitExpr<Fp> gen_random(CircuitClass cls, const GenParams& p, u64 seed, bool force_zero,
                           const FpCtx* ctx);

}  // namespace pitkit

#endif
