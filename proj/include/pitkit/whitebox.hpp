#ifndef PITKIT_WHITEBOX_HPP
#define PITKIT_WHITEBOX_HPP

#include <memory>
#include <optional>

#include "pitkit/kernels.hpp"

namespace pitkit {

// ------------------------------------------------------------ grid testing

using BlackboxEval = std::function<Fp(const std::vector<Fp>&)>;

// Evaluates on the grid {0..d-1}^n; first witness in lexicographic order.
// Point layout: index 1..nvars (index 0 unused).
Verdict pit_trivial(const BlackboxEval& eval, u32 nvars, u32 d, const FpCtx* ctx);

// ------------------------------------------------------------- sparse maps

// Bound on the cycle lengths tried by the sparse shift test.
u64 sparse_r_bound(u32 m, u32 n, u32 d);

// Kronecker-substitution identity test for a sparse polynomial with at most
// m terms and individual degree strictly below d (d >= 2).
Verdict pit_sparse_kronecker(const PolyF& f, u32 m, u32 d);

// Hitting set for products of sparse factors (covers sums of univariates as
// the special case).  Enumerated lazily: r = 1..R cycles, then a y-grid per
// cycle mapped through the Kronecker exponents.
struct ProdSparseParams {
  u32 nvars = 1;
  u32 factor_degree = 1;    // per-factor total degree bound
  u32 factor_count = 1;     // number of bottom factors
  u32 factor_sparsity = 1;  // per-factor monomial bound
};

class ProdSparseHS {
 public:
  ProdSparseHS(const ProdSparseParams& params, const FpCtx* ctx);

  size_t size() const { return total_; }
  u64 r_bound() const { return rmax_; }
  std::vector<Fp> point(size_t idx) const;  // layout: [0]=unused, [1..n]

  // Smallest-index point where eval is nonzero, or SIZE_MAX.
  size_t scan(const BlackboxEval& eval) const;

 private:
  ProdSparseParams prm_;
  const FpCtx* ctx_;
  u64 rmax_;
  u32 kron_base_;
  std::vector<size_t> r_offset_;  // prefix sums of points per cycle
  size_t total_;
};

// -------------------------------------------------------------- span tester

// Deterministic whitebox test: layer-by-layer coefficient-span reduction.
Verdict pit_roabp(const Roabp<Fp>& r);

// Whitebox test for power sums with sum-of-univariate bases: dual ROABP
// form, then the span test.
Verdict pit_powersum_white(const PowerSum& f, u32 nvars);

// ------------------------------------------------- divide-and-derive engine

// Shared numerator/denominator factor with cached valuation data.
struct PsFactor {
  PowerSum ps;
  std::optional<i64> val;         // set after the first valuation scan
  bool identically_zero = false;  // vanishes mod z^valid_to
  std::optional<PowerSum> lead;   // coefficient at z^val (z-free)
  u32 valid_to = UINT32_MAX;      // truncated factors represent the true
                                  // circuit only below this z power
};
using PsFactorPtr = std::shared_ptr<PsFactor>;

// One bloated summand (U/V)*(P/Q): shifted product parts and factored
// power-sum parts.  U/V factors are shifted sums of univariates over
// F[z,x]; P/Q are kept as factor lists and combined only on demand, with
// valuations added per factor.
struct BloatedTerm {
  std::vector<PolyF> u_factors, v_factors;
  std::vector<PsFactorPtr> p_factors, q_factors;
  PowerSum p_combined(u32 trunc = UINT32_MAX) const;
  PowerSum q_combined(u32 trunc = UINT32_MAX) const;
};

struct MinValResult {
  bool all_zero = false;       // every term vanishes mod z^cap
  size_t index = 0;            // argmin (lowest index on ties)
  i64 value = 0;
  std::vector<std::optional<i64>> term_vals;  // nullopt = term is zero
};

struct DidiContext {
  const FpCtx* ctx;
  u32 zvar;
  u32 nvars;
};

MinValResult min_valuation(const DidiContext& dc, std::vector<BloatedTerm>& terms, u32 cap);

Verdict z0_residue_test(const DidiContext& dc, const std::vector<BloatedTerm>& terms,
                        const MinValResult& mv);

// --------------------------------------------------------------- the tester

struct DidiLevelTrace {
  u32 level = 0;
  u32 precision = 0;
  std::vector<i64> valuations;
  std::vector<size_t> term_sizes;
  bool uv_scalars_ok = true;   // every U|_{z=0}, V|_{z=0} in F \ {0}
  size_t divisor = 0;
};

struct DidiTrace {
  u32 degree_bound = 0;
  std::vector<Fp> shift_point;
  std::vector<DidiLevelTrace> levels;
  std::string branch;  // which branch decided the verdict
};

// Whitebox identity test for bounded sums of products of sums of
// univariates, by repeated divide-and-derive fan-in reduction.
Verdict pit_divide_derive(const TopSumCircuit<Fp>& f, const FpCtx* ctx, DidiTrace* trace = nullptr);

}  // namespace pitkit

#endif
