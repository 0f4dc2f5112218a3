#ifndef PITKIT_KERNELS_HPP
#define PITKIT_KERNELS_HPP

#include "pitkit/circuit.hpp"
#include "pitkit/poly.hpp"

namespace pitkit {

// Working power-sum form over F[z][x]: sum_i c_i(z) * b_i(z,x)^{e_i}.
// Ring scalars live in F[z], so coefficients are dense univariates in the
// designated z variable.  Canonical form: no zero terms, bases monic under
// grlex and never x-free (x-free content is folded into the coefficient,
// with base 1 and exponent 1 left for pure ring elements), terms sorted,
// equal (base, exponent) pairs merged.
struct PsTerm {
  UniF coef;   // nonzero polynomial in zvar
  PolyF base;  // monic; the constant base 1 carries ring elements
  u32 exp;     // >= 1
};

struct PowerSum {
  const FpCtx* ctx = nullptr;
  u32 zvar = 0;
  std::vector<PsTerm> terms;

  bool is_zero() const { return terms.empty(); }
  size_t size() const { return terms.size(); }
};

PowerSum ps_zero(const FpCtx* ctx, u32 zvar);
PowerSum ps_const(const Fp& c, u32 zvar);
// c(z) * base^exp as a one-term circuit (normalized).
PowerSum ps_term(UniF coef, PolyF base, u32 exp, u32 zvar);
PowerSum ps_scalar_term(const Fp& coef, PolyF base, u32 exp, u32 zvar);

PowerSum ps_add(const PowerSum& a, const PowerSum& b);
PowerSum ps_sub(const PowerSum& a, const PowerSum& b);
PowerSum ps_neg(const PowerSum& a);
PowerSum ps_scale(const PowerSum& a, const Fp& c);
PowerSum ps_scale_z(const PowerSum& a, const UniF& c);

// Ground-truth expansion (oracle currency).
PolyF ps_expand(const PowerSum& f);

// Upper bound on deg_z and lower bound on v_z, from the tracked shape.
u32 ps_zdeg_bound(const PowerSum& f);
u32 ps_zval_lower_bound(const PowerSum& f);

// Conversion from the file-facing IR form.
PowerSum ps_from_ir(const PowerSumCircuit<Fp>& c, const FpCtx* ctx, u32 zvar);

// --------------------------------------------------------------- Waring etc

// Explicit decomposition of a monomial into a scalar combination of powers
// of linear forms, using roots of unity of order b_i + 1 for every variable
// except the one of smallest exponent.  Exactly prod_{i>=2}(b_i + 1) terms.
PowerSum waring_decompose(const Mon& m, const FpCtx* ctx, u32 zvar = 0);

// Same identity applied to a product of powers of arbitrary bases.
PowerSum waring_combine(std::vector<std::pair<PolyF, u32>> powers, const FpCtx* ctx, u32 zvar);

// Product of power-sum circuits, folded pairwise left to right.  Passing a
// truncation bound drops terms that provably vanish mod z^trunc.
PowerSum ps_mul(const PowerSum& a, const PowerSum& b, u32 trunc = UINT32_MAX);
PowerSum powersum_product(const std::vector<PowerSum>& fs, u32 trunc = UINT32_MAX);

// Coefficient of z^e, by interpolation on deg_z + 1 nodes; output is z-free.
PowerSum powersum_coef(const PowerSum& f, u32 e);

// Partial derivative in z, built from the same per-term interpolation.
PowerSum powersum_derive(const PowerSum& f);

// Evaluation of the z variable (used for the z = 0 residue).
PowerSum ps_subst_z(const PowerSum& f, const Fp& beta);

// ---------------------------------------------------------------- dlog etc

struct DlogResult {
  PowerSum value;      // numerator when den_is_one, else the numerator part
  u32 num_zdeg = 0;    // tracked z-degree bounds
  u32 den_zdeg = 0;
};

// dlog_z of a shifted factor g = A - z*B with scalar A != 0, expanded as a
// power series mod z^D; one power-sum product per series step.
DlogResult dlog_expand(const PolyF& g, u32 D, u32 zvar, const FpCtx* ctx);

struct PsRatio {
  PowerSum num;
  Fp den;  // scalar denominator, kept unfolded
  u32 num_zdeg = 0;
};

// 1/(g_1 ... g_k) mod z^D for shifted factors g_i = A_i - z*B_i;
// denominator is the scalar prod A_i^D.
PsRatio inverse_product_series(const std::vector<PolyF>& gs, u32 D, u32 zvar, const FpCtx* ctx);

// Dual form of a power sum with sum-of-univariate bases: an (any-order)
// ROABP over variables 1..n computing the same polynomial.
Roabp<Fp> duality_to_roabp(const PowerSum& f, u32 nvars);

// Helpers shared with tests.
Fp multinomial_mod(const FpCtx* ctx, u32 d, const std::vector<u32>& parts);
Fp binomial_mod(const FpCtx* ctx, u32 n, u32 k);

}  // namespace pitkit

#endif
