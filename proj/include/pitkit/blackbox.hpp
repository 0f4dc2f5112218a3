#ifndef PITKIT_BLACKBOX_HPP
#define PITKIT_BLACKBOX_HPP

#include "pitkit/whitebox.hpp"

namespace pitkit {

// ----------------------------------------------------------------- Jacobian

struct JacobianMinor {
  std::vector<PolyF> sources;
  std::vector<u32> cols;  // chosen variable set, |cols| = |sources|
  PolyF minor;

  JacobianMinor(std::vector<PolyF> s, std::vector<u32> c, PolyF m)
      : sources(std::move(s)), cols(std::move(c)), minor(std::move(m)) {}
};

// det of the derivative submatrix, by cofactor expansion (r <= 4).
JacobianMinor jacobian_minor(const std::vector<PolyF>& T, const std::vector<u32>& S);

struct TrdegResult {
  std::vector<size_t> basis;    // indices into T
  u32 rank = 0;
  std::vector<u32> witness_cols;
  std::optional<PolyF> witness_minor;
};

// Greedy transcendence-basis extraction via nonzero minors.
TrdegResult trdeg_basis(const std::vector<PolyF>& T, const FpCtx* ctx);

// ------------------------------------------------------------------ the map

// x_i -> z*x_i + a_i
struct ShiftMap {
  std::vector<Fp> point;  // [0] unused
  u32 zvar = 0;
};

PolyF psi_apply(const PolyF& f, const ShiftMap& psi);

// First point of the product-of-sparse hitting set where every bottom
// factor of every product is nonzero.
ShiftMap build_psi(const std::vector<ProductCircuit<Fp>>& T, const FpCtx* ctx);

// The shifted Jacobian ratio circuit: sum over factor tuples of
// psi(J(g_1..g_k)) / psi(g_1...g_k), as numerator over a scalar.
struct RatioCircuit {
  PowerSum num;
  Fp den;
  u32 num_zdeg = 0;
  u32 truncation = 1;  // z-precision D the ratio is meaningful to
};

RatioCircuit build_F(const std::vector<ProductCircuit<Fp>>& basis, const std::vector<u32>& cols,
                     const ShiftMap& psi, u32 D, const FpCtx* ctx);

// ------------------------------------------------------------- point source

// Deterministic stream of candidate points in F^n.
class PointSource {
 public:
  virtual ~PointSource() = default;
  virtual size_t size() const = 0;
  virtual std::vector<Fp> point(size_t i) const = 0;
};

// Mixed-radix grid enumeration over {0..side-1}^n, low coordinates first.
class GridSource : public PointSource {
 public:
  GridSource(u32 nvars, u32 side, const FpCtx* ctx);
  size_t size() const override { return total_; }
  std::vector<Fp> point(size_t i) const override;

 private:
  u32 n_, side_;
  const FpCtx* ctx_;
  size_t total_;
};

// Wraps the product-of-sparse hitting set as a point source.
class HittingSetSource : public PointSource {
 public:
  HittingSetSource(const ProdSparseParams& prm, const FpCtx* ctx) : hs_(prm, ctx) {}
  size_t size() const override { return hs_.size(); }
  std::vector<Fp> point(size_t i) const override { return hs_.point(i); }

 private:
  ProdSparseHS hs_;
};

// Certified search: first source point a' with F(a', z) != 0 mod z^D.
std::vector<Fp> find_rank_preserving_point(const RatioCircuit& F, u32 nvars,
                                           const PointSource& source, const FpCtx* ctx);

// -------------------------------------------------------------- faithful map

// x_i -> sum_j y_j t^{ij} + z*a'_i + a_i over fresh variables y_1..y_k, t, z.
struct FaithfulMap {
  u32 k = 1;
  std::vector<Fp> shift;  // a
  std::vector<Fp> scale;  // a'
  u32 nvars = 1;          // source variable count
  u32 truncation = 1;     // D = k(d-1)+1
  const FpCtx* ctx = nullptr;

  // fresh variable indices in the image space
  u32 yvar(u32 j) const { return j; }       // 1..k
  u32 tvar() const { return k + 1; }
  u32 zvar() const { return k + 2; }

  PolyF image_of(u32 xvar) const;
  PolyF apply(const PolyF& f, const ExpandOptions& opts = {}) const;
};

FaithfulMap build_faithful_phi(u32 k, std::vector<Fp> shift, std::vector<Fp> scale, u32 nvars,
                               u32 degree_bound, const FpCtx* ctx);

// ------------------------------------------------------------- hitting sets

struct HittingSetFile {
  std::string cls;  // spsp | spsu | prod-sparse
  u32 nvars = 1, degree = 1, k = 1, delta = 0, size_bound = 1;
  u64 field = 0;
  std::vector<std::vector<u64>> points;  // deduplicated raw residues, [0] unused

  std::string serialize() const;
  static HittingSetFile parse(const std::string& text);
  std::vector<Fp> point_in(size_t i, const FpCtx* ctx) const;
};

struct ClassHsOptions {
  u32 shift_candidates = 4;  // a-enumeration cap
  u32 scale_candidates = 8;  // a'-enumeration cap
  u32 scale_grid_side = 3;
};

HittingSetFile hitting_set_spsp(u32 n, u32 d, u32 k, u32 delta, u32 s, const FpCtx* ctx,
                                const ClassHsOptions& opts = {});
HittingSetFile hitting_set_spsu(u32 n, u32 d, u32 k, u32 s, const FpCtx* ctx,
                                const ClassHsOptions& opts = {});
HittingSetFile hitting_set_prod_sparse(u32 n, u32 d, u32 s, const FpCtx* ctx, size_t max_points);

// --------------------------------------------------------- composed testing

// C is a polynomial in outer variables 1..m, composed with the products T.
Verdict pit_composed(const PolyF& C, const std::vector<ProductCircuit<Fp>>& T, const FpCtx* ctx);

// The faithful-map pipeline end to end, for a top-sum circuit.
Verdict pit_jacobian(const TopSumCircuit<Fp>& f, const FpCtx* ctx);

}  // namespace pitkit

#endif
