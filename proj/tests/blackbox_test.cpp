#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pitkit/blackbox.hpp"
#include "pitkit/oracle.hpp"

using namespace pitkit;

namespace {

const u32 Z = 0;

PolyF xv(u32 v, const FpCtx* ctx) { return PolyF::variable(v, Fp(1, ctx)); }
PolyF cn(i64 c, const FpCtx* ctx) { return PolyF::constant(Fp::of(c, ctx)); }

PolyF truncate_z(const PolyF& p, u32 D) {
  std::vector<PolyF::Term> ts;
  for (auto& [m, c] : p.terms())
    if (m.deg_in(Z) < D) ts.push_back({m, c});
  return PolyF::from_terms(std::move(ts), p.field_zero());
}

ProductCircuit<Fp> sumuni_product(std::vector<PolyF> gs, const FpCtx* ctx) {
  ProductCircuit<Fp> pr;
  for (auto& g : gs) {
    SumUni<Fp> s;
    std::map<u32, std::vector<Fp>> per;
    Fp c0(0, ctx);
    for (auto& [m, c] : g.terms()) {
      if (m.exps().empty()) {
        c0 += c;
        continue;
      }
      REQUIRE(m.exps().size() == 1);
      auto& [v, e] = m.exps()[0];
      auto& cs = per[v];
      if (cs.size() <= e) cs.resize(e + 1, Fp(0, ctx));
      cs[e] += c;
    }
    bool first = true;
    for (auto& [v, cs] : per) {
      auto cc = cs;
      if (first) cc[0] += c0;
      first = false;
      s.parts.push_back(UniF(v, cc));
    }
    if (first) s.parts.push_back(UniF(1, {c0}));
    pr.factors.push_back(std::move(s));
  }
  return pr;
}

}  // namespace

TEST_CASE("jacobian minors") {
  FpCtx ctx(101);
  PolyF x1 = xv(1, &ctx), x2 = xv(2, &ctx);
  auto j1 = jacobian_minor({x1, x2}, {1, 2});
  CHECK(j1.minor == cn(1, &ctx));
  auto j2 = jacobian_minor({x1, x1 * x1}, {1, 2});
  CHECK(j2.minor.is_zero());
  auto j3 = jacobian_minor({x1 + x2, x1 * x2}, {1, 2});
  CHECK(j3.minor == x1 - x2);
}

TEST_CASE("transcendence basis extraction") {
  FpCtx ctx(100003);
  PolyF x1 = xv(1, &ctx), x2 = xv(2, &ctx);
  auto r1 = trdeg_basis({x1, x2, x1 * x2}, &ctx);
  CHECK(r1.rank == 2);
  CHECK(r1.basis == std::vector<size_t>{0, 1});

  // x1^2 + x2^2 = (x1+x2)^2 - 2 x1 x2 is dependent on the first two
  auto r2 = trdeg_basis({x1 + x2, x1 * x2, x1 * x1 + x2 * x2}, &ctx);
  CHECK(r2.rank == 2);

  auto r3 = trdeg_basis({cn(5, &ctx)}, &ctx);
  CHECK(r3.rank == 0);
}

TEST_CASE("shift map construction") {
  FpCtx ctx(101);
  PolyF f1 = xv(1, &ctx) + cn(1, &ctx);
  PolyF f2 = xv(2, &ctx) + cn(2, &ctx);
  auto T = sumuni_product({f1, f2}, &ctx);
  ShiftMap psi = build_psi({T}, &ctx);
  std::vector<Fp> a = psi.point;
  CHECK(!f1.eval(a).is_zero());
  CHECK(!f2.eval(a).is_zero());

  ProductCircuit<Fp> zero_factor{{SumUni<Fp>{{}}}};
  CHECK_THROWS_WITH_AS(build_psi({zero_factor}, &ctx), doctest::Contains("no-point-found"),
                       Error);
}

TEST_CASE("shift map finds a point good for every factor on random instances") {
  Prime p = auto_field_prime(4, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  GenParams prm;
  prm.nvars = 3;
  prm.delta = 2;
  prm.k = 2;
  prm.factors = 2;
  prm.sparsity = 3;
  for (u64 seed = 0; seed < 25; ++seed) {
    auto a = gen_random(CircuitClass::TopSumSparse, prm, seed, false, &ctx);
    auto& ts = std::get<TopSumCircuit<Fp>>(a);
    ShiftMap psi = build_psi(ts.terms, &ctx);
    for (auto& pr : ts.terms)
      for (auto& f : pr.factors) CHECK(!factor_to_sparse(f, zero).eval(psi.point).is_zero());
  }
}

TEST_CASE("ratio circuit: k = 1 cases") {
  Prime p = auto_field_prime(6, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  // single factor g = x1: F = psi(1)/psi(x1), so P * psi(x1) == Q mod z^D
  auto T = sumuni_product({xv(1, &ctx)}, &ctx);
  ShiftMap psi = build_psi({T}, &ctx);
  u32 D = 3;
  RatioCircuit F = build_F({T}, {1}, psi, D, &ctx);
  PolyF lhs = truncate_z(ps_expand(F.num) * psi_apply(xv(1, &ctx), psi), D);
  CHECK(lhs == PolyF::constant(F.den));

  // two factors g_i = x1 + i: F = 1/psi(g1) + 1/psi(g2), nonzero
  PolyF g1 = xv(1, &ctx) + cn(1, &ctx), g2 = xv(1, &ctx) + cn(2, &ctx);
  auto T2 = sumuni_product({g1, g2}, &ctx);
  ShiftMap psi2 = build_psi({T2}, &ctx);
  RatioCircuit F2 = build_F({T2}, {1}, psi2, D, &ctx);
  CHECK(!F2.num.is_zero());
  PolyF p1 = psi_apply(g1, psi2), p2 = psi_apply(g2, psi2);
  PolyF want = truncate_z(PolyF::constant(F2.den) * (p1 + p2), D);
  CHECK(truncate_z(ps_expand(F2.num) * p1 * p2, D) == want);
}

TEST_CASE("ratio circuit satisfies the shifted Jacobian identity") {
  // psi(J(T_1, T_2)) == psi(T_1 T_2) * F mod z^D
  Prime p = auto_field_prime(4, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  PolyF t1 = xv(1, &ctx) + xv(2, &ctx);
  PolyF t2 = xv(1, &ctx) * xv(2, &ctx);
  ProductCircuit<Fp> T1 = sumuni_product({t1}, &ctx);
  ProductCircuit<Fp> T2{{SparseCircuit<Fp>{t2, 2}}};
  auto tr = trdeg_basis({t1, t2}, &ctx);
  REQUIRE(tr.rank == 2);
  ShiftMap psi = build_psi({T1, T2}, &ctx);
  u32 d = 2, D = 2 * (d - 1) + 1;
  RatioCircuit F = build_F({T1, T2}, tr.witness_cols, psi, D, &ctx);
  PolyF J = jacobian_minor({t1, t2}, tr.witness_cols).minor;
  PolyF lhs = truncate_z(psi_apply(J, psi).scaled(F.den), D);
  PolyF rhs = truncate_z(psi_apply(t1 * t2, psi) * ps_expand(F.num), D);
  CHECK(lhs == rhs);
}

TEST_CASE("rank-preserving point search") {
  Prime p = auto_field_prime(4, 2);
  FpCtx ctx(p.as_u64());
  GridSource grid(2, 4, &ctx);
  // constant ratio: the very first candidate works
  RatioCircuit cF{ps_const(Fp(3, &ctx), Z), Fp(1, &ctx), 0, 2};
  auto a0 = find_rank_preserving_point(cF, 2, grid, &ctx);
  CHECK(a0[1].value() == 0);
  CHECK(a0[2].value() == 0);

  // x1 * z: needs a point with nonzero first coordinate
  PowerSum f = ps_term(UniF(Z, {Fp(0, &ctx), Fp(1, &ctx)}), xv(1, &ctx), 1, Z);
  RatioCircuit xF{f, Fp(1, &ctx), 1, 2};
  auto a1 = find_rank_preserving_point(xF, 2, grid, &ctx);
  CHECK(a1[1].value() != 0);

  // identically zero numerator is a structural failure
  RatioCircuit zF{ps_zero(&ctx, Z), Fp(1, &ctx), 0, 2};
  CHECK_THROWS_WITH_AS(find_rank_preserving_point(zF, 2, grid, &ctx),
                       doctest::Contains("source-exhausted"), Error);
}

TEST_CASE("faithful map images") {
  FpCtx ctx(101);
  Fp zero(0, &ctx);
  std::vector<Fp> a(3, zero), ap(3, zero);
  FaithfulMap phi = build_faithful_phi(1, a, ap, 2, 3, &ctx);
  // x_i maps to y_1 t^i when the shift and scale vanish
  PolyF img1 = phi.image_of(1);
  PolyF want1 = PolyF::from_terms({{Mon::var(phi.yvar(1), 1) * Mon::var(phi.tvar(), 1), Fp(1, &ctx)}}, zero);
  CHECK(img1 == want1);
  CHECK(phi.apply(cn(42, &ctx)) == cn(42, &ctx));
  CHECK(phi.truncation == 3);

  // applied polynomials use only the image variables
  FaithfulMap phi2 = build_faithful_phi(2, a, ap, 2, 3, &ctx);
  PolyF big = phi2.apply((xv(1, &ctx) + xv(2, &ctx)).pow(2));
  for (u32 v : big.vars_used()) CHECK(v <= phi2.zvar());
}

TEST_CASE("composed testing examples") {
  Prime p = auto_field_prime(4, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx), one(1, &ctx);
  PolyF a = xv(1, &ctx), b = xv(2, &ctx);

  // C(a, b) = a - b with equal products
  PolyF C1 = a - b;
  ProductCircuit<Fp> t12{{SparseCircuit<Fp>{xv(1, &ctx) * xv(2, &ctx), 2}}};
  CHECK(!pit_composed(C1, {t12, t12}, &ctx).nonzero);

  // C(a, b) = a*b with independent nonzero products
  PolyF C2 = a * b;
  ProductCircuit<Fp> tx = sumuni_product({xv(1, &ctx)}, &ctx);
  ProductCircuit<Fp> ty = sumuni_product({xv(2, &ctx)}, &ctx);
  CHECK(pit_composed(C2, {tx, ty}, &ctx).nonzero);

  // annihilator: C(a, b) = a^2 - b on (x1+x2, (x1+x2)^2)
  PolyF C3 = a * a - b;
  ProductCircuit<Fp> u = sumuni_product({xv(1, &ctx) + xv(2, &ctx)}, &ctx);
  ProductCircuit<Fp> u2{{SparseCircuit<Fp>{(xv(1, &ctx) + xv(2, &ctx)).pow(2), 2}}};
  CHECK(!pit_composed(C3, {u, u2}, &ctx).nonzero);
}

TEST_CASE("hitting set files round-trip") {
  Prime p = auto_field_prime(3, 2);
  FpCtx ctx(p.as_u64());
  HittingSetFile hs = hitting_set_prod_sparse(2, 2, 2, &ctx, 5000);
  CHECK(!hs.points.empty());
  std::string text = hs.serialize();
  HittingSetFile back = HittingSetFile::parse(text);
  CHECK(back.cls == "prod-sparse");
  CHECK(back.nvars == 2);
  CHECK(back.field == ctx.p);
  CHECK(back.points == hs.points);
  // deduplicated
  auto pts = hs.points;
  std::sort(pts.begin(), pts.end());
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("class hitting set hits a hand-built instance") {
  Prime p = auto_field_prime(4, 1);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  HittingSetFile hs = hitting_set_spsu(2, 2, 1, 2, &ctx);
  CHECK(!hs.points.empty());
  // (x1+1)(x2+1), a nonzero one-product circuit
  PolyF f = (xv(1, &ctx) + cn(1, &ctx)) * (xv(2, &ctx) + cn(1, &ctx));
  bool hit = false;
  for (size_t i = 0; i < hs.points.size() && !hit; ++i)
    hit = !f.eval(hs.point_in(i, &ctx)).is_zero();
  CHECK(hit);
}

TEST_CASE("faithfulness on sampled pairs") {
  Prime p = auto_field_prime(6, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  Rng rng(17);
  GenParams prm;
  prm.nvars = 2;
  prm.delta = 2;
  prm.k = 2;
  prm.factors = 1;
  prm.sparsity = 2;
  int agree = 0;
  for (u64 seed = 0; seed < 15; ++seed) {
    auto c1 = gen_random(CircuitClass::ProductSparse, prm, 3 * seed, false, &ctx);
    auto c2 = gen_random(CircuitClass::ProductSparse, prm, 3 * seed + 1, false, &ctx);
    std::vector<ProductCircuit<Fp>> T{std::get<ProductCircuit<Fp>>(c1),
                                      std::get<ProductCircuit<Fp>>(c2)};
    // random small outer circuit in 2 variables
    PolyF C(zero);
    for (int t = 0; t < 3; ++t) {
      Mon m({{1, u32(rng.below(2))}, {2, u32(rng.below(2))}});
      C = C + PolyF::from_terms({{m, rng.field(&ctx)}}, zero);
    }
    PolyF composed = C.compose({{1, expand_to_sparse(c1, zero)}, {2, expand_to_sparse(c2, zero)}});
    bool want = !composed.is_zero();
    CHECK(pit_composed(C, T, &ctx).nonzero == want);
    ++agree;
  }
  CHECK(agree == 15);
}
