#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pitkit/blackbox.hpp"
#include "pitkit/oracle.hpp"
#include "pitkit/whitebox.hpp"

using namespace pitkit;

namespace {

const u32 Z = 0;

PolyF xv(u32 v, const FpCtx* ctx) { return PolyF::variable(v, Fp(1, ctx)); }

BlackboxEval eval_of(const PolyF& p) {
  return [&p](const std::vector<Fp>& pt) { return p.eval(pt); };
}

}  // namespace

TEST_CASE("grid tester examples") {
  FpCtx ctx(101);
  PolyF f = xv(1, &ctx) * xv(2, &ctx);
  Verdict v = pit_trivial(eval_of(f), 2, 2, &ctx);
  CHECK(v.nonzero);
  REQUIRE(v.witness);
  CHECK((*v.witness)[1].value() == 1);
  CHECK((*v.witness)[2].value() == 1);

  size_t evals = 0;
  Verdict z = pit_trivial(
      [&](const std::vector<Fp>& pt) {
        ++evals;
        (void)pt;
        return Fp(0, &ctx);
      },
      2, 2, &ctx);
  CHECK(!z.nonzero);
  CHECK(evals == 4);

  // (x1+x2)^2 - x1^2 - 2x1x2 - x2^2 == 0
  PolyF g = (xv(1, &ctx) + xv(2, &ctx)).pow(2) - xv(1, &ctx).pow(2) -
            (xv(1, &ctx) * xv(2, &ctx)).scaled(Fp(2, &ctx)) - xv(2, &ctx).pow(2);
  CHECK(!pit_trivial(eval_of(g), 2, 3, &ctx).nonzero);

  FpCtx tiny(3);
  CHECK_THROWS_WITH_AS(pit_trivial(eval_of(f), 2, 5, &tiny), doctest::Contains("field-too-small"),
                       Error);
}

TEST_CASE("sparse shift tester examples") {
  FpCtx ctx(101);
  PolyF f = xv(1, &ctx) + xv(2, &ctx);
  Verdict v = pit_sparse_kronecker(f, 10, 2);
  CHECK(v.nonzero);
  CHECK(v.note.substr(0, 2) == "r=");

  // cancelling terms never reach the scan: canonical form is empty
  PolyF g = xv(1, &ctx) * xv(2, &ctx) - xv(1, &ctx) * xv(2, &ctx);
  CHECK(!pit_sparse_kronecker(g, 10, 2).nonzero);
}

TEST_CASE("sparse shift tester certifies random nonzero inputs within the bound") {
  FpCtx ctx(100003);
  Rng rng(71);
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    GenParams prm;
    prm.nvars = 1 + u32(rng.below(4));
    prm.degree = 4;  // individual degrees drawn strictly below
    prm.sparsity = 10;
    auto c = gen_random(CircuitClass::Sparse, prm, 1000 + i, false, &ctx);
    PolyF f = std::get<SparseCircuit<Fp>>(c).poly;
    if (f.is_zero()) continue;
    Verdict v = pit_sparse_kronecker(f, 10, 4);
    CHECK(v.nonzero);
    ++found;
  }
  CHECK(found >= 90);
}

TEST_CASE("product-of-sparse hitting set hits") {
  FpCtx ctx(101);
  // (x1+1)(x2+2)
  PolyF f = (xv(1, &ctx) + PolyF::constant(Fp(1, &ctx))) *
            (xv(2, &ctx) + PolyF::constant(Fp(2, &ctx)));
  ProdSparseParams prm;
  prm.nvars = 2;
  prm.factor_degree = 1;
  prm.factor_count = 2;
  prm.factor_sparsity = 2;
  ProdSparseHS hs(prm, &ctx);
  CHECK(hs.scan(eval_of(f)) != SIZE_MAX);
}

TEST_CASE("product hitting set hits random nonzero products") {
  FpCtx ctx(100003);
  Fp zero(0, &ctx);
  GenParams prm;
  prm.nvars = 4;
  prm.degree = 2;
  prm.factors = 3;
  int tested = 0;
  for (u64 seed = 0; seed < 400 && tested < 200; ++seed) {
    auto c = gen_random(CircuitClass::ProductUni, prm, seed, false, &ctx);
    PolyF f = expand_to_sparse(c, zero);
    if (f.is_zero()) continue;
    ++tested;
    ProdSparseParams hp;
    hp.nvars = 4;
    hp.factor_degree = 2;
    hp.factor_count = 3;
    hp.factor_sparsity = 9;
    ProdSparseHS hs(hp, &ctx);
    CHECK(hs.scan(eval_of(f)) != SIZE_MAX);
  }
  CHECK(tested == 200);
}

TEST_CASE("span tester on explicit programs") {
  FpCtx ctx(101);
  Fp zero(0, &ctx), one(1, &ctx);
  Roabp<Fp> r;
  r.width = 1;
  r.order = {1, 2};
  r.layers = {RoabpLayer<Fp>{false, {UniF(1, {zero, one})}},
              RoabpLayer<Fp>{false, {UniF(2, {zero, one})}}};
  r.lhs = {one};
  r.rhs = {one};
  CHECK(pit_roabp(r).nonzero);

  r.lhs = {zero};  // annihilated by the boundary
  CHECK(!pit_roabp(r).nonzero);
}

TEST_CASE("span tester agrees with the expansion oracle") {
  FpCtx ctx(100003);
  Fp zero(0, &ctx);
  GenParams prm;
  prm.nvars = 4;
  prm.degree = 3;
  prm.width = 4;
  for (u64 seed = 0; seed < 500; ++seed) {
    auto c = gen_random(CircuitClass::RoabpClass, prm, seed, false, &ctx);
    bool want = !expand_to_sparse(c, zero).is_zero();
    CHECK(pit_roabp(std::get<Roabp<Fp>>(c)).nonzero == want);
  }
}

TEST_CASE("power-sum whitebox test") {
  Prime p = find_prime(1000, {2, 3, 4, 5, 6});
  FpCtx ctx(p.as_u64());
  Fp one(1, &ctx);
  // engineered cancellation
  PowerSum f = ps_add(ps_scalar_term(one, xv(1, &ctx) + xv(2, &ctx), 2, Z),
                      ps_scalar_term(-one, xv(1, &ctx) + xv(2, &ctx), 2, Z));
  CHECK(!pit_powersum_white(f, 2).nonzero);
  CHECK(pit_powersum_white(ps_scalar_term(one, xv(1, &ctx) + xv(2, &ctx), 3, Z), 2).nonzero);
}

TEST_CASE("power-sum whitebox test agrees with the oracle") {
  Prime p = find_prime(100000, {2, 3, 4, 5, 6, 7, 8});
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  Rng rng(73);
  GenParams prm;
  prm.nvars = 3;
  prm.degree = 2;
  prm.factors = 3;
  prm.exponent = 3;
  int zeros = 0;
  for (u64 seed = 0; seed < 300; ++seed) {
    auto c = gen_random(CircuitClass::PowerSumUni, prm, seed, false, &ctx);
    PowerSum f = ps_from_ir(std::get<PowerSumCircuit<Fp>>(c), &ctx, Z);
    bool want = !expand_to_sparse(c, zero).is_zero();
    CHECK(pit_powersum_white(f, 3).nonzero == want);
    if (!want) ++zeros;
  }
  // engineered zeros: f - f reencoded with duplicated summands
  for (u64 seed = 0; seed < 20; ++seed) {
    auto c = gen_random(CircuitClass::PowerSumUni, prm, 7000 + seed, false, &ctx);
    auto ps = std::get<PowerSumCircuit<Fp>>(c);
    PowerSumCircuit<Fp> doubled = ps;
    for (auto& s : ps.summands) {
      PowerSummand<Fp> neg = s;
      neg.coef = -neg.coef;
      doubled.summands.push_back(neg);
    }
    PowerSum f = ps_from_ir(doubled, &ctx, Z);
    CHECK(!pit_powersum_white(f, 3).nonzero);
  }
  (void)zeros;
}

TEST_CASE("min valuation over bloated terms") {
  Prime p = find_prime(1000, {2, 3, 4, 5, 6});
  FpCtx ctx(p.as_u64());
  Fp one(1, &ctx), zero(0, &ctx);
  DidiContext dc{&ctx, Z, 2};

  auto factor_of = [&](PowerSum ps) {
    auto f = std::make_shared<PsFactor>();
    f->ps = std::move(ps);
    return f;
  };

  // P = z^2 (x1 + 1), Q = 1  ->  v = 2
  BloatedTerm t1;
  t1.p_factors.push_back(factor_of(
      ps_term(UniF(Z, {zero, zero, one}), xv(1, &ctx) + PolyF::constant(one), 1, Z)));
  // P = Q (shared factor)  ->  v = 0
  BloatedTerm t2;
  auto shared = factor_of(ps_scalar_term(one, xv(1, &ctx) + PolyF::constant(one), 2, Z));
  t2.p_factors.push_back(shared);
  t2.q_factors.push_back(shared);
  // v = 1
  BloatedTerm t3;
  t3.p_factors.push_back(
      factor_of(ps_term(UniF(Z, {zero, one}), xv(2, &ctx) + PolyF::constant(one), 1, Z)));

  std::vector<BloatedTerm> terms{t1, t2, t3};
  MinValResult mv = min_valuation(dc, terms, 5);
  CHECK(!mv.all_zero);
  CHECK(mv.index == 1);
  CHECK(mv.value == 0);
  REQUIRE(mv.term_vals[0]);
  CHECK(*mv.term_vals[0] == 2);
  CHECK(*mv.term_vals[1] == 0);
  CHECK(*mv.term_vals[2] == 1);

  // everything above the cap counts as vanished
  MinValResult all0 = min_valuation(dc, terms, 0);
  CHECK(all0.all_zero);
}

TEST_CASE("z0 residue test fires on nonzero residues") {
  Prime p = find_prime(1000, {2, 3, 4, 5, 6});
  FpCtx ctx(p.as_u64());
  Fp one(1, &ctx);
  DidiContext dc{&ctx, Z, 2};
  auto factor_of = [&](PowerSum ps) {
    auto f = std::make_shared<PsFactor>();
    f->ps = std::move(ps);
    return f;
  };

  // T1 = -T2: residue (T1/T2) + 1 = 0
  BloatedTerm a, b;
  PowerSum base = ps_scalar_term(one, xv(1, &ctx) + PolyF::constant(one), 2, Z);
  a.p_factors.push_back(factor_of(ps_scale(base, -one)));
  b.p_factors.push_back(factor_of(base));
  {
    std::vector<BloatedTerm> terms{a, b};
    MinValResult mv = min_valuation(dc, terms, 4);
    Verdict v = z0_residue_test(dc, terms, mv);
    CHECK(!v.nonzero);
  }

  // T1 = T2: residue = 1 + 1 = 2 != 0
  BloatedTerm c, d;
  c.p_factors.push_back(factor_of(base));
  d.p_factors.push_back(factor_of(base));
  {
    std::vector<BloatedTerm> terms{c, d};
    MinValResult mv = min_valuation(dc, terms, 4);
    Verdict v = z0_residue_test(dc, terms, mv);
    CHECK(v.nonzero);
  }

  // nonconstant ratio: (x1+1)^2/(x2+1)^2 + 1, nonzero
  BloatedTerm e, f;
  e.p_factors.push_back(factor_of(ps_scalar_term(one, xv(1, &ctx) + PolyF::constant(one), 2, Z)));
  f.p_factors.push_back(factor_of(ps_scalar_term(one, xv(2, &ctx) + PolyF::constant(one), 2, Z)));
  {
    std::vector<BloatedTerm> terms{e, f};
    MinValResult mv = min_valuation(dc, terms, 4);
    CHECK(z0_residue_test(dc, terms, mv).nonzero);
  }
}

TEST_CASE("divide-and-derive: one-term circuits certify by evaluation") {
  Prime p = auto_field_prime(3, 1);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  auto c = parse_circuit<Fp>(
      "(field " + std::to_string(ctx.p) + ") (topsum (product (sumuni (u 1 1 1)) (sumuni (u 2 " +
          std::to_string(ctx.p - 1) + " 1))))",
      zero);
  DidiTrace tr;
  Verdict v = pit_divide_derive(std::get<TopSumCircuit<Fp>>(c), &ctx, &tr);
  CHECK(v.nonzero);
  CHECK(tr.branch == "evaluation");
}

TEST_CASE("divide-and-derive: engineered difference-of-squares zero") {
  Prime p = auto_field_prime(5, 2);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx), one(1, &ctx);
  // T1 = (x1+x2)(x1-x2), T2 = -(x1^2 - x2^2) as a single sum of univariates
  SumUni<Fp> f1{{UniF(1, {zero, one}), UniF(2, {zero, one})}};
  SumUni<Fp> f2{{UniF(1, {zero, one}), UniF(2, {zero, -one})}};
  SumUni<Fp> g{{UniF(1, {zero, zero, -one}), UniF(2, {zero, zero, one})}};
  TopSumCircuit<Fp> ts{{ProductCircuit<Fp>{{f1, f2}}, ProductCircuit<Fp>{{g}}}};
  REQUIRE(expand_to_sparse(CircuitExpr<Fp>(ts), zero).is_zero());
  DidiTrace tr;
  Verdict v = pit_divide_derive(ts, &ctx, &tr);
  CHECK(!v.nonzero);
}

TEST_CASE("divide-and-derive agrees with the oracle on a seeded family") {
  GenParams prm;
  prm.nvars = 3;
  prm.degree = 2;
  prm.k = 3;
  prm.factors = 2;
  Prime p = auto_field_prime(2 * prm.factors + 1, prm.k);
  FpCtx ctx(p.as_u64());
  Fp zero(0, &ctx);
  int zeros = 0, nonzeros = 0;
  for (u64 seed = 0; seed < 40; ++seed) {
    auto c = gen_random(CircuitClass::TopSumUni, prm, seed, false, &ctx);
    bool want = !expand_to_sparse(c, zero).is_zero();
    DidiTrace tr;
    Verdict v = pit_divide_derive(std::get<TopSumCircuit<Fp>>(c), &ctx, &tr);
    CHECK(v.nonzero == want);
    (want ? nonzeros : zeros)++;
  }
  for (u64 seed = 0; seed < 10; ++seed) {
    auto c = gen_random(CircuitClass::TopSumUni, prm, 500 + seed, true, &ctx);
    REQUIRE(expand_to_sparse(c, zero).is_zero());
    DidiTrace tr;
    Verdict v = pit_divide_derive(std::get<TopSumCircuit<Fp>>(c), &ctx, &tr);
    CHECK(!v.nonzero);
    // trace invariants: strictly decreasing precision, nonnegative
    // valuations, scalar shifted parts
    u32 prev = UINT32_MAX;
    for (auto& lv : tr.levels) {
      CHECK(lv.precision >= 1);
      CHECK(lv.precision < prev);
      prev = lv.precision;
      CHECK(lv.uv_scalars_ok);
      for (i64 val : lv.valuations) CHECK(val >= -1);  // -1 encodes a vanished term
    }
    ++zeros;
  }
  CHECK(zeros >= 10);
  CHECK(nonzeros >= 20);
}
