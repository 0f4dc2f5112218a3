#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pitkit/oracle.hpp"
#include "pitkit/poly.hpp"

using namespace pitkit;

namespace {

PolyF xv(u32 v, const FpCtx* ctx) { return PolyF::variable(v, Fp(1, ctx)); }
PolyF cn(i64 c, const FpCtx* ctx) { return PolyF::constant(Fp::of(c, ctx)); }

PolyF random_poly(Rng& rng, const FpCtx* ctx, u32 nvars, u32 maxdeg, u32 terms) {
  std::vector<PolyF::Term> ts;
  for (u32 i = 0; i < terms; ++i) {
    std::vector<std::pair<u32, u32>> e;
    for (u32 v = 1; v <= nvars; ++v) {
      u32 d = u32(rng.below(maxdeg + 1));
      if (d) e.push_back({v, d});
    }
    ts.push_back({Mon(std::move(e)), rng.field(ctx)});
  }
  return PolyF::from_terms(std::move(ts), Fp(0, ctx));
}

}  // namespace

TEST_CASE("arithmetic examples") {
  FpCtx ctx(101);
  PolyF x1 = xv(1, &ctx), x2 = xv(2, &ctx);
  CHECK((x1 + x2) + (-x2) == x1);
  CHECK(((x1 + x2) * PolyF(Fp(0, &ctx))).is_zero());
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
}

TEST_CASE("ring axioms, randomized") {
  FpCtx ctx(10007);
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    PolyF a = random_poly(rng, &ctx, 3, 2, 3);
    PolyF b = random_poly(rng, &ctx, 3, 2, 3);
    PolyF c = random_poly(rng, &ctx, 3, 2, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("multiplication degree law") {
  FpCtx ctx(10007);
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    PolyF a = random_poly(rng, &ctx, 2, 3, 3);
    PolyF b = random_poly(rng, &ctx, 2, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
  }
}

TEST_CASE("evaluation examples") {
  FpCtx c7(7);
  PolyF f = xv(1, &c7) * xv(2, &c7);
  std::vector<Fp> pt{Fp(0, &c7), Fp(2, &c7), Fp(3, &c7)};
  CHECK(f.eval(pt).value() == 6);
  CHECK(PolyF(Fp(0, &c7)).eval(pt).value() == 0);

  FpCtx c11(11);
  PolyF g = (xv(1, &c11) + xv(2, &c11)).pow(2);
  std::vector<Fp> pt2{Fp(0, &c11), Fp(1, &c11), Fp(2, &c11)};
  CHECK(g.eval(pt2).value() == 9);

  CHECK_THROWS_WITH_AS(f.eval({Fp(0, &c7)}), doctest::Contains("missing-assignment"), Error);
}

TEST_CASE("field mismatch is rejected") {
  FpCtx a(7), b(11);
  CHECK_THROWS_WITH_AS(xv(1, &a) + xv(1, &b), doctest::Contains("field-mismatch"), Error);
}

TEST_CASE("valuation examples") {
  FpCtx ctx(101);
  u32 z = 0;
  PolyF zp = xv(0, &ctx), x1 = xv(1, &ctx), x2 = xv(2, &ctx), one = cn(1, &ctx);
  RatFnF f1(zp.pow(2) * x1, zp * (one + zp));
  CHECK(valuation(f1, z) == 1);
  CHECK(valuation(RatFnF(x1, x2), z) == 0);
  CHECK(valuation(RatFnF(zp.pow(3), zp.pow(5) + zp.pow(4)), z) == -1);
  CHECK_THROWS_WITH_AS(valuation(RatFnF(PolyF(Fp(0, &ctx)), x2), z),
                       doctest::Contains("zero-input"), Error);
}

TEST_CASE("valuation is additive over products") {
  FpCtx ctx(10007);
  Rng rng(3);
  u32 z = 1;  // use x1 as the series variable here
  for (int i = 0; i < 60; ++i) {
    PolyF a = random_poly(rng, &ctx, 3, 2, 3);
    PolyF b = random_poly(rng, &ctx, 3, 2, 3);
    PolyF c = random_poly(rng, &ctx, 3, 2, 2);
    PolyF d = random_poly(rng, &ctx, 3, 2, 2);
    if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) continue;
    RatFnF f(a, c), g(b, d);
    CHECK(valuation(f * g, z) == valuation(f, z) + valuation(g, z));
  }
}

TEST_CASE("series lift examples") {
  FpCtx ctx(101);
  u32 z = 0;
  PolyF zp = xv(0, &ctx), x1 = xv(1, &ctx), x2 = xv(2, &ctx), one = cn(1, &ctx);

  // 1/(1-z) mod z^3 = 1 + z + z^2
  auto s1 = series_lift(RatFnF(one, one - zp), z, 3);
  for (u32 e = 0; e < 3; ++e) CHECK(s1.c[e].same_value(RatFnF::whole(one)));

  // a z-free input lifts to itself
  auto s2 = series_lift(RatFnF::whole(x1), z, 2);
  CHECK(s2.c[0].same_value(RatFnF::whole(x1)));
  CHECK(s2.c[1].is_zero());

  // (x1 z)/(1 + x2 z) mod z^3 = x1 z - x1 x2 z^2
  auto s3 = series_lift(RatFnF(x1 * zp, one + x2 * zp), z, 3);
  CHECK(s3.c[0].is_zero());
  CHECK(s3.c[1].same_value(RatFnF::whole(x1)));
  CHECK(s3.c[2].same_value(RatFnF::whole(-(x1 * x2))));

  CHECK_THROWS_WITH_AS(series_lift(RatFnF(one, zp), z, 2),
                       doctest::Contains("negative-valuation"), Error);
}

TEST_CASE("series lift multiplies back to the input") {
  // independent check: lift(num/den) * den == num, coefficientwise mod z^D
  FpCtx ctx(10007);
  Rng rng(17);
  u32 z = 1;
  for (int i = 0; i < 40; ++i) {
    PolyF num = random_poly(rng, &ctx, 3, 2, 3);
    PolyF den = random_poly(rng, &ctx, 3, 2, 3);
    if (num.is_zero() || den.is_zero()) continue;
    if (den.min_deg_in(z) > num.min_deg_in(z)) continue;
    const u32 D = 4;
    auto s = series_lift(RatFnF(num, den), z, D);
    auto dcs = den.coeffs_in(z);
    auto ncs = num.coeffs_in(z);
    for (u32 e = 0; e < D; ++e) {
      RatFnF acc = RatFnF::whole(PolyF(Fp(0, &ctx)));
      for (u32 j = 0; j <= e; ++j) {
        auto it = dcs.find(e - j);
        if (it == dcs.end() || s.c[j].is_zero()) continue;
        acc = acc + s.c[j] * RatFnF::whole(it->second);
      }
      auto nit = ncs.find(e);
      RatFnF want =
          nit == ncs.end() ? RatFnF::whole(PolyF(Fp(0, &ctx))) : RatFnF::whole(nit->second);
      CHECK(acc.same_value(want));
    }
  }
}

TEST_CASE("series inverse round-trip") {
  FpCtx ctx(10007);
  Rng rng(23);
  u32 z = 1;
  int done = 0;
  for (int i = 0; i < 300 && done < 30; ++i) {
    PolyF f = random_poly(rng, &ctx, 3, 2, 3);
    if (f.is_zero() || f.min_deg_in(z) != 0) continue;
    const u32 D = 4;
    PolyF one = cn(1, &ctx);
    auto a = series_lift(RatFnF::whole(f), z, D);
    auto b = series_lift(RatFnF(one, f), z, D);
    auto prod = a.mul(b);
    CHECK(prod.c[0].same_value(RatFnF::whole(one)));
    for (u32 e = 1; e < D; ++e) CHECK(prod.c[e].is_zero());
    ++done;
  }
  CHECK(done == 30);
}

TEST_CASE("interpolation examples") {
  FpCtx ctx(101);
  auto at = [&](i64 v) { return Fp::of(v, &ctx); };
  auto u = interpolate<Fp>(5, {{at(0), at(1)}, {at(1), at(2)}});
  CHECK(u.coeffs().size() == 2);
  CHECK(u.coeffs()[0].value() == 1);
  CHECK(u.coeffs()[1].value() == 1);

  auto c = interpolate<Fp>(5, {{at(5), at(42)}});
  CHECK(c.degree() == 0);
  CHECK(c.coeffs()[0].value() == 42);

  // 4 samples of y^3 recover y^3
  std::vector<std::pair<Fp, Fp>> pts;
  for (i64 t = 0; t < 4; ++t) pts.push_back({at(t), at(t * t * t)});
  auto cu = interpolate<Fp>(1, pts);
  CHECK(cu.degree() == 3);
  CHECK(cu.coeffs()[3].value() == 1);
  CHECK(cu.coeffs()[0].value() == 0);

  CHECK_THROWS_WITH_AS((interpolate<Fp>(5, {{at(1), at(1)}, {at(1), at(2)}})),
                       doctest::Contains("duplicate-abscissa"), Error);
}

TEST_CASE("interpolate then evaluate reproduces inputs") {
  FpCtx ctx(10007);
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    u32 n = 1 + u32(rng.below(6));
    std::vector<std::pair<Fp, Fp>> pts;
    for (u32 t = 0; t < n; ++t) pts.push_back({Fp(t, &ctx), rng.field(&ctx)});
    auto u = interpolate<Fp>(1, pts);
    for (auto& [x, y] : pts) CHECK(u.eval(x) == y);
  }
}

TEST_CASE("lagrange rows extract coefficients") {
  FpCtx ctx(10007);
  Rng rng(37);
  auto nodes = interpolation_nodes(&ctx, 5);
  auto rows = lagrange_basis_rows(nodes);
  for (int i = 0; i < 20; ++i) {
    std::vector<Fp> cs;
    for (int j = 0; j < 5; ++j) cs.push_back(rng.field(&ctx));
    UniF u(1, cs);
    for (u32 e = 0; e < 5; ++e) {
      Fp acc(0, &ctx);
      for (size_t b = 0; b < nodes.size(); ++b) acc += rows[b][e] * u.eval(nodes[b]);
      CHECK(acc == cs[e]);
    }
  }
}

TEST_CASE("rational coefficients") {
  PolyQ x = PolyQ::variable(1, Rat(1));
  PolyQ half = PolyQ::constant(Rat(1, 2));
  PolyQ f = (x + half) * (x - half);
  CHECK(f.coeff_or_zero(Mon()) == Rat(-1, 4));
  CHECK(f.coeff_or_zero(Mon::var(1, 2)) == Rat(1));
}
