#include "pitkit/oracle.hpp"

#include <algorithm>

namespace pitkit {

template <class K>
u32 circuit_degree_bound(const CircuitExpr<K>& c) {
  auto factor_deg = [](const FactorIR<K>& f) -> u32 {
    if (std::holds_alternative<SumUni<K>>(f)) {
      u32 d = 0;
      for (auto& u : std::get<SumUni<K>>(f).parts) d = std::max(d, u.degree());
      return d;
    }
    return std::get<SparseCircuit<K>>(f).poly.is_zero()
               ? 0
               : std::get<SparseCircuit<K>>(f).poly.total_degree();
  };
  if (auto* s = std::get_if<SumUni<K>>(&c)) return factor_deg(FactorIR<K>(*s));
  if (auto* sc = std::get_if<SparseCircuit<K>>(&c)) return factor_deg(FactorIR<K>(*sc));
  if (auto* p = std::get_if<ProductCircuit<K>>(&c)) {
    u32 d = 0;
    for (auto& f : p->factors) d += factor_deg(f);
    return d;
  }
  if (auto* t = std::get_if<TopSumCircuit<K>>(&c)) {
    u32 d = 0;
    for (auto& pr : t->terms) {
      u32 td = 0;
      for (auto& f : pr.factors) td += factor_deg(f);
      d = std::max(d, td);
    }
    return d;
  }
  if (auto* ps = std::get_if<PowerSumCircuit<K>>(&c)) {
    u32 d = 0;
    for (auto& s : ps->summands) d = std::max(d, factor_deg(s.base) * s.exponent);
    return d;
  }
  const auto& r = std::get<Roabp<K>>(c);
  u32 d = 0;
  for (auto& layer : r.layers) {
    u32 ld = 0;
    for (auto& e : layer.entries) ld = std::max(ld, e.degree());
    d += ld;
  }
  return d;
}

template u32 circuit_degree_bound<Fp>(const CircuitExpr<Fp>&);
template u32 circuit_degree_bound<Rat>(const CircuitExpr<Rat>&);

Verdict schwartz_zippel(const CircuitExpr<Fp>& c, u32 trials, u64 seed, const FpCtx* ctx) {
  u32 deg = circuit_degree_bound(c);
  if (ctx->p < 2 * std::max<u64>(deg, 1))
    fail("field-too-small", "need field size >= 2*degree for a useful error bound");
  u32 n = max_var(c);
  Rng rng(seed);
  Fp zero(0, ctx);
  for (u32 t = 0; t < trials; ++t) {
    std::vector<Fp> pt(n + 1, zero);
    for (u32 v = 1; v <= n; ++v) pt[v] = rng.field(ctx);
    if (!circuit_eval(c, pt, zero).is_zero()) return Verdict::nonzero_at(pt, "random-evaluation");
  }
  Verdict v = Verdict::zero();
  v.note = "probably-zero";
  return v;
}

Verdict brute_zero_test(const CircuitExpr<Fp>& c, const FpCtx* ctx, const ExpandOptions& opts) {
  Fp zero(0, ctx);
  PolyF p = expand_to_sparse(c, zero, opts);
  if (p.is_zero()) return Verdict::zero();
  return Verdict::nonzero_because("expansion has " + std::to_string(p.sparsity()) + " terms");
}

// ----------------------------------------------------------- random circuits

CircuitClass circuit_class_from_name(const std::string& s) {
  if (s == "spsu") return CircuitClass::TopSumUni;
  if (s == "spsp") return CircuitClass::TopSumSparse;
  if (s == "prod-sparse") return CircuitClass::ProductSparse;
  if (s == "prod-uni") return CircuitClass::ProductUni;
  if (s == "powersum") return CircuitClass::PowerSumUni;
  if (s == "sparse") return CircuitClass::Sparse;
  if (s == "roabp") return CircuitClass::RoabpClass;
  fail("unknown-class", "no circuit class named '" + s + "'");
}

std::string circuit_class_name(CircuitClass c) {
  switch (c) {
    case CircuitClass::TopSumUni: return "spsu";
    case CircuitClass::TopSumSparse: return "spsp";
    case CircuitClass::ProductSparse: return "prod-sparse";
    case CircuitClass::ProductUni: return "prod-uni";
    case CircuitClass::PowerSumUni: return "powersum";
    case CircuitClass::Sparse: return "sparse";
    case CircuitClass::RoabpClass: return "roabp";
  }
  return "?";
}

namespace {

UniF random_uni(Rng& rng, u32 var, u32 maxdeg, const FpCtx* ctx, bool force_nonzero) {
  u32 d = u32(rng.below(maxdeg + 1));
  std::vector<Fp> cs(d + 1, Fp(0, ctx));
  for (auto& c : cs) c = rng.field(ctx);
  UniF u(var, std::move(cs));
  if (force_nonzero && u.is_zero()) return UniF(var, {rng.field_nonzero(ctx)});
  return u;
}

SumUni<Fp> random_sumuni(Rng& rng, const GenParams& p, const FpCtx* ctx) {
  SumUni<Fp> s;
  for (u32 v = 1; v <= p.nvars; ++v) {
    if (rng.below(4) == 0) continue;  // skip some variables
    UniF u = random_uni(rng, v, p.degree, ctx, false);
    if (!u.is_zero()) s.parts.push_back(std::move(u));
  }
  if (s.parts.empty()) s.parts.push_back(UniF(1, {rng.field_nonzero(ctx)}));
  return s;
}

SparseCircuit<Fp> random_sparse(Rng& rng, const GenParams& p, const FpCtx* ctx) {
  Fp zero(0, ctx);
  u32 terms = 1 + u32(rng.below(p.sparsity));
  std::vector<PolyF::Term> ts;
  for (u32 i = 0; i < terms; ++i) {
    std::vector<std::pair<u32, u32>> exps;
    u32 budget = p.delta;
    for (u32 v = 1; v <= p.nvars && budget > 0; ++v) {
      u32 e = u32(rng.below(budget + 1));
      if (e) exps.push_back({v, e});
      budget -= e;
    }
    ts.push_back({Mon(std::move(exps)), rng.field(ctx)});
  }
  PolyF poly = PolyF::from_terms(std::move(ts), zero);
  if (poly.is_zero()) poly = PolyF::constant(rng.field_nonzero(ctx));
  return SparseCircuit<Fp>{std::move(poly), p.delta};
}

ProductCircuit<Fp> random_product(Rng& rng, const GenParams& p, const FpCtx* ctx, bool sparse,
                                  std::optional<u32> force_count = {}) {
  ProductCircuit<Fp> pr;
  u32 cnt = force_count ? *force_count : 1 + u32(rng.below(p.factors));
  for (u32 i = 0; i < cnt; ++i) {
    if (sparse) pr.factors.push_back(random_sparse(rng, p, ctx));
    else pr.factors.push_back(random_sumuni(rng, p, ctx));
  }
  return pr;
}

// Re-encode an expanded polynomial as a one-factor product, when possible.
std::optional<ProductCircuit<Fp>> encode_in_class(const PolyF& poly, bool sparse, u32 delta,
                                                  const FpCtx* ctx) {
  if (poly.is_zero()) return std::nullopt;
  if (sparse) {
    if (poly.total_degree() > delta) return std::nullopt;
    ProductCircuit<Fp> pr;
    pr.factors.push_back(SparseCircuit<Fp>{poly, delta});
    return pr;
  }
  // needs to be a sum of univariates
  std::map<u32, std::vector<Fp>> per_var;
  Fp c0(0, ctx);
  for (auto& [m, c] : poly.terms()) {
    auto& ex = m.exps();
    if (ex.empty()) {
      c0 += c;
      continue;
    }
    if (ex.size() != 1) return std::nullopt;
    auto& [v, e] = ex[0];
    auto& cs = per_var[v];
    if (cs.size() <= e) cs.resize(e + 1, Fp(0, ctx));
    cs[e] += c;
  }
  SumUni<Fp> s;
  bool first = true;
  for (auto& [v, cs] : per_var) {
    std::vector<Fp> c = cs;
    if (first && !c0.is_zero()) {
      if (c.empty()) c.assign(1, Fp(0, ctx));
      c[0] += c0;
    }
    first = false;
    UniF u(v, std::move(c));
    if (!u.is_zero()) s.parts.push_back(std::move(u));
  }
  if (first && !c0.is_zero()) s.parts.push_back(UniF(1, {c0}));
  ProductCircuit<Fp> pr;
  pr.factors.push_back(std::move(s));
  return pr;
}

CircuitExpr<Fp> gen_topsum(Rng& rng, const GenParams& p, bool sparse, bool force_zero,
                           const FpCtx* ctx) {
  Fp zero(0, ctx);
  if (!force_zero) {
    TopSumCircuit<Fp> ts;
    for (u32 i = 0; i < p.k; ++i) ts.terms.push_back(random_product(rng, p, ctx, sparse));
    return ts;
  }
  for (u32 attempt = 0; attempt < p.retry_cap; ++attempt) {
    TopSumCircuit<Fp> ts;
    PolyF sum(zero);
    bool ok = true;
    for (u32 i = 0; i + 1 < p.k; ++i) {
      // one factor per product keeps the negated sum re-encodable in class
      auto pr = random_product(rng, p, ctx, sparse, 1u);
      PolyF e = expand_to_sparse(CircuitExpr<Fp>(pr), zero, ExpandOptions{1 << 20});
      if (e.is_zero()) {
        ok = false;
        break;
      }
      sum = sum + e;
      ts.terms.push_back(std::move(pr));
    }
    if (!ok) continue;
    auto enc = encode_in_class(-sum, sparse, p.delta, ctx);
    if (!enc) continue;
    ts.terms.push_back(std::move(*enc));
    // oracle-verify before emission
    if (!expand_to_sparse(CircuitExpr<Fp>(ts), zero, ExpandOptions{1 << 20}).is_zero()) continue;
    return ts;
  }
  fail("retry-cap-exceeded", "could not re-encode a forced-zero instance in class");
}

}  // namespace

CircuitExpr<Fp> gen_random(CircuitClass cls, const GenParams& p, u64 seed, bool force_zero,
                           const FpCtx* ctx) {
  Rng rng(seed);
  Fp zero(0, ctx);
  switch (cls) {
    case CircuitClass::TopSumUni: return gen_topsum(rng, p, false, force_zero, ctx);
    case CircuitClass::TopSumSparse: return gen_topsum(rng, p, true, force_zero, ctx);
    case CircuitClass::ProductSparse:
      if (force_zero) fail("unsupported-parameters", "force_zero needs a top-sum class");
      return random_product(rng, p, ctx, true);
    case CircuitClass::ProductUni:
      if (force_zero) fail("unsupported-parameters", "force_zero needs a top-sum class");
      return random_product(rng, p, ctx, false);
    case CircuitClass::PowerSumUni: {
      if (force_zero) fail("unsupported-parameters", "force_zero needs a top-sum class");
      PowerSumCircuit<Fp> ps;
      u32 cnt = 1 + u32(rng.below(p.factors));
      for (u32 i = 0; i < cnt; ++i) {
        auto base = random_sumuni(rng, p, ctx);
        ps.summands.push_back(
            PowerSummand<Fp>{rng.field_nonzero(ctx), FactorIR<Fp>(std::move(base)),
                             1 + u32(rng.below(p.exponent))});
      }
      return ps;
    }
    case CircuitClass::Sparse: {
      if (force_zero) fail("unsupported-parameters", "force_zero needs a top-sum class");
      GenParams q = p;
      q.delta = p.degree * p.nvars;  // total degree room for individual-degree draws
      Fp z(0, ctx);
      u32 terms = 1 + u32(rng.below(p.sparsity));
      std::vector<PolyF::Term> ts;
      for (u32 i = 0; i < terms; ++i) {
        std::vector<std::pair<u32, u32>> exps;
        for (u32 v = 1; v <= p.nvars; ++v) {
          u32 e = u32(rng.below(p.degree));  // individual degree < degree
          if (e) exps.push_back({v, e});
        }
        ts.push_back({Mon(std::move(exps)), rng.field(ctx)});
      }
      PolyF poly = PolyF::from_terms(std::move(ts), z);
      if (poly.is_zero()) poly = PolyF::constant(rng.field_nonzero(ctx));
      return SparseCircuit<Fp>{std::move(poly), std::max(p.degree * p.nvars, 1u)};
    }
    case CircuitClass::RoabpClass: {
      if (force_zero) fail("unsupported-parameters", "force_zero needs a top-sum class");
      Roabp<Fp> r;
      r.width = 1 + u32(rng.below(p.width));
      for (u32 v = 1; v <= p.nvars; ++v) r.order.push_back(v);
      // deterministic shuffle of the variable order
      for (size_t i = r.order.size(); i > 1; --i)
        std::swap(r.order[i - 1], r.order[rng.below(i)]);
      for (u32 li = 0; li < p.nvars; ++li) {
        RoabpLayer<Fp> layer;
        for (u32 i = 0; i < r.width * r.width; ++i)
          layer.entries.push_back(random_uni(rng, r.order[li], p.degree, ctx, false));
        r.layers.push_back(std::move(layer));
      }
      Fp one(1, ctx);
      r.lhs.assign(r.width, zero);
      r.rhs.assign(r.width, zero);
      r.lhs[0] = one;
      r.rhs[0] = one;
      return r;
    }
  }
  fail("unknown-class", "unhandled circuit class");
}

}  // namespace pitkit
