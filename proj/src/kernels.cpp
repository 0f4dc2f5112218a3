#include "pitkit/kernels.hpp"

#include <algorithm>
#include <numeric>

namespace pitkit {

// ---------------------------------------------------------- uni(z) helpers

namespace {

UniF uni_const(const Fp& c, u32 var) { return UniF(var, {c}); }

UniF uni_monomial(const Fp& c, u32 var, u32 deg) {
  std::vector<Fp> cs(deg + 1, Fp(0, c.ctx()));
  cs[deg] = c;
  return UniF(var, std::move(cs));
}

UniF uni_add(const UniF& a, const UniF& b) {
  const FpCtx* ctx = nullptr;
  if (!a.coeffs().empty()) ctx = a.coeffs()[0].ctx();
  else if (!b.coeffs().empty()) ctx = b.coeffs()[0].ctx();
  else return a;
  std::vector<Fp> cs(std::max(a.coeffs().size(), b.coeffs().size()), Fp(0, ctx));
  for (size_t i = 0; i < a.coeffs().size(); ++i) cs[i] += a.coeffs()[i];
  for (size_t i = 0; i < b.coeffs().size(); ++i) cs[i] += b.coeffs()[i];
  return UniF(a.var(), std::move(cs));
}

UniF uni_mul(const UniF& a, const UniF& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return UniF(a.var(), {});
  const FpCtx* ctx = a.coeffs()[0].ctx();
  std::vector<Fp> cs(a.coeffs().size() + b.coeffs().size() - 1, Fp(0, ctx));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j) cs[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return UniF(a.var(), std::move(cs));
}

UniF uni_scale(const UniF& a, const Fp& c) {
  std::vector<Fp> cs = a.coeffs();
  for (auto& x : cs) x *= c;
  return UniF(a.var(), std::move(cs));
}

UniF uni_deriv(const UniF& a) {
  if (a.coeffs().size() <= 1) return UniF(a.var(), {});
  const FpCtx* ctx = a.coeffs()[0].ctx();
  std::vector<Fp> cs(a.coeffs().size() - 1, Fp(0, ctx));
  for (size_t i = 1; i < a.coeffs().size(); ++i) cs[i - 1] = a.coeffs()[i] * Fp::of(i64(i), ctx);
  return UniF(a.var(), std::move(cs));
}

UniF uni_pow(const UniF& a, u32 e, u32 var, const FpCtx* ctx) {
  UniF acc = uni_const(Fp(1, ctx), var);
  UniF base = a;
  while (e) {
    if (e & 1) acc = uni_mul(acc, base);
    base = uni_mul(base, base);
    e >>= 1;
  }
  return acc;
}

Fp uni_at(const UniF& a, size_t i, const FpCtx* ctx) {
  return i < a.coeffs().size() ? a.coeffs()[i] : Fp(0, ctx);
}

u32 uni_val(const UniF& a) {
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    if (!a.coeffs()[i].is_zero()) return u32(i);
  return UINT32_MAX;
}

// total order on polynomials, for canonical term sorting
bool poly_less(const PolyF& a, const PolyF& b) {
  size_t n = std::min(a.terms().size(), b.terms().size());
  GrlexLess lt;
  for (size_t i = 0; i < n; ++i) {
    if (lt(a.terms()[i].first, b.terms()[i].first)) return true;
    if (lt(b.terms()[i].first, a.terms()[i].first)) return false;
    if (a.terms()[i].second.value() != b.terms()[i].second.value())
      return a.terms()[i].second.value() < b.terms()[i].second.value();
  }
  return a.terms().size() < b.terms().size();
}

bool uni_less(const UniF& a, const UniF& b) {
  if (a.coeffs().size() != b.coeffs().size()) return a.coeffs().size() < b.coeffs().size();
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    if (a.coeffs()[i].value() != b.coeffs()[i].value())
      return a.coeffs()[i].value() < b.coeffs()[i].value();
  return false;
}

bool term_less(const PsTerm& s, const PsTerm& t) {
  if (s.exp != t.exp) return s.exp < t.exp;
  if (poly_less(s.base, t.base)) return true;
  if (poly_less(t.base, s.base)) return false;
  return uni_less(s.coef, t.coef);
}

bool is_xfree(const PolyF& p, u32 zvar) {
  for (auto& [m, c] : p.terms())
    for (auto& [v, e] : m.exps())
      if (v != zvar) return false;
  return true;
}

UniF poly_to_uni_z(const PolyF& p, u32 zvar, const FpCtx* ctx) {
  std::vector<Fp> cs(p.is_zero() ? 0 : p.deg_in(zvar) + 1, Fp(0, ctx));
  for (auto& [m, c] : p.terms()) cs[m.deg_in(zvar)] += c;
  return UniF(zvar, std::move(cs));
}

void normalize(PowerSum& f) {
  std::vector<PsTerm> out;
  out.reserve(f.terms.size());
  Fp one(1, f.ctx);
  for (auto& t : f.terms) {
    if (t.coef.is_zero()) continue;
    if (t.base.is_zero()) continue;  // 0^e = 0 for e >= 1
    PsTerm nt = t;
    if (nt.exp == 0) {
      nt.base = PolyF::constant(one);
      nt.exp = 1;
    }
    if (is_xfree(nt.base, f.zvar)) {
      // ring content: fold base^e into the coefficient
      UniF bz = poly_to_uni_z(nt.base, f.zvar, f.ctx);
      nt.coef = uni_mul(nt.coef, uni_pow(bz, nt.exp, f.zvar, f.ctx));
      nt.base = PolyF::constant(one);
      nt.exp = 1;
      if (nt.coef.is_zero()) continue;
    } else {
      Fp lead = nt.base.terms().back().second;
      if (!(lead == one)) {
        nt.coef = uni_scale(nt.coef, lead.pow(nt.exp));
        nt.base = nt.base.scaled(lead.inv());
      }
    }
    out.push_back(std::move(nt));
  }
  std::sort(out.begin(), out.end(), term_less);
  std::vector<PsTerm> merged;
  for (auto& t : out) {
    if (!merged.empty() && merged.back().exp == t.exp && merged.back().base == t.base) {
      merged.back().coef = uni_add(merged.back().coef, t.coef);
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PsTerm& t) { return t.coef.is_zero(); });
  f.terms = std::move(merged);
}

u32 term_zval_bound(const PsTerm& t, u32 zvar) {
  u32 v = uni_val(t.coef);
  if (v == UINT32_MAX) return UINT32_MAX;
  return v + t.exp * t.base.min_deg_in(zvar);
}

}  // namespace

// ------------------------------------------------------------- constructors

PowerSum ps_zero(const FpCtx* ctx, u32 zvar) { return PowerSum{ctx, zvar, {}}; }

PowerSum ps_const(const Fp& c, u32 zvar) {
  PowerSum f{c.ctx(), zvar, {}};
  if (!c.is_zero())
    f.terms.push_back(PsTerm{uni_const(c, zvar), PolyF::constant(Fp(1, c.ctx())), 1});
  return f;
}

PowerSum ps_term(UniF coef, PolyF base, u32 exp, u32 zvar) {
  const FpCtx* ctx = base.field_zero().ctx();
  PowerSum f{ctx, zvar, {}};
  f.terms.push_back(PsTerm{std::move(coef), std::move(base), exp});
  normalize(f);
  return f;
}

PowerSum ps_scalar_term(const Fp& coef, PolyF base, u32 exp, u32 zvar) {
  return ps_term(uni_const(coef, zvar), std::move(base), exp, zvar);
}

PowerSum ps_add(const PowerSum& a, const PowerSum& b) {
  PowerSum f{a.ctx ? a.ctx : b.ctx, a.zvar, a.terms};
  f.terms.insert(f.terms.end(), b.terms.begin(), b.terms.end());
  normalize(f);
  return f;
}

PowerSum ps_neg(const PowerSum& a) {
  PowerSum f = a;
  Fp m1 = -Fp(1, a.ctx);
  for (auto& t : f.terms) t.coef = uni_scale(t.coef, m1);
  return f;
}

PowerSum ps_sub(const PowerSum& a, const PowerSum& b) { return ps_add(a, ps_neg(b)); }

PowerSum ps_scale(const PowerSum& a, const Fp& c) {
  if (c.is_zero()) return ps_zero(a.ctx, a.zvar);
  PowerSum f = a;
  for (auto& t : f.terms) t.coef = uni_scale(t.coef, c);
  return f;
}

PowerSum ps_scale_z(const PowerSum& a, const UniF& c) {
  PowerSum f{a.ctx, a.zvar, {}};
  if (c.is_zero()) return f;
  f.terms = a.terms;
  for (auto& t : f.terms) t.coef = uni_mul(t.coef, c);
  normalize(f);
  return f;
}

PolyF ps_expand(const PowerSum& f) {
  Fp zero(0, f.ctx);
  PolyF acc(zero);
  for (auto& t : f.terms) {
    PolyF c = t.coef.to_sparse(zero);
    acc = acc + c * t.base.pow(t.exp);
  }
  return acc;
}

u32 ps_zdeg_bound(const PowerSum& f) {
  u32 d = 0;
  for (auto& t : f.terms)
    d = std::max(d, t.coef.degree() + t.exp * t.base.deg_in(f.zvar));
  return d;
}

u32 ps_zval_lower_bound(const PowerSum& f) {
  u32 v = UINT32_MAX;
  for (auto& t : f.terms) v = std::min(v, term_zval_bound(t, f.zvar));
  return v;
}

PowerSum ps_from_ir(const PowerSumCircuit<Fp>& c, const FpCtx* ctx, u32 zvar) {
  PowerSum f{ctx, zvar, {}};
  Fp zero(0, ctx);
  for (auto& s : c.summands)
    f.terms.push_back(PsTerm{uni_const(s.coef, zvar), factor_to_sparse(s.base, zero), s.exponent});
  normalize(f);
  return f;
}

// ------------------------------------------------------------------- waring

Fp multinomial_mod(const FpCtx* ctx, u32 d, const std::vector<u32>& parts) {
  if (d >= ctx->p)
    fail("char-too-small", "multinomial of degree " + std::to_string(d) + " over F_" +
                               std::to_string(ctx->p));
  std::vector<Fp> fact(d + 1, Fp(1, ctx));
  for (u32 i = 1; i <= d; ++i) fact[i] = fact[i - 1] * Fp(i, ctx);
  Fp acc = fact[d];
  for (u32 b : parts) acc *= fact[b].inv();
  return acc;
}

Fp binomial_mod(const FpCtx* ctx, u32 n, u32 k) {
  return multinomial_mod(ctx, n, {k, n - k});
}

PowerSum waring_combine(std::vector<std::pair<PolyF, u32>> powers, const FpCtx* ctx, u32 zvar) {
  // drop trivial exponents and merge equal bases
  std::erase_if(powers, [](auto& p) { return p.second == 0; });
  // x-free factors are ring scalars; collect them as a prefactor
  UniF prefactor = uni_const(Fp(1, ctx), zvar);
  {
    std::vector<std::pair<PolyF, u32>> kept;
    for (auto& [b, e] : powers) {
      if (is_xfree(b, zvar)) {
        prefactor = uni_mul(prefactor, uni_pow(poly_to_uni_z(b, zvar, ctx), e, zvar, ctx));
      } else {
        kept.push_back({b, e});
      }
    }
    powers = std::move(kept);
    if (prefactor.is_zero()) return ps_zero(ctx, zvar);
    bool pre_trivial = prefactor.degree() == 0 && uni_at(prefactor, 0, ctx) == Fp(1, ctx);
    if (!powers.empty() && !pre_trivial) {
      PowerSum inner = waring_combine(std::move(powers), ctx, zvar);
      return ps_scale_z(inner, prefactor);
    }
    if (powers.empty()) return ps_term(prefactor, PolyF::constant(Fp(1, ctx)), 1, zvar);
  }
  if (powers.empty()) return ps_const(Fp(1, ctx), zvar);
  std::sort(powers.begin(), powers.end(), [](auto& a, auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return poly_less(a.first, b.first);
  });
  {
    std::vector<std::pair<PolyF, u32>> m;
    for (auto& p : powers) {
      if (!m.empty() && m.back().first == p.first) m.back().second += p.second;
      else m.push_back(p);
    }
    powers = std::move(m);
    std::sort(powers.begin(), powers.end(), [](auto& a, auto& b) {
      if (a.second != b.second) return a.second < b.second;
      return poly_less(a.first, b.first);
    });
  }
  if (powers.size() == 1)
    return ps_scalar_term(Fp(1, ctx), powers[0].first, powers[0].second, zvar);

  u32 d = 0;
  std::vector<u32> exps;
  for (auto& [b, e] : powers) {
    d += e;
    exps.push_back(e);
  }
  // anchor is the smallest exponent; roots of unity of order e_i + 1 for the rest
  std::vector<Fp> roots;
  Fp denom = multinomial_mod(ctx, d, exps);
  for (size_t i = 1; i < powers.size(); ++i) {
    u64 m = powers[i].second + 1;
    try {
      roots.push_back(root_of_unity(ctx, m));
    } catch (const Error& e) {
      if (e.code() == "order-not-available")
        fail("missing-roots-of-unity",
             "field F_" + std::to_string(ctx->p) + " lacks roots of unity of order " +
                 std::to_string(m));
      throw;
    }
    denom *= Fp(m, ctx);
  }
  Fp gamma0 = denom.inv();

  PowerSum out{ctx, zvar, {}};
  std::vector<u32> tuple(powers.size(), 0);  // tuple[0] unused
  while (true) {
    PolyF form = powers[0].first;
    Fp gamma = gamma0;
    for (size_t i = 1; i < powers.size(); ++i) {
      Fp eps = roots[i - 1].pow(tuple[i]);
      form = form + powers[i].first.scaled(eps);
      gamma *= eps.pow(powers[i].second).inv();
    }
    out.terms.push_back(PsTerm{uni_const(gamma, zvar), std::move(form), d});
    // next tuple
    size_t i = 1;
    for (; i < powers.size(); ++i) {
      if (++tuple[i] <= powers[i].second) break;
      tuple[i] = 0;
    }
    if (i == powers.size()) break;
  }
  normalize(out);
  return out;
}

PowerSum waring_decompose(const Mon& m, const FpCtx* ctx, u32 zvar) {
  std::vector<std::pair<PolyF, u32>> powers;
  Fp one(1, ctx);
  for (auto& [v, e] : m.exps()) powers.push_back({PolyF::variable(v, one), e});
  return waring_combine(std::move(powers), ctx, zvar);
}

// ----------------------------------------------------------------- products

namespace {
bool is_const_one(const PolyF& p) {
  return p.terms().size() == 1 && p.terms()[0].first.is_one();
}
}  // namespace

PowerSum ps_mul(const PowerSum& a, const PowerSum& b, u32 trunc) {
  PowerSum out{a.ctx ? a.ctx : b.ctx, a.zvar, {}};
  for (auto& s : a.terms) {
    u32 vs = term_zval_bound(s, a.zvar);
    for (auto& t : b.terms) {
      if (trunc != UINT32_MAX) {
        u32 vt = term_zval_bound(t, a.zvar);
        if (vs + vt >= trunc) continue;  // pair contributes 0 mod z^trunc
      }
      UniF coef = uni_mul(s.coef, t.coef);
      if (coef.is_zero()) continue;
      // Ring constants (base 1 after normalization) multiply straight in.
      if (is_const_one(s.base)) {
        out.terms.push_back(PsTerm{std::move(coef), t.base, t.exp});
        continue;
      }
      if (is_const_one(t.base)) {
        out.terms.push_back(PsTerm{std::move(coef), s.base, s.exp});
        continue;
      }
      if (s.base == t.base) {
        out.terms.push_back(PsTerm{std::move(coef), s.base, s.exp + t.exp});
        continue;
      }
      PowerSum w = waring_combine({{s.base, s.exp}, {t.base, t.exp}}, a.ctx, a.zvar);
      for (auto& wt : w.terms)
        out.terms.push_back(PsTerm{uni_mul(coef, wt.coef), wt.base, wt.exp});
    }
  }
  normalize(out);
  return out;
}

PowerSum powersum_product(const std::vector<PowerSum>& fs, u32 trunc) {
  if (fs.empty()) fail("unsupported-parameters", "empty power-sum product");
  PowerSum acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = ps_mul(acc, fs[i], trunc);
  return acc;
}

// ------------------------------------------------------- coefficients, d/dz

PowerSum powersum_coef(const PowerSum& f, u32 e) {
  PowerSum out{f.ctx, f.zvar, {}};
  for (auto& t : f.terms) {
    u32 dzb = t.base.deg_in(f.zvar);
    if (dzb == 0) {
      Fp c = uni_at(t.coef, e, f.ctx);
      if (!c.is_zero()) out.terms.push_back(PsTerm{uni_const(c, f.zvar), t.base, t.exp});
      continue;
    }
    size_t n = size_t(dzb) * t.exp + 1;
    auto nodes = interpolation_nodes(f.ctx, n);
    auto rows = lagrange_basis_rows(nodes);
    for (size_t b = 0; b < n; ++b) {
      Fp w(0, f.ctx);
      for (size_t wdeg = 0; wdeg < n && wdeg <= e; ++wdeg)
        w += uni_at(t.coef, e - wdeg, f.ctx) * rows[b][wdeg];
      if (w.is_zero()) continue;
      out.terms.push_back(PsTerm{uni_const(w, f.zvar), t.base.subst(f.zvar, nodes[b]), t.exp});
    }
  }
  normalize(out);
  return out;
}

PowerSum powersum_derive(const PowerSum& f) {
  u32 dz = ps_zdeg_bound(f);
  if (dz >= f.ctx->p)
    fail("char-too-small", "derivative needs char > z-degree " + std::to_string(dz));
  PowerSum out{f.ctx, f.zvar, {}};
  for (auto& t : f.terms) {
    u32 dzb = t.base.deg_in(f.zvar);
    if (dzb == 0) {
      UniF d = uni_deriv(t.coef);
      if (!d.is_zero()) out.terms.push_back(PsTerm{std::move(d), t.base, t.exp});
      continue;
    }
    size_t n = size_t(dzb) * t.exp + 1;
    auto nodes = interpolation_nodes(f.ctx, n);
    auto rows = lagrange_basis_rows(nodes);
    for (size_t b = 0; b < n; ++b) {
      UniF lb(f.zvar, rows[b]);
      UniF w = uni_deriv(uni_mul(t.coef, lb));
      if (w.is_zero()) continue;
      out.terms.push_back(PsTerm{std::move(w), t.base.subst(f.zvar, nodes[b]), t.exp});
    }
  }
  normalize(out);
  return out;
}

PowerSum ps_subst_z(const PowerSum& f, const Fp& beta) {
  PowerSum out{f.ctx, f.zvar, {}};
  for (auto& t : f.terms) {
    Fp c = t.coef.eval(beta);
    if (c.is_zero()) continue;
    out.terms.push_back(PsTerm{uni_const(c, f.zvar), t.base.subst(f.zvar, beta), t.exp});
  }
  normalize(out);
  return out;
}

// --------------------------------------------------------------------- dlog

namespace {

// Split a shifted factor as g = A - z*B with scalar A.
std::pair<Fp, PolyF> split_shifted(const PolyF& g, u32 zvar, const FpCtx* ctx) {
  Fp zero(0, ctx);
  PolyF g0 = g.subst(zvar, zero);
  if (g0.is_zero()) fail("zero-constant-term", "shifted factor vanishes at z = 0");
  if (g0.total_degree() > 0)
    fail("zero-constant-term", "constant term of shifted factor is not a scalar");
  Fp a = g0.terms()[0].second;
  PolyF diff = PolyF::constant(a) - g;  // = z*B
  std::vector<PolyF::Term> ts;
  for (auto& [m, c] : diff.terms()) {
    u32 e = m.deg_in(zvar);
    if (e == 0) fail("zero-constant-term", "factor has z-free non-scalar part");
    Mon nm = m.without(zvar);
    if (e > 1) nm = nm * Mon::var(zvar, e - 1);
    ts.push_back({nm, c});
  }
  return {a, PolyF::from_terms(std::move(ts), zero)};
}

}  // namespace

DlogResult dlog_expand(const PolyF& g, u32 D, u32 zvar, const FpCtx* ctx) {
  auto [a, b] = split_shifted(g, zvar, ctx);
  DlogResult r{ps_zero(ctx, zvar), 0, 0};
  if (b.is_zero()) return r;  // dlog of a nonzero constant
  // d/dz of (B*z)
  PolyF dbz = b.mul_mon(Mon::var(zvar, 1), Fp(1, ctx)).derivative(zvar);
  Fp ainv = a.inv();
  PowerSum acc = ps_const(Fp(1, ctx), zvar);  // B^t, built incrementally
  PowerSum dbz_ps = ps_scalar_term(Fp(1, ctx), dbz, 1, zvar);
  PowerSum b_ps = ps_scalar_term(Fp(1, ctx), b, 1, zvar);
  Fp ainv_pow = ainv;
  for (u32 t = 0; t < D; ++t) {
    if (t > 0) {
      acc = ps_mul(acc, b_ps);
      ainv_pow *= ainv;
    }
    PowerSum term = ps_mul(acc, dbz_ps);
    r.value = ps_add(r.value, ps_scale_z(term, uni_monomial(-ainv_pow, zvar, t)));
  }
  r.num_zdeg = ps_zdeg_bound(r.value);
  return r;
}

PsRatio inverse_product_series(const std::vector<PolyF>& gs, u32 D, u32 zvar, const FpCtx* ctx) {
  if (gs.empty()) fail("unsupported-parameters", "empty factor list");
  Fp one(1, ctx);
  PsRatio out{ps_const(one, zvar), one, 0};
  for (auto& g : gs) {
    auto [a, b] = split_shifted(g, zvar, ctx);
    PowerSum pg{ctx, zvar, {}};
    Fp apow(1, ctx);  // builds A^{D-1-i} from the top
    std::vector<Fp> ap(D);
    for (u32 i = 0; i < D; ++i) {
      ap[i] = apow;
      apow *= a;
    }
    // sum_{i<D} A^{D-1-i} z^i B^i
    for (u32 i = 0; i < D; ++i) {
      if (b.is_zero() && i > 0) break;
      pg.terms.push_back(PsTerm{uni_monomial(ap[D - 1 - i], zvar, i), b.is_zero() ? PolyF::constant(one) : b, i});
    }
    normalize(pg);
    out.num = ps_mul(out.num, pg);
    out.den *= apow;  // A^D
  }
  out.num_zdeg = ps_zdeg_bound(out.num);
  return out;
}

// ------------------------------------------------------------------ duality

Roabp<Fp> duality_to_roabp(const PowerSum& f, u32 nvars) {
  const FpCtx* ctx = f.ctx;
  Fp zero(0, ctx), one(1, ctx);
  if (nvars == 0) fail("unsupported-parameters", "duality needs at least one variable");

  struct Branch {
    Fp scale;
    std::vector<UniF> entries;
  };
  std::vector<Branch> branches;

  for (auto& t : f.terms) {
    if (t.coef.degree() > 0)
      fail("unsupported-parameters", "duality input must be z-free");
    Fp c = uni_at(t.coef, 0, ctx);
    // decompose the base into per-variable univariates (plus a constant)
    std::vector<UniF> g(nvars + 1, UniF(0, {}));
    std::vector<std::vector<Fp>> gc(nvars + 1);
    Fp c0 = zero;
    for (auto& [m, cc] : t.base.terms()) {
      auto& ex = m.exps();
      if (ex.empty()) {
        c0 += cc;
        continue;
      }
      if (ex.size() != 1 || ex[0].first == f.zvar || ex[0].first > nvars)
        fail("unsupported-parameters", "duality needs sum-of-univariate bases");
      u32 v = ex[0].first, e = ex[0].second;
      if (gc[v].size() <= e) gc[v].resize(e + 1, zero);
      gc[v][e] += cc;
    }
    if (!gc[1].empty()) gc[1].resize(std::max<size_t>(gc[1].size(), 1));
    else gc[1].assign(1, zero);
    gc[1][0] += c0;  // fold the constant into the first variable's part

    u32 e = t.exp;
    size_t npts = size_t(e) * (nvars - 1) + 1;
    if (ctx->p < npts + 1)
      fail("insufficient-field-size", "duality needs " + std::to_string(npts + 1) + " field elements");
    auto nodes = interpolation_nodes(ctx, npts);
    auto rows = lagrange_basis_rows(nodes);

    for (size_t bi = 0; bi < npts; ++bi) {
      Fp alpha = rows[bi][npts - 1];  // weight extracting the top y-coefficient
      if (alpha.is_zero()) continue;
      Fp beta = nodes[bi];
      Fp bn = beta.pow(nvars);
      for (u32 tt = 0; tt <= e; ++tt) {
        Fp sc = c * alpha * binomial_mod(ctx, e, tt);
        Fp mb = -bn;
        sc *= mb.pow(e - tt);
        if (sc.is_zero()) continue;
        Branch br;
        br.scale = sc;
        for (u32 v = 1; v <= nvars; ++v) {
          std::vector<Fp> cs = gc[v];
          if (cs.empty()) cs.assign(1, zero);
          cs[0] += beta;
          br.entries.push_back(uni_pow(UniF(v, cs), tt, v, ctx));
        }
        branches.push_back(std::move(br));
      }
    }
  }

  Roabp<Fp> r;
  r.width = branches.empty() ? 1 : u32(branches.size());
  for (u32 v = 1; v <= nvars; ++v) r.order.push_back(v);
  for (u32 li = 0; li < nvars; ++li) {
    RoabpLayer<Fp> layer;
    layer.diagonal = true;
    for (auto& br : branches) layer.entries.push_back(br.entries[li]);
    if (branches.empty()) layer.entries.push_back(UniF(li + 1, {zero}));
    r.layers.push_back(std::move(layer));
  }
  r.lhs.clear();
  r.rhs.clear();
  for (auto& br : branches) {
    r.lhs.push_back(br.scale);
    r.rhs.push_back(one);
  }
  if (branches.empty()) {
    r.lhs.push_back(zero);
    r.rhs.push_back(zero);
  }
  return r;
}

}  // namespace pitkit
