#include "pitkit/blackbox.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pitkit {

// ------------------------------------------------------------------ Jacobian

namespace {

PolyF det_cofactor(const std::vector<std::vector<PolyF>>& m, std::vector<size_t> rows,
                   std::vector<size_t> cols, const Fp& zero) {
  size_t r = rows.size();
  if (r == 0) return PolyF::constant(one_like(zero));
  if (r == 1) return m[rows[0]][cols[0]];
  PolyF acc(zero);
  for (size_t j = 0; j < r; ++j) {
    const PolyF& entry = m[rows[0]][cols[j]];
    if (entry.is_zero()) continue;
    std::vector<size_t> subrows(rows.begin() + 1, rows.end());
    std::vector<size_t> subcols;
    for (size_t t = 0; t < r; ++t)
      if (t != j) subcols.push_back(cols[t]);
    PolyF sub = det_cofactor(m, subrows, subcols, zero);
    PolyF term = entry * sub;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

JacobianMinor jacobian_minor(const std::vector<PolyF>& T, const std::vector<u32>& S) {
  if (T.empty() || T.size() != S.size())
    fail("unsupported-parameters", "need |T| = |S| > 0 for a Jacobian minor");
  if (T.size() > 4) fail("unsupported-parameters", "minors computed only up to 4x4 at desk scale");
  Fp zero = T[0].field_zero();
  std::vector<std::vector<PolyF>> m;
  for (auto& t : T) {
    std::vector<PolyF> row;
    for (u32 v : S) row.push_back(t.derivative(v));
    m.push_back(std::move(row));
  }
  std::vector<size_t> idx(T.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  PolyF d = det_cofactor(m, idx, idx, zero);
  return JacobianMinor(T, S, std::move(d));
}

namespace {

// Advance a size-r combination over [0, n); returns false when exhausted.
bool next_combination(std::vector<size_t>& comb, size_t n) {
  size_t r = comb.size();
  for (size_t t = r; t-- > 0;) {
    if (comb[t] + (r - t) < n) {
      ++comb[t];
      for (size_t u = t + 1; u < r; ++u) comb[u] = comb[u - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

TrdegResult trdeg_basis(const std::vector<PolyF>& T, const FpCtx* ctx) {
  TrdegResult res;
  if (T.empty()) return res;
  u64 maxdeg = 1;
  std::set<u32> vars;
  for (auto& t : T) {
    if (!t.is_zero()) maxdeg = std::max<u64>(maxdeg, t.total_degree());
    for (u32 v : t.vars_used()) vars.insert(v);
  }
  std::vector<u32> varlist(vars.begin(), vars.end());
  // the rank criterion needs char > d^r
  u64 need = 1;
  bool overflow = false;
  for (size_t i = 0; i < std::min<size_t>(T.size(), varlist.size()); ++i) {
    if (maxdeg != 0 && need > UINT64_MAX / maxdeg) {
      overflow = true;
      break;
    }
    need *= maxdeg;
  }
  if (overflow || ctx->p <= need) fail("char-too-small", "rank criterion needs char > d^r");

  // grow greedily: first candidate whose column set yields a nonzero minor
  std::vector<size_t> basis;
  for (size_t i = 0; i < T.size(); ++i) {
    if (T[i].is_zero() || T[i].total_degree() == 0) continue;  // constants never extend
    std::vector<size_t> cand = basis;
    cand.push_back(i);
    if (cand.size() > varlist.size()) break;
    std::vector<size_t> comb(cand.size());
    for (size_t t = 0; t < comb.size(); ++t) comb[t] = t;
    do {
      std::vector<u32> sel(comb.size());
      for (size_t t = 0; t < comb.size(); ++t) sel[t] = varlist[comb[t]];
      std::vector<PolyF> sub;
      for (size_t bi : cand) sub.push_back(T[bi]);
      JacobianMinor jm = jacobian_minor(sub, sel);
      if (!jm.minor.is_zero()) {
        basis = cand;
        res.witness_cols = sel;
        res.witness_minor = jm.minor;
        break;
      }
    } while (next_combination(comb, varlist.size()));
  }
  res.basis = basis;
  res.rank = u32(basis.size());
  return res;
}

// ------------------------------------------------------------------- the map

PolyF psi_apply(const PolyF& f, const ShiftMap& psi) {
  Fp zero = f.field_zero();
  Fp one = one_like(zero);
  std::map<u32, PolyF> images;
  for (u32 v : f.vars_used()) {
    if (v == psi.zvar) fail("unsupported-parameters", "input already uses the scaling variable");
    PolyF img = PolyF::variable(v, one).mul_mon(Mon::var(psi.zvar, 1), one) +
                PolyF::constant(psi.point.at(v));
    images.emplace(v, std::move(img));
  }
  return f.compose(images);
}

ShiftMap build_psi(const std::vector<ProductCircuit<Fp>>& T, const FpCtx* ctx) {
  Fp zero(0, ctx);
  std::vector<PolyF> factors;
  u32 nvars = 1, maxdeg = 1;
  size_t maxsp = 1;
  for (auto& pr : T)
    for (auto& f : pr.factors) {
      PolyF p = factor_to_sparse(f, zero);
      if (p.is_zero()) fail("no-point-found", "a bottom factor is identically zero");
      maxdeg = std::max(maxdeg, std::max(p.total_degree(), 1u));
      maxsp = std::max(maxsp, p.sparsity());
      for (u32 v : p.vars_used()) nvars = std::max(nvars, v);
      factors.push_back(std::move(p));
    }
  if (factors.empty()) fail("unsupported-parameters", "no factors to shift");
  ProdSparseParams prm;
  prm.nvars = nvars;
  prm.factor_degree = maxdeg;
  prm.factor_count = u32(factors.size());
  prm.factor_sparsity = u32(maxsp);
  ProdSparseHS hs(prm, ctx);
  size_t idx = hs.scan([&](const std::vector<Fp>& pt) {
    Fp acc(1, ctx);
    for (auto& g : factors) acc *= g.eval(pt);
    return acc;
  });
  if (idx == SIZE_MAX) fail("no-point-found", "hitting set exhausted; product is zero?");
  ShiftMap psi;
  psi.point = hs.point(idx);
  psi.zvar = 0;
  return psi;
}

// ---------------------------------------------------------------- F circuit

RatioCircuit build_F(const std::vector<ProductCircuit<Fp>>& basis, const std::vector<u32>& cols,
                     const ShiftMap& psi, u32 D, const FpCtx* ctx) {
  size_t k = basis.size();
  if (k == 0 || k > 4 || cols.size() != k)
    fail("unsupported-parameters", "ratio circuit needs 1 <= k <= 4 with matching columns");
  Fp zero(0, ctx), one(1, ctx);
  u32 zv = psi.zvar;

  // expanded factor lists with shifted images
  std::vector<std::vector<PolyF>> L(k), Lpsi(k);
  std::vector<std::vector<std::vector<PolyF>>> Ldpsi(k);  // per factor, per column derivative
  for (size_t i = 0; i < k; ++i) {
    for (auto& f : basis[i].factors) {
      PolyF g = factor_to_sparse(f, zero);
      if (g.is_zero()) fail("zero-constant-term", "zero factor in basis product");
      std::vector<PolyF> d;
      for (u32 c : cols) d.push_back(psi_apply(g.derivative(c), psi));
      L[i].push_back(g);
      Lpsi[i].push_back(psi_apply(g, psi));
      Ldpsi[i].push_back(std::move(d));
    }
  }

  // scalar denominator: prod over every factor of A^D, with A = psi(g)|_{z=0}
  Fp Q(1, ctx);
  std::vector<std::vector<Fp>> A(k);
  for (size_t i = 0; i < k; ++i)
    for (auto& gp : Lpsi[i]) {
      PolyF c = gp.subst(zv, Fp(0, ctx));
      if (c.is_zero() || c.total_degree() > 0)
        fail("zero-constant-term", "shifted factor constant term is not a nonzero scalar");
      A[i].push_back(c.terms()[0].second);
      Q *= c.terms()[0].second.pow(D);
    }

  // permutations of [k] with signs, for the determinant expansion
  std::vector<std::pair<std::vector<size_t>, bool>> perms;
  {
    std::vector<size_t> p(k);
    for (size_t i = 0; i < k; ++i) p[i] = i;
    do {
      // parity by inversion count
      u32 inv = 0;
      for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b)
          if (p[a] > p[b]) ++inv;
      perms.push_back({p, inv % 2 == 0});
    } while (std::next_permutation(p.begin(), p.end()));
  }

  PowerSum F = ps_zero(ctx, zv);
  std::vector<size_t> tuple(k, 0);
  while (true) {
    // numerator: psi(J(g_1..g_k)) as a power sum (2^{k-1} terms per permutation)
    PowerSum num = ps_zero(ctx, zv);
    for (auto& [perm, even] : perms) {
      std::vector<std::pair<PolyF, u32>> pw;
      bool zerofac = false;
      for (size_t i = 0; i < k; ++i) {
        const PolyF& dg = Ldpsi[i][tuple[i]][perm[i]];
        if (dg.is_zero()) {
          zerofac = true;
          break;
        }
        pw.push_back({dg, 1});
      }
      if (zerofac) continue;
      PowerSum w = waring_combine(std::move(pw), ctx, zv);
      num = even ? ps_add(num, w) : ps_sub(num, w);
    }
    if (!num.is_zero()) {
      std::vector<PolyF> gs;
      for (size_t i = 0; i < k; ++i) gs.push_back(Lpsi[i][tuple[i]]);
      PsRatio inv = inverse_product_series(gs, D, zv, ctx);
      // rescale the tuple's P/q_t onto the common denominator Q
      PowerSum contrib = ps_scale(ps_mul(num, inv.num), Q * inv.den.inv());
      F = ps_add(F, contrib);
    }
    // next tuple
    size_t i = 0;
    for (; i < k; ++i) {
      if (++tuple[i] < L[i].size()) break;
      tuple[i] = 0;
    }
    if (i == k) break;
  }
  RatioCircuit out{std::move(F), Q, 0, D};
  out.num_zdeg = ps_zdeg_bound(out.num);
  return out;
}

// --------------------------------------------------------------- rank point

GridSource::GridSource(u32 nvars, u32 side, const FpCtx* ctx) : n_(nvars), side_(side), ctx_(ctx) {
  if (side_ == 0) side_ = 1;
  if (side_ > ctx->p) fail("field-too-small", "grid side exceeds field size");
  total_ = 1;
  for (u32 i = 0; i < n_; ++i) {
    if (total_ > (size_t(1) << 40) / side_) fail("unsupported-parameters", "grid too large");
    total_ *= side_;
  }
}

std::vector<Fp> GridSource::point(size_t i) const {
  std::vector<Fp> pt(n_ + 1, Fp(0, ctx_));
  for (u32 v = 1; v <= n_; ++v) {
    pt[v] = Fp(u64(i % side_), ctx_);
    i /= side_;
  }
  return pt;
}

std::vector<Fp> find_rank_preserving_point(const RatioCircuit& F, u32 nvars,
                                           const PointSource& source, const FpCtx* ctx) {
  if (F.num.is_zero())
    fail("source-exhausted", "ratio circuit is identically zero; basis was not independent");
  u32 zv = F.num.zvar;
  for (size_t i = 0; i < source.size(); ++i) {
    std::vector<Fp> pt = source.point(i);
    if (pt.size() < nvars + 1) pt.resize(nvars + 1, Fp(0, ctx));
    // evaluate the numerator at x = pt, z symbolic, truncated at z^D
    std::vector<Fp> acc(F.truncation, Fp(0, ctx));
    for (auto& t : F.num.terms) {
      // base(pt, z) as a univariate in z
      PolyF b = t.base;
      for (u32 v : t.base.vars_used())
        if (v != zv) b = b.subst(v, pt[v]);
      UniF bz(zv, [&] {
        std::vector<Fp> cs(b.is_zero() ? 0 : b.deg_in(zv) + 1, Fp(0, ctx));
        for (auto& [m, c] : b.terms()) cs[m.deg_in(zv)] += c;
        return cs;
      }());
      if (bz.is_zero()) continue;
      // coef * base^exp, truncated
      std::vector<Fp> term(F.truncation, Fp(0, ctx));
      term[0] = Fp(1, ctx);
      for (u32 e = 0; e < t.exp; ++e) {
        std::vector<Fp> nt(F.truncation, Fp(0, ctx));
        for (u32 a = 0; a < F.truncation; ++a) {
          if (term[a].is_zero()) continue;
          for (u32 bdeg = 0; a + bdeg < F.truncation && bdeg < bz.coeffs().size(); ++bdeg)
            nt[a + bdeg] += term[a] * bz.coeffs()[bdeg];
        }
        term = std::move(nt);
      }
      for (u32 a = 0; a < F.truncation; ++a) {
        if (term[a].is_zero()) continue;
        for (u32 cdeg = 0; a + cdeg < F.truncation && cdeg < t.coef.coeffs().size(); ++cdeg)
          acc[a + cdeg] += term[a] * t.coef.coeffs()[cdeg];
      }
    }
    for (auto& c : acc)
      if (!c.is_zero()) return pt;
  }
  fail("source-exhausted", "no rank-preserving point among " + std::to_string(source.size()) +
                               " candidates");
}

// ------------------------------------------------------------- faithful map

PolyF FaithfulMap::image_of(u32 xvar) const {
  Fp zero(0, ctx), one(1, ctx);
  PolyF img = PolyF::constant(shift.at(xvar));
  img = img + PolyF::variable(zvar(), one).scaled(scale.at(xvar));
  for (u32 j = 1; j <= k; ++j) {
    Mon m = Mon::var(yvar(j), 1) * Mon::var(tvar(), xvar * j);
    img = img + PolyF::from_terms({{m, one}}, zero);
  }
  return img;
}

PolyF FaithfulMap::apply(const PolyF& f, const ExpandOptions& opts) const {
  (void)opts;
  std::map<u32, PolyF> images;
  for (u32 v : f.vars_used()) images.emplace(v, image_of(v));
  return f.compose(images);
}

FaithfulMap build_faithful_phi(u32 k, std::vector<Fp> shift, std::vector<Fp> scale, u32 nvars,
                               u32 degree_bound, const FpCtx* ctx) {
  FaithfulMap phi;
  phi.k = std::max(k, 1u);
  phi.shift = std::move(shift);
  phi.scale = std::move(scale);
  phi.nvars = nvars;
  phi.truncation = phi.k * (std::max(degree_bound, 1u) - 1) + 1;
  phi.ctx = ctx;
  return phi;
}

// ------------------------------------------------------------- hitting sets

std::string HittingSetFile::serialize() const {
  std::ostringstream os;
  os << "hs " << cls << " n=" << nvars << " d=" << degree << " k=" << k << " delta=" << delta
     << " s=" << size_bound << " field=" << field << "\n";
  for (auto& pt : points) {
    for (size_t v = 1; v < pt.size(); ++v) {
      if (v > 1) os << " ";
      os << pt[v];
    }
    os << "\n";
  }
  return os.str();
}

HittingSetFile HittingSetFile::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  HittingSetFile f;
  if (!(is >> tag) || tag != "hs") fail("metadata-mismatch", "missing hs header");
  if (!(is >> f.cls)) fail("metadata-mismatch", "missing class tag");
  std::string kv;
  std::string rest;
  std::getline(is, rest);
  std::istringstream hs(rest);
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) fail("metadata-mismatch", "bad header field " + kv);
    std::string key = kv.substr(0, eq);
    u64 val = std::stoull(kv.substr(eq + 1));
    if (key == "n") f.nvars = u32(val);
    else if (key == "d") f.degree = u32(val);
    else if (key == "k") f.k = u32(val);
    else if (key == "delta") f.delta = u32(val);
    else if (key == "s") f.size_bound = u32(val);
    else if (key == "field") f.field = val;
    else fail("metadata-mismatch", "unknown header field " + key);
  }
  if (f.field < 2) fail("metadata-mismatch", "header lacks a field modulus");
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<u64> pt{0};
    u64 v;
    while (ls >> v) pt.push_back(v);
    if (pt.size() != size_t(f.nvars) + 1) fail("metadata-mismatch", "point arity mismatch");
    f.points.push_back(std::move(pt));
  }
  return f;
}

std::vector<Fp> HittingSetFile::point_in(size_t i, const FpCtx* ctx) const {
  std::vector<Fp> pt;
  pt.reserve(points[i].size());
  for (u64 v : points[i]) pt.push_back(Fp(v, ctx));
  return pt;
}

namespace {

void dedupe_points(std::vector<std::vector<u64>>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Union over shift/scale candidates of the faithful-map grid images.
HittingSetFile class_hitting_set(const std::string& cls, u32 n, u32 d, u32 k, u32 delta, u32 s,
                                 const FpCtx* ctx, const ClassHsOptions& opts) {
  if (k == 0 || k > 3 || n == 0 || n > 4)
    fail("unsupported-parameters", "class hitting sets capped at k <= 3, n <= 4");
  if (cls == "spsp" && (delta == 0 || delta > 3))
    fail("unsupported-parameters", "sparse class needs 1 <= delta <= 3");
  HittingSetFile out;
  out.cls = cls;
  out.nvars = n;
  out.degree = d;
  out.k = k;
  out.delta = (cls == "spsp") ? delta : 0;
  out.size_bound = s;
  out.field = ctx->p;

  u32 fdeg = (cls == "spsp") ? delta : d;
  u32 fsp = n * d + 1;  // sum-of-univariates sparsity bound
  if (cls == "spsp") {
    // all monomials of degree <= delta in n variables
    u64 b = 1;
    for (u32 i = 1; i <= delta; ++i) b = b * (n + i) / i;
    fsp = u32(std::min<u64>(b, 1000));
  }
  ProdSparseParams prm;
  prm.nvars = n;
  prm.factor_degree = std::max(fdeg, 1u);
  prm.factor_count = std::max(k * s, 1u);
  prm.factor_sparsity = fsp;
  ProdSparseHS shifts(prm, ctx);

  GridSource scales(n, opts.scale_grid_side, ctx);

  // grid bounds for the (y, t, z) image variables
  u32 dy = d, dt = d * n * k, dz = d;
  if (u64(dy + 1) > ctx->p || u64(dt + 1) > ctx->p)
    fail("field-too-small", "image grid exceeds field");

  size_t nshift = std::min<size_t>(opts.shift_candidates, shifts.size());
  size_t nscale = std::min<size_t>(opts.scale_candidates, scales.size());
  for (size_t si = 0; si < nshift; ++si) {
    std::vector<Fp> a = shifts.point(si);
    for (size_t ci = 0; ci < nscale; ++ci) {
      std::vector<Fp> ap = scales.point(ci);
      // enumerate the k+2 image variables
      std::vector<u32> lim(k + 3, 0);
      for (u32 j = 1; j <= k; ++j) lim[j] = dy + 1;
      lim[k + 1] = dt + 1;
      lim[k + 2] = dz + 1;
      size_t total = 1;
      for (u32 j = 1; j <= k + 2; ++j) total *= lim[j];
      for (size_t idx = 0; idx < total; ++idx) {
        size_t rem = idx;
        std::vector<Fp> yv(k + 3, Fp(0, ctx));
        for (u32 j = 1; j <= k + 2; ++j) {
          yv[j] = Fp(u64(rem % lim[j]), ctx);
          rem /= lim[j];
        }
        Fp t = yv[k + 1], z = yv[k + 2];
        std::vector<u64> pt(n + 1, 0);
        for (u32 v = 1; v <= n; ++v) {
          Fp acc = a[v] + z * ap[v];
          for (u32 j = 1; j <= k; ++j) acc += yv[j] * t.pow(u64(v) * j);
          pt[v] = acc.value();
        }
        out.points.push_back(std::move(pt));
      }
    }
  }
  dedupe_points(out.points);
  return out;
}

}  // namespace

HittingSetFile hitting_set_spsp(u32 n, u32 d, u32 k, u32 delta, u32 s, const FpCtx* ctx,
                                const ClassHsOptions& opts) {
  return class_hitting_set("spsp", n, d, k, delta, s, ctx, opts);
}

HittingSetFile hitting_set_spsu(u32 n, u32 d, u32 k, u32 s, const FpCtx* ctx,
                                const ClassHsOptions& opts) {
  return class_hitting_set("spsu", n, d, k, 0, s, ctx, opts);
}

HittingSetFile hitting_set_prod_sparse(u32 n, u32 d, u32 s, const FpCtx* ctx, size_t max_points) {
  ProdSparseParams prm;
  prm.nvars = n;
  prm.factor_degree = std::max(d, 1u);
  prm.factor_count = std::max(s, 1u);
  prm.factor_sparsity = n * d + 1;
  ProdSparseHS hs(prm, ctx);
  HittingSetFile out;
  out.cls = "prod-sparse";
  out.nvars = n;
  out.degree = d;
  out.k = 1;
  out.delta = 0;
  out.size_bound = s;
  out.field = ctx->p;
  size_t count = std::min(hs.size(), max_points);
  for (size_t i = 0; i < count; ++i) {
    std::vector<Fp> p = hs.point(i);
    std::vector<u64> raw(p.size());
    for (size_t v = 0; v < p.size(); ++v) raw[v] = p[v].value();
    out.points.push_back(std::move(raw));
  }
  dedupe_points(out.points);
  return out;
}

// --------------------------------------------------------- composed testing

namespace {

struct PhiPipeline {
  FaithfulMap phi;
  TrdegResult trdeg;
};

PhiPipeline build_phi_for(const std::vector<ProductCircuit<Fp>>& T, const FpCtx* ctx) {
  Fp zero(0, ctx);
  std::vector<PolyF> expanded;
  ExpandOptions opts{expansion_cap_from_env()};
  u32 nvars = 1, d = 1;
  for (auto& pr : T) {
    PolyF p = expand_to_sparse(CircuitExpr<Fp>(pr), zero, opts);
    if (!p.is_zero()) d = std::max(d, std::max(p.total_degree(), 1u));
    for (u32 v : p.vars_used()) nvars = std::max(nvars, v);
    expanded.push_back(std::move(p));
  }
  TrdegResult tr = trdeg_basis(expanded, ctx);

  std::vector<Fp> a(nvars + 1, Fp(0, ctx));
  std::vector<Fp> ap(nvars + 1, Fp(0, ctx));
  if (tr.rank > 0) {
    std::vector<ProductCircuit<Fp>> basis;
    for (size_t bi : tr.basis) basis.push_back(T[bi]);
    ShiftMap psi = build_psi(basis, ctx);
    a = psi.point;
    a.resize(nvars + 1, Fp(0, ctx));
    u32 D = tr.rank * (d - 1) + 1;
    RatioCircuit F = build_F(basis, tr.witness_cols, psi, D, ctx);
    GridSource grid(nvars, std::min<u64>(u64(d) * tr.rank + 2, ctx->p), ctx);
    ap = find_rank_preserving_point(F, nvars, grid, ctx);
    ap.resize(nvars + 1, Fp(0, ctx));
  }
  PhiPipeline out{build_faithful_phi(std::max(tr.rank, 1u), a, ap, nvars, d, ctx), tr};
  return out;
}

}  // namespace

Verdict pit_composed(const PolyF& C, const std::vector<ProductCircuit<Fp>>& T, const FpCtx* ctx) {
  Fp zero(0, ctx);
  ExpandOptions opts{expansion_cap_from_env()};
  PhiPipeline pl = build_phi_for(T, ctx);

  // compose C with the mapped products
  std::map<u32, PolyF> images;
  for (size_t i = 0; i < T.size(); ++i) {
    PolyF t = expand_to_sparse(CircuitExpr<Fp>(T[i]), zero, opts);
    images.emplace(u32(i + 1), pl.phi.apply(t));
  }
  PolyF E = C.compose(images);
  u32 m = pl.phi.k + 2;
  u32 dbound = E.is_zero() ? 1 : E.total_degree() + 1;
  if (u64(dbound) > ctx->p)
    fail("field-too-small", "image grid needs degree+1 field elements");
  return pit_trivial(
      [&](const std::vector<Fp>& pt) { return E.eval(pt); }, m, dbound, ctx);
}

Verdict pit_jacobian(const TopSumCircuit<Fp>& f, const FpCtx* ctx) {
  Fp zero(0, ctx), one(1, ctx);
  // C(y_1..y_k) = y_1 + ... + y_k composed with the products
  PolyF C(zero);
  for (size_t i = 0; i < f.terms.size(); ++i)
    C = C + PolyF::variable(u32(i + 1), one);
  return pit_composed(C, f.terms, ctx);
}

}  // namespace pitkit
