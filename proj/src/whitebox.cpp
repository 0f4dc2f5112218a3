#include "pitkit/whitebox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "pitkit/parscan.hpp"

namespace pitkit {

// ------------------------------------------------------------- grid testing

Verdict pit_trivial(const BlackboxEval& eval, u32 nvars, u32 d, const FpCtx* ctx) {
  if (d == 0) fail("unsupported-parameters", "degree bound must be positive");
  if (ctx->p < d) fail("field-too-small", "grid needs " + std::to_string(d) + " field elements");
  size_t total = 1;
  for (u32 i = 0; i < nvars; ++i) {
    if (total > (size_t(1) << 40) / d) fail("unsupported-parameters", "grid too large");
    total *= d;
  }
  auto point_at = [&](size_t idx) {
    std::vector<Fp> pt(nvars + 1, Fp(0, ctx));
    // lexicographic order: x1 is the most significant digit
    for (u32 v = nvars; v >= 1; --v) {
      pt[v] = Fp(u64(idx % d), ctx);
      idx /= d;
    }
    return pt;
  };
  size_t hit = first_hit(total, [&](size_t idx) { return !eval(point_at(idx)).is_zero(); });
  if (hit == SIZE_MAX) return Verdict::zero();
  return Verdict::nonzero_at(point_at(hit), "grid");
}

// --------------------------------------------------------------- sparse map

u64 sparse_r_bound(u32 m, u32 n, u32 d) {
  long double v = (long double)m * n * log2l((long double)d);
  u64 r = (u64)ceill(v * v);
  return std::max<u64>(r, 1);
}

Verdict pit_sparse_kronecker(const PolyF& f, u32 m, u32 d) {
  if (f.is_zero()) return Verdict::zero();
  if (d < 2) fail("unsupported-parameters", "individual degree bound must be >= 2");
  if (f.sparsity() > m)
    fail("unsupported-parameters", "sparsity " + std::to_string(f.sparsity()) + " exceeds bound");
  auto vs = f.vars_used();
  u32 n = vs.empty() ? 1 : vs.back();
  for (u32 v : vs)
    if (f.deg_in(v) >= d)
      fail("unsupported-parameters", "individual degree must be < " + std::to_string(d));
  u64 R = sparse_r_bound(m, n, d);
  for (u64 r = 1; r <= R; ++r) {
    // exponent of x_i in the cycle: d^{i-1} mod r
    std::vector<u64> ev(n + 1, 0);
    u64 cur = 1 % r;
    for (u32 v = 1; v <= n; ++v) {
      ev[v] = cur;
      cur = (cur * (d % r)) % r;
    }
    std::map<u64, Fp> img;
    for (auto& [mon, c] : f.terms()) {
      u64 e = 0;
      for (auto& [v, ex] : mon.exps()) e = (e + u64(ex) * ev[v]) % r;
      auto it = img.find(e);
      if (it == img.end()) img.emplace(e, c);
      else it->second += c;
    }
    for (auto& [e, c] : img)
      if (!c.is_zero()) return Verdict::nonzero_because("r=" + std::to_string(r));
  }
  return Verdict::zero();
}

// --------------------------------------------------------------- hitting set

ProdSparseHS::ProdSparseHS(const ProdSparseParams& params, const FpCtx* ctx)
    : prm_(params), ctx_(ctx) {
  kron_base_ = prm_.factor_degree + 1;  // strict individual-degree bound per factor
  if (kron_base_ < 2) kron_base_ = 2;
  rmax_ = u64(prm_.factor_count) *
          sparse_r_bound(prm_.factor_sparsity, prm_.nvars, kron_base_);
  // exponents are bounded by base^{n-1}, which caps the image degree
  u64 emax_all = 1;
  for (u32 i = 1; i < prm_.nvars; ++i) {
    emax_all *= kron_base_;
    if (emax_all > (u64(1) << 32)) break;
  }
  u64 hdeg = u64(prm_.factor_degree) * prm_.factor_count;
  r_offset_.assign(rmax_ + 1, 0);
  size_t acc = 0;
  for (u64 r = 1; r <= rmax_; ++r) {
    r_offset_[r - 1] = acc;
    u64 emax = std::min<u64>(r - 1, emax_all);
    u64 pts = hdeg * emax + 1;
    if (pts > ctx_->p)
      fail("field-too-small", "hitting-set grid needs " + std::to_string(pts) + " elements");
    acc += size_t(pts);
  }
  r_offset_[rmax_] = acc;
  total_ = acc;
}

std::vector<Fp> ProdSparseHS::point(size_t idx) const {
  auto it = std::upper_bound(r_offset_.begin(), r_offset_.end(), idx);
  u64 r = u64(it - r_offset_.begin());  // 1-based cycle index
  size_t t = idx - r_offset_[r - 1];
  Fp y(u64(t), ctx_);
  std::vector<Fp> pt(prm_.nvars + 1, Fp(0, ctx_));
  u64 cur = 1 % r;
  for (u32 v = 1; v <= prm_.nvars; ++v) {
    pt[v] = y.pow(cur);
    cur = (cur * (kron_base_ % r)) % r;
  }
  return pt;
}

size_t ProdSparseHS::scan(const BlackboxEval& eval) const {
  return first_hit(total_, [&](size_t i) { return !eval(point(i)).is_zero(); });
}

// -------------------------------------------------------------- span tester

namespace {

// Fully reduced row basis over F^w for the coefficient-span reduction, with
// 32-bit lanes when the modulus allows.  Keeping rows reduced at each
// other's pivots lets a candidate be eliminated in blocked single passes.
template <class T>
class SpanBasisT {
 public:
  SpanBasisT(size_t w, const FpCtx* ctx) : w_(w), ctx_(ctx) {}

  size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }

  bool insert(std::vector<T> v) {
    T p = T(ctx_->p);
    // rows are mutually reduced, so all elimination coefficients can be
    // read up front and applied in blocks of three
    size_t r = rows_.size();
    for (size_t blk = 0; blk < r; blk += 3) {
      size_t cnt = std::min<size_t>(3, r - blk);
      const T* rp[3];
      T cs[3];
      size_t used = 0;
      for (size_t t = 0; t < cnt; ++t) {
        T c = v[pivots_[blk + t]];
        if (!c) continue;
        rp[used] = rows_[blk + t].data();
        cs[used] = c;
        ++used;
      }
      if (used) row_fnma(v.data(), rp, cs, used, w_, p);
    }
    size_t pv = SIZE_MAX;
    for (size_t i = 0; i < w_; ++i)
      if (v[i]) {
        pv = i;
        break;
      }
    if (pv == SIZE_MAX) return false;
    u64 inv = ctx_->inv(v[pv]);
    if (inv != 1)
      for (size_t i = pv; i < w_; ++i) v[i] = T(mulmod(v[i], inv, ctx_->p));
    // back-eliminate the new pivot from existing rows
    for (size_t ri = 0; ri < rows_.size(); ++ri) {
      T c = rows_[ri][pv];
      if (!c) continue;
      const T* rp[1] = {v.data()};
      T cs[1] = {c};
      row_fnma(rows_[ri].data(), rp, cs, 1, w_, p);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pv);
    return true;
  }

  // extend through one diagonal layer given its per-degree coefficients
  void extend_diag(const std::vector<std::vector<T>>& coef_rows, SpanBasisT& next) const {
    T p = T(ctx_->p);
    for (auto& diag : coef_rows) {
      for (auto& v : rows_) {
        if (next.rank() >= w_) return;
        std::vector<T> cand(w_);
        row_hadamard(cand.data(), v.data(), diag.data(), w_, p);
        next.insert(std::move(cand));
      }
    }
  }

  std::vector<std::vector<T>> take() { return std::move(rows_); }

 private:
  size_t w_;
  const FpCtx* ctx_;
  std::vector<std::vector<T>> rows_;
  std::vector<size_t> pivots_;
};

// Span of the coefficient vectors of a diagonal program, seeded from the
// all-ones vector; final verdicts are dot products against boundary weights.
template <class T>
class DiagSpan {
 public:
  DiagSpan(size_t width, const FpCtx* ctx) : w_(width), ctx_(ctx) {}

  // layers given as per-branch univariate coefficient lists
  void run(const std::vector<std::vector<std::vector<Fp>>>& layer_entry_coeffs) {
    SpanBasisT<T> span(w_, ctx_);
    span.insert(std::vector<T>(w_, T(1)));
    for (auto& entries : layer_entry_coeffs) {
      size_t maxdeg = 0;
      for (auto& cs : entries) maxdeg = std::max(maxdeg, cs.size());
      std::vector<std::vector<T>> coef_rows;
      for (size_t c = 0; c < maxdeg; ++c) {
        std::vector<T> diag(w_, 0);
        bool any = false;
        for (size_t b = 0; b < w_; ++b) {
          u64 val = c < entries[b].size() ? entries[b][c].value() : 0;
          diag[b] = T(val);
          any = any || val;
        }
        if (any) coef_rows.push_back(std::move(diag));
      }
      SpanBasisT<T> next(w_, ctx_);
      span.extend_diag(coef_rows, next);
      span = std::move(next);
      if (span.rank() == 0) break;
    }
    rows_ = span.take();
  }

  bool vanishes_against(const std::vector<Fp>& weights) const {
    std::vector<T> c(w_, 0);
    for (size_t i = 0; i < w_; ++i) c[i] = T(weights[i].value());
    for (auto& v : rows_) {
      u64 dot = 0;
      for (size_t i = 0; i < w_; ++i)
        if (v[i]) dot = ctx_->add(dot, mulmod(u64(v[i]), u64(c[i]), ctx_->p));
      if (dot) return false;
    }
    return true;
  }

 private:
  size_t w_;
  const FpCtx* ctx_;
  std::vector<std::vector<T>> rows_;
};

}  // namespace

Verdict pit_roabp(const Roabp<Fp>& r) {
  if (r.lhs.empty()) fail("unsupported-parameters", "roabp without boundary");
  const FpCtx* ctx = r.lhs[0].ctx();
  size_t w = r.width;
  bool narrow = ctx->p < (u64(1) << 31);

  auto run = [&](auto tag) -> Verdict {
    using T = decltype(tag);
    std::vector<std::vector<T>> span;
    {
      std::vector<T> start(w);
      for (size_t i = 0; i < w; ++i) start[i] = T(r.lhs[i].value());
      SpanBasisT<T> b(w, ctx);
      b.insert(std::move(start));
      span = b.take();
    }
    for (size_t li = 0; li < r.layers.size(); ++li) {
      const auto& layer = r.layers[li];
      u32 maxdeg = 0;
      for (auto& e : layer.entries) maxdeg = std::max(maxdeg, e.degree());
      SpanBasisT<T> next(w, ctx);
      for (u32 c = 0; c <= maxdeg && next.rank() < w; ++c) {
        if (layer.diagonal) {
          std::vector<T> diag(w, 0);
          bool any = false;
          for (size_t i = 0; i < w; ++i) {
            const auto& cs = layer.entries[i].coeffs();
            diag[i] = T(c < cs.size() ? cs[c].value() : 0);
            any = any || diag[i];
          }
          if (!any) continue;
          for (auto& v : span) {
            if (next.rank() >= w) break;
            std::vector<T> cand(w);
            row_hadamard(cand.data(), v.data(), diag.data(), w, T(ctx->p));
            next.insert(std::move(cand));
          }
        } else {
          for (auto& v : span) {
            if (next.rank() >= w) break;
            std::vector<T> cand(w, 0);
            for (size_t i = 0; i < w; ++i) {
              if (!v[i]) continue;
              for (size_t j = 0; j < w; ++j) {
                const auto& cs = layer.entries[i * w + j].coeffs();
                u64 mc = c < cs.size() ? cs[c].value() : 0;
                if (mc) cand[j] = T(ctx->add(u64(cand[j]), mulmod(u64(v[i]), mc, ctx->p)));
              }
            }
            next.insert(std::move(cand));
          }
        }
      }
      span = next.take();
      if (span.empty()) return Verdict::zero();
    }
    for (auto& v : span) {
      u64 dot = 0;
      for (size_t i = 0; i < w; ++i)
        if (v[i]) dot = ctx->add(dot, mulmod(u64(v[i]), r.rhs[i].value(), ctx->p));
      if (dot) return Verdict::nonzero_because("coefficient-span");
    }
    return Verdict::zero();
  };
  return narrow ? run(std::uint32_t{}) : run(std::uint64_t{});
}

Verdict pit_powersum_white(const PowerSum& f, u32 nvars) {
  (void)nvars;  // layers cover only the variables actually present
  if (f.is_zero()) return Verdict::zero();
  u32 used = 1;
  for (auto& t : f.terms)
    for (u32 v : t.base.vars_used())
      if (v != f.zvar) used = std::max(used, v);
  return pit_roabp(duality_to_roabp(f, used));
}

// ------------------------------------------------- divide-and-derive engine

PowerSum BloatedTerm::p_combined(u32 trunc) const {
  if (p_factors.empty()) fail("unsupported-parameters", "term without numerator part");
  std::vector<PowerSum> fs;
  for (auto& f : p_factors) fs.push_back(f->ps);
  return powersum_product(fs, trunc);
}

PowerSum BloatedTerm::q_combined(u32 trunc) const {
  if (q_factors.empty()) {
    const FpCtx* ctx = p_factors.at(0)->ps.ctx;
    return ps_const(Fp(1, ctx), p_factors.at(0)->ps.zvar);
  }
  std::vector<PowerSum> fs;
  for (auto& f : q_factors) fs.push_back(f->ps);
  return powersum_product(fs, trunc);
}

namespace {

std::vector<Fp> vec_uni_pow(const std::vector<Fp>& base, u32 t, const FpCtx* ctx) {
  std::vector<Fp> acc{Fp(1, ctx)};
  std::vector<Fp> b = base;
  while (t) {
    auto mul = [&](const std::vector<Fp>& x, const std::vector<Fp>& y) {
      std::vector<Fp> r(x.size() + y.size() - 1, Fp(0, ctx));
      for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
      return r;
    };
    if (t & 1) acc = mul(acc, b);
    t >>= 1;
    if (t) b = mul(b, b);
  }
  return acc;
}

// Scan coefficients of a shared factor until the first provably nonzero
// one; caches valuation and the leading coefficient circuit.  The scan is
// capped by the factor's validity horizon: a truncated factor that vanishes
// below its horizon counts as zero at every precision where it is used.
//
// The coefficient circuits of all scanned z-powers share one dual program:
// evaluating z and the extraction variable changes only the boundary
// weights, so a single coefficient-span reduction serves the whole scan.
void ensure_val(const DidiContext& dc, PsFactor& f) {
  if (f.val || f.identically_zero) return;
  if (f.ps.is_zero()) {
    f.identically_zero = true;
    return;
  }
  const FpCtx* ctx = f.ps.ctx;
  u32 zvar = f.ps.zvar;
  u32 zd = ps_zdeg_bound(f.ps);
  if (f.valid_to != UINT32_MAX) zd = std::min(zd, f.valid_to - 1);
  u32 lo = ps_zval_lower_bound(f.ps);
  if (lo > zd) {
    f.identically_zero = true;
    return;
  }
  size_t slots = size_t(zd - lo) + 1;
  Fp zero(0, ctx), one(1, ctx);

  // z-evaluated summands with one weight per scanned coefficient
  struct ESummand {
    PolyF base;
    u32 exp;
    std::vector<Fp> w;
  };
  std::vector<ESummand> evs;
  std::map<size_t, std::vector<std::vector<Fp>>> row_cache;
  auto rows_for = [&](size_t n) -> const std::vector<std::vector<Fp>>& {
    auto it = row_cache.find(n);
    if (it == row_cache.end())
      it = row_cache.emplace(n, lagrange_basis_rows(interpolation_nodes(ctx, n))).first;
    return it->second;
  };
  auto coef_at = [&](const UniF& u, size_t i) {
    return i < u.coeffs().size() ? u.coeffs()[i] : zero;
  };
  auto push_ev = [&](PolyF base, u32 exp, std::vector<Fp> w) {
    bool any = false;
    for (auto& x : w) any = any || !x.is_zero();
    if (!any) return;
    for (auto& ev : evs) {
      if (ev.exp == exp && ev.base == base) {
        for (size_t s = 0; s < slots; ++s) ev.w[s] += w[s];
        return;
      }
    }
    evs.push_back(ESummand{std::move(base), exp, std::move(w)});
  };
  for (auto& t : f.ps.terms) {
    u32 dzb = t.base.deg_in(zvar);
    if (dzb == 0) {
      std::vector<Fp> w(slots, zero);
      for (size_t s = 0; s < slots; ++s) w[s] = coef_at(t.coef, lo + s);
      push_ev(t.base, t.exp, std::move(w));
      continue;
    }
    size_t n = size_t(dzb) * t.exp + 1;
    auto nodes = interpolation_nodes(ctx, n);
    auto& rows = rows_for(n);
    for (size_t b = 0; b < n; ++b) {
      std::vector<Fp> w(slots, zero);
      for (size_t s = 0; s < slots; ++s) {
        u32 e = lo + u32(s);
        Fp acc = zero;
        for (size_t wd = 0; wd < n && wd <= e; ++wd) acc += coef_at(t.coef, e - wd) * rows[b][wd];
        w[s] = acc;
      }
      push_ev(t.base.subst(zvar, nodes[b]), t.exp, std::move(w));
    }
  }
  if (evs.empty()) {
    f.identically_zero = true;
    return;
  }

  // dual branches; all constant branches merge into a single one
  u32 nv = 1;
  for (auto& ev : evs)
    for (u32 v : ev.base.vars_used())
      if (v != zvar) nv = std::max(nv, v);
  struct Branch {
    std::vector<std::vector<Fp>> entries;  // per-layer coefficient lists
    std::vector<Fp> w;
  };
  std::vector<Branch> branches;
  std::vector<Fp> const_w(slots, zero);
  bool has_const = false;
  for (auto& ev : evs) {
    // per-variable parts, constant folded into the first layer
    std::vector<std::vector<Fp>> gc(nv + 1);
    Fp c0 = zero;
    bool ok = true;
    for (auto& [m, cc] : ev.base.terms()) {
      auto& ex = m.exps();
      if (ex.empty()) {
        c0 += cc;
        continue;
      }
      if (ex.size() != 1 || ex[0].first == zvar || ex[0].first > nv) {
        ok = false;
        break;
      }
      auto& [v, e] = ex[0];
      if (gc[v].size() <= e) gc[v].resize(e + 1, zero);
      gc[v][e] += cc;
    }
    if (!ok) fail("unsupported-parameters", "valuation scan needs sum-of-univariate bases");
    if (gc[1].empty()) gc[1].assign(1, zero);
    gc[1][0] += c0;

    u32 e = ev.exp;
    size_t npts = size_t(e) * (nv - 1) + 1;
    if (ctx->p < npts + 1)
      fail("insufficient-field-size", "duality needs " + std::to_string(npts + 1) + " elements");
    auto nodes = interpolation_nodes(ctx, npts);
    auto& rows = rows_for(npts);
    for (size_t bi = 0; bi < npts; ++bi) {
      Fp alpha = rows[bi][npts - 1];
      if (alpha.is_zero()) continue;
      Fp beta = nodes[bi];
      Fp bn = beta.pow(nv);
      for (u32 t = 0; t <= e; ++t) {
        Fp sc = alpha * binomial_mod(ctx, e, t);
        Fp mb = -bn;
        sc *= mb.pow(e - t);
        if (sc.is_zero()) continue;
        if (t == 0) {
          has_const = true;
          for (size_t s = 0; s < slots; ++s) const_w[s] += sc * ev.w[s];
          continue;
        }
        Branch br;
        for (u32 v = 1; v <= nv; ++v) {
          std::vector<Fp> cs = gc[v].empty() ? std::vector<Fp>{zero} : gc[v];
          cs[0] += beta;
          br.entries.push_back(vec_uni_pow(cs, t, ctx));
        }
        br.w.resize(slots, zero);
        for (size_t s = 0; s < slots; ++s) br.w[s] = sc * ev.w[s];
        branches.push_back(std::move(br));
      }
    }
  }
  if (has_const) {
    Branch br;
    for (u32 v = 1; v <= nv; ++v) br.entries.push_back({one});
    br.w = const_w;
    branches.push_back(std::move(br));
  }
  if (branches.empty()) {
    f.identically_zero = true;
    return;
  }

  size_t width = branches.size();
  std::vector<std::vector<std::vector<Fp>>> layers(nv);
  for (u32 li = 0; li < nv; ++li) {
    layers[li].reserve(width);
    for (auto& br : branches) layers[li].push_back(br.entries[li]);
  }
  auto scan = [&](auto tag) -> std::optional<u32> {
    using T = decltype(tag);
    DiagSpan<T> span(width, ctx);
    span.run(layers);
    for (size_t s = 0; s < slots; ++s) {
      std::vector<Fp> wvec(width, zero);
      for (size_t b = 0; b < width; ++b) wvec[b] = branches[b].w[s];
      if (!span.vanishes_against(wvec)) return lo + u32(s);
    }
    return std::nullopt;
  };
  std::optional<u32> hit = ctx->p < (u64(1) << 31) ? scan(std::uint32_t{}) : scan(std::uint64_t{});
  if (!hit) {
    f.identically_zero = true;
    return;
  }
  f.val = i64(*hit);
  f.lead = powersum_coef(f.ps, *hit);
}

std::optional<i64> term_valuation(const DidiContext& dc, BloatedTerm& t) {
  i64 v = 0;
  for (auto& f : t.p_factors) {
    ensure_val(dc, *f);
    if (f->identically_zero) return std::nullopt;
    v += *f->val;
  }
  for (auto& f : t.q_factors) {
    ensure_val(dc, *f);
    if (f->identically_zero)
      fail("undefined-at-zero", "denominator factor vanished; divisor was not minimal");
    v -= *f->val;
  }
  return v;
}

// Multiset difference by structural equality (shifted product parts).
void cancel_by_value(std::vector<PolyF>& a, std::vector<PolyF>& b) {
  for (size_t i = 0; i < a.size();) {
    bool hit = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) {
        b.erase(b.begin() + j);
        a.erase(a.begin() + i);
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
}

void cancel_by_identity(std::vector<PsFactorPtr>& a, std::vector<PsFactorPtr>& b) {
  for (size_t i = 0; i < a.size();) {
    bool hit = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) {
        b.erase(b.begin() + j);
        a.erase(a.begin() + i);
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
}

Fp shifted_scalar_at_zero(const PolyF& g, const DidiContext& dc) {
  PolyF g0 = g.subst(dc.zvar, Fp(0, dc.ctx));
  if (g0.is_zero() || g0.total_degree() > 0)
    fail("undefined-at-zero", "shifted factor does not reduce to a scalar at z = 0");
  return g0.terms()[0].second;
}

}  // namespace

MinValResult min_valuation(const DidiContext& dc, std::vector<BloatedTerm>& terms, u32 cap) {
  MinValResult r;
  i64 best = INT64_MAX;
  size_t bi = SIZE_MAX;
  for (size_t i = 0; i < terms.size(); ++i) {
    auto v = term_valuation(dc, terms[i]);
    r.term_vals.push_back(v);
    if (v && *v < i64(cap) && *v < best) {
      best = *v;
      bi = i;
    }
  }
  if (bi == SIZE_MAX) {
    r.all_zero = true;
    return r;
  }
  r.index = bi;
  r.value = best;
  return r;
}

Verdict z0_residue_test(const DidiContext& dc, const std::vector<BloatedTerm>& terms,
                        const MinValResult& mv) {
  const FpCtx* ctx = dc.ctx;
  Fp one(1, ctx);
  size_t m = mv.index;
  i64 vm = mv.value;
  // running fraction, starting from the "+1"
  PowerSum N = ps_const(one, dc.zvar);
  PowerSum D = ps_const(one, dc.zvar);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i == m) continue;
    if (!mv.term_vals[i]) continue;  // identically zero term
    i64 vnet = *mv.term_vals[i] - vm;
    if (vnet < 0) fail("undefined-at-zero", "divisor term does not have minimal valuation");
    if (vnet > 0) continue;  // ratio vanishes at z = 0
    // cancelled product parts
    std::vector<PolyF> ul = terms[i].u_factors, vl = terms[i].v_factors;
    std::vector<PolyF> um = terms[m].u_factors, vm2 = terms[m].v_factors;
    ul.insert(ul.end(), vm2.begin(), vm2.end());
    vl.insert(vl.end(), um.begin(), um.end());
    cancel_by_value(ul, vl);
    Fp scalar = one;
    for (auto& g : ul) scalar *= shifted_scalar_at_zero(g, dc);
    for (auto& g : vl) scalar *= shifted_scalar_at_zero(g, dc).inv();
    // cancelled power-sum parts
    std::vector<PsFactorPtr> pl = terms[i].p_factors, ql = terms[i].q_factors;
    pl.insert(pl.end(), terms[m].q_factors.begin(), terms[m].q_factors.end());
    ql.insert(ql.end(), terms[m].p_factors.begin(), terms[m].p_factors.end());
    cancel_by_identity(pl, ql);
    PowerSum ni = ps_const(scalar, dc.zvar);
    for (auto& f : pl) ni = ps_mul(ni, *f->lead);
    PowerSum di = ps_const(one, dc.zvar);
    for (auto& f : ql) di = ps_mul(di, *f->lead);
    // N/D += ni/di
    N = ps_add(ps_mul(N, di), ps_mul(ni, D));
    D = ps_mul(D, di);
  }
  if (pit_powersum_white(N, dc.nvars).nonzero)
    return Verdict::nonzero_because("z0-residue");
  return Verdict::zero();
}

namespace {

struct LevelBuildResult {
  std::vector<BloatedTerm> terms;
};

// One divide-and-derive descent: divide by the minimal-valuation term and
// differentiate in z, building the next level's bloated terms.  Product
// truncation is sound only when the built level is terminal (its circuits
// feed valuation scans but no further products) and when the truncation
// margin covers the denominator valuation; both hold exactly for the last
// descent, so truncation is applied there and nowhere else.
std::vector<BloatedTerm> build_next_level(const DidiContext& dc,
                                          const std::vector<BloatedTerm>& terms, size_t m,
                                          u32 dnext) {
  bool terminal = terms.size() == 2;
  std::vector<BloatedTerm> out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i == m) continue;
    BloatedTerm nt;
    nt.u_factors = terms[i].u_factors;
    nt.v_factors = terms[i].v_factors;
    nt.u_factors.insert(nt.u_factors.end(), terms[m].v_factors.begin(), terms[m].v_factors.end());
    nt.v_factors.insert(nt.v_factors.end(), terms[m].u_factors.begin(), terms[m].u_factors.end());
    cancel_by_value(nt.u_factors, nt.v_factors);

    // ratio's power-sum factor lists, mutually cancelled
    std::vector<PsFactorPtr> pr = terms[i].p_factors, qr = terms[i].q_factors;
    pr.insert(pr.end(), terms[m].q_factors.begin(), terms[m].q_factors.end());
    qr.insert(qr.end(), terms[m].p_factors.begin(), terms[m].p_factors.end());
    cancel_by_identity(pr, qr);

    u32 trunc = UINT32_MAX;
    if (terminal) {
      // margin 2*v(prod qr) covers the squared denominator below
      u64 vq = 0;
      for (auto& f : qr) vq += u64(std::max<i64>(f->val.value_or(0), 0));
      trunc = dnext + u32(2 * vq);
    }

    // dlog of the shifted product parts
    PowerSum S = ps_zero(dc.ctx, dc.zvar);
    for (auto& g : nt.u_factors) S = ps_add(S, dlog_expand(g, dnext, dc.zvar, dc.ctx).value);
    for (auto& g : nt.v_factors) S = ps_sub(S, dlog_expand(g, dnext, dc.zvar, dc.ctx).value);

    // numerator of dlog(ratio) over the common denominator prod(pr+qr):
    //   S*prod(all) + sum_{F in pr} dF*prod(all\F) - sum_{F in qr} dF*prod(all\F)
    std::vector<PsFactorPtr> all = pr;
    all.insert(all.end(), qr.begin(), qr.end());
    PowerSum full = ps_const(Fp(1, dc.ctx), dc.zvar);
    for (auto& f : all) full = ps_mul(full, f->ps, trunc);
    PowerSum N = ps_mul(S, full, trunc);
    for (size_t fi = 0; fi < all.size(); ++fi) {
      PowerSum others = ps_const(Fp(1, dc.ctx), dc.zvar);
      for (size_t fj = 0; fj < all.size(); ++fj)
        if (fj != fi) others = ps_mul(others, all[fj]->ps, trunc);
      PowerSum contrib = ps_mul(powersum_derive(all[fi]->ps), others, trunc);
      bool positive = fi < pr.size();
      N = positive ? ps_add(N, contrib) : ps_sub(N, contrib);
    }

    // the ratio factors cancel against the dlog denominator:
    //   T_new = (U/V) * N / (prod(qr)^2)
    auto nf = std::make_shared<PsFactor>();
    nf->ps = std::move(N);
    nf->valid_to = trunc;
    nt.p_factors.push_back(std::move(nf));
    nt.q_factors = qr;
    nt.q_factors.insert(nt.q_factors.end(), qr.begin(), qr.end());
    out.push_back(std::move(nt));
  }
  return out;
}

size_t term_size(const BloatedTerm& t) {
  size_t s = 0;
  for (auto& g : t.u_factors) s += g.sparsity();
  for (auto& g : t.v_factors) s += g.sparsity();
  for (auto& f : t.p_factors) s += f->ps.size();
  for (auto& f : t.q_factors) s += f->ps.size();
  return s;
}

bool uv_scalars_ok(const DidiContext& dc, const BloatedTerm& t) {
  auto ok = [&](const PolyF& g) {
    PolyF g0 = g.subst(dc.zvar, Fp(0, dc.ctx));
    return !g0.is_zero() && g0.total_degree() == 0;
  };
  for (auto& g : t.u_factors)
    if (!ok(g)) return false;
  for (auto& g : t.v_factors)
    if (!ok(g)) return false;
  return true;
}

}  // namespace

Verdict pit_divide_derive(const TopSumCircuit<Fp>& f, const FpCtx* ctx, DidiTrace* trace) {
  Fp zero(0, ctx), one(1, ctx);
  const u32 zvar = 0;
  u32 nvars = max_var(CircuitExpr<Fp>(f));
  if (nvars == 0) nvars = 1;

  // Drop syntactically zero terms (a product with a vanished factor).
  std::vector<std::vector<PolyF>> factors;
  for (auto& pr : f.terms) {
    std::vector<PolyF> fs;
    bool iszero = false;
    for (auto& fac : pr.factors) {
      PolyF p = factor_to_sparse(fac, zero);
      if (p.is_zero()) {
        iszero = true;
        break;
      }
      fs.push_back(std::move(p));
    }
    if (!iszero) factors.push_back(std::move(fs));
  }
  if (factors.empty()) {
    if (trace) trace->branch = "all-terms-zero";
    return Verdict::zero();
  }
  size_t k = factors.size();

  // Degree bound d with deg f < d, and the level-1 precision d_1 = d.
  u32 d = 1;
  u32 max_fac_deg = 1, fac_count = 0;
  size_t max_fac_sp = 1;
  for (auto& fs : factors) {
    u32 td = 0;
    for (auto& g : fs) {
      td += g.total_degree();
      max_fac_deg = std::max(max_fac_deg, g.total_degree());
      max_fac_sp = std::max(max_fac_sp, g.sparsity());
      ++fac_count;
    }
    d = std::max(d, td + 1);
  }
  if (ctx->p < d) fail("char-too-small", "divide-and-derive needs char >= degree bound");
  if (trace) trace->degree_bound = d;

  // Step 1+2: scan the product-of-sparse hitting set; certify f nonzero
  // opportunistically, and find a point where every term is nonzero.
  ProdSparseParams prm;
  prm.nvars = nvars;
  prm.factor_degree = std::max(max_fac_deg, 1u);
  prm.factor_count = std::max(fac_count, 1u);
  prm.factor_sparsity = u32(std::max<size_t>(max_fac_sp, 1));
  ProdSparseHS hs(prm, ctx);
  std::vector<Fp> shift;
  for (size_t idx = 0; idx < hs.size(); ++idx) {
    std::vector<Fp> pt = hs.point(idx);
    Fp fval = zero;
    bool all_nonzero = true;
    for (auto& fs : factors) {
      Fp tv = one;
      for (auto& g : fs) tv *= g.eval(pt);
      fval += tv;
      if (tv.is_zero()) all_nonzero = false;
    }
    if (!fval.is_zero()) {
      if (trace) trace->branch = "evaluation";
      return Verdict::nonzero_at(pt, "evaluation");
    }
    if (all_nonzero) {
      shift = pt;
      break;
    }
  }
  if (shift.empty())
    fail("no-point-found", "no shift point with all terms nonzero; is some term zero?");
  if (trace) trace->shift_point = shift;

  // k = 1 would have been certified during the scan (T_1(a) = f(a) != 0).
  // Apply the shift map x_i -> z*x_i + a_i and build level 1.
  std::map<u32, PolyF> phi_map;
  for (u32 v = 1; v <= nvars; ++v) {
    PolyF img = PolyF::variable(v, one).mul_mon(Mon::var(zvar, 1), one) + PolyF::constant(shift[v]);
    phi_map.emplace(v, std::move(img));
  }
  std::vector<std::vector<PolyF>> shifted(k);
  for (size_t i = 0; i < k; ++i)
    for (auto& g : factors[i]) shifted[i].push_back(g.compose(phi_map));

  DidiContext dc{ctx, zvar, nvars};
  u32 dj = d;
  std::vector<BloatedTerm> terms;
  for (size_t i = 0; i + 1 < k; ++i) {
    BloatedTerm t;
    t.u_factors = shifted[i];
    t.v_factors = shifted[k - 1];
    cancel_by_value(t.u_factors, t.v_factors);
    PowerSum N = ps_zero(ctx, zvar);
    for (auto& g : t.u_factors) N = ps_add(N, dlog_expand(g, dj, zvar, ctx).value);
    for (auto& g : t.v_factors) N = ps_sub(N, dlog_expand(g, dj, zvar, ctx).value);
    auto nf = std::make_shared<PsFactor>();
    nf->ps = std::move(N);
    t.p_factors.push_back(std::move(nf));
    terms.push_back(std::move(t));
  }

  u32 level = 1;
  while (true) {
    MinValResult mv = min_valuation(dc, terms, dj);
    if (trace) {
      DidiLevelTrace lt;
      lt.level = level;
      lt.precision = dj;
      for (auto& v : mv.term_vals) lt.valuations.push_back(v.value_or(-1));
      for (auto& t : terms) lt.term_sizes.push_back(term_size(t));
      lt.uv_scalars_ok = true;
      for (auto& t : terms) lt.uv_scalars_ok = lt.uv_scalars_ok && uv_scalars_ok(dc, t);
      lt.divisor = mv.all_zero ? SIZE_MAX : mv.index;
      trace->levels.push_back(std::move(lt));
    }
    if (mv.all_zero) {
      if (trace) trace->branch = "all-terms-vanish@level-" + std::to_string(level);
      return Verdict::zero();
    }
    // prune terms that vanish mod z^{d_j}
    std::vector<BloatedTerm> live;
    std::vector<i64> live_vals;
    for (size_t i = 0; i < terms.size(); ++i) {
      if (!mv.term_vals[i]) continue;
      if (*mv.term_vals[i] >= i64(dj)) continue;
      live.push_back(std::move(terms[i]));
      live_vals.push_back(*mv.term_vals[i]);
    }
    terms = std::move(live);
    if (terms.size() == 1) {
      // single surviving term with valuation < d_j: nonzero mod z^{d_j}
      if (trace) trace->branch = "final-valuation@level-" + std::to_string(level);
      return Verdict::nonzero_because("final-valuation");
    }
    // recompute argmin over survivors
    MinValResult mv2;
    mv2.term_vals.assign(live_vals.size(), std::nullopt);
    i64 best = INT64_MAX;
    size_t bi = 0;
    for (size_t i = 0; i < live_vals.size(); ++i) {
      mv2.term_vals[i] = live_vals[i];
      if (live_vals[i] < best) {
        best = live_vals[i];
        bi = i;
      }
    }
    mv2.index = bi;
    mv2.value = best;

    Verdict res = z0_residue_test(dc, terms, mv2);
    if (res.nonzero) {
      if (trace) trace->branch = "z0-residue@level-" + std::to_string(level);
      return Verdict::nonzero_because("z0-residue@level-" + std::to_string(level));
    }
    i64 dnext = i64(dj) - mv2.value - 1;
    if (dnext <= 0) {
      if (trace) trace->branch = "precision-exhausted@level-" + std::to_string(level);
      return Verdict::zero();
    }
    terms = build_next_level(dc, terms, mv2.index, u32(dnext));
    dj = u32(dnext);
    ++level;
  }
}

}  // namespace pitkit
