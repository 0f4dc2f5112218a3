#ifndef PITKIT_POLY_HPP
#define PITKIT_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pitkit/errors.hpp"
#include "pitkit/field.hpp"

namespace pitkit {

// Coefficient-ring glue.  Fp elements carry their modulus context; Rat is
// context-free.  Every polynomial carries a "zero" prototype as field tag.
inline bool same_field(const Fp& a, const Fp& b) { return a.ctx() == b.ctx(); }
inline bool same_field(const Rat&, const Rat&) { return true; }
inline Fp one_like(const Fp& z) { return Fp(1, z.ctx()); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Fp from_i64_like(const Fp& z, i64 v) { return Fp::of(v, z.ctx()); }
inline Rat from_i64_like(const Rat&, i64 v) { return Rat(v); }

// ------------------------------------------------------------------ Monomial

// Sparse exponent vector; no zero exponents stored, vars ascending.
class Mon {
 public:
  Mon() = default;
  explicit Mon(std::vector<std::pair<u32, u32>> e) : e_(std::move(e)) {
    std::sort(e_.begin(), e_.end());
    std::erase_if(e_, [](auto& p) { return p.second == 0; });
  }
  static Mon var(u32 v, u32 exp = 1) {
    if (exp == 0) return Mon();
    return Mon({{v, exp}});
  }

  const std::vector<std::pair<u32, u32>>& exps() const { return e_; }
  bool is_one() const { return e_.empty(); }
  u32 total_degree() const {
    u32 d = 0;
    for (auto& [v, e] : e_) d += e;
    return d;
  }
  u32 deg_in(u32 var) const {
    for (auto& [v, e] : e_)
      if (v == var) return e;
    return 0;
  }

  Mon operator*(const Mon& o) const {
    std::vector<std::pair<u32, u32>> r;
    r.reserve(e_.size() + o.e_.size());
    size_t i = 0, j = 0;
    while (i < e_.size() && j < o.e_.size()) {
      if (e_[i].first < o.e_[j].first) r.push_back(e_[i++]);
      else if (e_[i].first > o.e_[j].first) r.push_back(o.e_[j++]);
      else {
        r.push_back({e_[i].first, e_[i].second + o.e_[j].second});
        ++i, ++j;
      }
    }
    for (; i < e_.size(); ++i) r.push_back(e_[i]);
    for (; j < o.e_.size(); ++j) r.push_back(o.e_[j]);
    Mon m;
    m.e_ = std::move(r);
    return m;
  }

  // Remove one variable entirely (used when substituting it away).
  Mon without(u32 var) const {
    Mon m;
    for (auto& p : e_)
      if (p.first != var) m.e_.push_back(p);
    return m;
  }

  bool operator==(const Mon& o) const { return e_ == o.e_; }
  bool operator!=(const Mon& o) const { return !(*this == o); }

  std::string str(const std::string& varprefix = "x") const;

 private:
  std::vector<std::pair<u32, u32>> e_;
};

// Graded lexicographic order: total degree first, then lex with lower
// variable index dominating.  Ties broken so the order is total.
struct GrlexLess {
  bool operator()(const Mon& a, const Mon& b) const {
    u32 da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    auto &ea = a.exps(), &eb = b.exps();
    size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
      if (ea[i].first != eb[j].first) {
        // Variable present on one side only: the side with the lower-index
        // variable has the larger lex rank.
        return ea[i].first > eb[j].first;
      }
      if (ea[i].second != eb[j].second) return ea[i].second < eb[j].second;
      ++i, ++j;
    }
    return i == ea.size() && j != eb.size() ? true : false;
  }
};

struct MonHash {
  size_t operator()(const Mon& m) const {
    size_t h = 1469598103934665603ull;
    for (auto& [v, e] : m.exps()) {
      h = (h ^ v) * 1099511628211ull;
      h = (h ^ e) * 1099511628211ull;
    }
    return h;
  }
};

// --------------------------------------------------------------- SparsePoly

// Canonical multivariate polynomial: grlex-sorted terms, no zero
// coefficients.  The zero polynomial has no terms.  Carries a zero element
// of its coefficient ring as field tag.
template <class K>
class SparsePoly {
 public:
  using Term = std::pair<Mon, K>;

  explicit SparsePoly(K zero) : zero_(std::move(zero)) {}

  static SparsePoly constant(const K& c) {
    SparsePoly p(c - c);
    if (!c.is_zero()) p.terms_.push_back({Mon(), c});
    return p;
  }
  static SparsePoly variable(u32 v, const K& one) {
    SparsePoly p(one - one);
    p.terms_.push_back({Mon::var(v), one});
    return p;
  }
  static SparsePoly from_terms(std::vector<Term> ts, const K& zero) {
    SparsePoly p(zero);
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  const K& field_zero() const { return zero_; }
  bool is_zero() const { return terms_.empty(); }
  size_t sparsity() const { return terms_.size(); }
  u32 total_degree() const {
    u32 d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
  }
  u32 deg_in(u32 var) const {
    u32 d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.deg_in(var));
    return d;
  }
  // Maximum power of `var` dividing the polynomial; requires nonzero input.
  u32 min_deg_in(u32 var) const {
    if (is_zero()) fail("zero-input", "valuation of the zero polynomial");
    u32 d = UINT32_MAX;
    for (auto& [m, c] : terms_) d = std::min(d, m.deg_in(var));
    return d;
  }
  std::vector<u32> vars_used() const {
    std::vector<u32> vs;
    for (auto& [m, c] : terms_)
      for (auto& [v, e] : m.exps()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  const K* coeff(const Mon& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Mon& mm) { return GrlexLess{}(t.first, mm); });
    if (it != terms_.end() && it->first == m) return &it->second;
    return nullptr;
  }
  K coeff_or_zero(const Mon& m) const {
    const K* c = coeff(m);
    return c ? *c : zero_;
  }

  SparsePoly operator+(const SparsePoly& o) const { return merged(o, false); }
  SparsePoly operator-(const SparsePoly& o) const { return merged(o, true); }
  SparsePoly operator-() const {
    SparsePoly r(zero_);
    r.terms_.reserve(terms_.size());
    for (auto& [m, c] : terms_) r.terms_.push_back({m, -c});
    return r;
  }
  SparsePoly operator*(const SparsePoly& o) const {
    check_field(o);
    SparsePoly r(zero_);
    if (is_zero() || o.is_zero()) return r;
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (auto& [ma, ca] : terms_)
      for (auto& [mb, cb] : o.terms_) r.terms_.push_back({ma * mb, ca * cb});
    r.normalize();
    return r;
  }
  SparsePoly scaled(const K& c) const {
    SparsePoly r(zero_);
    if (c.is_zero()) return r;
    for (auto& [m, cc] : terms_) {
      K nc = cc * c;
      if (!nc.is_zero()) r.terms_.push_back({m, nc});
    }
    return r;
  }
  SparsePoly mul_mon(const Mon& m, const K& c) const {
    SparsePoly r(zero_);
    if (c.is_zero()) return r;
    for (auto& [mm, cc] : terms_) {
      K nc = cc * c;
      if (!nc.is_zero()) r.terms_.push_back({mm * m, nc});
    }
    r.normalize();
    return r;
  }
  SparsePoly pow(u32 e) const {
    SparsePoly acc = constant(one_like(zero_));
    SparsePoly base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // Exact evaluation; point[v] must be set for every variable used.
  K eval(const std::vector<K>& point) const {
    K acc = zero_;
    for (auto& [m, c] : terms_) {
      K t = c;
      for (auto& [v, e] : m.exps()) {
        if (v >= point.size()) fail("missing-assignment", "no value for variable " + std::to_string(v));
        t = t * pow_k(point[v], e);
      }
      acc = acc + t;
    }
    return acc;
  }

  // Partial evaluation of one variable.
  SparsePoly subst(u32 var, const K& val) const {
    SparsePoly r(zero_);
    for (auto& [m, c] : terms_) {
      u32 e = m.deg_in(var);
      K nc = e ? c * pow_k(val, e) : c;
      if (!nc.is_zero()) r.terms_.push_back({m.without(var), nc});
    }
    r.normalize();
    return r;
  }

  // Substitute every variable by a polynomial image (ring homomorphism).
  // Variables missing from `images` map to themselves.
  SparsePoly compose(const std::map<u32, SparsePoly>& images) const {
    SparsePoly r(zero_);
    for (auto& [m, c] : terms_) {
      SparsePoly t = constant(c);
      for (auto& [v, e] : m.exps()) {
        auto it = images.find(v);
        if (it == images.end()) t = t * variable(v, one_like(zero_)).pow(e);
        else t = t * it->second.pow(e);
      }
      r = r + t;
    }
    return r;
  }

  SparsePoly derivative(u32 var) const {
    SparsePoly r(zero_);
    for (auto& [m, c] : terms_) {
      u32 e = m.deg_in(var);
      if (e == 0) continue;
      K nc = c * from_i64_like(zero_, i64(e));
      if (nc.is_zero()) continue;
      Mon nm = m.without(var);
      if (e > 1) nm = nm * Mon::var(var, e - 1);
      r.terms_.push_back({nm, nc});
    }
    r.normalize();
    return r;
  }

  // Coefficients grouped by the exponent of one variable.
  std::map<u32, SparsePoly> coeffs_in(u32 var) const {
    std::map<u32, SparsePoly> out;
    for (auto& [m, c] : terms_) {
      u32 e = m.deg_in(var);
      auto it = out.find(e);
      if (it == out.end()) it = out.emplace(e, SparsePoly(zero_)).first;
      it->second.terms_.push_back({m.without(var), c});
    }
    for (auto& [e, p] : out) p.normalize();
    return out;
  }

  std::string str(const std::string& varprefix = "x") const;

 private:
  void check_field(const SparsePoly& o) const {
    if (!same_field(zero_, o.zero_)) fail("field-mismatch", "operands over different fields");
  }
  static K pow_k(const K& a, u32 e) {
    K r = one_like(a);
    K b = a;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  SparsePoly merged(const SparsePoly& o, bool negate) const {
    check_field(o);
    SparsePoly r(zero_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    GrlexLess lt;
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      if (lt(terms_[i].first, o.terms_[j].first)) r.terms_.push_back(terms_[i++]);
      else if (lt(o.terms_[j].first, terms_[i].first)) {
        r.terms_.push_back({o.terms_[j].first, negate ? -o.terms_[j].second : o.terms_[j].second});
        ++j;
      } else {
        K c = negate ? terms_[i].second - o.terms_[j].second : terms_[i].second + o.terms_[j].second;
        if (!c.is_zero()) r.terms_.push_back({terms_[i].first, c});
        ++i, ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j)
      r.terms_.push_back({o.terms_[j].first, negate ? -o.terms_[j].second : o.terms_[j].second});
    return r;
  }
  void normalize() {
    GrlexLess lt;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return lt(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) out.back().second = out.back().second + t.second;
      else out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.second.is_zero(); });
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
  K zero_;
};

using PolyF = SparsePoly<Fp>;
using PolyQ = SparsePoly<Rat>;

// ------------------------------------------------------------------ UniPoly

// Dense univariate polynomial in one designated variable.
template <class K>
class UniPoly {
 public:
  UniPoly(u32 var, std::vector<K> coeffs) : var_(var), c_(std::move(coeffs)) { trim(); }

  u32 var() const { return var_; }
  const std::vector<K>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  u32 degree() const { return c_.empty() ? 0 : u32(c_.size() - 1); }

  K eval(const K& x) const {
    if (c_.empty()) return x - x;
    K acc = c_.back();
    for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  SparsePoly<K> to_sparse(const K& zero) const {
    std::vector<typename SparsePoly<K>::Term> ts;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) ts.push_back({Mon::var(var_, u32(i)), c_[i]});
    return SparsePoly<K>::from_terms(std::move(ts), zero);
  }

  bool operator==(const UniPoly& o) const { return var_ == o.var_ && c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  u32 var_;
  std::vector<K> c_;
};

using UniF = UniPoly<Fp>;
using UniQ = UniPoly<Rat>;

// Unique polynomial of degree < n through n points (Lagrange).
template <class K>
UniPoly<K> interpolate(u32 var, const std::vector<std::pair<K, K>>& pts) {
  if (pts.empty()) fail("unsupported-parameters", "interpolate needs at least one point");
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i].first == pts[j].first) fail("duplicate-abscissa", "repeated interpolation node");
  K zero = pts[0].second - pts[0].second;
  K one = one_like(zero);
  std::vector<K> acc(pts.size(), zero);
  for (size_t i = 0; i < pts.size(); ++i) {
    // basis polynomial for node i, times the value there
    std::vector<K> num{one};
    K denom = one;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      std::vector<K> nxt(num.size() + 1, zero);
      for (size_t t = 0; t < num.size(); ++t) {
        nxt[t] = nxt[t] - num[t] * pts[j].first;
        nxt[t + 1] = nxt[t + 1] + num[t];
      }
      num = std::move(nxt);
      denom = denom * (pts[i].first - pts[j].first);
    }
    K scale = pts[i].second * denom.inv();
    for (size_t t = 0; t < num.size(); ++t) acc[t] = acc[t] + num[t] * scale;
  }
  return UniPoly<K>(var, std::move(acc));
}

// Row `b` holds the coefficients of the Lagrange basis polynomial for node
// b, so coef_{y^e}(f) = sum_b W[b][e] * f(node_b).
std::vector<std::vector<Fp>> lagrange_basis_rows(const std::vector<Fp>& nodes);

// Interpolation nodes 0,1,2,...,count-1 in F_p.
std::vector<Fp> interpolation_nodes(const FpCtx* ctx, size_t count);

// --------------------------------------------------------- rational functions

// Numerator/denominator pair; never reduced to lowest terms.
template <class K>
struct RationalFunction {
  SparsePoly<K> num;
  SparsePoly<K> den;

  RationalFunction(SparsePoly<K> n, SparsePoly<K> d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) fail("zero-input", "zero denominator");
  }
  static RationalFunction whole(SparsePoly<K> n) {
    auto one = SparsePoly<K>::constant(one_like(n.field_zero()));
    return RationalFunction(std::move(n), std::move(one));
  }
  bool is_zero() const { return num.is_zero(); }
  RationalFunction operator+(const RationalFunction& o) const {
    return RationalFunction(num * o.den + o.num * den, den * o.den);
  }
  RationalFunction operator-(const RationalFunction& o) const {
    return RationalFunction(num * o.den - o.num * den, den * o.den);
  }
  RationalFunction operator*(const RationalFunction& o) const {
    return RationalFunction(num * o.num, den * o.den);
  }
  bool same_value(const RationalFunction& o) const { return num * o.den == o.num * den; }
};

using RatFnF = RationalFunction<Fp>;

// v_z(p/q) = v_z(p) - v_z(q); undefined (error) on the zero function.
template <class K>
i64 valuation(const RationalFunction<K>& f, u32 zvar) {
  if (f.num.is_zero()) fail("zero-input", "valuation of zero is undefined");
  return i64(f.num.min_deg_in(zvar)) - i64(f.den.min_deg_in(zvar));
}

// ------------------------------------------------------------ power series

// Truncated series in `zvar` with rational-function coefficients in the
// remaining variables.  Length exactly D; arithmetic mod z^D.
template <class K>
struct TruncatedSeries {
  u32 zvar;
  u32 precision;
  std::vector<RationalFunction<K>> c;

  TruncatedSeries(u32 z, u32 D, RationalFunction<K> zero_coeff)
      : zvar(z), precision(D), c(D, zero_coeff) {}

  TruncatedSeries mul(const TruncatedSeries& o) const {
    TruncatedSeries r(zvar, precision, RationalFunction<K>::whole(SparsePoly<K>(c[0].num.field_zero())));
    for (u32 i = 0; i < precision; ++i)
      for (u32 j = 0; i + j < precision; ++j) {
        if (c[i].is_zero() || o.c[j].is_zero()) continue;
        r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
      }
    return r;
  }
};

// The unique series of f mod z^D when v_z(f) >= 0, computed by expanding
// the inverse of the denominator's unit part as a geometric series.
template <class K>
TruncatedSeries<K> series_lift(const RationalFunction<K>& f, u32 zvar, u32 D) {
  if (f.num.is_zero()) {
    auto zp = SparsePoly<K>(f.num.field_zero());
    return TruncatedSeries<K>(zvar, D, RationalFunction<K>::whole(zp));
  }
  i64 v = valuation(f, zvar);
  if (v < 0) fail("negative-valuation", "series lift needs v_z(f) >= 0");
  u32 vn = f.num.min_deg_in(zvar), vd = f.den.min_deg_in(zvar);
  u32 shift = vn - vd;

  auto gs = f.num.coeffs_in(zvar);   // g_j, with g_j = 0 for j < vn
  auto hs = f.den.coeffs_in(zvar);
  K zero = f.num.field_zero();
  auto coef_at = [&](std::map<u32, SparsePoly<K>>& m, u32 e) {
    auto it = m.find(e);
    return it == m.end() ? SparsePoly<K>(zero) : it->second;
  };
  SparsePoly<K> h0 = coef_at(hs, vd);
  if (h0.is_zero()) fail("zero-denominator-constant-term", "denominator unit part vanished");

  // A_j / h0^{j+1} are the series coefficients of 1/(h0 + h1 z + ...):
  // the geometric expansion (1 + sum (h_i/h0) z^i)^{-1} in closed recurrence.
  std::vector<SparsePoly<K>> A;
  A.push_back(SparsePoly<K>::constant(one_like(zero)));
  std::vector<SparsePoly<K>> h0pow{SparsePoly<K>::constant(one_like(zero))};
  for (u32 j = 1; j < D; ++j) {
    h0pow.push_back(h0pow.back() * h0);
    SparsePoly<K> acc(zero);
    for (u32 t = 1; t <= j; ++t) {
      auto ht = coef_at(hs, vd + t);
      if (ht.is_zero()) continue;
      acc = acc + ht * A[j - t] * h0pow[t - 1];
    }
    A.push_back(-acc);
  }
  while (h0pow.size() <= D) h0pow.push_back(h0pow.back() * h0);

  TruncatedSeries<K> out(zvar, D, RationalFunction<K>::whole(SparsePoly<K>(zero)));
  for (u32 e = 0; e < D; ++e) {
    if (e < shift) continue;
    u32 m = e - shift;
    SparsePoly<K> numer(zero);
    for (u32 b = 0; b <= m; ++b) {
      auto gm = coef_at(gs, vn + (m - b));
      if (gm.is_zero()) continue;
      numer = numer + gm * A[b] * h0pow[m - b];
    }
    out.c[e] = RationalFunction<K>(std::move(numer), h0pow[m + 1]);
  }
  return out;
}

std::string fp_str(const Fp& v);

}  // namespace pitkit

#endif
