#include "pitkit/circuit.hpp"

#include <cctype>
#include <cstdlib>

namespace pitkit {

size_t expansion_cap_from_env(size_t fallback) {
  const char* e = std::getenv("PITKIT_EXPANSION_CAP");
  if (!e || !*e) return fallback;
  char* end = nullptr;
  unsigned long long v = std::strtoull(e, &end, 10);
  if (end == e || v == 0) return fallback;
  return size_t(v);
}

// ------------------------------------------------------------------- lexing

namespace {

struct Token {
  enum Kind { LP, RP, ATOM, END } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_ws();
    if (pos_ >= s_.size()) return {Token::END, "", line_, col_};
    char c = s_[pos_];
    if (c == '(') {
      Token t{Token::LP, "(", line_, col_};
      advance();
      return t;
    }
    if (c == ')') {
      Token t{Token::RP, ")", line_, col_};
      advance();
      return t;
    }
    Token t{Token::ATOM, "", line_, col_};
    while (pos_ < s_.size() && !std::isspace((unsigned char)s_[pos_]) && s_[pos_] != '(' &&
           s_[pos_] != ')') {
      t.text += s_[pos_];
      advance();
    }
    return t;
  }

  Token peek() {
    size_t p = pos_;
    int l = line_, c = col_;
    Token t = next();
    pos_ = p;
    line_ = l;
    col_ = c;
    return t;
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {  // comment to end of line
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace((unsigned char)c)) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

[[noreturn]] void syntax_error(const Token& t, const std::string& want) {
  std::string at = t.kind == Token::END
                       ? "EOF"
                       : "'" + t.text + "' at " + std::to_string(t.line) + ":" + std::to_string(t.col);
  fail("syntax-error", "expected " + want + ", got " + at);
}

void expect_lp(Lexer& lx) {
  Token t = lx.next();
  if (t.kind != Token::LP) syntax_error(t, "'('");
}
void expect_rp(Lexer& lx) {
  Token t = lx.next();
  if (t.kind != Token::RP) syntax_error(t, "')'");
}
std::string expect_atom(Lexer& lx, const std::string& what) {
  Token t = lx.next();
  if (t.kind != Token::ATOM) syntax_error(t, what);
  return t.text;
}
void expect_keyword(Lexer& lx, const std::string& kw) {
  Token t = lx.next();
  if (t.kind != Token::ATOM || t.text != kw) syntax_error(t, "'" + kw + "'");
}

mpz_class parse_mpz(const std::string& s, const Token& where) {
  if (s.empty()) syntax_error(where, "integer");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) syntax_error(where, "integer");
  for (; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) syntax_error(where, "integer");
  return mpz_class(s);
}

u32 parse_u32(Lexer& lx, const std::string& what, u32 min_value = 0) {
  Token t = lx.peek();
  std::string a = expect_atom(lx, what);
  mpz_class v = parse_mpz(a, t);
  if (v < min_value || v > 1000000) syntax_error(t, what + " in range");
  return u32(v.get_ui());
}

Fp coeff_from_mpz(const mpz_class& v, const Fp& zero) {
  mpz_class p(static_cast<unsigned long>(zero.ctx()->p));
  mpz_class r = v % p;
  if (r < 0) r += p;
  return Fp(mpz_get_ui(r.get_mpz_t()), zero.ctx());
}
Rat coeff_from_mpz(const mpz_class& v, const Rat&) { return Rat(mpq_class(v)); }

template <class K>
K parse_coeff(Lexer& lx, const K& zero) {
  Token t = lx.peek();
  std::string a = expect_atom(lx, "coefficient");
  auto slash = a.find('/');
  if (slash == std::string::npos) return coeff_from_mpz(parse_mpz(a, t), zero);
  // a/b form; only meaningful over Q but accepted generally
  mpz_class num = parse_mpz(a.substr(0, slash), t);
  mpz_class den = parse_mpz(a.substr(slash + 1), t);
  if (den == 0) syntax_error(t, "nonzero denominator");
  K n = coeff_from_mpz(num, zero);
  K d = coeff_from_mpz(den, zero);
  return n * d.inv();
}

template <class K>
UniPoly<K> parse_uni(Lexer& lx, const K& zero) {
  expect_lp(lx);
  expect_keyword(lx, "u");
  u32 var = parse_u32(lx, "variable index", 1);
  std::vector<K> cs;
  while (lx.peek().kind == Token::ATOM) cs.push_back(parse_coeff(lx, zero));
  if (cs.empty()) syntax_error(lx.peek(), "at least one coefficient");
  expect_rp(lx);
  return UniPoly<K>(var, std::move(cs));
}

template <class K>
SumUni<K> parse_sumuni(Lexer& lx, const K& zero) {
  // caller consumed "(sumuni"
  std::vector<UniPoly<K>> parts;
  while (lx.peek().kind == Token::LP) parts.push_back(parse_uni(lx, zero));
  expect_rp(lx);
  // merge repeated variables, keep ascending order
  std::sort(parts.begin(), parts.end(),
            [](const UniPoly<K>& a, const UniPoly<K>& b) { return a.var() < b.var(); });
  std::vector<UniPoly<K>> merged;
  for (auto& u : parts) {
    if (!merged.empty() && merged.back().var() == u.var()) {
      size_t n = std::max(merged.back().coeffs().size(), u.coeffs().size());
      std::vector<K> cs(n, zero);
      for (size_t i = 0; i < merged.back().coeffs().size(); ++i) cs[i] = cs[i] + merged.back().coeffs()[i];
      for (size_t i = 0; i < u.coeffs().size(); ++i) cs[i] = cs[i] + u.coeffs()[i];
      merged.back() = UniPoly<K>(u.var(), std::move(cs));
    } else {
      merged.push_back(u);
    }
  }
  std::erase_if(merged, [](const UniPoly<K>& u) { return u.is_zero(); });
  return SumUni<K>{std::move(merged)};
}

template <class K>
SparseCircuit<K> parse_sparse(Lexer& lx, const K& zero) {
  // caller consumed "(sparse"
  u32 delta = parse_u32(lx, "degree bound", 1);
  std::vector<typename SparsePoly<K>::Term> ts;
  while (lx.peek().kind == Token::LP) {
    expect_lp(lx);
    expect_keyword(lx, "t");
    K c = parse_coeff(lx, zero);
    std::vector<std::pair<u32, u32>> exps;
    while (lx.peek().kind == Token::LP) {
      expect_lp(lx);
      expect_keyword(lx, "v");
      u32 var = parse_u32(lx, "variable index", 1);
      u32 e = parse_u32(lx, "exponent", 1);
      exps.push_back({var, e});
      expect_rp(lx);
    }
    expect_rp(lx);
    Mon m(exps);
    if (m.total_degree() > delta)
      fail("degree-bound-violation",
           "sparse term of degree " + std::to_string(m.total_degree()) + " exceeds delta " +
               std::to_string(delta));
    ts.push_back({m, c});
  }
  expect_rp(lx);
  return SparseCircuit<K>{SparsePoly<K>::from_terms(std::move(ts), zero), delta};
}

template <class K>
FactorIR<K> parse_factor(Lexer& lx, const K& zero) {
  expect_lp(lx);
  Token t = lx.peek();
  std::string kw = expect_atom(lx, "factor kind");
  if (kw == "sumuni") return parse_sumuni(lx, zero);
  if (kw == "sparse") return parse_sparse(lx, zero);
  fail("unknown-class", "unknown factor kind '" + kw + "' at " + std::to_string(t.line) + ":" +
                            std::to_string(t.col));
}

template <class K>
ProductCircuit<K> parse_product_body(Lexer& lx, const K& zero) {
  std::vector<FactorIR<K>> fs;
  while (lx.peek().kind == Token::LP) fs.push_back(parse_factor(lx, zero));
  if (fs.empty()) syntax_error(lx.peek(), "at least one factor");
  expect_rp(lx);
  return ProductCircuit<K>{std::move(fs)};
}

template <class K>
void check_homogeneous(const TopSumCircuit<K>& ts) {
  bool saw_sumuni = false, saw_sparse = false;
  for (auto& p : ts.terms)
    for (auto& f : p.factors) {
      if (std::holds_alternative<SumUni<K>>(f)) saw_sumuni = true;
      else saw_sparse = true;
    }
  if (saw_sumuni && saw_sparse)
    fail("unknown-class", "topsum mixes sumuni and sparse factors");
}

template <class K>
CircuitExpr<K> parse_expr(Lexer& lx, const K& zero) {
  expect_lp(lx);
  Token t = lx.peek();
  std::string kw = expect_atom(lx, "circuit kind");
  if (kw == "topsum") {
    TopSumCircuit<K> ts;
    while (lx.peek().kind == Token::LP) {
      expect_lp(lx);
      expect_keyword(lx, "product");
      ts.terms.push_back(parse_product_body(lx, zero));
    }
    if (ts.terms.empty()) syntax_error(lx.peek(), "at least one product");
    expect_rp(lx);
    check_homogeneous(ts);
    return ts;
  }
  if (kw == "product") return parse_product_body(lx, zero);
  if (kw == "sumuni") return parse_sumuni(lx, zero);
  if (kw == "sparse") return parse_sparse(lx, zero);
  if (kw == "powersum") {
    PowerSumCircuit<K> ps;
    while (lx.peek().kind == Token::LP) {
      expect_lp(lx);
      expect_keyword(lx, "s");
      K c = parse_coeff(lx, zero);
      FactorIR<K> base = parse_factor(lx, zero);
      u32 e = parse_u32(lx, "exponent", 1);
      expect_rp(lx);
      ps.summands.push_back(PowerSummand<K>{c, std::move(base), e});
    }
    expect_rp(lx);
    return ps;
  }
  if (kw == "roabp") {
    Roabp<K> r;
    r.width = parse_u32(lx, "width", 1);
    expect_lp(lx);
    expect_keyword(lx, "order");
    while (lx.peek().kind == Token::ATOM) r.order.push_back(parse_u32(lx, "variable index", 1));
    if (r.order.empty()) syntax_error(lx.peek(), "nonempty variable order");
    expect_rp(lx);
    for (size_t li = 0; li < r.order.size(); ++li) {
      expect_lp(lx);
      expect_keyword(lx, "layer");
      RoabpLayer<K> layer;
      for (u32 i = 0; i < r.width * r.width; ++i) {
        UniPoly<K> u = parse_uni(lx, zero);
        if (!u.is_zero() && u.degree() > 0 && u.var() != r.order[li])
          fail("unknown-class", "roabp layer " + std::to_string(li + 1) +
                                    " entry depends on wrong variable");
        layer.entries.push_back(std::move(u));
      }
      expect_rp(lx);
      r.layers.push_back(std::move(layer));
    }
    expect_rp(lx);
    K one = one_like(zero);
    r.lhs.assign(r.width, zero);
    r.rhs.assign(r.width, zero);
    r.lhs[0] = one;
    r.rhs[0] = one;
    return r;
  }
  fail("unknown-class", "unknown circuit kind '" + kw + "' at " + std::to_string(t.line) + ":" +
                            std::to_string(t.col));
}

}  // namespace

FieldSpec peek_field(const std::string& text) {
  Lexer lx(text);
  expect_lp(lx);
  expect_keyword(lx, "field");
  Token t = lx.peek();
  std::string a = expect_atom(lx, "field modulus");
  mpz_class m = parse_mpz(a, t);
  if (m < 0) syntax_error(t, "nonnegative field modulus");
  expect_rp(lx);
  return FieldSpec{m};
}

template <class K>
CircuitExpr<K> parse_circuit(const std::string& text, const K& zero) {
  Lexer lx(text);
  expect_lp(lx);
  expect_keyword(lx, "field");
  expect_atom(lx, "field modulus");
  expect_rp(lx);
  CircuitExpr<K> c = parse_expr(lx, zero);
  Token t = lx.next();
  if (t.kind != Token::END) syntax_error(t, "end of input");
  return c;
}

// -------------------------------------------------------------- serializing

std::string coeff_literal(const Fp& c) { return std::to_string(c.value()); }
std::string coeff_literal(const Rat& c) { return c.str(); }

namespace {

template <class K>
void ser_uni(std::ostringstream& os, const UniPoly<K>& u) {
  os << "(u " << u.var();
  if (u.is_zero()) os << " 0";
  for (auto& c : u.coeffs()) os << " " << coeff_literal(c);
  os << ")";
}

template <class K>
void ser_factor(std::ostringstream& os, const FactorIR<K>& f) {
  if (std::holds_alternative<SumUni<K>>(f)) {
    os << "(sumuni";
    for (auto& u : std::get<SumUni<K>>(f).parts) {
      os << " ";
      ser_uni(os, u);
    }
    os << ")";
    return;
  }
  const auto& sc = std::get<SparseCircuit<K>>(f);
  os << "(sparse " << sc.delta;
  for (auto& [m, c] : sc.poly.terms()) {
    os << " (t " << coeff_literal(c);
    for (auto& [v, e] : m.exps()) os << " (v " << v << " " << e << ")";
    os << ")";
  }
  os << ")";
}

template <class K>
struct Serializer {
  std::ostringstream& os;
  void operator()(const SumUni<K>& s) { ser_factor<K>(os, FactorIR<K>(s)); }
  void operator()(const SparseCircuit<K>& s) { ser_factor<K>(os, FactorIR<K>(s)); }
  void operator()(const ProductCircuit<K>& p) {
    os << "(product";
    for (auto& f : p.factors) {
      os << " ";
      ser_factor(os, f);
    }
    os << ")";
  }
  void operator()(const TopSumCircuit<K>& t) {
    os << "(topsum";
    for (auto& p : t.terms) {
      os << " ";
      (*this)(p);
    }
    os << ")";
  }
  void operator()(const PowerSumCircuit<K>& ps) {
    os << "(powersum";
    for (auto& s : ps.summands) {
      os << " (s " << coeff_literal(s.coef) << " ";
      ser_factor(os, s.base);
      os << " " << s.exponent << ")";
    }
    os << ")";
  }
  void operator()(const Roabp<K>& r) {
    os << "(roabp " << r.width << " (order";
    for (u32 v : r.order) os << " " << v;
    os << ")";
    for (auto& layer : r.layers) {
      os << " (layer";
      if (layer.diagonal) {
        // write the equivalent dense layer
        for (u32 i = 0; i < r.width; ++i)
          for (u32 j = 0; j < r.width; ++j) {
            os << " ";
            if (i == j) ser_uni(os, layer.entries[i]);
            else os << "(u " << layer.entries[i].var() << " 0)";
          }
      } else {
        for (auto& e : layer.entries) {
          os << " ";
          ser_uni(os, e);
        }
      }
      os << ")";
    }
    os << ")";
  }
};

}  // namespace

template <class K>
std::string serialize_circuit(const CircuitExpr<K>& c, const std::string& field_literal) {
  std::ostringstream os;
  os << "(field " << field_literal << ") ";
  std::visit(Serializer<K>{os}, c);
  os << "\n";
  return os.str();
}

template <class K>
bool circuits_equal(const CircuitExpr<K>& a, const CircuitExpr<K>& b) {
  return serialize_circuit(a, "-") == serialize_circuit(b, "-");
}

// ----------------------------------------------------------------- eval etc

template <class K>
u32 max_var(const CircuitExpr<K>& c) {
  u32 m = 0;
  auto factor_max = [&](const FactorIR<K>& f) {
    if (std::holds_alternative<SumUni<K>>(f)) {
      for (auto& u : std::get<SumUni<K>>(f).parts) m = std::max(m, u.var());
    } else {
      m = std::max(m, max_var_of(std::get<SparseCircuit<K>>(f).poly));
    }
  };
  if (auto* s = std::get_if<SumUni<K>>(&c)) factor_max(FactorIR<K>(*s));
  else if (auto* sc = std::get_if<SparseCircuit<K>>(&c)) factor_max(FactorIR<K>(*sc));
  else if (auto* p = std::get_if<ProductCircuit<K>>(&c)) {
    for (auto& f : p->factors) factor_max(f);
  } else if (auto* t = std::get_if<TopSumCircuit<K>>(&c)) {
    for (auto& pr : t->terms)
      for (auto& f : pr.factors) factor_max(f);
  } else if (auto* ps = std::get_if<PowerSumCircuit<K>>(&c)) {
    for (auto& s : ps->summands) factor_max(s.base);
  } else if (auto* r = std::get_if<Roabp<K>>(&c)) {
    for (u32 v : r->order) m = std::max(m, v);
  }
  return m;
}

template <class K>
size_t circuit_size(const CircuitExpr<K>& c) {
  auto factor_size = [](const FactorIR<K>& f) -> size_t {
    K z = [&]() -> K {
      if (std::holds_alternative<SumUni<K>>(f)) {
        auto& parts = std::get<SumUni<K>>(f).parts;
        if (!parts.empty() && !parts[0].coeffs().empty())
          return parts[0].coeffs()[0] - parts[0].coeffs()[0];
        return K();
      }
      return std::get<SparseCircuit<K>>(f).poly.field_zero();
    }();
    auto p = factor_to_sparse(f, z);
    if (p.is_zero()) return 0;
    return p.sparsity() + p.total_degree();
  };
  if (auto* s = std::get_if<SumUni<K>>(&c)) return factor_size(FactorIR<K>(*s));
  if (auto* sc = std::get_if<SparseCircuit<K>>(&c)) return factor_size(FactorIR<K>(*sc));
  if (auto* p = std::get_if<ProductCircuit<K>>(&c)) {
    size_t acc = 0;
    for (auto& f : p->factors) acc += factor_size(f);
    return acc;
  }
  if (auto* t = std::get_if<TopSumCircuit<K>>(&c)) {
    size_t acc = 0;
    for (auto& pr : t->terms)
      for (auto& f : pr.factors) acc += factor_size(f);
    return acc;
  }
  if (auto* ps = std::get_if<PowerSumCircuit<K>>(&c)) {
    size_t acc = 0;
    for (auto& s : ps->summands) {
      K z;
      if (std::holds_alternative<SparseCircuit<K>>(s.base))
        z = std::get<SparseCircuit<K>>(s.base).poly.field_zero();
      else z = s.coef - s.coef;
      auto b = factor_to_sparse(s.base, z);
      if (!b.is_zero()) acc += b.sparsity() + size_t(b.total_degree()) * s.exponent;
    }
    return acc;
  }
  const auto& r = std::get<Roabp<K>>(c);
  size_t acc = 0;
  for (auto& layer : r.layers)
    for (auto& e : layer.entries)
      if (!e.is_zero()) acc += e.coeffs().size() + e.degree();
  return acc;
}

template <class K>
K circuit_eval(const CircuitExpr<K>& c, const std::vector<K>& point, const K& zero) {
  K one = one_like(zero);
  if (auto* s = std::get_if<SumUni<K>>(&c)) return eval_factor(FactorIR<K>(*s), point, zero);
  if (auto* sc = std::get_if<SparseCircuit<K>>(&c)) return sc->poly.eval(point);
  if (auto* p = std::get_if<ProductCircuit<K>>(&c)) {
    K acc = one;
    for (auto& f : p->factors) acc = acc * eval_factor(f, point, zero);
    return acc;
  }
  if (auto* t = std::get_if<TopSumCircuit<K>>(&c)) {
    K acc = zero;
    for (auto& pr : t->terms) acc = acc + circuit_eval<K>(CircuitExpr<K>(pr), point, zero);
    return acc;
  }
  if (auto* ps = std::get_if<PowerSumCircuit<K>>(&c)) {
    K acc = zero;
    for (auto& s : ps->summands) {
      K b = eval_factor(s.base, point, zero);
      K pw = one;
      for (u32 i = 0; i < s.exponent; ++i) pw = pw * b;
      acc = acc + s.coef * pw;
    }
    return acc;
  }
  const auto& r = std::get<Roabp<K>>(c);
  std::vector<K> v = r.lhs;
  for (size_t li = 0; li < r.layers.size(); ++li) {
    u32 var = r.order[li];
    if (var >= point.size()) fail("missing-assignment", "no value for variable " + std::to_string(var));
    const auto& layer = r.layers[li];
    std::vector<K> nv(r.width, zero);
    if (layer.diagonal) {
      for (u32 i = 0; i < r.width; ++i) nv[i] = v[i] * layer.entries[i].eval(point[var]);
    } else {
      for (u32 i = 0; i < r.width; ++i)
        for (u32 j = 0; j < r.width; ++j)
          nv[j] = nv[j] + v[i] * layer.entries[i * r.width + j].eval(point[var]);
    }
    v = std::move(nv);
  }
  K acc = zero;
  for (u32 i = 0; i < r.width; ++i) acc = acc + v[i] * r.rhs[i];
  return acc;
}

namespace {

template <class K>
void cap_check(const SparsePoly<K>& p, const ExpandOptions& opts) {
  if (p.sparsity() > opts.cap)
    fail("expansion-cap-exceeded",
         "intermediate result has " + std::to_string(p.sparsity()) + " terms (cap " +
             std::to_string(opts.cap) + ")");
}

template <class K>
SparsePoly<K> capped_pow(const SparsePoly<K>& b, u32 e, const ExpandOptions& opts) {
  SparsePoly<K> acc = SparsePoly<K>::constant(one_like(b.field_zero()));
  SparsePoly<K> base = b;
  while (e) {
    if (e & 1) {
      acc = acc * base;
      cap_check(acc, opts);
    }
    e >>= 1;
    if (e) {
      base = base * base;
      cap_check(base, opts);
    }
  }
  return acc;
}

}  // namespace

template <class K>
SparsePoly<K> expand_to_sparse(const CircuitExpr<K>& c, const K& zero, const ExpandOptions& opts) {
  if (auto* s = std::get_if<SumUni<K>>(&c)) return factor_to_sparse(FactorIR<K>(*s), zero);
  if (auto* sc = std::get_if<SparseCircuit<K>>(&c)) return sc->poly;
  if (auto* p = std::get_if<ProductCircuit<K>>(&c)) {
    SparsePoly<K> acc = SparsePoly<K>::constant(one_like(zero));
    for (auto& f : p->factors) {
      acc = acc * factor_to_sparse(f, zero);
      cap_check(acc, opts);
    }
    return acc;
  }
  if (auto* t = std::get_if<TopSumCircuit<K>>(&c)) {
    SparsePoly<K> acc(zero);
    for (auto& pr : t->terms) {
      acc = acc + expand_to_sparse<K>(CircuitExpr<K>(pr), zero, opts);
      cap_check(acc, opts);
    }
    return acc;
  }
  if (auto* ps = std::get_if<PowerSumCircuit<K>>(&c)) {
    SparsePoly<K> acc(zero);
    for (auto& s : ps->summands) {
      acc = acc + capped_pow(factor_to_sparse(s.base, zero), s.exponent, opts).scaled(s.coef);
      cap_check(acc, opts);
    }
    return acc;
  }
  const auto& r = std::get<Roabp<K>>(c);
  std::vector<SparsePoly<K>> v;
  for (u32 i = 0; i < r.width; ++i) v.push_back(SparsePoly<K>::constant(r.lhs[i]));
  for (size_t li = 0; li < r.layers.size(); ++li) {
    const auto& layer = r.layers[li];
    std::vector<SparsePoly<K>> nv(r.width, SparsePoly<K>(zero));
    if (layer.diagonal) {
      for (u32 i = 0; i < r.width; ++i) {
        nv[i] = v[i] * layer.entries[i].to_sparse(zero);
        cap_check(nv[i], opts);
      }
    } else {
      for (u32 i = 0; i < r.width; ++i) {
        if (v[i].is_zero()) continue;
        for (u32 j = 0; j < r.width; ++j) {
          if (layer.entries[i * r.width + j].is_zero()) continue;
          nv[j] = nv[j] + v[i] * layer.entries[i * r.width + j].to_sparse(zero);
          cap_check(nv[j], opts);
        }
      }
    }
    v = std::move(nv);
  }
  SparsePoly<K> acc(zero);
  for (u32 i = 0; i < r.width; ++i) acc = acc + v[i].scaled(r.rhs[i]);
  return acc;
}

// explicit instantiations
template CircuitExpr<Fp> parse_circuit<Fp>(const std::string&, const Fp&);
template CircuitExpr<Rat> parse_circuit<Rat>(const std::string&, const Rat&);
template std::string serialize_circuit<Fp>(const CircuitExpr<Fp>&, const std::string&);
template std::string serialize_circuit<Rat>(const CircuitExpr<Rat>&, const std::string&);
template bool circuits_equal<Fp>(const CircuitExpr<Fp>&, const CircuitExpr<Fp>&);
template bool circuits_equal<Rat>(const CircuitExpr<Rat>&, const CircuitExpr<Rat>&);
template u32 max_var<Fp>(const CircuitExpr<Fp>&);
template u32 max_var<Rat>(const CircuitExpr<Rat>&);
template size_t circuit_size<Fp>(const CircuitExpr<Fp>&);
template size_t circuit_size<Rat>(const CircuitExpr<Rat>&);
template Fp circuit_eval<Fp>(const CircuitExpr<Fp>&, const std::vector<Fp>&, const Fp&);
template Rat circuit_eval<Rat>(const CircuitExpr<Rat>&, const std::vector<Rat>&, const Rat&);
template SparsePoly<Fp> expand_to_sparse<Fp>(const CircuitExpr<Fp>&, const Fp&, const ExpandOptions&);
template SparsePoly<Rat> expand_to_sparse<Rat>(const CircuitExpr<Rat>&, const Rat&, const ExpandOptions&);

}  // namespace pitkit
