#ifndef PITKIT_CIRCUIT_HPP
#define PITKIT_CIRCUIT_HPP

#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pitkit/poly.hpp"

namespace pitkit {

// ----------------------------------------------------------------- verdicts

// PIT outcome.  NonZero verdicts from deterministic testers carry either a
// witness point or the name of the short-circuit branch that fired.
struct Verdict {
  bool nonzero = false;
  std::optional<std::vector<Fp>> witness;
  std::string note;

  static Verdict zero() { return {}; }
  static Verdict nonzero_at(std::vector<Fp> pt, std::string why = "") {
    Verdict v;
    v.nonzero = true;
    v.witness = std::move(pt);
    v.note = std::move(why);
    return v;
  }
  static Verdict nonzero_because(std::string why) {
    Verdict v;
    v.nonzero = true;
    v.note = std::move(why);
    return v;
  }
};

// ------------------------------------------------------------------- the IR

// Sum of univariate polynomials, at most one per variable.
template <class K>
struct SumUni {
  std::vector<UniPoly<K>> parts;  // ascending variable index
};

// Sparse polynomial with a declared degree bound.
template <class K>
struct SparseCircuit {
  SparsePoly<K> poly;
  u32 delta;
};

template <class K>
using FactorIR = std::variant<SumUni<K>, SparseCircuit<K>>;

template <class K>
struct ProductCircuit {
  std::vector<FactorIR<K>> factors;  // empty product computes 1
};

template <class K>
struct PowerSummand {
  K coef;
  FactorIR<K> base;
  u32 exponent;  // >= 1
};

template <class K>
struct PowerSumCircuit {
  std::vector<PowerSummand<K>> summands;
};

template <class K>
struct TopSumCircuit {
  std::vector<ProductCircuit<K>> terms;  // homogeneous factor kind
};

template <class K>
struct RoabpLayer {
  bool diagonal = false;
  std::vector<UniPoly<K>> entries;  // width (diagonal) or width*width row-major
};

template <class K>
struct Roabp {
  u32 width = 1;
  std::vector<u32> order;  // variable per layer
  std::vector<RoabpLayer<K>> layers;
  std::vector<K> lhs;  // boundary row vector
  std::vector<K> rhs;  // boundary column vector
};

template <class K>
using CircuitExpr =
    std::variant<SumUni<K>, SparseCircuit<K>, PowerSumCircuit<K>, ProductCircuit<K>,
                 TopSumCircuit<K>, Roabp<K>>;

using CircuitF = CircuitExpr<Fp>;
using CircuitQ = CircuitExpr<Rat>;

// ------------------------------------------------------------- IR utilities

template <class K>
u32 max_var_of(const SparsePoly<K>& p) {
  auto vs = p.vars_used();
  return vs.empty() ? 0 : vs.back();
}

template <class K>
SparsePoly<K> factor_to_sparse(const FactorIR<K>& f, const K& zero) {
  if (std::holds_alternative<SumUni<K>>(f)) {
    SparsePoly<K> acc(zero);
    for (auto& u : std::get<SumUni<K>>(f).parts) acc = acc + u.to_sparse(zero);
    return acc;
  }
  return std::get<SparseCircuit<K>>(f).poly;
}

template <class K>
K eval_factor(const FactorIR<K>& f, const std::vector<K>& point, const K& zero) {
  if (std::holds_alternative<SumUni<K>>(f)) {
    K acc = zero;
    for (auto& u : std::get<SumUni<K>>(f).parts) {
      if (u.var() >= point.size()) fail("missing-assignment", "no value for variable " + std::to_string(u.var()));
      acc = acc + u.eval(point[u.var()]);
    }
    return acc;
  }
  return std::get<SparseCircuit<K>>(f).poly.eval(point);
}

struct ExpandOptions {
  size_t cap = 1000000;  // expansion-cap-exceeded past this many terms
};

size_t expansion_cap_from_env(size_t fallback = 1000000);

// ----------------------------------------------------------------- contract

template <class K>
u32 max_var(const CircuitExpr<K>& c);

template <class K>
size_t circuit_size(const CircuitExpr<K>& c);

template <class K>
K circuit_eval(const CircuitExpr<K>& c, const std::vector<K>& point, const K& zero);

template <class K>
SparsePoly<K> expand_to_sparse(const CircuitExpr<K>& c, const K& zero,
                               const ExpandOptions& opts = {});

// Parsed file: declared field plus the expression.  field == 0 means Q.
struct FieldSpec {
  mpz_class modulus;  // 0 for rationals
  bool rational() const { return modulus == 0; }
};

FieldSpec peek_field(const std::string& text);

// Parse over a prepared coefficient ring (zero element fixes the context).
template <class K>
CircuitExpr<K> parse_circuit(const std::string& text, const K& zero);

template <class K>
std::string serialize_circuit(const CircuitExpr<K>& c, const std::string& field_literal);

std::string coeff_literal(const Fp& c);
std::string coeff_literal(const Rat& c);

// Structural equality, for round-trip tests.
template <class K>
bool circuits_equal(const CircuitExpr<K>& a, const CircuitExpr<K>& b);

}  // namespace pitkit

#endif
