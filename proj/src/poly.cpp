#include "pitkit/poly.hpp"

#include <sstream>

namespace pitkit {

std::string Mon::str(const std::string& varprefix) const {
  if (e_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [v, e] : e_) {
    if (!first) os << "*";
    first = false;
    os << varprefix << v;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

namespace {
std::string coef_str(const Fp& c) { return std::to_string(c.value()); }
std::string coef_str(const Rat& c) { return c.str(); }
}  // namespace

template <class K>
std::string SparsePoly<K>::str(const std::string& varprefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  // display in descending grlex order
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (it != terms_.rbegin()) os << " + ";
    if (it->first.is_one()) os << coef_str(it->second);
    else {
      std::string c = coef_str(it->second);
      if (c != "1") os << c << "*";
      os << it->first.str(varprefix);
    }
  }
  return os.str();
}

template std::string SparsePoly<Fp>::str(const std::string&) const;
template std::string SparsePoly<Rat>::str(const std::string&) const;

std::string fp_str(const Fp& v) { return std::to_string(v.value()); }

std::vector<Fp> interpolation_nodes(const FpCtx* ctx, size_t count) {
  if (count > ctx->p)
    fail("insufficient-field-size",
         "need " + std::to_string(count) + " distinct nodes in F_" + std::to_string(ctx->p));
  std::vector<Fp> nodes;
  nodes.reserve(count);
  for (size_t i = 0; i < count; ++i) nodes.push_back(Fp(u64(i), ctx));
  return nodes;
}

std::vector<std::vector<Fp>> lagrange_basis_rows(const std::vector<Fp>& nodes) {
  size_t n = nodes.size();
  const FpCtx* ctx = nodes.at(0).ctx();
  Fp zero(0, ctx), one(1, ctx);
  std::vector<std::vector<Fp>> rows(n);
  for (size_t b = 0; b < n; ++b) {
    std::vector<Fp> num{one};
    Fp denom = one;
    for (size_t j = 0; j < n; ++j) {
      if (j == b) continue;
      std::vector<Fp> nxt(num.size() + 1, zero);
      for (size_t t = 0; t < num.size(); ++t) {
        nxt[t] -= num[t] * nodes[j];
        nxt[t + 1] += num[t];
      }
      num = std::move(nxt);
      denom *= (nodes[b] - nodes[j]);
    }
    Fp s = denom.inv();
    for (auto& c : num) c *= s;
    num.resize(n, zero);
    rows[b] = std::move(num);
  }
  return rows;
}

}  // namespace pitkit
