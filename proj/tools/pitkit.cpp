// Command-line front door: parse circuit files, run identity tests, emit
// and verify hitting sets, generate test families, run benchmarks.
//
// Exit codes are the machine-readable contract: 0 = zero polynomial,
// 1 = nonzero, 2 = error.  Reports on stdout are human-oriented.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pitkit/blackbox.hpp"
#include "pitkit/oracle.hpp"
#include "pitkit/whitebox.hpp"

using namespace pitkit;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("unsupported-parameters", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("unsupported-parameters", "cannot write " + path);
  out << text;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long micros() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
  }
};

u64 resolve_field(const std::string& field_flag, const FieldSpec& declared, u32 degree_bound,
                  u32 fanin) {
  if (!field_flag.empty() && field_flag != "auto") {
    mpz_class m(field_flag);
    if (!is_prime_mpz(m)) fail("unsupported-parameters", "--field must be prime");
    return Prime{m}.as_u64();
  }
  if (field_flag == "auto" || declared.modulus == 0)
    return auto_field_prime(degree_bound, fanin).as_u64();
  return Prime{declared.modulus}.as_u64();
}

std::string point_str(const std::vector<Fp>& pt) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 1; i < pt.size(); ++i) {
    if (i > 1) os << ", ";
    os << pt[i].value();
  }
  os << ")";
  return os.str();
}

int report_verdict(const Verdict& v, long micros, const std::string& algo) {
  std::cout << "verdict: " << (v.nonzero ? "nonzero" : "zero") << "\n";
  if (v.witness) std::cout << "witness: " << point_str(*v.witness) << "\n";
  if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
  std::cout << "algo: " << algo << "\n";
  std::cout << "time: " << micros << "us\n";
  return v.nonzero ? 1 : 0;
}

GenParams params_from(u32 n, u32 d, u32 k, u32 delta, u32 factors, u32 sparsity) {
  GenParams p;
  p.nvars = n;
  p.degree = d;
  p.k = k;
  p.delta = delta;
  p.factors = factors;
  p.sparsity = sparsity;
  return p;
}

// oracle-nonzero class member for hitting-set verification
CircuitExpr<Fp> sample_nonzero(const HittingSetFile& hs, Rng& rng, const FpCtx* ctx) {
  CircuitClass cls = circuit_class_from_name(hs.cls);
  GenParams prm;
  prm.nvars = hs.nvars;
  prm.degree = hs.degree;
  prm.k = std::max(hs.k, 1u);
  prm.delta = hs.delta ? hs.delta : hs.degree;
  prm.factors = std::max(hs.size_bound, 1u);
  prm.sparsity = 3;
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto c = gen_random(cls, prm, rng.next(), false, ctx);
    if (brute_zero_test(c, ctx).nonzero) return c;
  }
  fail("retry-cap-exceeded", "could not sample a nonzero class member");
}

int cmd_test(const std::string& file, const std::string& algo, const std::string& field_flag,
             u64 seed, u32 trials) {
  std::string text = read_file(file);
  FieldSpec spec = peek_field(text);
  if (spec.rational() && field_flag.empty())
    fail("unsupported-parameters", "identity tests run over F_p; pass --field");

  // provisional parse to size the auto field policy
  FpCtx probe_ctx(spec.rational() ? 3 : Prime{spec.modulus}.as_u64());
  CircuitExpr<Fp> probe = parse_circuit<Fp>(text, Fp(0, &probe_ctx));
  u32 dbound = std::max(circuit_degree_bound(probe), 1u);
  u32 fanin = 1;
  if (auto* ts = std::get_if<TopSumCircuit<Fp>>(&probe)) fanin = u32(ts->terms.size());

  u64 p = resolve_field(field_flag, spec, dbound + 1, fanin);
  FpCtx ctx(p);
  Fp zero(0, &ctx);
  CircuitExpr<Fp> c = parse_circuit<Fp>(text, zero);

  std::string chosen = algo;
  if (chosen == "auto") {
    if (auto* ts = std::get_if<TopSumCircuit<Fp>>(&c)) {
      bool sumuni = ts->terms.empty() || ts->terms[0].factors.empty() ||
                    std::holds_alternative<SumUni<Fp>>(ts->terms[0].factors[0]);
      chosen = sumuni ? "didi" : "jacobian";
    } else if (std::holds_alternative<Roabp<Fp>>(c)) {
      chosen = "roabp";
    } else if (std::holds_alternative<PowerSumCircuit<Fp>>(c)) {
      chosen = "powersum";
    } else if (std::holds_alternative<SparseCircuit<Fp>>(c)) {
      chosen = "sparse-ks";
    } else {
      chosen = "brute";
    }
  }

  Timer t;
  Verdict v;
  DidiTrace trace;
  if (chosen == "didi") {
    auto* ts = std::get_if<TopSumCircuit<Fp>>(&c);
    if (!ts) fail("class-mismatch", "--algo didi needs a topsum circuit");
    for (auto& pr : ts->terms)
      for (auto& f : pr.factors)
        if (!std::holds_alternative<SumUni<Fp>>(f))
          fail("class-mismatch", "--algo didi needs sum-of-univariate factors");
    v = pit_divide_derive(*ts, &ctx, &trace);
  } else if (chosen == "jacobian") {
    auto* ts = std::get_if<TopSumCircuit<Fp>>(&c);
    if (!ts) fail("class-mismatch", "--algo jacobian needs a topsum circuit");
    v = pit_jacobian(*ts, &ctx);
  } else if (chosen == "sparse-ks") {
    auto* sc = std::get_if<SparseCircuit<Fp>>(&c);
    if (!sc) fail("class-mismatch", "--algo sparse-ks needs a sparse circuit");
    u32 m = u32(std::max<size_t>(sc->poly.sparsity(), 1));
    u32 dind = 2;
    for (u32 var : sc->poly.vars_used()) dind = std::max(dind, sc->poly.deg_in(var) + 1);
    v = pit_sparse_kronecker(sc->poly, m, dind);
  } else if (chosen == "roabp") {
    auto* r = std::get_if<Roabp<Fp>>(&c);
    if (!r) fail("class-mismatch", "--algo roabp needs a roabp circuit");
    v = pit_roabp(*r);
  } else if (chosen == "powersum") {
    auto* ps = std::get_if<PowerSumCircuit<Fp>>(&c);
    if (!ps) fail("class-mismatch", "--algo powersum needs a powersum circuit");
    v = pit_powersum_white(ps_from_ir(*ps, &ctx, 0), max_var(c));
  } else if (chosen == "trivial") {
    u32 n = std::max(max_var(c), 1u);
    v = pit_trivial([&](const std::vector<Fp>& pt) { return circuit_eval(c, pt, zero); }, n,
                    dbound + 1, &ctx);
  } else if (chosen == "sz") {
    v = schwartz_zippel(c, trials, seed, &ctx);
  } else if (chosen == "brute") {
    v = brute_zero_test(c, &ctx, ExpandOptions{expansion_cap_from_env()});
  } else {
    fail("unsupported-parameters", "unknown algorithm '" + chosen + "'");
  }
  long us = t.micros();

  std::cout << "field: " << p << "\n";
  std::cout << "size: " << circuit_size(c) << "\n";
  if (chosen == "didi") {
    std::cout << "shift: " << (trace.shift_point.empty() ? "-" : point_str(trace.shift_point))
              << "\n";
    std::cout << "degree-bound: " << trace.degree_bound << "\n";
    for (auto& lv : trace.levels) {
      std::cout << "level " << lv.level << ": precision=" << lv.precision << " valuations=[";
      for (size_t i = 0; i < lv.valuations.size(); ++i) {
        if (i) std::cout << " ";
        std::cout << lv.valuations[i];
      }
      std::cout << "] sizes=[";
      for (size_t i = 0; i < lv.term_sizes.size(); ++i) {
        if (i) std::cout << " ";
        std::cout << lv.term_sizes[i];
      }
      std::cout << "] divisor=" << (lv.divisor == SIZE_MAX ? -1 : i64(lv.divisor)) << "\n";
    }
    std::cout << "branch: " << trace.branch << "\n";
  }
  return report_verdict(v, us, chosen);
}

int cmd_hitting_set(const std::string& cls, u32 n, u32 d, u32 k, u32 delta, u32 s,
                    const std::string& field_flag, const std::string& out, size_t max_points) {
  if (cls == "spsp" && delta == 0) fail("unsupported-parameters", "spsp needs --delta >= 1");
  u32 dbound = std::max(cls == "spsp" ? delta * s : d * s, d);
  u64 p = field_flag.empty() || field_flag == "auto"
              ? auto_field_prime(dbound, std::max(k, 1u)).as_u64()
              : Prime{mpz_class(field_flag)}.as_u64();
  FpCtx ctx(p);
  HittingSetFile hs;
  if (cls == "spsp") hs = hitting_set_spsp(n, d, k, delta, s, &ctx);
  else if (cls == "spsu") hs = hitting_set_spsu(n, d, k, s, &ctx);
  else if (cls == "prod-sparse") hs = hitting_set_prod_sparse(n, d, s, &ctx, max_points);
  else fail("unknown-class", "--class must be spsp, spsu or prod-sparse");
  write_file(out, hs.serialize());
  std::cout << "class: " << cls << "\nfield: " << p << "\ncardinality: " << hs.points.size()
            << "\nout: " << out << "\n";
  return 0;
}

int cmd_verify_hs(const std::string& hs_file, u32 samples, u64 seed) {
  HittingSetFile hs = HittingSetFile::parse(read_file(hs_file));
  if (samples == 0) {
    std::cout << "warning: no samples requested; vacuous pass\n";
    return 0;
  }
  FpCtx ctx(hs.field);
  Fp zero(0, &ctx);
  Rng rng(seed);
  u32 hits = 0;
  for (u32 i = 0; i < samples; ++i) {
    auto c = sample_nonzero(hs, rng, &ctx);
    bool hit = false;
    for (size_t j = 0; j < hs.points.size() && !hit; ++j)
      hit = !circuit_eval(c, hs.point_in(j, &ctx), zero).is_zero();
    if (hit) ++hits;
  }
  std::cout << "hits: " << hits << "/" << samples << "\n";
  return hits == samples ? 0 : 1;
}

int cmd_gen(const std::string& cls, u32 n, u32 d, u32 k, u32 delta, u32 factors, u32 sparsity,
            u64 seed, bool force_zero, const std::string& field_flag, const std::string& out) {
  CircuitClass cc = circuit_class_from_name(cls);
  u32 dbound = std::max(d, delta) * std::max(factors, 1u) + 1;
  u64 p = field_flag.empty() || field_flag == "auto"
              ? auto_field_prime(dbound, std::max(k, 1u)).as_u64()
              : Prime{mpz_class(field_flag)}.as_u64();
  FpCtx ctx(p);
  auto c = gen_random(cc, params_from(n, d, k, delta, factors, sparsity), seed, force_zero, &ctx);
  std::string text = serialize_circuit(c, std::to_string(p));
  if (out.empty()) std::cout << text;
  else {
    write_file(out, text);
    std::cout << "out: " << out << "\n";
  }
  return 0;
}

int cmd_expand(const std::string& file) {
  std::string text = read_file(file);
  FieldSpec spec = peek_field(text);
  ExpandOptions opts{expansion_cap_from_env()};
  if (spec.rational()) {
    Rat zero(0);
    auto c = parse_circuit<Rat>(text, zero);
    std::cout << expand_to_sparse(c, zero, opts).str() << "\n";
  } else {
    FpCtx ctx(Prime{spec.modulus}.as_u64());
    Fp zero(0, &ctx);
    auto c = parse_circuit<Fp>(text, zero);
    std::cout << expand_to_sparse(c, zero, opts).str() << "\n";
  }
  return 0;
}

int cmd_bench(const std::string& classes_csv, const std::string& algos_csv, u32 seeds, u32 n,
              u32 d, u32 k, u32 delta, u32 factors, const std::string& out) {
  std::ostringstream csv;
  csv << "class,n,d,k,delta,seed,algo,verdict,micros,hs-size\n";
  std::istringstream cls_in(classes_csv);
  std::string cls;
  while (std::getline(cls_in, cls, ',')) {
    u64 p = auto_field_prime(std::max(d, delta) * std::max(factors, 1u) + 1, std::max(k, 1u))
                .as_u64();
    FpCtx ctx(p);
    for (u64 seed = 0; seed < seeds; ++seed) {
      std::istringstream algo_in(algos_csv);
      std::string algo;
      while (std::getline(algo_in, algo, ',')) {
        Timer t;
        std::string verdict = "-";
        size_t hssize = 0;
        if (algo == "hs") {
          HittingSetFile hs;
          if (cls == "spsp") hs = hitting_set_spsp(n, d, k, delta, factors, &ctx);
          else if (cls == "spsu") hs = hitting_set_spsu(n, d, k, factors, &ctx);
          else hs = hitting_set_prod_sparse(n, d, factors, &ctx, 100000);
          hssize = hs.points.size();
        } else {
          auto c = gen_random(circuit_class_from_name(cls),
                              params_from(n, d, k, delta, factors, 3), seed, false, &ctx);
          Verdict v;
          if (algo == "didi") v = pit_divide_derive(std::get<TopSumCircuit<Fp>>(c), &ctx);
          else if (algo == "jacobian") v = pit_jacobian(std::get<TopSumCircuit<Fp>>(c), &ctx);
          else if (algo == "sz") v = schwartz_zippel(c, 20, seed, &ctx);
          else if (algo == "brute") v = brute_zero_test(c, &ctx);
          else fail("unsupported-parameters", "bench algo '" + algo + "'");
          verdict = v.nonzero ? "nonzero" : "zero";
        }
        csv << cls << "," << n << "," << d << "," << k << "," << delta << "," << seed << ","
            << algo << "," << verdict << "," << t.micros() << "," << hssize << "\n";
      }
    }
  }
  if (out.empty()) std::cout << csv.str();
  else {
    write_file(out, csv.str());
    std::cout << "out: " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pitkit: deterministic identity testing for bounded-fanin depth-4 circuits"};
  app.require_subcommand(1);

  std::string test_file, test_algo = "auto", test_field;
  u64 test_seed = 0;
  u32 test_trials = 20;
  auto* t = app.add_subcommand("test", "run an identity test on a circuit file");
  t->add_option("file", test_file, "circuit file")->required();
  t->add_option("--algo", test_algo,
                "didi|jacobian|sparse-ks|roabp|powersum|trivial|sz|brute|auto");
  t->add_option("--field", test_field, "prime modulus override, or 'auto'");
  t->add_option("--seed", test_seed, "seed for randomized testers");
  t->add_option("--trials", test_trials, "trials for the randomized tester");

  std::string hs_class, hs_field, hs_out = "hs.txt";
  u32 hs_n = 2, hs_d = 2, hs_k = 1, hs_delta = 0, hs_s = 2;
  size_t hs_max = 200000;
  auto* h = app.add_subcommand("hitting-set", "emit a hitting set for a circuit class");
  h->add_option("--class", hs_class, "spsp|spsu|prod-sparse")->required();
  h->add_option("--n", hs_n, "variables");
  h->add_option("--d", hs_d, "degree bound");
  h->add_option("--k", hs_k, "top fan-in");
  h->add_option("--delta", hs_delta, "sparse factor degree bound");
  h->add_option("--s", hs_s, "size bound (factors per product)");
  h->add_option("--field", hs_field, "prime modulus, or 'auto'");
  h->add_option("--out", hs_out, "output file");
  h->add_option("--max-points", hs_max, "cap for prod-sparse materialization");

  std::string v_file;
  u32 v_samples = 100;
  u64 v_seed = 1;
  auto* vh = app.add_subcommand("verify-hs", "verify a hitting-set file against sampled members");
  vh->add_option("--hs", v_file, "hitting-set file")->required();
  vh->add_option("--samples", v_samples, "number of oracle-nonzero samples");
  vh->add_option("--seed", v_seed, "sampling seed");

  std::string g_class = "spsu", g_field, g_out;
  u32 g_n = 3, g_d = 2, g_k = 3, g_delta = 2, g_factors = 2, g_sparsity = 3;
  u64 g_seed = 0;
  bool g_zero = false;
  auto* g = app.add_subcommand("gen", "generate a random circuit file");
  g->add_option("--class", g_class, "spsu|spsp|prod-sparse|prod-uni|powersum|sparse|roabp");
  g->add_option("--n", g_n, "variables");
  g->add_option("--d", g_d, "degree bound");
  g->add_option("--k", g_k, "top fan-in");
  g->add_option("--delta", g_delta, "sparse factor degree bound");
  g->add_option("--factors", g_factors, "max factors per product");
  g->add_option("--sparsity", g_sparsity, "max terms per sparse factor");
  g->add_option("--seed", g_seed, "generator seed");
  g->add_flag("--force-zero", g_zero, "emit an oracle-verified zero instance");
  g->add_option("--field", g_field, "prime modulus, or 'auto'");
  g->add_option("--out", g_out, "output file (default stdout)");

  std::string e_file;
  auto* e = app.add_subcommand("expand", "print the canonical sparse form");
  e->add_option("file", e_file, "circuit file")->required();

  std::string b_classes = "spsu", b_algos = "didi,brute", b_out;
  u32 b_seeds = 3, b_n = 3, b_d = 2, b_k = 3, b_delta = 2, b_factors = 2;
  auto* b = app.add_subcommand("bench", "run algo x family grids, emit CSV");
  b->add_option("--classes", b_classes, "comma-separated class list");
  b->add_option("--algos", b_algos, "comma-separated algo list (didi,jacobian,sz,brute,hs)");
  b->add_option("--seeds", b_seeds, "seeds per cell");
  b->add_option("--n", b_n, "variables");
  b->add_option("--d", b_d, "degree bound");
  b->add_option("--k", b_k, "top fan-in");
  b->add_option("--delta", b_delta, "sparse degree bound");
  b->add_option("--factors", b_factors, "factors per product");
  b->add_option("--out", b_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (*t) return cmd_test(test_file, test_algo, test_field, test_seed, test_trials);
    if (*h)
      return cmd_hitting_set(hs_class, hs_n, hs_d, hs_k, hs_delta, hs_s, hs_field, hs_out, hs_max);
    if (*vh) return cmd_verify_hs(v_file, v_samples, v_seed);
    if (*g)
      return cmd_gen(g_class, g_n, g_d, g_k, g_delta, g_factors, g_sparsity, g_seed, g_zero,
                     g_field, g_out);
    if (*e) return cmd_expand(e_file);
    if (*b) return cmd_bench(b_classes, b_algos, b_seeds, b_n, b_d, b_k, b_delta, b_factors, b_out);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
