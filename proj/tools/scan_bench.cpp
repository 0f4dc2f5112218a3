// Benchmark comparing the serial reference kernels against the OpenMP ones:
// point-grid scanning and the modular row operations of the span tester.

#include <chrono>
#include <cstdio>
#include <vector>

#include "pitkit/oracle.hpp"
#include "pitkit/parscan.hpp"
#include "pitkit/whitebox.hpp"

using namespace pitkit;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                               t0)
             .count() /
         1000.0;
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return ms_since(t0);
}

}  // namespace

int main(int argc, char** argv) {
  size_t n = argc > 1 ? std::stoull(argv[1]) : 1 << 21;
  int reps = argc > 2 ? std::stoi(argv[2]) : 8;
  u64 p = 232792561;
  Rng rng(1);

  printf("scan_bench: n=%zu reps=%d modulus=%llu\n", n, reps, (unsigned long long)p);
  printf("%-24s %12s %12s %8s\n", "kernel", "serial(ms)", "parallel(ms)", "speedup");

  {
    std::vector<u64> dst(n), src(n);
    for (size_t i = 0; i < n; ++i) {
      dst[i] = rng.below(p);
      src[i] = rng.below(p);
    }
    u64 c = rng.below(p);
    auto d1 = dst, d2 = dst;
    double ts = timed([&] {
      for (int r = 0; r < reps; ++r) row_axpy_serial(d1.data(), src.data(), c, n, p);
    });
    double tp = timed([&] {
      for (int r = 0; r < reps; ++r) row_axpy_parallel(d2.data(), src.data(), c, n, p);
    });
    bool ok = d1 == d2;
    printf("%-24s %12.2f %12.2f %7.2fx%s\n", "row_axpy (u64)", ts, tp, ts / tp,
           ok ? "" : "  MISMATCH");
  }
  {
    std::vector<u32> dst(n), src(n);
    for (size_t i = 0; i < n; ++i) {
      dst[i] = u32(rng.below(p));
      src[i] = u32(rng.below(p));
    }
    u32 c = u32(rng.below(p));
    auto d1 = dst, d2 = dst;
    double ts = timed([&] {
      for (int r = 0; r < reps; ++r) row_axpy_serial(d1.data(), src.data(), c, n, u32(p));
    });
    double tp = timed([&] {
      for (int r = 0; r < reps; ++r) row_axpy_parallel(d2.data(), src.data(), c, n, u32(p));
    });
    bool ok = d1 == d2;
    printf("%-24s %12.2f %12.2f %7.2fx%s\n", "row_axpy (u32)", ts, tp, ts / tp,
           ok ? "" : "  MISMATCH");
  }
  {
    std::vector<u32> dst(n);
    std::vector<std::vector<u32>> rows(3, std::vector<u32>(n));
    u32 cs[3];
    for (size_t i = 0; i < n; ++i) dst[i] = u32(rng.below(p));
    for (int t = 0; t < 3; ++t) {
      cs[t] = u32(rng.below(p));
      for (size_t i = 0; i < n; ++i) rows[t][i] = u32(rng.below(p));
    }
    const u32* rp[3] = {rows[0].data(), rows[1].data(), rows[2].data()};
    auto d1 = dst, d2 = dst;
    double ts = timed([&] {
      for (int r = 0; r < reps; ++r) row_fnma_serial(d1.data(), rp, cs, 3, n, u32(p));
    });
    double tp = timed([&] {
      for (int r = 0; r < reps; ++r) row_fnma_parallel(d2.data(), rp, cs, 3, n, u32(p));
    });
    bool ok = d1 == d2;
    printf("%-24s %12.2f %12.2f %7.2fx%s\n", "row_fnma3 (u32)", ts, tp, ts / tp,
           ok ? "" : "  MISMATCH");
  }
  {
    // first-witness scan over a synthetic circuit evaluation grid
    FpCtx ctx(p);
    Fp zero(0, &ctx);
    GenParams prm;
    prm.nvars = 3;
    prm.degree = 2;
    prm.k = 3;
    auto c = gen_random(CircuitClass::TopSumUni, prm, 42, false, &ctx);
    PolyF f = expand_to_sparse(c, zero);
    size_t grid = std::min<size_t>(n / 8, 1 << 18);
    auto pred = [&](size_t i) {
      std::vector<Fp> pt{zero, Fp(u64(i % 97), &ctx), Fp(u64((i / 97) % 89), &ctx),
                         Fp(u64(i / 8633), &ctx)};
      // scan for a root so the whole grid gets visited
      return f.eval(pt).is_zero();
    };
    size_t a = SIZE_MAX, b = SIZE_MAX;
    double ts = timed([&] { a = first_hit_serial(grid, pred); });
    double tp = timed([&] { b = first_hit_parallel(grid, pred); });
    bool ok = a == b;
    printf("%-24s %12.2f %12.2f %7.2fx%s\n", "first_hit (grid eval)", ts, tp, ts / tp,
           ok ? "" : "  MISMATCH");
  }
  return 0;
}
