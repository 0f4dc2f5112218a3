#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pitkit/oracle.hpp"
#include "pitkit/parscan.hpp"

using namespace pitkit;

TEST_CASE("first hit: parallel equals serial, including tie-breaking") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    size_t n = 5000 + rng.below(5000);
    std::vector<char> hits(n, 0);
    // a handful of scattered hits; the smallest index must win
    for (int h = 0; h < 5; ++h) hits[rng.below(n)] = 1;
    auto pred = [&](size_t i) { return hits[i] != 0; };
    size_t a = first_hit_serial(n, pred);
    size_t b = first_hit_parallel(n, pred);
    size_t c = first_hit(n, pred);
    CHECK(a == b);
    CHECK(a == c);
  }
  auto never = [](size_t) { return false; };
  CHECK(first_hit_serial(1000, never) == SIZE_MAX);
  CHECK(first_hit_parallel(1000, never) == SIZE_MAX);
  CHECK(first_hit(0, never) == SIZE_MAX);
}

TEST_CASE("row axpy: parallel equals serial equals reference") {
  Rng rng(5);
  for (u64 p : {u64(101), u64(232792561), (u64(1) << 61) - 1}) {
    size_t n = 4096 + rng.below(1000);
    std::vector<u64> dst(n), src(n);
    for (size_t i = 0; i < n; ++i) {
      dst[i] = rng.below(p);
      src[i] = rng.below(p);
    }
    u64 c = rng.below(p);
    std::vector<u64> a = dst, b = dst, ref = dst;
    row_axpy_serial(a.data(), src.data(), c, n, p);
    row_axpy_parallel(b.data(), src.data(), c, n, p);
    for (size_t i = 0; i < n; ++i) {
      u64 t = u64(u128(src[i]) * c % p);
      ref[i] = ref[i] >= t ? ref[i] - t : ref[i] + (p - t);
    }
    CHECK(a == ref);
    CHECK(b == ref);
  }
}

TEST_CASE("row axpy and hadamard, 32-bit lanes") {
  Rng rng(7);
  u32 p = 232792561;  // < 2^31
  size_t n = 8192;
  std::vector<u32> dst(n), src(n), a2(n), b2(n);
  for (size_t i = 0; i < n; ++i) {
    dst[i] = u32(rng.below(p));
    src[i] = u32(rng.below(p));
  }
  u32 c = u32(rng.below(p));
  std::vector<u32> a = dst, b = dst;
  row_axpy_serial(a.data(), src.data(), c, n, p);
  row_axpy_parallel(b.data(), src.data(), c, n, p);
  CHECK(a == b);
  for (size_t i = 0; i < n; ++i) {
    u64 t = u64(src[i]) * c % p;
    u64 want = dst[i] >= t ? dst[i] - t : dst[i] + (p - t);
    CHECK(a[i] == want);
  }
  row_hadamard_serial(a2.data(), dst.data(), src.data(), n, p);
  row_hadamard_parallel(b2.data(), dst.data(), src.data(), n, p);
  CHECK(a2 == b2);
  for (size_t i = 0; i < n; ++i) CHECK(a2[i] == u32(u64(dst[i]) * src[i] % p));
}

TEST_CASE("blocked fnma equals repeated axpy") {
  Rng rng(11);
  u32 p32 = 2147483629u;  // largest prime below 2^31
  u64 p64 = (u64(1) << 61) - 1;
  size_t n = 6000;

  {
    std::vector<u32> dst(n);
    std::vector<std::vector<u32>> rows(3, std::vector<u32>(n));
    u32 cs[3];
    for (size_t i = 0; i < n; ++i) dst[i] = u32(rng.below(p32));
    for (int t = 0; t < 3; ++t) {
      cs[t] = u32(rng.below(p32));
      for (size_t i = 0; i < n; ++i) rows[t][i] = u32(rng.below(p32));
    }
    std::vector<u32> a = dst, b = dst, c = dst;
    const u32* rp[3] = {rows[0].data(), rows[1].data(), rows[2].data()};
    row_fnma_serial(a.data(), rp, cs, 3, n, p32);
    row_fnma_parallel(b.data(), rp, cs, 3, n, p32);
    for (int t = 0; t < 3; ++t) row_axpy_serial(c.data(), rows[t].data(), cs[t], n, p32);
    CHECK(a == c);
    CHECK(b == c);
  }
  {
    std::vector<u64> dst(n);
    std::vector<std::vector<u64>> rows(3, std::vector<u64>(n));
    u64 cs[3];
    for (size_t i = 0; i < n; ++i) dst[i] = rng.below(p64);
    for (int t = 0; t < 3; ++t) {
      cs[t] = rng.below(p64);
      for (size_t i = 0; i < n; ++i) rows[t][i] = rng.below(p64);
    }
    std::vector<u64> a = dst, c = dst;
    const u64* rp[3] = {rows[0].data(), rows[1].data(), rows[2].data()};
    row_fnma(a.data(), rp, cs, 3, n, p64);
    for (int t = 0; t < 3; ++t) row_axpy_serial(c.data(), rows[t].data(), cs[t], n, p64);
    CHECK(a == c);
  }
}
