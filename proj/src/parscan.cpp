#include "pitkit/parscan.hpp"

#include <algorithm>

#ifdef PITKIT_HAVE_OPENMP
#include <omp.h>
#endif

namespace pitkit {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;
}  // namespace

size_t first_hit_serial(size_t n, const std::function<bool(size_t)>& pred) {
  for (size_t i = 0; i < n; ++i)
    if (pred(i)) return i;
  return SIZE_MAX;
}

size_t first_hit_parallel(size_t n, const std::function<bool(size_t)>& pred) {
#ifdef PITKIT_HAVE_OPENMP
  const size_t block = kParGrain;
  for (size_t lo = 0; lo < n; lo += block) {
    size_t hi = std::min(n, lo + block);
    size_t found = SIZE_MAX;
#pragma omp parallel for schedule(static) reduction(min : found)
    for (size_t i = lo; i < hi; ++i) {
      if (pred(i)) found = std::min(found, i);
    }
    if (found != SIZE_MAX) return found;
  }
  return SIZE_MAX;
#else
  return first_hit_serial(n, pred);
#endif
}

size_t first_hit(size_t n, const std::function<bool(size_t)>& pred) {
  if (n < kParGrain) return first_hit_serial(n, pred);
  return first_hit_parallel(n, pred);
}

void row_axpy_serial(u64* dst, const u64* src, u64 c, size_t n, u64 p) {
  for (size_t i = 0; i < n; ++i) {
    u64 t = u64(u128(src[i]) * c % p);
    dst[i] = dst[i] >= t ? dst[i] - t : dst[i] + (p - t);
  }
}

void row_axpy_parallel(u64* dst, const u64* src, u64 c, size_t n, u64 p) {
#ifdef PITKIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) {
    u64 t = u64(u128(src[i]) * c % p);
    dst[i] = dst[i] >= t ? dst[i] - t : dst[i] + (p - t);
  }
#else
  row_axpy_serial(dst, src, c, n, p);
#endif
}

void row_axpy(u64* dst, const u64* src, u64 c, size_t n, u64 p) {
  if (n < kParGrain) row_axpy_serial(dst, src, c, n, p);
  else row_axpy_parallel(dst, src, c, n, p);
}

void row_hadamard_serial(u64* dst, const u64* a, const u64* b, size_t n, u64 p) {
  for (size_t i = 0; i < n; ++i) dst[i] = u64(u128(a[i]) * b[i] % p);
}

void row_hadamard_parallel(u64* dst, const u64* a, const u64* b, size_t n, u64 p) {
#ifdef PITKIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) dst[i] = u64(u128(a[i]) * b[i] % p);
#else
  row_hadamard_serial(dst, a, b, n, p);
#endif
}

void row_hadamard(u64* dst, const u64* a, const u64* b, size_t n, u64 p) {
  if (n < kParGrain) row_hadamard_serial(dst, a, b, n, p);
  else row_hadamard_parallel(dst, a, b, n, p);
}

namespace {
using u32 = std::uint32_t;
}

void row_axpy_serial(u32* dst, const u32* src, u32 c, size_t n, u32 p) {
  for (size_t i = 0; i < n; ++i) {
    u32 t = u32(u64(src[i]) * c % p);
    dst[i] = dst[i] >= t ? dst[i] - t : dst[i] + (p - t);
  }
}

void row_axpy_parallel(u32* dst, const u32* src, u32 c, size_t n, u32 p) {
#ifdef PITKIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) {
    u32 t = u32(u64(src[i]) * c % p);
    dst[i] = dst[i] >= t ? dst[i] - t : dst[i] + (p - t);
  }
#else
  row_axpy_serial(dst, src, c, n, p);
#endif
}

void row_axpy(u32* dst, const u32* src, u32 c, size_t n, u32 p) {
  if (n < kParGrain) row_axpy_serial(dst, src, c, n, p);
  else row_axpy_parallel(dst, src, c, n, p);
}

void row_hadamard_serial(u32* dst, const u32* a, const u32* b, size_t n, u32 p) {
  for (size_t i = 0; i < n; ++i) dst[i] = u32(u64(a[i]) * b[i] % p);
}

void row_hadamard_parallel(u32* dst, const u32* a, const u32* b, size_t n, u32 p) {
#ifdef PITKIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) dst[i] = u32(u64(a[i]) * b[i] % p);
#else
  row_hadamard_serial(dst, a, b, n, p);
#endif
}

void row_hadamard(u32* dst, const u32* a, const u32* b, size_t n, u32 p) {
  if (n < kParGrain) row_hadamard_serial(dst, a, b, n, p);
  else row_hadamard_parallel(dst, a, b, n, p);
}

namespace {

// Barrett reduction with m = floor(2^64 / p); exact for x < 2^63.
struct Barrett32 {
  u32 p;
  u64 m;
  explicit Barrett32(u32 prime) : p(prime), m(u64((u128(1) << 64) / prime)) {}
  u32 reduce(u64 x) const {
    u64 q = u64((u128(x) * m) >> 64);
    u64 r = x - q * p;
    if (r >= p) r -= p;
    if (r >= p) r -= p;
    return u32(r);
  }
};

template <class Body>
void fnma_impl_u32(u32* dst, const u32* const* rows, const u32* cs, size_t nrows, size_t n, u32 p,
                   Body&& loop) {
  Barrett32 br(p);
  // products are < p^2 < 2^62; accumulate at most three per element
  loop(n, [&](size_t i) {
    u64 acc = 0;
    for (size_t t = 0; t < nrows; ++t) acc += u64(cs[t]) * rows[t][i];
    u32 s = br.reduce(acc);
    dst[i] = dst[i] >= s ? dst[i] - s : dst[i] + (p - s);
  });
}

}  // namespace

void row_fnma_serial(u64* dst, const u64* const* rows, const u64* cs, size_t nrows, size_t n,
                     u64 p) {
  for (size_t i = 0; i < n; ++i) {
    u128 acc = 0;
    for (size_t t = 0; t < nrows; ++t) acc += u128(cs[t]) * rows[t][i];
    u64 s = u64(acc % p);
    dst[i] = dst[i] >= s ? dst[i] - s : dst[i] + (p - s);
  }
}

void row_fnma_parallel(u64* dst, const u64* const* rows, const u64* cs, size_t nrows, size_t n,
                       u64 p) {
#ifdef PITKIT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (size_t i = 0; i < n; ++i) {
    u128 acc = 0;
    for (size_t t = 0; t < nrows; ++t) acc += u128(cs[t]) * rows[t][i];
    u64 s = u64(acc % p);
    dst[i] = dst[i] >= s ? dst[i] - s : dst[i] + (p - s);
  }
#else
  row_fnma_serial(dst, rows, cs, nrows, n, p);
#endif
}

void row_fnma(u64* dst, const u64* const* rows, const u64* cs, size_t nrows, size_t n, u64 p) {
  if (n < kParGrain) row_fnma_serial(dst, rows, cs, nrows, n, p);
  else row_fnma_parallel(dst, rows, cs, nrows, n, p);
}

void row_fnma_serial(u32* dst, const u32* const* rows, const u32* cs, size_t nrows, size_t n,
                     u32 p) {
  fnma_impl_u32(dst, rows, cs, nrows, n, p, [](size_t cnt, auto&& body) {
    for (size_t i = 0; i < cnt; ++i) body(i);
  });
}

void row_fnma_parallel(u32* dst, const u32* const* rows, const u32* cs, size_t nrows, size_t n,
                       u32 p) {
#ifdef PITKIT_HAVE_OPENMP
  fnma_impl_u32(dst, rows, cs, nrows, n, p, [](size_t cnt, auto&& body) {
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < cnt; ++i) body(i);
  });
#else
  row_fnma_serial(dst, rows, cs, nrows, n, p);
#endif
}

void row_fnma(u32* dst, const u32* const* rows, const u32* cs, size_t nrows, size_t n, u32 p) {
  if (n < kParGrain) row_fnma_serial(dst, rows, cs, nrows, n, p);
  else row_fnma_parallel(dst, rows, cs, nrows, n, p);
}

}  // namespace pitkit
