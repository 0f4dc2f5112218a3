#ifndef PITKIT_PARSCAN_HPP
#define PITKIT_PARSCAN_HPP

#include <cstddef>
#include <cstdint>
#include <functional>

namespace pitkit {

// Data-parallel inner loops used by the point-scan testers and the span
// elimination, each with a serial reference implementation kept for testing
// and benchmarking.  Results are bit-identical between the two.

inline constexpr size_t kParGrain = 2048;  // below this, stay serial

// Smallest index i < n with pred(i), or SIZE_MAX.  The parallel variant
// scans block-by-block so the first hit is still deterministic.
size_t first_hit_serial(size_t n, const std::function<bool(size_t)>& pred);
size_t first_hit_parallel(size_t n, const std::function<bool(size_t)>& pred);
size_t first_hit(size_t n, const std::function<bool(size_t)>& pred);

// dst[i] <- dst[i] - c*src[i]  (mod p), the row operation of the span PIT.
void row_axpy_serial(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, size_t n,
                     std::uint64_t p);
void row_axpy_parallel(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, size_t n,
                       std::uint64_t p);
void row_axpy(std::uint64_t* dst, const std::uint64_t* src, std::uint64_t c, size_t n,
              std::uint64_t p);

// dst[i] <- a[i] * b[i] (mod p), layer extension for diagonal programs.
void row_hadamard_serial(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                         size_t n, std::uint64_t p);
void row_hadamard_parallel(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                           size_t n, std::uint64_t p);
void row_hadamard(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, size_t n,
                  std::uint64_t p);

// 32-bit lanes for moduli below 2^31: half the memory traffic on the same
// row operations.
void row_axpy_serial(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, size_t n,
                     std::uint32_t p);
void row_axpy_parallel(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, size_t n,
                       std::uint32_t p);
void row_axpy(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, size_t n,
              std::uint32_t p);
void row_hadamard_serial(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
                         size_t n, std::uint32_t p);
void row_hadamard_parallel(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b,
                           size_t n, std::uint32_t p);
void row_hadamard(std::uint32_t* dst, const std::uint32_t* a, const std::uint32_t* b, size_t n,
                  std::uint32_t p);

// dst[i] <- dst[i] - sum_t c[t]*rows[t][i] (mod p) for up to three rows in
// one pass; the blocked form of the elimination against a reduced basis.
void row_fnma_serial(std::uint64_t* dst, const std::uint64_t* const* rows,
                     const std::uint64_t* cs, size_t nrows, size_t n, std::uint64_t p);
void row_fnma_parallel(std::uint64_t* dst, const std::uint64_t* const* rows,
                       const std::uint64_t* cs, size_t nrows, size_t n, std::uint64_t p);
void row_fnma(std::uint64_t* dst, const std::uint64_t* const* rows, const std::uint64_t* cs,
              size_t nrows, size_t n, std::uint64_t p);
void row_fnma_serial(std::uint32_t* dst, const std::uint32_t* const* rows,
                     const std::uint32_t* cs, size_t nrows, size_t n, std::uint32_t p);
void row_fnma_parallel(std::uint32_t* dst, const std::uint32_t* const* rows,
                       const std::uint32_t* cs, size_t nrows, size_t n, std::uint32_t p);
void row_fnma(std::uint32_t* dst, const std::uint32_t* const* rows, const std::uint32_t* cs,
              size_t nrows, size_t n, std::uint32_t p);

}  // namespace pitkit

#endif
