#ifndef PITKIT_FIELD_HPP
#define PITKIT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pitkit/errors.hpp"

namespace pitkit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// ---------------------------------------------------------------- primality

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// Probabilistic certification for arbitrary-precision candidates.
// 64 rounds of Miller-Rabin gives error < 4^-64 = 2^-128.
bool is_prime_mpz(const mpz_class& n);

inline u64 mulmod(u64 a, u64 b, u64 p) { return u64(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p);

// --------------------------------------------------------------------- Prime

// A certified prime modulus.  Values below 2^64 are certified
// deterministically; larger ones probabilistically (error < 2^-128).
struct Prime {
  mpz_class value;

  bool fits_u64() const { return value.fits_ulong_p() || mpz_sizeinbase(value.get_mpz_t(), 2) <= 64; }
  u64 as_u64() const;
  std::string str() const { return value.get_str(); }
};

struct FindPrimeOptions {
  mpz_class cap = (mpz_class(1) << 64);  // search-cap-exceeded beyond this
};

// Least prime p >= min_value with order | (p-1) for every listed order,
// so every needed root of unity lives in F_p.
Prime find_prime(const mpz_class& min_value, const std::vector<u64>& unity_orders,
                 const FindPrimeOptions& opts = {});

// ------------------------------------------------------------------- Fp ring

// Shared modulus context.  All field elements point at one of these.
struct FpCtx {
  u64 p;
  mutable u64 cached_generator = 0;  // lazily found multiplicative generator

  explicit FpCtx(u64 prime) : p(prime) {
    if (p < 2) fail("unsupported-parameters", "modulus must be >= 2");
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    if (s >= p || s < a) s -= p;
    return s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p - b); }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
  u64 pow(u64 a, u64 e) const { return powmod(a, e, p); }
  u64 inv(u64 a) const;
  u64 from_i64(i64 v) const {
    i64 r = v % i64(p);
    if (r < 0) r += i64(p);
    return u64(r);
  }
};

// Field element: residue plus modulus reference.  Immutable value type.
class Fp {
 public:
  Fp() : v_(0), ctx_(nullptr) {}
  Fp(u64 residue, const FpCtx* ctx) : v_(residue % ctx->p), ctx_(ctx) {}

  static Fp of(i64 v, const FpCtx* ctx) { return Fp(ctx->from_i64(v), ctx); }

  u64 value() const { return v_; }
  const FpCtx* ctx() const { return ctx_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const { return raw(ctx_->add(v_, o.v_), ctx_); }
  Fp operator-(const Fp& o) const { return raw(ctx_->sub(v_, o.v_), ctx_); }
  Fp operator*(const Fp& o) const { return raw(ctx_->mul(v_, o.v_), ctx_); }
  Fp operator-() const { return raw(ctx_->neg(v_), ctx_); }
  Fp inv() const;
  Fp pow(u64 e) const { return raw(ctx_->pow(v_, e), ctx_); }
  Fp& operator+=(const Fp& o) { v_ = ctx_->add(v_, o.v_); return *this; }
  Fp& operator-=(const Fp& o) { v_ = ctx_->sub(v_, o.v_); return *this; }
  Fp& operator*=(const Fp& o) { v_ = ctx_->mul(v_, o.v_); return *this; }

  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  std::string str() const { return std::to_string(v_); }

  static Fp raw(u64 v, const FpCtx* ctx) {
    Fp e;
    e.v_ = v;
    e.ctx_ = ctx;
    return e;
  }

 private:
  u64 v_;
  const FpCtx* ctx_;
};

// Element of exact multiplicative order m; least such residue.
Fp root_of_unity(const Prime& p, u64 m, const FpCtx* ctx);
Fp root_of_unity(const FpCtx* ctx, u64 m);

// Convenience: orders 1..max_order all divide p-1 of the returned prime,
// and p > strictly_above.  Used by the auto field policy.
Prime find_prime_with_orders_upto(u64 max_order, const mpz_class& strictly_above);

// Default field policy: p exceeds degree_bound^fanin and every root-of-unity
// order the power-sum kernels can request at this degree and fan-in divides
// p - 1 (orders grow with the product depth, so the margin scales with 2^k).
Prime auto_field_prime(u32 degree_bound, u32 fanin);

// ---------------------------------------------------------------- rationals

// Arbitrary-precision rational; mpq keeps gcd(|num|, den) = 1, den >= 1.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(i64 v) : q_(static_cast<long>(v)) {}
  Rat(i64 num, i64 den) : q_(static_cast<long>(num), static_cast<long>(den)) { q_.canonicalize(); }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  bool is_zero() const { return q_ == 0; }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat inv() const {
    if (is_zero()) fail("zero-input", "inverse of zero rational");
    return Rat(mpq_class(1 / q_));
  }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  bool operator==(const Rat& o) const { return q_ == o.q_; }
  bool operator!=(const Rat& o) const { return q_ != o.q_; }

  const mpq_class& raw() const { return q_; }
  std::string str() const { return q_.get_str(); }

  // Reduction mod p; denominator must be invertible.
  Fp mod_p(const FpCtx* ctx) const;

 private:
  mpq_class q_;
};

}  // namespace pitkit

#endif
