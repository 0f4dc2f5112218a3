#include "pitkit/field.hpp"

#include <algorithm>
#include <numeric>

namespace pitkit {

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // This witness set decides primality for every n < 3.3e24, so in
  // particular for all 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime_mpz(const mpz_class& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p() && sizeof(unsigned long) == 8) return is_prime_u64(n.get_ui());
  // 64 Miller-Rabin rounds: error < 4^-64 = 2^-128.
  return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

u64 Prime::as_u64() const {
  if (!fits_u64()) fail("unsupported-parameters", "prime does not fit in 64 bits: " + str());
  return mpz_get_ui(value.get_mpz_t());
}

Prime find_prime(const mpz_class& min_value, const std::vector<u64>& unity_orders,
                 const FindPrimeOptions& opts) {
  if (min_value < 3) fail("unsupported-parameters", "min_value must be >= 3");
  mpz_class L = 1;
  for (u64 m : unity_orders) {
    if (m == 0) fail("unsupported-parameters", "unity order must be positive");
    mpz_class mm(static_cast<unsigned long>(m));
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), mm.get_mpz_t());
  }
  // Candidates are p == 1 (mod L); for L = 1 that is every integer.
  mpz_class c = min_value;
  if (L > 1) {
    mpz_class rem = (c - 1) % L;
    if (rem != 0) c += L - rem;
  }
  for (; c <= opts.cap; c += (L > 1 ? L : 1)) {
    if (is_prime_mpz(c)) return Prime{c};
  }
  fail("search-cap-exceeded", "no prime >= " + min_value.get_str() +
                                  " with the required congruence below cap");
}

u64 FpCtx::inv(u64 a) const {
  if (a == 0) fail("zero-input", "inverse of zero in F_p");
  return powmod(a, p - 2, p);
}

Fp Fp::inv() const { return raw(ctx_->inv(v_), ctx_); }

namespace {

std::vector<u64> prime_factors(u64 m) {
  std::vector<u64> fs;
  for (u64 q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      fs.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) fs.push_back(m);
  return fs;
}

}  // namespace

namespace {

u64 find_generator(const FpCtx* ctx) {
  if (ctx->cached_generator) return ctx->cached_generator;
  u64 p = ctx->p;
  auto qs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : qs) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ctx->cached_generator = g;
      return g;
    }
  }
  fail("unsupported-parameters", "no generator found; modulus is not prime");
}

}  // namespace

Fp root_of_unity(const FpCtx* ctx, u64 m) {
  u64 p = ctx->p;
  if (m == 0 || (p - 1) % m != 0)
    fail("order-not-available", "order " + std::to_string(m) + " does not divide p-1");
  if (m == 1) return Fp(1, ctx);
  // The elements of exact order m are w^k for gcd(k, m) = 1; take the least.
  u64 w = powmod(find_generator(ctx), (p - 1) / m, p);
  u64 best = w;
  u64 cur = w;
  for (u64 k = 2; k <= m; ++k) {
    cur = mulmod(cur, w, p);
    if (std::gcd(k, m) == 1 && cur < best) best = cur;
  }
  return Fp(best, ctx);
}

Fp root_of_unity(const Prime& p, u64 m, const FpCtx* ctx) {
  if (ctx->p != p.as_u64()) fail("field-mismatch", "context modulus differs from prime");
  return root_of_unity(ctx, m);
}

Prime find_prime_with_orders_upto(u64 max_order, const mpz_class& strictly_above) {
  std::vector<u64> orders;
  for (u64 m = 2; m <= std::max<u64>(max_order, 2); ++m) orders.push_back(m);
  mpz_class lo = strictly_above + 1;
  if (lo < 3) lo = 3;
  return find_prime(lo, orders);
}

Prime auto_field_prime(u32 degree_bound, u32 fanin) {
  u32 d = std::max(degree_bound, 1u);
  u32 k = std::max(fanin, 1u);
  // exponents roughly double per divide-and-derive level
  u64 max_order = u64(d) * (u64(1) << std::min(k - 1, 5u)) + 1;
  mpz_class L = 1;
  for (u64 m = 2; m <= max_order; ++m) {
    mpz_class mm(static_cast<unsigned long>(m));
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), mm.get_mpz_t());
  }
  if (L > (mpz_class(1) << 62))
    fail("unsupported-parameters",
         "auto field selection needs order lcm < 2^62; pass an explicit field");
  mpz_class min_above;
  mpz_class dd(d);
  mpz_pow_ui(min_above.get_mpz_t(), dd.get_mpz_t(), k);
  return find_prime_with_orders_upto(max_order, min_above);
}

Fp Rat::mod_p(const FpCtx* ctx) const {
  mpz_class num = q_.get_num(), den = q_.get_den();
  mpz_class pm(static_cast<unsigned long>(ctx->p));
  mpz_class nr = num % pm, dr = den % pm;
  if (nr < 0) nr += pm;
  u64 n = mpz_get_ui(nr.get_mpz_t());
  u64 d = mpz_get_ui(dr.get_mpz_t());
  if (d == 0) fail("zero-input", "denominator not invertible mod p");
  return Fp(mulmod(n, ctx->inv(d), ctx->p), ctx);
}

}  // namespace pitkit
