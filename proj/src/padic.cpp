#include "mtkit/padic.hpp"

namespace mtkit {

namespace {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

PadicContext::PadicContext(uint64_t p_, uint32_t N_) : p(p_), N(N_) {
  if (!is_prime_u64(p)) throw ConfigError("p must be prime, got " + std::to_string(p));
  if (p <= 3) throw ConfigError("p must exceed 3, got " + std::to_string(p));
  if (N < 1) throw ConfigError("precision exponent N must be >= 1");
  unsigned __int128 m = 1;
  for (uint32_t i = 0; i < N; ++i) {
    m *= p;
    if (m >= ((unsigned __int128)1 << 62))
      throw ConfigError("p^N exceeds the supported 2^62 range");
  }
  pN = (uint64_t)m;
  barrett = ~0ull / pN;
}

uint64_t PadicContext::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1 % pN;
  a %= pN;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint32_t PadicContext::valuation(uint64_t a) const {
  if (a == 0) return N;
  uint32_t v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

uint64_t PadicContext::inv(uint64_t a) const {
  if (a % p == 0) throw NotAUnit("not a unit mod p^N: " + std::to_string(a));
  // Inverse mod p by Fermat, then Hensel doubling x <- x(2 - ax).
  uint64_t x = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) x = x * base % p;
    base = base * base % p;
    e >>= 1;
  }
  while (true) {
    uint64_t ax = mul(a, x);
    if (ax == 1) break;
    x = mul(x, sub(2 % pN, ax));
  }
  return x;
}

uint64_t PadicContext::reduce_signed(int64_t n) const {
  int64_t m = n % (int64_t)pN;
  if (m < 0) m += (int64_t)pN;
  return (uint64_t)m;
}

PadicInt root_of_unity(const PadicContext& ctx, uint64_t k) {
  if (k == 0 || (ctx.p - 1) % k != 0)
    throw CharacterValueNotInBaseField("no primitive root of unity of order " +
                                       std::to_string(k) + " in Z_p for p = " +
                                       std::to_string(ctx.p));
  if (k == 1) return PadicInt(ctx, 1 % ctx.pN);
  // Find a residue of exact order k mod p, then lift by x <- x^p (stabilizes
  // at the Teichmueller representative after N steps).
  auto powp = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1;
    b %= ctx.p;
    while (e) {
      if (e & 1) r = r * b % ctx.p;
      b = b * b % ctx.p;
      e >>= 1;
    }
    return r;
  };
  uint64_t g = 0;
  for (uint64_t c = 2; c < ctx.p && g == 0; ++c) {
    uint64_t cand = powp(c, (ctx.p - 1) / k);  // order divides k
    bool exact = true;
    for (uint64_t q = 2; q <= k; ++q) {
      if (k % q != 0) continue;
      bool qprime = true;
      for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { qprime = false; break; }
      if (qprime && powp(cand, k / q) == 1) { exact = false; break; }
    }
    if (exact) g = cand;
  }
  if (g == 0)
    throw CharacterValueNotInBaseField("failed to construct a root of unity of order " +
                                       std::to_string(k));
  uint64_t x = g;
  for (uint32_t i = 0; i < ctx.N; ++i) x = ctx.pow(x, ctx.p);
  return PadicInt(ctx, x);
}

PadicInt unit_root_of_hecke(const PadicContext& ctx, const PadicInt& ap) {
  if (ap.context() != ctx) throw ContextMismatch("hecke eigenvalue context");
  if (!ap.is_unit()) throw NotAUnit("a_p must be a unit for an ordinary unit root");
  // f(X) = X^2 - a_p X + p has the simple residue root X = a_p mod p
  // (f'(a_p) = a_p is a unit); Newton refines it to full precision.
  uint64_t x = ap.value() % ctx.p;
  uint64_t pmod = ctx.p % ctx.pN;
  while (true) {
    uint64_t fx = ctx.add(ctx.sub(ctx.mul(x, x), ctx.mul(ap.value(), x)), pmod);
    if (fx == 0) break;
    uint64_t dfx = ctx.sub(ctx.mul(2, x), ap.value());
    x = ctx.sub(x, ctx.mul(fx, ctx.inv(dfx)));
  }
  return PadicInt(ctx, x);
}

}  // namespace mtkit
