#pragma once

#include <cstdint>
#include <string>

#include "mtkit/errors.hpp"

namespace mtkit {

/// Fixed-precision coefficient domain: integers mod p^N read as truncated
/// p-adic integers. p > 3 prime, N >= 1, p^N < 2^62 so products fit in
/// unsigned 128-bit intermediates.
struct PadicContext {
  uint64_t p = 0;
  uint32_t N = 0;
  uint64_t pN = 0;       // p^N, cached
  uint64_t barrett = 0;  // floor((2^64 - 1) / p^N), for fast reduction

  PadicContext() = default;
  PadicContext(uint64_t p_, uint32_t N_);

  bool operator==(const PadicContext& o) const { return p == o.p && N == o.N; }
  bool operator!=(const PadicContext& o) const { return !(*this == o); }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= pN ? s - pN : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + pN - b; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : pN - a; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    // Barrett path for residues below 2^32; the wide path covers the rest of
    // the supported p^N < 2^62 range
    if (pN <= 0xffffffffull) {
      uint64_t t = a * b;
      uint64_t q = (uint64_t)(((unsigned __int128)t * barrett) >> 64);
      uint64_t r = t - q * pN;
      while (r >= pN) r -= pN;
      return r;
    }
    return (uint64_t)((unsigned __int128)a * b % pN);
  }
  uint64_t pow(uint64_t a, uint64_t e) const;

  /// Largest k <= N with p^k | a; returns N for a == 0 (the ">= N" sentinel).
  uint32_t valuation(uint64_t a) const;

  /// Inverse of a unit mod p^N. Throws NotAUnit if p | a.
  uint64_t inv(uint64_t a) const;

  /// Canonical residue of a signed integer.
  uint64_t reduce_signed(int64_t n) const;
};

/// One residue with its context. Immutable value type; all arithmetic stays
/// in the same context and throws ContextMismatch otherwise.
class PadicInt {
 public:
  PadicInt() = default;
  PadicInt(const PadicContext& ctx, uint64_t canonical) : ctx_(ctx), v_(canonical % ctx.pN) {}

  static PadicInt from_int(int64_t n, const PadicContext& ctx) {
    return PadicInt(ctx, ctx.reduce_signed(n));
  }

  const PadicContext& context() const { return ctx_; }
  uint64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  /// Valuation with the >= N sentinel for zero.
  uint32_t valuation() const { return ctx_.valuation(v_); }
  bool is_unit() const { return valuation() == 0; }

  PadicInt operator+(const PadicInt& o) const { check(o); return PadicInt(ctx_, ctx_.add(v_, o.v_)); }
  PadicInt operator-(const PadicInt& o) const { check(o); return PadicInt(ctx_, ctx_.sub(v_, o.v_)); }
  PadicInt operator*(const PadicInt& o) const { check(o); return PadicInt(ctx_, ctx_.mul(v_, o.v_)); }
  PadicInt operator-() const { return PadicInt(ctx_, ctx_.neg(v_)); }

  PadicInt inverse() const { return PadicInt(ctx_, ctx_.inv(v_)); }
  PadicInt pow(uint64_t e) const { return PadicInt(ctx_, ctx_.pow(v_, e)); }
  /// a^e for signed e (negative exponents invert; requires a unit then).
  PadicInt pow_signed(int64_t e) const {
    return e >= 0 ? pow((uint64_t)e) : inverse().pow((uint64_t)(-e));
  }

  bool operator==(const PadicInt& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }
  bool operator!=(const PadicInt& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

 private:
  void check(const PadicInt& o) const {
    if (ctx_ != o.ctx_) throw ContextMismatch("PadicInt contexts differ");
  }
  PadicContext ctx_;
  uint64_t v_ = 0;
};

/// n mod p^N in canonical range.
inline PadicInt reduce(int64_t n, const PadicContext& ctx) { return PadicInt::from_int(n, ctx); }
inline uint32_t valuation(const PadicInt& x) { return x.valuation(); }
inline PadicInt invert(const PadicInt& x) { return x.inverse(); }

/// Teichmueller-type root: the unique x = x0 mod p with x^k = 1, for k | p-1.
PadicInt root_of_unity(const PadicContext& ctx, uint64_t k);

/// Unit root of X^2 - a_p X + p lifted from the residue a_p mod p.
/// Requires a_p a unit (ordinarity).
PadicInt unit_root_of_hecke(const PadicContext& ctx, const PadicInt& ap);

}  // namespace mtkit
