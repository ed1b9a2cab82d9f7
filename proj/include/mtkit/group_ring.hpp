#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtkit/abelian.hpp"
#include "mtkit/padic.hpp"

namespace mtkit {

/// Element of (Z/p^N)[G] for an explicit finite abelian G. Coefficients are
/// stored densely in canonical element order (groups at desk scale are
/// small); serialization drops zeros. Immutable value semantics.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(FiniteAbelianGroup g, PadicContext ctx)
      : g_(std::move(g)), ctx_(ctx), c_(g_.order(), 0) {}
  GroupRingElement(FiniteAbelianGroup g, PadicContext ctx, std::vector<uint64_t> coeffs)
      : g_(std::move(g)), ctx_(ctx), c_(std::move(coeffs)) {
    if (c_.size() != g_.order()) throw ConfigError("coefficient vector has wrong length");
  }

  static GroupRingElement zero(const FiniteAbelianGroup& g, const PadicContext& ctx) {
    return GroupRingElement(g, ctx);
  }
  static GroupRingElement one(const FiniteAbelianGroup& g, const PadicContext& ctx) {
    GroupRingElement x(g, ctx);
    x.c_[0] = 1 % ctx.pN;
    return x;
  }
  /// delta_g, the basis element at a group element.
  static GroupRingElement basis(const FiniteAbelianGroup& g, const PadicContext& ctx,
                                uint64_t element_index) {
    GroupRingElement x(g, ctx);
    x.c_.at(element_index) = 1 % ctx.pN;
    return x;
  }

  const FiniteAbelianGroup& group() const { return g_; }
  const PadicContext& context() const { return ctx_; }
  const std::vector<uint64_t>& coeffs() const { return c_; }

  PadicInt coeff(uint64_t element_index) const { return PadicInt(ctx_, c_.at(element_index)); }
  uint64_t raw(uint64_t element_index) const { return c_[element_index]; }
  void set(uint64_t element_index, const PadicInt& v);

  bool is_zero() const;
  size_t support_size() const;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  /// Convolution product.
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement scaled(const PadicInt& s) const;

  bool operator==(const GroupRingElement& o) const {
    return g_ == o.g_ && ctx_ == o.ctx_ && c_ == o.c_;
  }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  /// Ring map sending every group element to 1 (sum of coefficients); the
  /// constant term in power-series coordinates.
  PadicInt augmentation() const;

  /// Minimal coefficient valuation (N for the zero element); a convenient
  /// discrepancy measure for reports.
  uint32_t min_valuation() const;

 private:
  void check(const GroupRingElement& o) const;
  FiniteAbelianGroup g_;
  PadicContext ctx_;
  std::vector<uint64_t> c_;
};

/// Coefficient pushforward along a group hom: the induced ring map on group
/// rings (sums coefficients over fibers).
GroupRingElement norm_push(const GroupHom& phi, const GroupRingElement& x);

/// Adjoint lift: sum of all preimages of every support point (requires phi
/// surjective; x lives on the target).
GroupRingElement trace_lift(const GroupHom& phi, const GroupRingElement& x);

/// Canonical section lift: each target element to its preimage with the
/// same exponents (valid for coordinate-reduction homs; throws otherwise).
GroupRingElement section_lift(const GroupHom& phi, const GroupRingElement& x);

/// Sum of delta_h over the kernel of phi. trace_lift(phi, x) equals
/// kernel_sum * (any lift of x).
GroupRingElement kernel_sum(const GroupHom& phi, const PadicContext& ctx);

/// coeff(g) -> coeff(-g); the ring involution induced by inversion.
GroupRingElement involution(const GroupRingElement& x);

/// Idempotent e_eta = |G|^{-1} sum eta(g)^{-1} delta_g for a character eta
/// given by exponents c_i on the coordinate generators. Requires gcd(|G|, p)
/// = 1 and every character value order dividing p-1.
GroupRingElement idempotent(const FiniteAbelianGroup& delta, const std::vector<uint64_t>& chi,
                            const PadicContext& ctx);

/// delta_{p^n * gamma} - 1.
GroupRingElement omega(uint32_t n, const FiniteAbelianGroup& g, uint64_t gamma_index,
                       const PadicContext& ctx);

/// n = 0: delta_gamma; n >= 1: sum_{k<p} delta_{k p^{n-1} gamma}.
GroupRingElement phi_poly(uint32_t n, const FiniteAbelianGroup& g, uint64_t gamma_index,
                          const PadicContext& ctx);

/// Dense |G| x |G| matrix over Z/p^N, row-major.
struct ZpMatrix {
  PadicContext ctx;
  size_t n = 0, m = 0;
  std::vector<uint64_t> a;
  uint64_t& at(size_t i, size_t j) { return a[i * m + j]; }
  uint64_t at(size_t i, size_t j) const { return a[i * m + j]; }
};

/// Matrix of multiplication-by-x in the canonical basis: M[i][j] = x(g_i - g_j).
ZpMatrix regular_matrix(const GroupRingElement& x);

/// Determinant mod p^N by elimination with global minimal-valuation pivots
/// (exact residue; valuation >= N shows up as the zero residue).
PadicInt det_matrix(const ZpMatrix& mat);
PadicInt det_multiplication(const GroupRingElement& x);

/// Unit in (Z/p^N)[G] iff the regular-representation determinant has
/// valuation 0.
bool is_unit(const GroupRingElement& x);

/// Inverse of a unit, from the regular-representation linear system. Throws
/// NotAUnit otherwise.
GroupRingElement invert_element(const GroupRingElement& x);

/// Solve M y = b over Z/p^N when M is invertible (unit pivots exist at every
/// step); returns nullopt if a unit pivot is missing.
std::optional<std::vector<uint64_t>> solve_unit_system(const ZpMatrix& mat,
                                                       std::vector<uint64_t> rhs);

}  // namespace mtkit
