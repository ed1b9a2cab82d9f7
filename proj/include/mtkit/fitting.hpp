#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mtkit/group_ring.hpp"
#include "mtkit/zlattice.hpp"

namespace mtkit {

/// The ring (Z/p^N)[G], named as a value so lattices and modules can check
/// they speak about the same ring.
struct GroupRingRing {
  FiniteAbelianGroup group;
  PadicContext ctx;
  bool operator==(const GroupRingRing& o) const { return group == o.group && ctx == o.ctx; }
  bool operator!=(const GroupRingRing& o) const { return !(*this == o); }
};

/// Ideal of (Z/p^N)[G], canonicalized as the Z/p^N-lattice spanned by all
/// group translates of its generators. Equality of ideals is equality of
/// Howell forms; membership is lattice membership.
class IdealLattice {
 public:
  IdealLattice() = default;
  explicit IdealLattice(GroupRingRing ring)
      : ring_(std::move(ring)), lat_(ring_.ctx, ring_.group.order()) {}

  static IdealLattice principal(const GroupRingElement& g);
  static IdealLattice from_generators(const GroupRingRing& ring,
                                      const std::vector<GroupRingElement>& gens);
  static IdealLattice unit_ideal(const GroupRingRing& ring);
  static IdealLattice zero_ideal(const GroupRingRing& ring) { return IdealLattice(ring); }

  const GroupRingRing& ring() const { return ring_; }
  const ZpNLattice& lattice() const { return lat_; }
  /// The generators this ideal was built from (zero generators dropped).
  /// Canonical equality ignores them; ring maps push them.
  const std::vector<GroupRingElement>& generators() const { return gens_; }
  bool is_zero() const { return lat_.is_zero(); }

  void add_generator(const GroupRingElement& g);
  bool contains(const GroupRingElement& x) const;

  /// Ideal product via pairwise generator products.
  IdealLattice product(const IdealLattice& other) const;

  IdealLattice saturated() const;

  /// Canonical-form comparison; generator lists play no role.
  bool operator==(const IdealLattice& o) const { return ring_ == o.ring_ && lat_ == o.lat_; }
  bool operator!=(const IdealLattice& o) const { return !(*this == o); }

 private:
  GroupRingRing ring_;
  ZpNLattice lat_;
  std::vector<GroupRingElement> gens_;
};

inline bool ideal_equal(const IdealLattice& a, const IdealLattice& b) {
  if (a.ring() != b.ring()) throw RingMismatch("ideal_equal: different rings");
  return a == b;
}

/// Finitely presented module R^s -> R^r -> M -> 0; `relations` holds s rows
/// of length r.
struct PresentedModule {
  GroupRingRing ring;
  size_t generators = 0;  // r
  std::vector<std::vector<GroupRingElement>> relations;  // s x r

  size_t relation_count() const { return relations.size(); }
  void validate() const;
};

/// Zeroth Fitting ideal: the ideal generated by the r x r minors of the
/// relation matrix (unit ideal for r = 0, zero ideal when s < r).
IdealLattice fitting_ideal(const PresentedModule& m);

/// Determinant of a square matrix of group ring elements (Laplace expansion
/// with column-subset memoization; fine at desk scale).
GroupRingElement grm_determinant(const std::vector<std::vector<GroupRingElement>>& a,
                                 const GroupRingRing& ring);

/// Ring surjection (Z/p^N)[G] -> (Z/p^N)[G/H] or the involution; the two
/// ring maps Fitting-ideal base change supports.
struct RingMap {
  enum class Kind { GroupQuotient, Involution } kind = Kind::Involution;
  GroupHom hom;  // meaningful for GroupQuotient
  GroupRingRing source, target;

  static RingMap quotient(const GroupHom& h, const PadicContext& ctx) {
    return RingMap{Kind::GroupQuotient, h, {h.source(), ctx}, {h.target(), ctx}};
  }
  static RingMap involution_map(const GroupRingRing& ring) {
    return RingMap{Kind::Involution, {}, ring, ring};
  }
  GroupRingElement apply(const GroupRingElement& x) const;
};

/// Quotient presentation of M/IM over R/I for I generated by elements of the
/// form delta_g - 1 with g a multiple of a single coordinate generator
/// (omega-type ideals). Returns the quotient module together with the ring
/// surjection used.
struct QuotientResult {
  PresentedModule module;
  RingMap projection;
};
QuotientResult quotient_base_change(const PresentedModule& m,
                                    const std::vector<GroupRingElement>& ideal_gens);

/// Image lattice of an ideal under a ring surjection.
IdealLattice project_ideal(const IdealLattice& ideal, const RingMap& pi);

/// Fitting ideal of M tensored along rho, computed directly on the pushed
/// presentation and cross-checked against project_ideal(fitting_ideal(M)).
IdealLattice base_change_fitting(const PresentedModule& m, const RingMap& rho);

}  // namespace mtkit
