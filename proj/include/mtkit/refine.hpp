#pragma once

#include "mtkit/fitting.hpp"
#include "mtkit/tower.hpp"

namespace mtkit {

/// S-refined family: entries indexed by moduli together with the refinement
/// roots. Built by s_refine (from a distribution) or norm-compatible by
/// construction (harness families).
struct RefinedFamily {
  const TowerModel* tower = nullptr;
  PadicInt alpha_p, alpha_q;
  std::map<ModulusIndex, GroupRingElement> entries;

  const GroupRingElement& at(ModulusIndex f) const {
    auto it = entries.find(f);
    if (it == entries.end()) throw MissingEntry("no refined entry at modulus " + f.str());
    return it->second;
  }
};

/// Exact case-by-case refinement of a distribution (four cases, split on
/// which primes divide the modulus).
RefinedFamily s_refine(const RayClassDistribution& dist, const HeckeData& h);

/// Norm(upper) == lower at every upward step, exactly.
RelationReport verify_refined_compat(const RefinedFamily& fam);

/// The four-factor Euler product prod_v (1 - a_v^{-1} s_v)(1 - a_v^{-1}
/// s_v^{-1}) on G(f).
GroupRingElement euler_product(const TowerModel& tw, const HeckeData& h, ModulusIndex f);

/// Memoized unrefinement factors U(f) with theta(f) = U(f) * refined(f):
/// base case the inverse of the Euler product, edges via the inverted
/// symmetric trinomial, interior via the three-term recursion with concrete
/// kernel-sum multipliers. Projections of the factors to the level groups
/// (with their unit flags) are cached too; the determinant behind the unit
/// flag is the expensive part.
struct ProjectedUnitValue {
  GroupRingElement value;
  PadicInt constant_term;
  bool unit = false;
};

class UnrefineTable {
 public:
  UnrefineTable(const TowerModel& tw, const HeckeData& h) : tw_(&tw), h_(h) {}
  const GroupRingElement& factor(ModulusIndex f);
  const ProjectedUnitValue& projected(int32_t n, int32_t m);

 private:
  const TowerModel* tw_;
  HeckeData h_;
  std::map<ModulusIndex, GroupRingElement> memo_;
  std::map<std::pair<int32_t, int32_t>, ProjectedUnitValue> projected_memo_;
};

GroupRingElement unrefine_factor(const TowerModel& tw, const HeckeData& h, ModulusIndex f);

/// Lambda-level indices: the projection of the modulus-(n+1, m+1) objects to
/// the pure p-part group Z/p^n x Z/p^m. Levels -1 give the one-variable
/// towers.
struct Level {
  int32_t n = 0, m = 0;
  ModulusIndex modulus() const {
    return ModulusIndex{(uint32_t)(n + 1), (uint32_t)(m + 1)};
  }
  std::string str() const { return std::to_string(n) + "," + std::to_string(m); }
};

/// Pure p-part quotient group at a level, and the projection from the ray
/// group at its modulus.
FiniteAbelianGroup level_group(const TowerModel& tw, Level l);
GroupHom level_projection(const TowerModel& tw, Level l);

/// Theta element at a level: projection of a family entry at modulus
/// (n+1, m+1).
struct ThetaElement {
  Level level;
  GroupRingElement value;
};
ThetaElement project_theta(const RayClassDistribution& dist, Level l);
ThetaElement project_theta(const RefinedFamily& fam, Level l);

/// Projection of the unrefinement factor to the level group, with its
/// constant term (augmentation) and unit flag.
struct ProjectedUnit {
  Level level;
  GroupRingElement value;
  PadicInt constant_term;
  bool unit = false;
};
ProjectedUnit projected_unit(const TowerModel& tw, const HeckeData& h, UnrefineTable& table,
                             Level l);

/// Ideal equality (theta) == (theta^S) at a level, with the multiplicative
/// cross-check theta == B * theta^S and B's unit flag.
struct ThetaIdealReport {
  Level level;
  bool ideals_equal = false;
  bool cross_check = false;
  bool b_unit = false;
};
ThetaIdealReport check_theta_ideal_equality(const RayClassDistribution& dist,
                                            const RefinedFamily& fam, const HeckeData& h,
                                            UnrefineTable& table, Level l);

}  // namespace mtkit
