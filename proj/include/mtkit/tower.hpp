#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtkit/group_ring.hpp"

namespace mtkit {

/// Modulus exponents (a, b) of the two primes above p.
struct ModulusIndex {
  uint32_t a = 0, b = 0;
  bool operator<(const ModulusIndex& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool operator==(const ModulusIndex& o) const { return a == o.a && b == o.b; }
  std::string str() const { return std::to_string(a) + "," + std::to_string(b); }
};

/// Configured image of a distinguished class: multiples of the two p-part
/// generators plus a component of the prime-to-p factor. The component on
/// the class's own prime coordinate is dropped on levels that prime divides.
struct SigmaSpec {
  uint64_t own = 0;    // multiple of the generator on the class's own coordinate
  uint64_t other = 0;  // multiple on the other prime's coordinate
  Exponents delta;     // exponents in the prime-to-p factor (resized as needed)
};

/// Ordinary Hecke datum: a_p and the unit roots of X^2 - a_p X + p. The unit
/// root is unique, so alpha_p = alpha_q; both fields are kept because the
/// refinement formulas treat the two primes independently.
struct HeckeData {
  PadicInt ap;
  PadicInt alpha_p, alpha_q;
  bool ap_not_one = false;   // a_p != 1 mod p
  bool ap_not_zero = false;  // a_p != 0 mod p

  static HeckeData from_ap(const PadicContext& ctx, const PadicInt& ap);
};

/// The two-variable modulus lattice: groups G(a,b) = Z/p^{max(a-1,0)} x
/// Z/p^{max(b-1,0)} x Delta with coordinate-reduction quotient maps, the
/// fixed prime-to-p factor Delta (order coprime to p) and configured
/// distinguished classes.
class TowerModel {
 public:
  TowerModel() = default;
  TowerModel(PadicContext ctx, uint32_t cap_a, uint32_t cap_b, FiniteAbelianGroup delta,
             SigmaSpec sigma_p = {}, SigmaSpec sigma_q = {});

  const PadicContext& context() const { return ctx_; }
  uint32_t cap_a() const { return A_; }
  uint32_t cap_b() const { return B_; }
  const FiniteAbelianGroup& delta() const { return delta_; }
  const SigmaSpec& sigma_p_spec() const { return sp_; }
  const SigmaSpec& sigma_q_spec() const { return sq_; }

  const FiniteAbelianGroup& group(ModulusIndex f) const;
  /// Quotient map G(a,b) -> G(a-1,b) (requires a >= 1), resp. the q step.
  const GroupHom& down_p(ModulusIndex f) const;
  const GroupHom& down_q(ModulusIndex f) const;
  /// Composite quotient G(f) -> G(m) for m <= f componentwise.
  GroupHom down_to(ModulusIndex f, ModulusIndex m) const;

  /// Index of the distinguished class of the given prime in G(f).
  uint64_t sigma_p(ModulusIndex f) const;
  uint64_t sigma_q(ModulusIndex f) const;

  /// delta_sigma + delta_sigma^{-1} weighted: a_v - sigma_v - sigma_v^{-1}
  /// as a group ring element on G(f).
  GroupRingElement sigma_trinomial_p(ModulusIndex f, const PadicInt& av) const;
  GroupRingElement sigma_trinomial_q(ModulusIndex f, const PadicInt& av) const;

  std::vector<ModulusIndex> indices() const;

 private:
  FiniteAbelianGroup make_group(ModulusIndex f) const;
  uint64_t sigma_index(ModulusIndex f, const SigmaSpec& s, bool own_is_p) const;
  PadicContext ctx_;
  uint32_t A_ = 0, B_ = 0;
  FiniteAbelianGroup delta_;
  SigmaSpec sp_, sq_;
  std::vector<FiniteAbelianGroup> groups_;       // (A+1)*(B+1), row-major by a
  std::vector<GroupHom> down_p_, down_q_;        // same layout; unused slots default
  size_t slot(ModulusIndex f) const { return (size_t)f.a * (B_ + 1) + f.b; }
};

TowerModel build_tower(uint64_t p, uint32_t N, uint32_t cap_a, uint32_t cap_b,
                       const std::vector<uint64_t>& delta_factors, SigmaSpec sigma_p = {},
                       SigmaSpec sigma_q = {});

/// Family of group ring elements indexed by moduli.
struct RayClassDistribution {
  const TowerModel* tower = nullptr;
  std::map<ModulusIndex, GroupRingElement> entries;

  const GroupRingElement& at(ModulusIndex f) const {
    auto it = entries.find(f);
    if (it == entries.end()) throw MissingEntry("no entry at modulus " + f.str());
    return it->second;
  }
};

struct RelationCheck {
  ModulusIndex index;  // lower modulus f of the step f -> fv
  char prime = 'p';    // which v
  bool pass = false;
  uint32_t discrepancy_valuation = 0;  // min valuation of the difference, N if equal
  size_t discrepancy_support = 0;      // nonzero coefficients of the difference
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Exact check of the two-case norm relations at every upward step.
RelationReport verify_norm_relations(const RayClassDistribution& dist, const HeckeData& h);

struct GeneratorOptions {
  uint64_t seed = 0;
  bool kernel_noise = true;  // seeded noise in the joint norm kernels
  int noise_terms = 4;
};

/// Deterministic-in-seed family satisfying the norm relations at every step
/// and whose S-refinement is norm-compatible (boundary entries are pinned to
/// the unique compatible value; interior entries carry kernel noise).
RayClassDistribution generate_distribution(const TowerModel& tower, const HeckeData& h,
                                           const GeneratorOptions& opts);

/// Residues r mod p that admit the full refinement calculus for this tower:
/// a_p = r keeps every inverted element (the four-factor Euler product, the
/// symmetric trinomials on each edge group, and their projected constant
/// terms) a unit. Computed by direct unit testing.
std::vector<uint64_t> feasible_ap_residues(const TowerModel& tower);

/// theta' on (Z/p^{n+1})^x / {+-1} from an ingested symbol table, and its
/// image theta_n on the p-part quotient of order p^n.
struct OneVariableTheta {
  GroupRingElement theta_prime;  // on the cyclic model of (Z/p^{n+1})^x/{+-1}
  GroupRingElement theta_n;      // on the p-part quotient Z/p^n
};
OneVariableTheta theta_from_symbol_table(const std::map<uint64_t, PadicInt>& table, uint32_t n,
                                         const PadicContext& ctx);

}  // namespace mtkit
