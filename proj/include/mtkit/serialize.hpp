#pragma once

#include "mtkit/fitting.hpp"
#include "mtkit/refine.hpp"
#include "mtkit/report.hpp"
#include "mtkit/tower.hpp"

namespace mtkit {

// JSON schemas. Group ring elements carry their ring header and sparse
// coefficients in lexicographic exponent order; values are decimal strings.

Json to_json(const PadicContext& ctx);
PadicContext context_from_json(const Json& j);

Json to_json(const GroupRingElement& x);
GroupRingElement element_from_json(const Json& j);

Json tower_to_json(const TowerModel& tw);
TowerModel tower_from_json(const Json& j);

Json to_json(const RayClassDistribution& dist);
/// The tower is materialized from the embedded header and owned by the
/// caller via this pair.
struct DistributionFile {
  TowerModel tower;
  RayClassDistribution dist;  // dist.tower points at this->tower
};
DistributionFile distribution_from_json(const Json& j);

Json to_json(const RefinedFamily& fam);
struct RefinedFamilyFile {
  TowerModel tower;
  RefinedFamily fam;
};
RefinedFamilyFile refined_from_json(const Json& j);

Json to_json(const PresentedModule& m);
PresentedModule module_from_json(const Json& j);

Json to_json(const IdealLattice& ideal);

/// curve_label,p,a_p rows; returns (label, p, a_p) triples.
struct HeckeRow {
  std::string label;
  uint64_t p = 0;
  int64_t ap = 0;
};
std::vector<HeckeRow> parse_hecke_csv(const std::string& text);

}  // namespace mtkit
