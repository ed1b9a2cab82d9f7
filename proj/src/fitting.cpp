#include "mtkit/fitting.hpp"

#include <numeric>

namespace mtkit {

IdealLattice IdealLattice::principal(const GroupRingElement& g) {
  IdealLattice ideal(GroupRingRing{g.group(), g.context()});
  ideal.add_generator(g);
  return ideal;
}

IdealLattice IdealLattice::from_generators(const GroupRingRing& ring,
                                           const std::vector<GroupRingElement>& gens) {
  IdealLattice ideal(ring);
  for (const auto& g : gens) ideal.add_generator(g);
  return ideal;
}

IdealLattice IdealLattice::unit_ideal(const GroupRingRing& ring) {
  return principal(GroupRingElement::one(ring.group, ring.ctx));
}

void IdealLattice::add_generator(const GroupRingElement& g) {
  if (g.group() != ring_.group || g.context() != ring_.ctx)
    throw RingMismatch("generator lives in a different ring");
  if (g.is_zero()) return;
  gens_.push_back(g);
  std::vector<std::vector<uint64_t>> rows;
  rows.reserve(ring_.group.order());
  for (uint64_t t = 0; t < ring_.group.order(); ++t) {
    // row = delta_t * g
    std::vector<uint64_t> row(ring_.group.order(), 0);
    for (uint64_t i = 0; i < ring_.group.order(); ++i) {
      uint64_t v = g.raw(i);
      if (v) row[ring_.group.add(t, i)] = v;
    }
    rows.push_back(std::move(row));
  }
  lat_.add_rows(rows);
}

bool IdealLattice::contains(const GroupRingElement& x) const {
  if (x.group() != ring_.group || x.context() != ring_.ctx)
    throw RingMismatch("element lives in a different ring");
  return lat_.contains(x.coeffs());
}

IdealLattice IdealLattice::product(const IdealLattice& other) const {
  if (ring_ != other.ring_) throw RingMismatch("ideal product: different rings");
  IdealLattice out(ring_);
  for (const auto& a : gens_)
    for (const auto& b : other.gens_) out.add_generator(a * b);
  return out;
}

IdealLattice IdealLattice::saturated() const {
  IdealLattice out(ring_);
  out.lat_ = lat_.saturation();
  // the saturation is generated (as an ideal, a fortiori) by its basis rows
  for (const auto& row : out.lat_.basis())
    out.gens_.emplace_back(ring_.group, ring_.ctx, row);
  return out;
}

void PresentedModule::validate() const {
  for (const auto& row : relations) {
    if (row.size() != generators)
      throw ConfigError("relation row length differs from generator count");
    for (const auto& e : row)
      if (e.group() != ring.group || e.context() != ring.ctx)
        throw RingMismatch("relation entry lives in a different ring");
  }
}

GroupRingElement grm_determinant(const std::vector<std::vector<GroupRingElement>>& a,
                                 const GroupRingRing& ring) {
  size_t n = a.size();
  GroupRingElement one = GroupRingElement::one(ring.group, ring.ctx);
  if (n == 0) return one;
  // Laplace along rows with memo over column subsets.
  std::vector<GroupRingElement> memo(1ull << n);
  memo[0] = one;
  // iterative over subsets: det of rows [n - popcount .. n) x columns(mask)
  for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
    int cnt = __builtin_popcountll(mask);
    size_t row = n - (size_t)cnt;
    GroupRingElement acc = GroupRingElement::zero(ring.group, ring.ctx);
    int sign = 1;  // alternates over the set bits of mask
    for (size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const GroupRingElement& entry = a[row][j];
      if (!entry.is_zero()) {
        GroupRingElement term = entry * memo[mask & ~(1ull << j)];
        acc = sign > 0 ? acc + term : acc - term;
      }
      sign = -sign;
    }
    memo[mask] = acc;
  }
  return memo[(1ull << n) - 1];
}

IdealLattice fitting_ideal(const PresentedModule& m) {
  m.validate();
  size_t r = m.generators, s = m.relation_count();
  if (r == 0) return IdealLattice::unit_ideal(m.ring);
  if (s < r) return IdealLattice::zero_ideal(m.ring);
  // all r-subsets of the s relation rows
  IdealLattice ideal(m.ring);
  std::vector<size_t> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  auto advance = [&]() {
    size_t i = r;
    while (i-- > 0) {
      if (pick[i] + (r - i) < s) {
        ++pick[i];
        for (size_t j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::vector<GroupRingElement>> sub(r);
    for (size_t i = 0; i < r; ++i) sub[i] = m.relations[pick[i]];
    ideal.add_generator(grm_determinant(sub, m.ring));
  } while (advance());
  return ideal;
}

GroupRingElement RingMap::apply(const GroupRingElement& x) const {
  if (kind == Kind::Involution) return mtkit::involution(x);
  return norm_push(hom, x);
}

namespace {

// Recognize delta_g - 1 with g = c * e_i; returns (coordinate, multiple).
std::optional<std::pair<size_t, uint64_t>> omega_type_generator(const GroupRingElement& g) {
  const auto& grp = g.group();
  uint64_t nonzero_at = grp.order();
  for (uint64_t i = 1; i < grp.order(); ++i) {
    if (g.raw(i) == 0) continue;
    if (nonzero_at != grp.order()) return std::nullopt;  // more than one non-identity term
    if (g.raw(i) != 1 % g.context().pN) return std::nullopt;
    nonzero_at = i;
  }
  if (nonzero_at == grp.order()) return std::nullopt;  // no delta_g term
  if (g.raw(0) != g.context().pN - 1) return std::nullopt;  // need coefficient -1 at identity
  Exponents e = grp.element(nonzero_at);
  size_t coord = e.size();
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (coord != e.size()) return std::nullopt;  // supported: single-coordinate multiples
    coord = i;
  }
  if (coord == e.size()) return std::nullopt;
  return std::make_pair(coord, e[coord]);
}

}  // namespace

QuotientResult quotient_base_change(const PresentedModule& m,
                                    const std::vector<GroupRingElement>& ideal_gens) {
  m.validate();
  const auto& grp = m.ring.group;
  // Combine generators per coordinate: subgroup <c1 e_i, c2 e_i, ...> = <gcd e_i>.
  std::vector<uint64_t> kill(grp.rank(), 0);  // 0 = nothing killed on that coordinate
  for (const auto& g : ideal_gens) {
    if (g.group() != grp || g.context() != m.ring.ctx)
      throw RingMismatch("ideal generator lives in a different ring");
    if (g.is_zero()) continue;
    auto og = omega_type_generator(g);
    if (!og)
      throw UnsupportedQuotient(
          "quotient ideal generator is not of the form delta_(c*e_i) - 1");
    auto [coord, mult] = *og;
    kill[coord] = kill[coord] == 0 ? mult : std::gcd(kill[coord], mult);
  }
  std::vector<uint64_t> new_factors(grp.rank());
  for (size_t i = 0; i < grp.rank(); ++i) {
    uint64_t d = grp.factors()[i];
    new_factors[i] = kill[i] == 0 ? d : std::gcd(kill[i], d);
  }
  FiniteAbelianGroup q(new_factors);
  std::vector<Exponents> images(grp.rank());
  for (size_t i = 0; i < grp.rank(); ++i) {
    images[i].assign(grp.rank(), 0);
    images[i][i] = 1 % new_factors[i];
  }
  GroupHom pi(grp, q, images);
  RingMap rm = RingMap::quotient(pi, m.ring.ctx);
  PresentedModule out;
  out.ring = GroupRingRing{q, m.ring.ctx};
  out.generators = m.generators;
  out.relations.reserve(m.relation_count());
  for (const auto& row : m.relations) {
    std::vector<GroupRingElement> prow;
    prow.reserve(row.size());
    for (const auto& e : row) prow.push_back(rm.apply(e));
    out.relations.push_back(std::move(prow));
  }
  return QuotientResult{std::move(out), std::move(rm)};
}

IdealLattice project_ideal(const IdealLattice& ideal, const RingMap& pi) {
  if (ideal.ring() != pi.source) throw RingMismatch("project_ideal: ideal not over the source ring");
  IdealLattice out(pi.target);
  for (const auto& g : ideal.generators()) out.add_generator(pi.apply(g));
  return out;
}

IdealLattice base_change_fitting(const PresentedModule& m, const RingMap& rho) {
  m.validate();
  if (m.ring != rho.source) throw RingMismatch("base_change_fitting: module not over the source ring");
  PresentedModule pushed;
  pushed.ring = rho.target;
  pushed.generators = m.generators;
  pushed.relations.reserve(m.relation_count());
  for (const auto& row : m.relations) {
    std::vector<GroupRingElement> prow;
    prow.reserve(row.size());
    for (const auto& e : row) prow.push_back(rho.apply(e));
    pushed.relations.push_back(std::move(prow));
  }
  IdealLattice direct = fitting_ideal(pushed);
  IdealLattice via_projection = project_ideal(fitting_ideal(m), rho);
  if (direct != via_projection)
    throw Error("base change Fitting ideal disagrees with projected Fitting ideal");
  return direct;
}

}  // namespace mtkit
