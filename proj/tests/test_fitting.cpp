#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mtkit/fitting.hpp"

using namespace mtkit;

namespace {

GroupRingElement random_sparse(const GroupRingRing& ring, std::mt19937_64& rng, int terms = 3) {
  std::uniform_int_distribution<uint64_t> dv(0, ring.ctx.pN - 1);
  std::uniform_int_distribution<uint64_t> dg(0, ring.group.order() - 1);
  GroupRingElement x(ring.group, ring.ctx);
  for (int t = 0; t < terms; ++t)
    x.set(dg(rng), PadicInt(ring.ctx, dv(rng)));
  return x;
}

PresentedModule random_module(const GroupRingRing& ring, size_t s, size_t r,
                              std::mt19937_64& rng) {
  PresentedModule m;
  m.ring = ring;
  m.generators = r;
  for (size_t i = 0; i < s; ++i) {
    std::vector<GroupRingElement> row;
    for (size_t j = 0; j < r; ++j) row.push_back(random_sparse(ring, rng));
    m.relations.push_back(std::move(row));
  }
  return m;
}

}  // namespace

TEST_CASE("lattice canonical form is span-invariant") {
  PadicContext ctx(5, 4);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<uint64_t> d(0, ctx.pN - 1);
  for (int rep = 0; rep < 200; ++rep) {
    size_t w = 4;
    std::vector<std::vector<uint64_t>> rows(3, std::vector<uint64_t>(w));
    for (auto& r : rows)
      for (auto& e : r) e = d(rng);
    ZpNLattice a(ctx, w), b(ctx, w);
    a.add_rows(rows);
    // same span, different presentation: unimodular row mixing + reorder
    std::vector<std::vector<uint64_t>> mixed = rows;
    for (int k = 0; k < 6; ++k) {
      size_t i = rng() % mixed.size(), j = rng() % mixed.size();
      if (i == j) continue;
      uint64_t c = d(rng);
      for (size_t t = 0; t < w; ++t) mixed[i][t] = ctx.add(mixed[i][t], ctx.mul(c, mixed[j][t]));
    }
    std::shuffle(mixed.begin(), mixed.end(), rng);
    b.add_rows(mixed);
    CHECK(a == b);
    // membership both ways
    for (const auto& r : rows) CHECK(b.contains(r));
    for (const auto& r : mixed) CHECK(a.contains(r));
  }
}

TEST_CASE("lattice membership and closure rows") {
  PadicContext ctx(5, 2);
  ZpNLattice l(ctx, 2);
  l.add_row({5, 1});
  // closure: 5 * (5,1) = (0,5) is in the span
  CHECK(l.contains({0, 5}));
  CHECK(l.contains({5, 1}));
  CHECK(l.contains({10, 2}));
  CHECK_FALSE(l.contains({1, 0}));
  CHECK_FALSE(l.contains({0, 1}));
  // canonical form of the same span generated differently
  ZpNLattice l2(ctx, 2);
  l2.add_rows({{5, 1}, {0, 5}, {10, 2}});
  CHECK(l == l2);
}

TEST_CASE("saturation strips p content") {
  PadicContext ctx(5, 4);
  ZpNLattice a(ctx, 2), b(ctx, 2);
  a.add_row({5, 10});
  b.add_row({1, 2});
  CHECK(a != b);
  CHECK(a.saturation() == b.saturation());
}

TEST_CASE("principal ideals and equality") {
  PadicContext ctx(5, 8);
  FiniteAbelianGroup g({5, 5});
  GroupRingRing ring{g, ctx};

  // (p, gamma - 1) == (gamma - 1, p) regardless of generator order
  auto p_elt = GroupRingElement::one(g, ctx).scaled(reduce(5, ctx));
  auto gm1 = GroupRingElement::basis(g, ctx, g.index_of({1, 0})) - GroupRingElement::one(g, ctx);
  auto i1 = IdealLattice::from_generators(ring, {p_elt, gm1});
  auto i2 = IdealLattice::from_generators(ring, {gm1, p_elt});
  CHECK(ideal_equal(i1, i2));

  // (2) = (1): units generate everything
  auto two = GroupRingElement::one(g, ctx).scaled(reduce(2, ctx));
  CHECK(ideal_equal(IdealLattice::principal(two), IdealLattice::unit_ideal(ring)));

  // (p) != (p^2)
  auto p2 = GroupRingElement::one(g, ctx).scaled(reduce(25, ctx));
  CHECK_FALSE(ideal_equal(IdealLattice::principal(p_elt), IdealLattice::principal(p2)));

  // invariance under unit scaling of the generator
  auto u = GroupRingElement::basis(g, ctx, g.index_of({2, 3})).scaled(reduce(7, ctx));
  CHECK(ideal_equal(IdealLattice::principal(gm1), IdealLattice::principal(gm1 * u)));

  FiniteAbelianGroup g2({5});
  CHECK_THROWS_AS(
      ideal_equal(i1, IdealLattice::unit_ideal(GroupRingRing{g2, ctx})), RingMismatch);
}

TEST_CASE("fitting ideal basics") {
  PadicContext ctx(5, 8);
  FiniteAbelianGroup g({5});
  GroupRingRing ring{g, ctx};
  std::mt19937_64 rng(29);

  // R/(a): single 1x1 minor
  auto a = random_sparse(ring, rng);
  PresentedModule m{ring, 1, {{a}}};
  CHECK(ideal_equal(fitting_ideal(m), IdealLattice::principal(a)));

  // diag(x, y) -> (xy)
  auto x = random_sparse(ring, rng), y = random_sparse(ring, rng);
  auto z = GroupRingElement::zero(g, ctx);
  PresentedModule d{ring, 2, {{x, z}, {z, y}}};
  CHECK(ideal_equal(fitting_ideal(d), IdealLattice::principal(x * y)));

  // free rank-1 module: zero relation matrix -> zero ideal
  PresentedModule f{ring, 1, {{z}}};
  CHECK(fitting_ideal(f).is_zero());

  // r = 0 -> unit ideal; s < r -> zero ideal
  PresentedModule r0{ring, 0, {}};
  CHECK(ideal_equal(fitting_ideal(r0), IdealLattice::unit_ideal(ring)));
  PresentedModule thin{ring, 2, {{x, y}}};
  CHECK(fitting_ideal(thin).is_zero());
}

TEST_CASE("fitting ideal is presentation independent") {
  PadicContext ctx(5, 6);
  FiniteAbelianGroup g({5, 2});
  GroupRingRing ring{g, ctx};
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    size_t r = 1 + rng() % 3, s = r + rng() % 2;
    auto m = random_module(ring, s, r, rng);
    auto fit = fitting_ideal(m);

    // redundant generator g_{r+1} = sum c_j g_j with its defining relation
    PresentedModule aug;
    aug.ring = ring;
    aug.generators = r + 1;
    std::vector<GroupRingElement> defining;
    for (size_t j = 0; j < r; ++j) defining.push_back(random_sparse(ring, rng));
    defining.push_back(-GroupRingElement::one(g, ctx));
    for (const auto& row : m.relations) {
      auto extended = row;
      extended.push_back(GroupRingElement::zero(g, ctx));
      aug.relations.push_back(extended);
    }
    aug.relations.push_back(defining);
    CHECK(ideal_equal(fitting_ideal(aug), fit));

    // adding a relation in the row span changes nothing
    PresentedModule span = m;
    std::vector<GroupRingElement> combo(r, GroupRingElement::zero(g, ctx));
    for (const auto& row : m.relations) {
      auto c = random_sparse(ring, rng, 2);
      for (size_t j = 0; j < r; ++j) combo[j] = combo[j] + c * row[j];
    }
    span.relations.push_back(combo);
    CHECK(ideal_equal(fitting_ideal(span), fit));
  }
}

TEST_CASE("fitting ideal multiplies over direct sums") {
  PadicContext ctx(5, 6);
  FiniteAbelianGroup g({5, 2});
  GroupRingRing ring{g, ctx};
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    size_t r1 = 1 + rng() % 2, r2 = 1 + rng() % 2;
    auto m1 = random_module(ring, r1, r1, rng);
    auto m2 = random_module(ring, r2, r2, rng);
    PresentedModule sum;
    sum.ring = ring;
    sum.generators = r1 + r2;
    for (size_t i = 0; i < r1; ++i) {
      std::vector<GroupRingElement> row = m1.relations[i];
      for (size_t j = 0; j < r2; ++j) row.push_back(GroupRingElement::zero(g, ctx));
      sum.relations.push_back(row);
    }
    for (size_t i = 0; i < r2; ++i) {
      std::vector<GroupRingElement> row(r1, GroupRingElement::zero(g, ctx));
      for (size_t j = 0; j < r2; ++j) row.push_back(m2.relations[i][j]);
      sum.relations.push_back(row);
    }
    CHECK(ideal_equal(fitting_ideal(sum), fitting_ideal(m1).product(fitting_ideal(m2))));
  }
}

TEST_CASE("quotient base change: omega-type ideals") {
  PadicContext ctx(5, 6);
  FiniteAbelianGroup g({25, 5});
  GroupRingRing ring{g, ctx};
  std::mt19937_64 rng(41);

  auto w1 = omega(1, g, g.index_of({1, 0}), ctx);  // kills gamma_p^5
  auto r = quotient_base_change(PresentedModule{ring, 1, {{random_sparse(ring, rng)}}}, {w1});
  CHECK(r.module.ring.group == FiniteAbelianGroup({5, 5}));

  // cyclic module: Fitt of the quotient is the projected generator
  auto a = random_sparse(ring, rng);
  auto qr = quotient_base_change(PresentedModule{ring, 1, {{a}}}, {w1});
  CHECK(ideal_equal(fitting_ideal(qr.module), IdealLattice::principal(qr.projection.apply(a))));

  // unsupported shapes are rejected
  auto bad = GroupRingElement::basis(g, ctx, g.index_of({1, 1})) - GroupRingElement::one(g, ctx);
  CHECK_THROWS_AS(quotient_base_change(PresentedModule{ring, 1, {{a}}}, {bad}),
                  UnsupportedQuotient);

  // Fitt_{R/I}(M/IM) = pi(Fitt_R(M)) on random presentations, both routes
  auto wq = omega(0, g, g.index_of({0, 1}), ctx);  // kills gamma_q
  for (int rep = 0; rep < 60; ++rep) {
    size_t r2 = 1 + rng() % 3;
    size_t s2 = r2 + rng() % 2;
    auto m = random_module(ring, s2, r2, rng);
    for (auto ideal_gens : std::vector<std::vector<GroupRingElement>>{{w1}, {wq}, {w1, wq}}) {
      auto q = quotient_base_change(m, ideal_gens);
      auto lhs = fitting_ideal(q.module);
      auto rhs = project_ideal(fitting_ideal(m), q.projection);
      CHECK(ideal_equal(lhs, rhs));
    }
  }
}

TEST_CASE("base change along ring maps") {
  PadicContext ctx(5, 6);
  FiniteAbelianGroup g({5, 5});
  GroupRingRing ring{g, ctx};
  std::mt19937_64 rng(43);

  auto m = random_module(ring, 2, 2, rng);
  // identity quotient
  std::vector<Exponents> id_images{{1, 0}, {0, 1}};
  auto rid = RingMap::quotient(GroupHom(g, g, id_images), ctx);
  CHECK(ideal_equal(base_change_fitting(m, rid), fitting_ideal(m)));

  // involution: Fitt(M^iota) = iota(Fitt(M))
  auto riota = RingMap::involution_map(ring);
  auto lhs = base_change_fitting(m, riota);
  IdealLattice rhs(ring);
  auto fit_m = fitting_ideal(m);
  for (const auto& row : fit_m.lattice().basis())
    rhs.add_generator(involution(GroupRingElement(g, ctx, row)));
  CHECK(ideal_equal(lhs, rhs));

  // quotient to G/H on diag(x,y) gives (pi(x) pi(y))
  auto x = random_sparse(ring, rng), y = random_sparse(ring, rng);
  auto z = GroupRingElement::zero(g, ctx);
  PresentedModule d{ring, 2, {{x, z}, {z, y}}};
  FiniteAbelianGroup q({5, 1});
  GroupHom pi(g, q, {{1, 0}, {0, 0}});
  auto rq = RingMap::quotient(pi, ctx);
  CHECK(ideal_equal(base_change_fitting(d, rq),
                    IdealLattice::principal(norm_push(pi, x) * norm_push(pi, y))));
}

TEST_CASE("project_ideal respects products on principal pairs") {
  PadicContext ctx(5, 5);
  FiniteAbelianGroup g({25});
  GroupRingRing ring{g, ctx};
  FiniteAbelianGroup q({5});
  GroupHom pi(g, q, {{1}});
  auto rm = RingMap::quotient(pi, ctx);
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = random_sparse(ring, rng), b = random_sparse(ring, rng);
    auto lhs = project_ideal(IdealLattice::principal(a).product(IdealLattice::principal(b)), rm);
    auto rhs = project_ideal(IdealLattice::principal(a), rm)
                   .product(project_ideal(IdealLattice::principal(b), rm));
    CHECK(ideal_equal(lhs, rhs));
  }
  // zero and principal images
  CHECK(project_ideal(IdealLattice::zero_ideal(ring), rm).is_zero());
  auto l = random_sparse(ring, rng);
  CHECK(ideal_equal(project_ideal(IdealLattice::principal(l), rm),
                    IdealLattice::principal(norm_push(pi, l))));
}
