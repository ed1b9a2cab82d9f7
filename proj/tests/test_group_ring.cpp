#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mtkit/group_ring.hpp"

using namespace mtkit;

namespace {

PadicContext ctx52() { return PadicContext(5, 2); }
PadicContext ctx58() { return PadicContext(5, 8); }

GroupRingElement random_element(const FiniteAbelianGroup& g, const PadicContext& ctx,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> d(0, ctx.pN - 1);
  std::vector<uint64_t> c(g.order());
  for (auto& v : c) v = d(rng);
  return GroupRingElement(g, ctx, std::move(c));
}

// Brute-force trace: enumerate all preimages of every support point.
GroupRingElement trace_oracle(const GroupHom& phi, const GroupRingElement& x) {
  GroupRingElement r(phi.source(), x.context());
  for (uint64_t s = 0; s < phi.source().order(); ++s) {
    uint64_t t = phi.apply_index(s);
    if (x.raw(t)) r.set(s, x.coeff(t));
  }
  return r;
}

}  // namespace

TEST_CASE("group law and indexing") {
  FiniteAbelianGroup g({4, 3});
  CHECK(g.order() == 12);
  Exponents e{3, 2};
  CHECK(g.element(g.index_of(e)) == e);
  CHECK(g.add(g.index_of({3, 2}), g.index_of({2, 2})) == g.index_of({1, 1}));
  CHECK(g.neg(g.index_of({1, 0})) == g.index_of({3, 0}));
  FiniteAbelianGroup with_ones({1, 5, 1});
  CHECK(with_ones.order() == 5);
}

TEST_CASE("ring ops basics") {
  auto ctx = ctx52();
  FiniteAbelianGroup g({5, 2});
  auto dg = GroupRingElement::basis(g, ctx, g.index_of({1, 0}));
  auto dh = GroupRingElement::basis(g, ctx, g.index_of({2, 1}));
  CHECK(dg * dh == GroupRingElement::basis(g, ctx, g.index_of({3, 1})));
  auto one = GroupRingElement::one(g, ctx);
  auto x = dg + dh;
  CHECK(x * one == x);
  // (delta_g + delta_h) delta_g = delta_2g + delta_{g+h}
  auto lhs = (dg + dh) * dg;
  auto rhs = GroupRingElement::basis(g, ctx, g.index_of({2, 0})) +
             GroupRingElement::basis(g, ctx, g.index_of({3, 1}));
  CHECK(lhs == rhs);
  FiniteAbelianGroup g2({5});
  CHECK_THROWS_AS(dg + GroupRingElement::one(g2, ctx), GroupMismatch);
  CHECK_THROWS_AS(dg + GroupRingElement::one(g, PadicContext(5, 3)), ContextMismatch);
}

TEST_CASE("group algebra axioms, randomized") {
  auto ctx = PadicContext(5, 4);
  FiniteAbelianGroup g({5, 4});
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_element(g, ctx, rng);
    auto b = random_element(g, ctx, rng);
    auto c = random_element(g, ctx, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("norm_push and trace_lift") {
  auto ctx = ctx58();
  FiniteAbelianGroup src({25}), tgt({5});
  GroupHom phi(src, tgt, {{1}});
  CHECK(phi.surjective());

  // single term
  auto x = GroupRingElement::basis(src, ctx, src.index_of({7}));
  CHECK(norm_push(phi, x) == GroupRingElement::basis(tgt, ctx, tgt.index_of({2})));

  // kernel sum pushes to |ker| * delta_0
  auto ks = kernel_sum(phi, ctx);
  CHECK(norm_push(phi, ks) == GroupRingElement::one(tgt, ctx).scaled(reduce(5, ctx)));

  // trace of full fiber: trivial target
  FiniteAbelianGroup triv({1});
  GroupHom collapse(tgt, triv, {{0}});
  auto lifted = trace_lift(collapse, GroupRingElement::one(triv, ctx));
  for (uint64_t i = 0; i < 5; ++i) CHECK(lifted.raw(i) == 1);

  // norm_push(trace_lift(y)) = |ker| * y, randomized, against the oracle
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto y = random_element(tgt, ctx, rng);
    auto tl = trace_lift(phi, y);
    CHECK(tl == trace_oracle(phi, y));
    CHECK(norm_push(phi, tl) == y.scaled(reduce(5, ctx)));
  }

  // trace along the cyclic step Z/p^n -> Z/p^{n-1} is multiplication by
  // phi_poly(n-1) applied to any lift
  auto y = random_element(tgt, ctx, rng);
  auto tl = trace_lift(phi, y);
  auto lift = section_lift(phi, y);
  auto mult = phi_poly(2, src, src.index_of({1}), ctx);  // n = 2 level here
  CHECK(tl == mult * lift);

  CHECK(trace_lift(phi, GroupRingElement::zero(tgt, ctx)).is_zero());
  GroupHom notsurj(tgt, src, {{5}});
  CHECK_FALSE(notsurj.surjective());
  CHECK_THROWS_AS(trace_lift(notsurj, GroupRingElement::one(src, ctx)), NotSurjective);
}

TEST_CASE("involution") {
  auto ctx = ctx58();
  FiniteAbelianGroup g({5, 2});
  auto dg = GroupRingElement::basis(g, ctx, g.index_of({2, 1}));
  CHECK(involution(dg) == GroupRingElement::basis(g, ctx, g.index_of({3, 1})));
  CHECK(involution(GroupRingElement::one(g, ctx)) == GroupRingElement::one(g, ctx));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    auto a = random_element(g, ctx, rng);
    auto b = random_element(g, ctx, rng);
    CHECK(involution(involution(a)) == a);
    CHECK(involution(a * b) == involution(a) * involution(b));
    CHECK(involution(a + b) == involution(a) + involution(b));
  }
}

TEST_CASE("idempotents") {
  auto ctx = ctx52();
  FiniteAbelianGroup z2({2});
  auto e = idempotent(z2, {0}, ctx);
  // 2^{-1} = 13 mod 25, uniform over the group
  CHECK(e.raw(0) == 13);
  CHECK(e.raw(1) == 13);
  CHECK(e * e == e);
  // trivial character: absorbed by translations
  auto sigma = GroupRingElement::basis(z2, ctx, 1);
  CHECK(e * sigma == e);

  auto ctx8 = ctx58();
  FiniteAbelianGroup z4({4});
  for (uint64_t c = 0; c < 4; ++c) {
    auto ec = idempotent(z4, {c}, ctx8);
    CHECK(ec * ec == ec);
  }
  // orthogonal decomposition: sum of all idempotents is 1
  GroupRingElement s = GroupRingElement::zero(z4, ctx8);
  for (uint64_t c = 0; c < 4; ++c) s = s + idempotent(z4, {c}, ctx8);
  CHECK(s == GroupRingElement::one(z4, ctx8));

  FiniteAbelianGroup z5({5});
  CHECK_THROWS_AS(idempotent(z5, {0}, ctx), OrderNotCoprime);
  FiniteAbelianGroup z3({3});
  CHECK_THROWS_AS(idempotent(z3, {1}, ctx), CharacterValueNotInBaseField);
}

TEST_CASE("omega and phi") {
  auto ctx = ctx58();
  FiniteAbelianGroup g({25});
  uint64_t gamma = g.index_of({1});

  auto w0 = omega(0, g, gamma, ctx);
  auto expect0 = GroupRingElement::basis(g, ctx, gamma) - GroupRingElement::one(g, ctx);
  CHECK(w0 == expect0);

  // gamma of order p: omega_1 = 0
  FiniteAbelianGroup zp({5});
  CHECK(omega(1, zp, zp.index_of({1}), ctx).is_zero());

  // phi_0 = delta_gamma, phi_1 on order-p gamma = sum of all powers
  CHECK(phi_poly(0, g, gamma, ctx) == GroupRingElement::basis(g, ctx, gamma));
  auto p1 = phi_poly(1, zp, zp.index_of({1}), ctx);
  for (uint64_t k = 0; k < 5; ++k) CHECK(p1.raw(k) == 1);

  // augmentation of phi_n is p for n >= 1
  CHECK(phi_poly(1, g, gamma, ctx).augmentation() == reduce(5, ctx));
  CHECK(phi_poly(2, g, gamma, ctx).augmentation() == reduce(5, ctx));

  // the polynomial identity omega_n = omega_{n-1} * phi_n
  for (uint32_t n = 1; n <= 2; ++n)
    CHECK(omega(n, g, gamma, ctx) == omega(n - 1, g, gamma, ctx) * phi_poly(n, g, gamma, ctx));
}

TEST_CASE("regular matrix structure") {
  auto ctx = ctx58();
  FiniteAbelianGroup g({5, 2});
  auto one = GroupRingElement::one(g, ctx);
  auto m1 = regular_matrix(one);
  for (size_t i = 0; i < m1.n; ++i)
    for (size_t j = 0; j < m1.n; ++j) CHECK(m1.at(i, j) == (i == j ? 1u : 0u));

  auto dg = GroupRingElement::basis(g, ctx, g.index_of({2, 1}));
  auto mp = regular_matrix(dg);
  for (size_t j = 0; j < mp.n; ++j) {
    size_t nonzero = 0;
    for (size_t i = 0; i < mp.n; ++i)
      if (mp.at(i, j)) { ++nonzero; CHECK(i == g.add(g.index_of({2, 1}), j)); }
    CHECK(nonzero == 1);
  }

  std::mt19937_64 rng(11);
  auto x = random_element(g, ctx, rng);
  auto mx = regular_matrix(x);
  auto aug = x.augmentation();
  for (size_t i = 0; i < mx.n; ++i) {
    uint64_t s = 0;
    for (size_t j = 0; j < mx.n; ++j) s = ctx.add(s, mx.at(i, j));
    CHECK(s == aug.value());
  }
}

TEST_CASE("determinant: character product oracle on cyclic groups") {
  auto ctx = ctx58();
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<uint64_t> d(1, ctx.pN - 1);
  for (uint64_t k : {1ull, 2ull, 4ull, 5ull, 25ull}) {
    FiniteAbelianGroup g({k});
    for (int rep = 0; rep < 20; ++rep) {
      uint64_t av = d(rng) | 1;  // ensure nonzero
      PadicInt alpha(ctx, av);
      if (!alpha.is_unit()) continue;
      auto x = GroupRingElement::one(g, ctx) -
               GroupRingElement::basis(g, ctx, k == 1 ? 0 : g.index_of({1})).scaled(alpha.inverse());
      // product over k-th roots of unity of (1 - a^{-1} z) = 1 - a^{-k}
      PadicInt expect = PadicInt(ctx, 1) - alpha.inverse().pow(k);
      CHECK(det_multiplication(x) == expect);
    }
  }
}

TEST_CASE("determinant: permutation and augmentation-zero cases") {
  auto ctx = ctx58();
  FiniteAbelianGroup g({5, 2});
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<uint64_t> d(0, g.order() - 1);
  for (int i = 0; i < 10; ++i) {
    auto dg = GroupRingElement::basis(g, ctx, d(rng));
    auto v = det_multiplication(dg);
    CHECK((v.value() == 1 || v.value() == ctx.pN - 1));
  }
  // delta_gamma - 1 on Z/p: non-unit (trivial character kills it)
  FiniteAbelianGroup zp({5});
  auto x = GroupRingElement::basis(zp, ctx, 1) - GroupRingElement::one(zp, ctx);
  CHECK(det_multiplication(x).valuation() >= 1);
  CHECK_FALSE(is_unit(x));
}

TEST_CASE("determinant is multiplicative") {
  auto ctx = PadicContext(5, 5);
  FiniteAbelianGroup g({5, 2});
  std::mt19937_64 rng(19);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(g, ctx, rng);
    auto b = random_element(g, ctx, rng);
    CHECK(det_multiplication(a * b) == det_multiplication(a) * det_multiplication(b));
  }
}

TEST_CASE("is_unit and inversion") {
  auto ctx = ctx58();
  FiniteAbelianGroup triv({1});
  PadicInt alpha = reduce(2, ctx);
  auto x = GroupRingElement::one(triv, ctx) -
           GroupRingElement::one(triv, ctx).scaled(alpha.inverse());
  CHECK(is_unit(x));  // 1 - 1/2 = 1/2 is a unit

  FiniteAbelianGroup zp({5});
  auto y = GroupRingElement::basis(zp, ctx, 1) - GroupRingElement::one(zp, ctx);
  CHECK_FALSE(is_unit(y));
  CHECK_THROWS_AS(invert_element(y), NotAUnit);

  CHECK(invert_element(GroupRingElement::one(zp, ctx)) == GroupRingElement::one(zp, ctx));
  auto dg = GroupRingElement::basis(zp, ctx, 2);
  CHECK(invert_element(dg) == GroupRingElement::basis(zp, ctx, zp.neg(2)));

  // x * x^{-1} = 1 for 100 random units
  FiniteAbelianGroup g({5, 2});
  std::mt19937_64 rng(23);
  int found = 0;
  while (found < 100) {
    auto z = random_element(g, ctx, rng);
    if (!is_unit(z)) continue;
    ++found;
    CHECK(z * invert_element(z) == GroupRingElement::one(g, ctx));
  }

  // symmetric trinomial on Z/p^n x Delta, unit alpha with feasible residue
  FiniteAbelianGroup gd({5, 2});
  auto sigma = gd.index_of({1, 1});
  PadicInt a4 = unit_root_of_hecke(ctx, reduce(4, ctx));
  auto w = GroupRingElement::one(gd, ctx) -
           GroupRingElement::basis(gd, ctx, sigma).scaled(a4.inverse()) -
           GroupRingElement::basis(gd, ctx, gd.neg(sigma)).scaled(a4.inverse());
  CHECK(is_unit(w));
  CHECK(w * invert_element(w) == GroupRingElement::one(gd, ctx));
}
