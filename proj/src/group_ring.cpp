#include "mtkit/group_ring.hpp"

#include <algorithm>
#include <numeric>

namespace mtkit {

void GroupRingElement::check(const GroupRingElement& o) const {
  if (g_ != o.g_) throw GroupMismatch("group ring elements live on different groups");
  if (ctx_ != o.ctx_) throw ContextMismatch("group ring elements have different contexts");
}

void GroupRingElement::set(uint64_t element_index, const PadicInt& v) {
  if (v.context() != ctx_) throw ContextMismatch("coefficient context differs");
  c_.at(element_index) = v.value();
}

bool GroupRingElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](uint64_t v) { return v == 0; });
}

size_t GroupRingElement::support_size() const {
  return (size_t)std::count_if(c_.begin(), c_.end(), [](uint64_t v) { return v != 0; });
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check(o);
  GroupRingElement r(g_, ctx_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_.add(c_[i], o.c_[i]);
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check(o);
  GroupRingElement r(g_, ctx_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_.sub(c_[i], o.c_[i]);
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r(g_, ctx_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_.neg(c_[i]);
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check(o);
  GroupRingElement r(g_, ctx_);
  // schoolbook convolution, skipping zero coefficients of the sparser side
  const GroupRingElement* lhs = this;
  const GroupRingElement* rhs = &o;
  if (support_size() > o.support_size()) std::swap(lhs, rhs);
  for (uint64_t i = 0; i < g_.order(); ++i) {
    uint64_t ci = lhs->c_[i];
    if (ci == 0) continue;
    for (uint64_t j = 0; j < g_.order(); ++j) {
      uint64_t cj = rhs->c_[j];
      if (cj == 0) continue;
      uint64_t k = g_.add(i, j);
      r.c_[k] = ctx_.add(r.c_[k], ctx_.mul(ci, cj));
    }
  }
  return r;
}

GroupRingElement GroupRingElement::scaled(const PadicInt& s) const {
  if (s.context() != ctx_) throw ContextMismatch("scalar context differs");
  GroupRingElement r(g_, ctx_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = ctx_.mul(c_[i], s.value());
  return r;
}

PadicInt GroupRingElement::augmentation() const {
  uint64_t s = 0;
  for (uint64_t v : c_) s = ctx_.add(s, v);
  return PadicInt(ctx_, s);
}

uint32_t GroupRingElement::min_valuation() const {
  uint32_t v = ctx_.N;
  for (uint64_t x : c_) v = std::min(v, ctx_.valuation(x));
  return v;
}

GroupRingElement norm_push(const GroupHom& phi, const GroupRingElement& x) {
  if (phi.source() != x.group()) throw GroupMismatch("norm_push: element not on the source group");
  GroupRingElement r(phi.target(), x.context());
  std::vector<uint64_t> acc(phi.target().order(), 0);
  for (uint64_t i = 0; i < phi.source().order(); ++i) {
    uint64_t v = x.raw(i);
    if (v == 0) continue;
    uint64_t t = phi.apply_index(i);
    acc[t] = x.context().add(acc[t], v);
  }
  return GroupRingElement(phi.target(), x.context(), std::move(acc));
}

GroupRingElement trace_lift(const GroupHom& phi, const GroupRingElement& x) {
  if (!phi.surjective()) throw NotSurjective("trace_lift needs a surjective hom");
  if (phi.target() != x.group()) throw GroupMismatch("trace_lift: element not on the target group");
  std::vector<uint64_t> acc(phi.source().order(), 0);
  for (uint64_t t = 0; t < phi.target().order(); ++t) {
    uint64_t v = x.raw(t);
    if (v == 0) continue;
    for (uint64_t s : phi.fibers()[t]) acc[s] = v;
  }
  return GroupRingElement(phi.source(), x.context(), std::move(acc));
}

GroupRingElement section_lift(const GroupHom& phi, const GroupRingElement& x) {
  if (!phi.surjective()) throw NotSurjective("section_lift needs a surjective hom");
  if (phi.target() != x.group()) throw GroupMismatch("section_lift: element not on the target group");
  GroupRingElement r(phi.source(), x.context());
  for (uint64_t t = 0; t < phi.target().order(); ++t) {
    uint64_t v = x.raw(t);
    if (v == 0) continue;
    Exponents e = phi.target().element(t);
    Exponents lifted(phi.source().rank(), 0);
    if (e.size() != lifted.size())
      throw GroupMismatch("section_lift: coordinate shapes differ");
    for (size_t i = 0; i < e.size(); ++i) lifted[i] = e[i];
    uint64_t s = phi.source().index_of(lifted);
    if (phi.apply_index(s) != t)
      throw GroupMismatch("section_lift: hom is not a coordinate reduction");
    r.set(s, PadicInt(x.context(), v));
  }
  return r;
}

GroupRingElement kernel_sum(const GroupHom& phi, const PadicContext& ctx) {
  GroupRingElement r(phi.source(), ctx);
  PadicInt one(ctx, 1 % ctx.pN);
  for (uint64_t s : phi.kernel()) r.set(s, r.coeff(s) + one);
  return r;
}

GroupRingElement involution(const GroupRingElement& x) {
  GroupRingElement r(x.group(), x.context());
  for (uint64_t i = 0; i < x.group().order(); ++i) {
    uint64_t v = x.raw(i);
    if (v) r.set(x.group().neg(i), PadicInt(x.context(), v));
  }
  return r;
}

GroupRingElement idempotent(const FiniteAbelianGroup& delta, const std::vector<uint64_t>& chi,
                            const PadicContext& ctx) {
  if (delta.order() % ctx.p == 0)
    throw OrderNotCoprime("idempotent needs gcd(|G|, p) = 1");
  if (chi.size() != delta.rank()) throw ConfigError("character spec has wrong coordinate count");
  // Character value on coordinate i has order d_i / gcd(c_i, d_i); it must
  // divide p-1 to live in Z_p.
  std::vector<PadicInt> zeta;
  std::vector<uint64_t> ords;
  for (size_t i = 0; i < delta.rank(); ++i) {
    uint64_t d = delta.factors()[i];
    uint64_t g = std::gcd(chi[i] % d, d);
    uint64_t k = d / (g == 0 ? d : g);
    if (k > 1 && (ctx.p - 1) % k != 0)
      throw CharacterValueNotInBaseField("character order " + std::to_string(k) +
                                         " does not divide p-1");
    ords.push_back(k);
    zeta.push_back(root_of_unity(ctx, k == 0 ? 1 : k));
  }
  PadicInt inv_order = PadicInt(ctx, delta.order() % ctx.pN).inverse();
  GroupRingElement e(delta, ctx);
  for (uint64_t idx = 0; idx < delta.order(); ++idx) {
    Exponents ex = delta.element(idx);
    PadicInt val = inv_order;
    for (size_t i = 0; i < delta.rank(); ++i) {
      if (ords[i] <= 1) continue;
      uint64_t d = delta.factors()[i];
      uint64_t cprime = (chi[i] % d) * ords[i] / d;  // exact by construction
      // eta(g)^{-1} contribution
      uint64_t expo = (unsigned __int128)cprime * ex[i] % ords[i];
      val = val * zeta[i].pow(expo).inverse();
    }
    e.set(idx, val);
  }
  return e;
}

GroupRingElement omega(uint32_t n, const FiniteAbelianGroup& g, uint64_t gamma_index,
                       const PadicContext& ctx) {
  uint64_t pn = 1;
  for (uint32_t i = 0; i < n; ++i) pn *= ctx.p;
  GroupRingElement r(g, ctx);
  uint64_t tgt = g.scale(gamma_index, pn);
  r.set(tgt, PadicInt(ctx, 1 % ctx.pN));
  r.set(0, r.coeff(0) - PadicInt(ctx, 1 % ctx.pN));
  return r;
}

GroupRingElement phi_poly(uint32_t n, const FiniteAbelianGroup& g, uint64_t gamma_index,
                          const PadicContext& ctx) {
  GroupRingElement r(g, ctx);
  if (n == 0) {
    r.set(gamma_index, PadicInt(ctx, 1 % ctx.pN));
    return r;
  }
  uint64_t step = 1;
  for (uint32_t i = 0; i + 1 < n; ++i) step *= ctx.p;
  for (uint64_t k = 0; k < ctx.p; ++k) {
    uint64_t e = g.scale(gamma_index, k * step);
    r.set(e, r.coeff(e) + PadicInt(ctx, 1 % ctx.pN));
  }
  return r;
}

ZpMatrix regular_matrix(const GroupRingElement& x) {
  const auto& g = x.group();
  size_t n = g.order();
  ZpMatrix m{x.context(), n, n, std::vector<uint64_t>(n * n, 0)};
  for (uint64_t i = 0; i < n; ++i)
    for (uint64_t j = 0; j < n; ++j) m.at(i, j) = x.raw(g.sub(i, j));
  return m;
}

PadicInt det_matrix(const ZpMatrix& mat) {
  if (mat.n != mat.m) throw ConfigError("determinant of a non-square matrix");
  const PadicContext& ctx = mat.ctx;
  ZpMatrix w = mat;
  size_t n = w.n;
  uint64_t det = 1 % ctx.pN;
  bool negate = false;
  for (size_t k = 0; k < n; ++k) {
    // global minimal-valuation pivot in the remaining block keeps every
    // elimination product unambiguous mod p^N; any unit entry is already
    // minimal, so stop scanning at the first one
    uint32_t best = ctx.N + 1;
    size_t bi = k, bj = k;
    for (size_t i = k; i < n && best > 0; ++i)
      for (size_t j = k; j < n; ++j) {
        uint64_t e = w.at(i, j);
        if (e == 0) continue;
        if (e % ctx.p != 0) { best = 0; bi = i; bj = j; break; }
        uint32_t v = ctx.valuation(e);
        if (v < best) { best = v; bi = i; bj = j; }
      }
    if (best >= ctx.N) return PadicInt(ctx, 0);  // remaining block is 0 mod p^N
    if (bi != k) {
      for (size_t j = k; j < n; ++j) std::swap(w.at(k, j), w.at(bi, j));
      negate = !negate;
    }
    if (bj != k) {
      for (size_t i = k; i < n; ++i) std::swap(w.at(i, k), w.at(i, bj));
      negate = !negate;
    }
    uint64_t piv = w.at(k, k);
    uint64_t pv = 1;
    for (uint32_t t = 0; t < best; ++t) pv *= ctx.p;
    uint64_t unit_inv = ctx.inv(piv / pv);
    det = ctx.mul(det, piv);
    for (size_t i = k + 1; i < n; ++i) {
      uint64_t e = w.at(i, k);
      if (e == 0) continue;
      uint64_t f = ctx.mul(e / pv, unit_inv);  // val(e) >= best by pivot choice
      for (size_t j = k; j < n; ++j)
        w.at(i, j) = ctx.sub(w.at(i, j), ctx.mul(f, w.at(k, j)));
    }
  }
  if (negate) det = ctx.neg(det);
  return PadicInt(ctx, det);
}

PadicInt det_multiplication(const GroupRingElement& x) { return det_matrix(regular_matrix(x)); }

bool is_unit(const GroupRingElement& x) { return det_multiplication(x).is_unit(); }

std::optional<std::vector<uint64_t>> solve_unit_system(const ZpMatrix& mat,
                                                       std::vector<uint64_t> rhs) {
  const PadicContext& ctx = mat.ctx;
  ZpMatrix w = mat;
  size_t n = w.n;
  if (rhs.size() != n) throw ConfigError("rhs length mismatch");
  std::vector<size_t> colperm(n);
  for (size_t i = 0; i < n; ++i) colperm[i] = i;
  for (size_t k = 0; k < n; ++k) {
    size_t bi = n, bj = n;
    for (size_t i = k; i < n && bi == n; ++i)
      for (size_t j = k; j < n; ++j)
        if (ctx.valuation(w.at(i, j)) == 0) { bi = i; bj = j; break; }
    if (bi == n) return std::nullopt;  // no unit pivot: matrix not invertible
    if (bi != k) {
      for (size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(bi, j));
      std::swap(rhs[k], rhs[bi]);
    }
    if (bj != k) {
      for (size_t i = 0; i < n; ++i) std::swap(w.at(i, k), w.at(i, bj));
      std::swap(colperm[k], colperm[bj]);
    }
    uint64_t inv = ctx.inv(w.at(k, k));
    for (size_t j = k; j < n; ++j) w.at(k, j) = ctx.mul(w.at(k, j), inv);
    rhs[k] = ctx.mul(rhs[k], inv);
    for (size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      uint64_t f = w.at(i, k);
      if (f == 0) continue;
      for (size_t j = k; j < n; ++j) w.at(i, j) = ctx.sub(w.at(i, j), ctx.mul(f, w.at(k, j)));
      rhs[i] = ctx.sub(rhs[i], ctx.mul(f, rhs[k]));
    }
  }
  std::vector<uint64_t> sol(n);
  for (size_t k = 0; k < n; ++k) sol[colperm[k]] = rhs[k];
  return sol;
}

GroupRingElement invert_element(const GroupRingElement& x) {
  ZpMatrix m = regular_matrix(x);
  std::vector<uint64_t> e0(m.n, 0);
  e0[0] = 1 % x.context().pN;
  auto sol = solve_unit_system(m, std::move(e0));
  if (!sol) throw NotAUnit("group ring element is not a unit");
  return GroupRingElement(x.group(), x.context(), std::move(*sol));
}

}  // namespace mtkit
