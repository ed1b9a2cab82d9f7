#include "mtkit/tower.hpp"

#include <algorithm>
#include <random>

namespace mtkit {

namespace {

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

HeckeData HeckeData::from_ap(const PadicContext& ctx, const PadicInt& ap) {
  HeckeData h;
  h.ap = ap;
  PadicInt alpha = unit_root_of_hecke(ctx, ap);
  h.alpha_p = alpha;
  h.alpha_q = alpha;
  h.ap_not_one = ap.value() % ctx.p != 1;
  h.ap_not_zero = ap.value() % ctx.p != 0;
  return h;
}

TowerModel::TowerModel(PadicContext ctx, uint32_t cap_a, uint32_t cap_b, FiniteAbelianGroup delta,
                       SigmaSpec sigma_p, SigmaSpec sigma_q)
    : ctx_(ctx), A_(cap_a), B_(cap_b), delta_(std::move(delta)), sp_(std::move(sigma_p)),
      sq_(std::move(sigma_q)) {
  if (A_ < 1 || B_ < 1) throw ConfigError("tower caps must be >= 1");
  if (delta_.order() % ctx_.p == 0)
    throw BadDelta("prime-to-p factor has order divisible by p");
  sp_.delta.resize(delta_.rank(), 0);
  sq_.delta.resize(delta_.rank(), 0);
  groups_.resize((A_ + 1) * (B_ + 1));
  down_p_.resize(groups_.size());
  down_q_.resize(groups_.size());
  for (uint32_t a = 0; a <= A_; ++a)
    for (uint32_t b = 0; b <= B_; ++b) groups_[slot({a, b})] = make_group({a, b});
  auto reduction = [&](const FiniteAbelianGroup& src, const FiniteAbelianGroup& tgt) {
    std::vector<Exponents> images(src.rank());
    for (size_t i = 0; i < src.rank(); ++i) {
      images[i].assign(tgt.rank(), 0);
      images[i][i] = 1 % tgt.factors()[i];
    }
    return GroupHom(src, tgt, images);
  };
  for (uint32_t a = 0; a <= A_; ++a)
    for (uint32_t b = 0; b <= B_; ++b) {
      if (a >= 1)
        down_p_[slot({a, b})] = reduction(groups_[slot({a, b})], groups_[slot({a - 1, b})]);
      if (b >= 1)
        down_q_[slot({a, b})] = reduction(groups_[slot({a, b})], groups_[slot({a, b - 1})]);
    }
}

FiniteAbelianGroup TowerModel::make_group(ModulusIndex f) const {
  std::vector<uint64_t> factors;
  factors.push_back(pow_u64(ctx_.p, f.a >= 1 ? f.a - 1 : 0));
  factors.push_back(pow_u64(ctx_.p, f.b >= 1 ? f.b - 1 : 0));
  for (uint64_t d : delta_.factors()) factors.push_back(d);
  return FiniteAbelianGroup(factors);
}

const FiniteAbelianGroup& TowerModel::group(ModulusIndex f) const {
  if (f.a > A_ || f.b > B_) throw ConfigError("modulus exceeds tower caps");
  return groups_[slot(f)];
}

const GroupHom& TowerModel::down_p(ModulusIndex f) const {
  if (f.a < 1 || f.a > A_ || f.b > B_) throw ConfigError("no p-step below this modulus");
  return down_p_[slot(f)];
}

const GroupHom& TowerModel::down_q(ModulusIndex f) const {
  if (f.b < 1 || f.a > A_ || f.b > B_) throw ConfigError("no q-step below this modulus");
  return down_q_[slot(f)];
}

GroupHom TowerModel::down_to(ModulusIndex f, ModulusIndex m) const {
  if (m.a > f.a || m.b > f.b) throw ConfigError("down_to needs a lower modulus");
  const FiniteAbelianGroup& src = group(f);
  const FiniteAbelianGroup& tgt = group(m);
  std::vector<Exponents> images(src.rank());
  for (size_t i = 0; i < src.rank(); ++i) {
    images[i].assign(tgt.rank(), 0);
    images[i][i] = 1 % tgt.factors()[i];
  }
  return GroupHom(src, tgt, images);
}

uint64_t TowerModel::sigma_index(ModulusIndex f, const SigmaSpec& s, bool own_is_p) const {
  const FiniteAbelianGroup& g = group(f);
  Exponents e(g.rank(), 0);
  uint32_t own_exp = own_is_p ? f.a : f.b;
  size_t own_coord = own_is_p ? 0 : 1;
  size_t other_coord = own_is_p ? 1 : 0;
  if (own_exp == 0) e[own_coord] = s.own % g.factors()[own_coord];
  e[other_coord] = s.other % g.factors()[other_coord];
  for (size_t i = 0; i < delta_.rank(); ++i) e[2 + i] = s.delta[i] % g.factors()[2 + i];
  return g.index_of(e);
}

uint64_t TowerModel::sigma_p(ModulusIndex f) const { return sigma_index(f, sp_, true); }
uint64_t TowerModel::sigma_q(ModulusIndex f) const { return sigma_index(f, sq_, false); }

GroupRingElement TowerModel::sigma_trinomial_p(ModulusIndex f, const PadicInt& av) const {
  const FiniteAbelianGroup& g = group(f);
  uint64_t s = sigma_p(f);
  GroupRingElement r = GroupRingElement::one(g, ctx_).scaled(av);
  PadicInt one(ctx_, 1 % ctx_.pN);
  r.set(s, r.coeff(s) - one);
  r.set(g.neg(s), r.coeff(g.neg(s)) - one);
  return r;
}

GroupRingElement TowerModel::sigma_trinomial_q(ModulusIndex f, const PadicInt& av) const {
  const FiniteAbelianGroup& g = group(f);
  uint64_t s = sigma_q(f);
  GroupRingElement r = GroupRingElement::one(g, ctx_).scaled(av);
  PadicInt one(ctx_, 1 % ctx_.pN);
  r.set(s, r.coeff(s) - one);
  r.set(g.neg(s), r.coeff(g.neg(s)) - one);
  return r;
}

std::vector<ModulusIndex> TowerModel::indices() const {
  std::vector<ModulusIndex> out;
  for (uint32_t a = 0; a <= A_; ++a)
    for (uint32_t b = 0; b <= B_; ++b) out.push_back({a, b});
  std::sort(out.begin(), out.end(), [](ModulusIndex x, ModulusIndex y) {
    return x.a + x.b < y.a + y.b || (x.a + x.b == y.a + y.b && x < y);
  });
  return out;
}

TowerModel build_tower(uint64_t p, uint32_t N, uint32_t cap_a, uint32_t cap_b,
                       const std::vector<uint64_t>& delta_factors, SigmaSpec sigma_p,
                       SigmaSpec sigma_q) {
  PadicContext ctx(p, N);
  FiniteAbelianGroup delta(delta_factors.empty() ? std::vector<uint64_t>{1} : delta_factors);
  return TowerModel(ctx, cap_a, cap_b, std::move(delta), std::move(sigma_p), std::move(sigma_q));
}

RelationReport verify_norm_relations(const RayClassDistribution& dist, const HeckeData& h) {
  const TowerModel& tw = *dist.tower;
  RelationReport report;
  for (ModulusIndex f : tw.indices()) {
    for (char v : {'p', 'q'}) {
      ModulusIndex up = f;
      if (v == 'p') {
        if (f.a + 1 > tw.cap_a()) continue;
        up.a += 1;
      } else {
        if (f.b + 1 > tw.cap_b()) continue;
        up.b += 1;
      }
      const GroupRingElement& upper = dist.at(up);
      const GroupRingElement& lower = dist.at(f);
      const GroupHom& step = v == 'p' ? tw.down_p(up) : tw.down_q(up);
      GroupRingElement lhs = norm_push(step, upper);
      GroupRingElement rhs(tw.group(f), tw.context());
      uint32_t ordv = v == 'p' ? f.a : f.b;
      if (ordv == 0) {
        GroupRingElement tri = v == 'p' ? tw.sigma_trinomial_p(f, h.ap)
                                        : tw.sigma_trinomial_q(f, h.ap);
        rhs = tri * lower;
      } else {
        ModulusIndex below = f;
        if (v == 'p') below.a -= 1; else below.b -= 1;
        const GroupHom& tr_step = v == 'p' ? tw.down_p(f) : tw.down_q(f);
        rhs = lower.scaled(h.ap) - trace_lift(tr_step, dist.at(below));
      }
      GroupRingElement diff = lhs - rhs;
      RelationCheck c;
      c.index = f;
      c.prime = v;
      c.pass = diff.is_zero();
      c.discrepancy_valuation = diff.min_valuation();
      c.discrepancy_support = diff.support_size();
      report.checks.push_back(c);
    }
  }
  return report;
}

namespace {

// Random element of ker(down_p) \cap ker(down_q) on an interior group
// (a, b >= 2): spanned by products of fiber differences on the two p-part
// coordinates, translated around the group.
GroupRingElement joint_kernel_noise(const TowerModel& tw, ModulusIndex f, std::mt19937_64& rng,
                                    int terms) {
  const FiniteAbelianGroup& g = tw.group(f);
  const PadicContext& ctx = tw.context();
  uint64_t fa = g.factors()[0], fb = g.factors()[1];
  uint64_t step_a = fa / ctx.p, step_b = fb / ctx.p;
  GroupRingElement noise(g, ctx);
  std::uniform_int_distribution<uint64_t> dv(0, ctx.pN - 1);
  std::uniform_int_distribution<uint64_t> dja(1, ctx.p - 1), djb(1, ctx.p - 1);
  std::uniform_int_distribution<uint64_t> dea(0, step_a - 1), deb(0, step_b - 1);
  std::uniform_int_distribution<uint64_t> dd(0, g.order() - 1);
  PadicInt one(ctx, 1 % ctx.pN);
  for (int t = 0; t < terms; ++t) {
    uint64_t c = dv(rng);
    if (t == terms - 1 && noise.is_zero() && c == 0) c = 1;
    uint64_t ea = dea(rng), ja = dja(rng), eb = deb(rng), jb = djb(rng);
    uint64_t shift = dd(rng);
    Exponents u(g.rank(), 0);
    GroupRingElement da(g, ctx), db(g, ctx);
    u[0] = ea + ja * step_a;
    da.set(g.index_of(u), one);
    u[0] = ea;
    da.set(g.index_of(u), da.coeff(g.index_of(u)) - one);
    Exponents w(g.rank(), 0);
    w[1] = eb + jb * step_b;
    db.set(g.index_of(w), one);
    w[1] = eb;
    db.set(g.index_of(w), db.coeff(g.index_of(w)) - one);
    GroupRingElement term = (da * db) * GroupRingElement::basis(g, ctx, shift).scaled(PadicInt(ctx, c));
    noise = noise + term;
  }
  return noise;
}

}  // namespace

RayClassDistribution generate_distribution(const TowerModel& tower, const HeckeData& h,
                                           const GeneratorOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  RayClassDistribution dist;
  dist.tower = &tower;
  for (ModulusIndex f : tower.indices()) {
    const FiniteAbelianGroup& g = tower.group(f);
    if (f.a <= 1 || f.b <= 1) {
      // Boundary entries: the unique value compatible with both the norm
      // relations and refined norm-compatibility in this collapsed tower.
      dist.entries.emplace(f, GroupRingElement::zero(g, tower.context()));
      continue;
    }
    // interior: both constraints present
    ModulusIndex down_pa{f.a - 1, f.b}, down_qb{f.a, f.b - 1};
    ModulusIndex down_pa2{f.a - 2, f.b}, down_qb2{f.a, f.b - 2};
    GroupRingElement rp =
        dist.at(down_pa).scaled(h.ap) - trace_lift(tower.down_p(down_pa), dist.at(down_pa2));
    GroupRingElement rq =
        dist.at(down_qb).scaled(h.ap) - trace_lift(tower.down_q(down_qb), dist.at(down_qb2));
    // consistency of the joint system: both push-downs to (a-1, b-1) agree
    GroupRingElement compat_p = norm_push(tower.down_q(down_pa), rp);
    GroupRingElement compat_q = norm_push(tower.down_p(down_qb), rq);
    if (compat_p != compat_q)
      throw InfeasibleConstraints("joint norm conditions disagree at modulus " + f.str());
    GroupRingElement x0 = section_lift(tower.down_p(f), rp);
    GroupRingElement w = rq - norm_push(tower.down_q(f), x0);
    GroupRingElement x = x0 + section_lift(tower.down_q(f), w);
    if (norm_push(tower.down_p(f), x) != rp || norm_push(tower.down_q(f), x) != rq)
      throw InfeasibleConstraints("joint norm solve failed at modulus " + f.str());
    if (opts.kernel_noise) x = x + joint_kernel_noise(tower, f, rng, opts.noise_terms);
    dist.entries.emplace(f, std::move(x));
  }
  return dist;
}

std::vector<uint64_t> feasible_ap_residues(const TowerModel& tw) {
  const PadicContext& ctx = tw.context();
  std::vector<uint64_t> out;
  for (uint64_t r = 1; r < ctx.p; ++r) {
    HeckeData h = HeckeData::from_ap(ctx, PadicInt(ctx, r));
    PadicInt ip = h.alpha_p.inverse(), iq = h.alpha_q.inverse();
    bool ok = true;
    {
      // four-factor Euler product on the bottom group
      ModulusIndex f{0, 0};
      const FiniteAbelianGroup& g = tw.group(f);
      auto factor = [&](uint64_t s, const PadicInt& ai) {
        GroupRingElement e = GroupRingElement::one(g, ctx);
        e.set(s, e.coeff(s) - ai);
        return e;
      };
      GroupRingElement prod = factor(tw.sigma_p(f), ip) * factor(g.neg(tw.sigma_p(f)), ip) *
                              factor(tw.sigma_q(f), iq) * factor(g.neg(tw.sigma_q(f)), iq);
      ok = is_unit(prod);
    }
    // symmetric trinomials 1 - a^{-1}s - a^{-1}s^{-1} on every edge group
    for (uint32_t n = 0; ok && n <= tw.cap_a(); ++n) {
      GroupRingElement w = tw.sigma_trinomial_q({n, 0}, h.alpha_q).scaled(iq);
      ok = is_unit(w);
    }
    for (uint32_t m = 0; ok && m <= tw.cap_b(); ++m) {
      GroupRingElement w = tw.sigma_trinomial_p({0, m}, h.alpha_p).scaled(ip);
      ok = is_unit(w);
    }
    // projected constant term of the trinomial inverse (edge levels of the
    // projected recursion) is 1 - 2/alpha
    if (ok) {
      PadicInt two(ctx, 2 % ctx.pN);
      ok = (PadicInt(ctx, 1) - two * ip).is_unit() && (PadicInt(ctx, 1) - two * iq).is_unit();
    }
    if (ok) out.push_back(r);
  }
  return out;
}

OneVariableTheta theta_from_symbol_table(const std::map<uint64_t, PadicInt>& table, uint32_t n,
                                         const PadicContext& ctx) {
  uint64_t mod = pow_u64(ctx.p, n + 1);
  uint64_t unit_count = (ctx.p - 1) * pow_u64(ctx.p, n);
  uint64_t half = unit_count / 2;  // order of (Z/p^{n+1})^x / {+-1}
  // primitive root mod p^{n+1}: primitive mod p and mod p^2 suffices
  auto order_mod = [](uint64_t g, uint64_t m, uint64_t group_order) {
    uint64_t x = 1;
    for (uint64_t k = 1; k <= group_order; ++k) {
      x = (unsigned __int128)x * g % m;
      if (x == 1) return k;
    }
    return group_order + 1;
  };
  uint64_t g = 0;
  for (uint64_t c = 2; c < ctx.p; ++c) {
    if (order_mod(c, ctx.p, ctx.p - 1) != ctx.p - 1) continue;
    uint64_t m2 = ctx.p * ctx.p;
    if (order_mod(c, m2, ctx.p * (ctx.p - 1)) == ctx.p * (ctx.p - 1)) { g = c; break; }
    if (order_mod(c + ctx.p, m2, ctx.p * (ctx.p - 1)) == ctx.p * (ctx.p - 1)) { g = c + ctx.p; break; }
  }
  if (g == 0) throw Error("no primitive root found");
  // discrete logs base g
  std::vector<uint64_t> dlog(mod, unit_count);
  uint64_t x = 1;
  for (uint64_t e = 0; e < unit_count; ++e) {
    dlog[x] = e;
    x = (unsigned __int128)x * g % mod;
  }
  FiniteAbelianGroup cyc({half});
  GroupRingElement theta_prime(cyc, ctx);
  for (uint64_t a = 1; a < mod; ++a) {
    if (a % ctx.p == 0) continue;
    uint64_t rep = std::min(a, mod - a);
    if (rep != a) continue;  // visit each +-1 class once, at its canonical rep
    auto it = table.find(rep);
    if (it == table.end())
      throw IncompleteTable("symbol table misses the class of " + std::to_string(rep));
    if (it->second.context() != ctx) throw ContextMismatch("symbol value context");
    uint64_t e = dlog[a] % half;
    theta_prime.set(e, theta_prime.coeff(e) + it->second);
  }
  // p-part quotient of order p^n
  FiniteAbelianGroup ppart({pow_u64(ctx.p, n)});
  GroupHom proj(cyc, ppart, {{1 % ppart.factors()[0]}});
  return OneVariableTheta{theta_prime, norm_push(proj, theta_prime)};
}

}  // namespace mtkit
