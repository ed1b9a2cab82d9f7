#include "mtkit/refine.hpp"

namespace mtkit {

namespace {

GroupRingElement trinomial_unit_q(const TowerModel& tw, const HeckeData& h, ModulusIndex f) {
  // 1 - a_q^{-1} s_q - a_q^{-1} s_q^{-1}
  return tw.sigma_trinomial_q(f, h.alpha_q).scaled(h.alpha_q.inverse());
}

GroupRingElement trinomial_unit_p(const TowerModel& tw, const HeckeData& h, ModulusIndex f) {
  return tw.sigma_trinomial_p(f, h.alpha_p).scaled(h.alpha_p.inverse());
}

}  // namespace

GroupRingElement euler_product(const TowerModel& tw, const HeckeData& h, ModulusIndex f) {
  const FiniteAbelianGroup& g = tw.group(f);
  const PadicContext& ctx = tw.context();
  auto factor = [&](uint64_t s, const PadicInt& ainv) {
    GroupRingElement e = GroupRingElement::one(g, ctx);
    e.set(s, e.coeff(s) - ainv);
    return e;
  };
  PadicInt ip = h.alpha_p.inverse(), iq = h.alpha_q.inverse();
  uint64_t sp = tw.sigma_p(f), sq = tw.sigma_q(f);
  return factor(sp, ip) * factor(g.neg(sp), ip) * factor(sq, iq) * factor(g.neg(sq), iq);
}

RefinedFamily s_refine(const RayClassDistribution& dist, const HeckeData& h) {
  const TowerModel& tw = *dist.tower;
  if (!h.alpha_p.is_unit() || !h.alpha_q.is_unit())
    throw NotAUnit("refinement roots must be units");
  RefinedFamily fam;
  fam.tower = &tw;
  fam.alpha_p = h.alpha_p;
  fam.alpha_q = h.alpha_q;
  PadicInt ip = h.alpha_p.inverse(), iq = h.alpha_q.inverse();
  for (ModulusIndex f : tw.indices()) {
    const GroupRingElement& x = dist.at(f);
    GroupRingElement out(tw.group(f), tw.context());
    if (f.a >= 1 && f.b >= 1) {
      ModulusIndex fp{f.a - 1, f.b}, fq{f.a, f.b - 1}, fpq{f.a - 1, f.b - 1};
      GroupRingElement acc = x;
      acc = acc - trace_lift(tw.down_p(f), dist.at(fp)).scaled(ip);
      acc = acc - trace_lift(tw.down_q(f), dist.at(fq)).scaled(iq);
      acc = acc + trace_lift(tw.down_to(f, fpq), dist.at(fpq)).scaled(ip * iq);
      out = acc.scaled(ip.pow(f.a) * iq.pow(f.b));
    } else if (f.a == 0 && f.b >= 1) {
      ModulusIndex fq{0, f.b - 1};
      GroupRingElement acc = x - trace_lift(tw.down_q(f), dist.at(fq)).scaled(iq);
      out = (tw.sigma_trinomial_p(f, h.alpha_p) * acc).scaled(ip * iq.pow(f.b));
    } else if (f.a >= 1 && f.b == 0) {
      ModulusIndex fp{f.a - 1, 0};
      GroupRingElement acc = x - trace_lift(tw.down_p(f), dist.at(fp)).scaled(ip);
      out = (tw.sigma_trinomial_q(f, h.alpha_q) * acc).scaled(iq * ip.pow(f.a));
    } else {
      out = euler_product(tw, h, f) * x;
    }
    fam.entries.emplace(f, std::move(out));
  }
  return fam;
}

RelationReport verify_refined_compat(const RefinedFamily& fam) {
  const TowerModel& tw = *fam.tower;
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
      const GroupHom& step = v == 'p' ? tw.down_p(up) : tw.down_q(up);
      GroupRingElement diff = norm_push(step, fam.at(up)) - fam.at(f);
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

const GroupRingElement& UnrefineTable::factor(ModulusIndex f) {
  auto it = memo_.find(f);
  if (it != memo_.end()) return it->second;
  const TowerModel& tw = *tw_;
  const PadicContext& ctx = tw.context();
  PadicInt ap = h_.alpha_p, aq = h_.alpha_q;
  PadicInt ip = ap.inverse(), iq = aq.inverse();
  GroupRingElement out(tw.group(f), ctx);
  if (f.a == 0 && f.b == 0) {
    out = invert_element(euler_product(tw, h_, f));
  } else if (f.b == 0) {
    // U(a,0) = alpha_p^a W_q^{-1} + alpha_p^{-1} lift(U(a-1,0)) ksum
    GroupRingElement winv = invert_element(trinomial_unit_q(tw, h_, f));
    ModulusIndex down{f.a - 1, 0};
    GroupRingElement lifted = section_lift(tw.down_p(f), factor(down));
    GroupRingElement ks = kernel_sum(tw.down_p(f), ctx);
    out = winv.scaled(ap.pow(f.a)) + (lifted * ks).scaled(ip);
  } else if (f.a == 0) {
    GroupRingElement winv = invert_element(trinomial_unit_p(tw, h_, f));
    ModulusIndex down{0, f.b - 1};
    GroupRingElement lifted = section_lift(tw.down_q(f), factor(down));
    GroupRingElement ks = kernel_sum(tw.down_q(f), ctx);
    out = winv.scaled(aq.pow(f.b)) + (lifted * ks).scaled(iq);
  } else {
    ModulusIndex fp{f.a - 1, f.b}, fq{f.a, f.b - 1}, fpq{f.a - 1, f.b - 1};
    GroupRingElement ksp = kernel_sum(tw.down_p(f), ctx);
    GroupRingElement ksq = kernel_sum(tw.down_q(f), ctx);
    GroupRingElement lead =
        GroupRingElement::one(tw.group(f), ctx).scaled(ap.pow(f.a) * aq.pow(f.b));
    GroupRingElement t1 = (section_lift(tw.down_p(f), factor(fp)) * ksp).scaled(ip);
    GroupRingElement t2 = (section_lift(tw.down_q(f), factor(fq)) * ksq).scaled(iq);
    GroupRingElement t3 =
        (section_lift(tw.down_to(f, fpq), factor(fpq)) * ksp * ksq).scaled(ip * iq);
    out = lead + t1 + t2 - t3;
  }
  return memo_.emplace(f, std::move(out)).first->second;
}

GroupRingElement unrefine_factor(const TowerModel& tw, const HeckeData& h, ModulusIndex f) {
  UnrefineTable t(tw, h);
  return t.factor(f);
}

FiniteAbelianGroup level_group(const TowerModel& tw, Level l) {
  const FiniteAbelianGroup& g = tw.group(l.modulus());
  return FiniteAbelianGroup({g.factors()[0], g.factors()[1]});
}

GroupHom level_projection(const TowerModel& tw, Level l) {
  const FiniteAbelianGroup& src = tw.group(l.modulus());
  FiniteAbelianGroup tgt = level_group(tw, l);
  std::vector<Exponents> images(src.rank(), Exponents{0, 0});
  images[0] = {1 % tgt.factors()[0], 0};
  images[1] = {0, 1 % tgt.factors()[1]};
  return GroupHom(src, tgt, images);
}

ThetaElement project_theta(const RayClassDistribution& dist, Level l) {
  GroupHom pi = level_projection(*dist.tower, l);
  return ThetaElement{l, norm_push(pi, dist.at(l.modulus()))};
}

ThetaElement project_theta(const RefinedFamily& fam, Level l) {
  GroupHom pi = level_projection(*fam.tower, l);
  return ThetaElement{l, norm_push(pi, fam.at(l.modulus()))};
}

const ProjectedUnitValue& UnrefineTable::projected(int32_t n, int32_t m) {
  auto key = std::make_pair(n, m);
  auto it = projected_memo_.find(key);
  if (it != projected_memo_.end()) return it->second;
  Level l{n, m};
  GroupHom pi = level_projection(*tw_, l);
  GroupRingElement b = norm_push(pi, factor(l.modulus()));
  ProjectedUnitValue v{b, b.augmentation(), is_unit(b)};
  return projected_memo_.emplace(key, std::move(v)).first->second;
}

ProjectedUnit projected_unit(const TowerModel& tw, const HeckeData& h, UnrefineTable& table,
                             Level l) {
  (void)tw;
  (void)h;
  const ProjectedUnitValue& v = table.projected(l.n, l.m);
  return ProjectedUnit{l, v.value, v.constant_term, v.unit};
}

ThetaIdealReport check_theta_ideal_equality(const RayClassDistribution& dist,
                                            const RefinedFamily& fam, const HeckeData& h,
                                            UnrefineTable& table, Level l) {
  if (l.n + l.m < 1) throw ConfigError("theta ideal comparison needs n+m >= 1");
  ThetaElement theta = project_theta(dist, l);
  ThetaElement theta_s = project_theta(fam, l);
  ProjectedUnit b = projected_unit(*dist.tower, h, table, l);
  ThetaIdealReport r;
  r.level = l;
  r.ideals_equal = ideal_equal(IdealLattice::principal(theta.value),
                               IdealLattice::principal(theta_s.value));
  r.cross_check = theta.value == b.value * theta_s.value;
  r.b_unit = b.unit;
  return r;
}

}  // namespace mtkit
