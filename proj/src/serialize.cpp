#include "mtkit/serialize.hpp"

#include <sstream>

namespace mtkit {

Json to_json(const PadicContext& ctx) { return Json{{"p", ctx.p}, {"N", ctx.N}}; }

PadicContext context_from_json(const Json& j) {
  return PadicContext(j.at("p").get<uint64_t>(), j.at("N").get<uint32_t>());
}

Json to_json(const GroupRingElement& x) {
  Json j;
  j["group"] = x.group().factors();
  j["p"] = x.context().p;
  j["N"] = x.context().N;
  Json coeffs = Json::array();
  for (uint64_t i = 0; i < x.group().order(); ++i) {
    if (x.raw(i) == 0) continue;
    coeffs.push_back(Json{{"exp", x.group().element(i)}, {"val", std::to_string(x.raw(i))}});
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

GroupRingElement element_from_json(const Json& j) {
  FiniteAbelianGroup g(j.at("group").get<std::vector<uint64_t>>());
  PadicContext ctx(j.at("p").get<uint64_t>(), j.at("N").get<uint32_t>());
  GroupRingElement x(g, ctx);
  for (const auto& c : j.at("coeffs")) {
    Exponents e = c.at("exp").get<Exponents>();
    uint64_t v = std::stoull(c.at("val").get<std::string>());
    x.set(g.index_of(e), PadicInt(ctx, v % ctx.pN));
  }
  return x;
}

namespace {

Json sigma_to_json(const SigmaSpec& s) {
  return Json{{"own", s.own}, {"other", s.other}, {"delta", s.delta}};
}

SigmaSpec sigma_from_json(const Json& j) {
  SigmaSpec s;
  s.own = j.at("own").get<uint64_t>();
  s.other = j.at("other").get<uint64_t>();
  s.delta = j.at("delta").get<Exponents>();
  return s;
}

}  // namespace

Json tower_to_json(const TowerModel& tw) {
  Json j;
  j["p"] = tw.context().p;
  j["N"] = tw.context().N;
  j["caps"] = Json::array({tw.cap_a(), tw.cap_b()});
  j["delta"] = tw.delta().factors();
  j["sigma_p"] = sigma_to_json(tw.sigma_p_spec());
  j["sigma_q"] = sigma_to_json(tw.sigma_q_spec());
  return j;
}

TowerModel tower_from_json(const Json& j) {
  SigmaSpec sp, sq;
  if (j.contains("sigma_p")) sp = sigma_from_json(j.at("sigma_p"));
  if (j.contains("sigma_q")) sq = sigma_from_json(j.at("sigma_q"));
  return build_tower(j.at("p").get<uint64_t>(), j.at("N").get<uint32_t>(),
                     j.at("caps").at(0).get<uint32_t>(), j.at("caps").at(1).get<uint32_t>(),
                     j.at("delta").get<std::vector<uint64_t>>(), sp, sq);
}

Json to_json(const RayClassDistribution& dist) {
  Json j;
  j["tower"] = tower_to_json(*dist.tower);
  Json entries;
  for (const auto& [f, x] : dist.entries) entries[f.str()] = to_json(x);
  j["entries"] = std::move(entries);
  return j;
}

namespace {

ModulusIndex index_from_key(const std::string& key) {
  auto comma = key.find(',');
  if (comma == std::string::npos) throw ConfigError("bad modulus key: " + key);
  return ModulusIndex{(uint32_t)std::stoul(key.substr(0, comma)),
                      (uint32_t)std::stoul(key.substr(comma + 1))};
}

}  // namespace

DistributionFile distribution_from_json(const Json& j) {
  DistributionFile out{tower_from_json(j.at("tower")), {}};
  out.dist.tower = &out.tower;
  for (const auto& [key, val] : j.at("entries").items())
    out.dist.entries.emplace(index_from_key(key), element_from_json(val));
  return out;
}

Json to_json(const RefinedFamily& fam) {
  Json j;
  j["tower"] = tower_to_json(*fam.tower);
  j["alpha_p"] = fam.alpha_p.str();
  j["alpha_q"] = fam.alpha_q.str();
  Json entries;
  for (const auto& [f, x] : fam.entries) entries[f.str()] = to_json(x);
  j["entries"] = std::move(entries);
  return j;
}

RefinedFamilyFile refined_from_json(const Json& j) {
  RefinedFamilyFile out{tower_from_json(j.at("tower")), {}};
  out.fam.tower = &out.tower;
  const PadicContext& ctx = out.tower.context();
  out.fam.alpha_p = PadicInt(ctx, std::stoull(j.at("alpha_p").get<std::string>()) % ctx.pN);
  out.fam.alpha_q = PadicInt(ctx, std::stoull(j.at("alpha_q").get<std::string>()) % ctx.pN);
  for (const auto& [key, val] : j.at("entries").items())
    out.fam.entries.emplace(index_from_key(key), element_from_json(val));
  return out;
}

Json to_json(const PresentedModule& m) {
  Json j;
  j["ring"] = Json{{"group", m.ring.group.factors()}, {"p", m.ring.ctx.p}, {"N", m.ring.ctx.N}};
  j["generators"] = m.generators;
  Json rows = Json::array();
  for (const auto& row : m.relations) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_json(e));
    rows.push_back(std::move(r));
  }
  j["relations"] = std::move(rows);
  return j;
}

PresentedModule module_from_json(const Json& j) {
  const Json& rj = j.at("ring");
  FiniteAbelianGroup g(rj.at("group").get<std::vector<uint64_t>>());
  PadicContext ctx(rj.at("p").get<uint64_t>(), rj.at("N").get<uint32_t>());
  PresentedModule m;
  m.ring = GroupRingRing{g, ctx};
  m.generators = j.at("generators").get<size_t>();
  for (const auto& row : j.at("relations")) {
    std::vector<GroupRingElement> r;
    for (const auto& e : row) r.push_back(element_from_json(e));
    m.relations.push_back(std::move(r));
  }
  m.validate();
  return m;
}

Json to_json(const IdealLattice& ideal) {
  Json j;
  j["ring"] = Json{{"group", ideal.ring().group.factors()},
                   {"p", ideal.ring().ctx.p},
                   {"N", ideal.ring().ctx.N}};
  Json basis = Json::array();
  for (const auto& row : ideal.lattice().basis()) {
    Json r = Json::array();
    for (uint64_t v : row) r.push_back(std::to_string(v));
    basis.push_back(std::move(r));
  }
  j["basis"] = std::move(basis);
  return j;
}

std::vector<HeckeRow> parse_hecke_csv(const std::string& text) {
  std::vector<HeckeRow> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string label, pstr, apstr;
    if (!std::getline(ls, label, ',') || !std::getline(ls, pstr, ',') ||
        !std::getline(ls, apstr))
      throw ConfigError("bad hecke csv line: " + line);
    if (first && label == "curve_label") { first = false; continue; }
    first = false;
    rows.push_back(HeckeRow{label, std::stoull(pstr), std::stoll(apstr)});
  }
  return rows;
}

}  // namespace mtkit
