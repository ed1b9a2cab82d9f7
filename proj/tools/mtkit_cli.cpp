#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mtkit/suites.hpp"

using namespace mtkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct CommonOpts {
  RunConfig cfg;
  std::string in_path, out_path;
  std::string format = "json";
  std::string hecke_csv;
  int64_t ap = 3;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_config("--config", "", "TOML/INI config mirroring the flags");
  cmd->add_option("--p", o.cfg.p, "prime > 3");
  cmd->add_option("--prec", o.cfg.prec, "precision exponent N");
  cmd->add_option("--caps", [&o](const std::vector<std::string>& vals) {
        if (vals.size() != 2) return false;
        o.cfg.cap_a = (uint32_t)std::stoul(vals[0]);
        o.cfg.cap_b = (uint32_t)std::stoul(vals[1]);
        return true;
      }, "tower caps A B")->expected(2);
  cmd->add_option("--delta", o.cfg.delta, "prime-to-p factor as cyclic orders");
  cmd->add_option("--seed", o.cfg.seed, "deterministic seed");
  cmd->add_option("--in", o.in_path, "input file");
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--format", o.format, "json|text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--timings", o.cfg.timings, "record wall-clock runtimes in reports");
}

HeckeData hecke_from_opts(const CommonOpts& o, const PadicContext& ctx) {
  if (!o.hecke_csv.empty()) {
    auto rows = parse_hecke_csv(slurp(o.hecke_csv));
    for (const auto& r : rows)
      if (r.p == ctx.p) return HeckeData::from_ap(ctx, PadicInt::from_int(r.ap, ctx));
    throw ConfigError("no row for p = " + std::to_string(ctx.p) + " in " + o.hecke_csv);
  }
  return HeckeData::from_ap(ctx, PadicInt::from_int(o.ap, ctx));
}

int emit_report(const VerificationReport& rep, const CommonOpts& o) {
  spit(o.out_path, o.format == "text" ? rep.to_text() : rep.to_json().dump(2) + "\n");
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-level group-ring calculus: ray class towers, refined theta "
               "families, Fitting ideals"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* suites_cmd = app.add_subcommand("suites", "run verification suites");
  add_common(suites_cmd, o);
  suites_cmd->add_option("--suite", o.cfg.suites,
                         "suite names (repeatable; 'none' selects nothing; default all)");

  auto* t71 = app.add_subcommand("theorem71", "end-to-end ideal chain replay for one seed");
  add_common(t71, o);

  auto* gen = app.add_subcommand("generate-dist", "seeded norm-relation family");
  add_common(gen, o);
  gen->add_option("--ap", o.ap, "a_p residue (must be feasible)");
  gen->add_option("--hecke-csv", o.hecke_csv, "curve_label,p,a_p table");

  auto* verify = app.add_subcommand("verify-dist", "check the norm relations of a family file");
  add_common(verify, o);
  verify->add_option("--ap", o.ap, "a_p residue");
  verify->add_option("--hecke-csv", o.hecke_csv, "curve_label,p,a_p table");

  auto* refine_cmd = app.add_subcommand("refine", "S-refine a family file");
  add_common(refine_cmd, o);
  refine_cmd->add_option("--ap", o.ap, "a_p residue");
  refine_cmd->add_option("--hecke-csv", o.hecke_csv, "curve_label,p,a_p table");

  auto* fitting_cmd = app.add_subcommand("fitting", "Fitting ideal of a presented module file");
  add_common(fitting_cmd, o);

  auto* theta1 = app.add_subcommand("theta1", "one-variable theta from a symbol table file");
  add_common(theta1, o);
  uint32_t level_n = 1;
  theta1->add_option("--level", level_n, "level n (table lives at p^{n+1})");

  auto* compare = app.add_subcommand("compare-L", "scalar ratio of two elements");
  add_common(compare, o);
  std::string second_path;
  compare->add_option("--against", second_path, "second element file")->required();

  try {
    app.parse(argc, argv);

    if (suites_cmd->parsed()) {
      return emit_report(run_suites(o.cfg), o);
    }
    if (t71->parsed()) {
      return emit_report(theorem71_harness(o.cfg), o);
    }
    if (gen->parsed()) {
      TowerModel tw = build_tower(o.cfg.p, o.cfg.prec, o.cfg.cap_a, o.cfg.cap_b, o.cfg.delta);
      HeckeData h = hecke_from_opts(o, tw.context());
      auto feas = feasible_ap_residues(tw);
      if (std::find(feas.begin(), feas.end(), h.ap.value() % tw.context().p) == feas.end())
        throw InfeasibleConstraints("a_p = " + h.ap.str() +
                                    " is not feasible for this tower; feasible residues: " +
                                    [&] {
                                      std::string s;
                                      for (auto r : feas) s += std::to_string(r) + " ";
                                      return s;
                                    }());
      auto dist = generate_distribution(tw, h, {o.cfg.seed, true, 4});
      spit(o.out_path, to_json(dist).dump(2) + "\n");
      return 0;
    }
    if (verify->parsed()) {
      auto file = distribution_from_json(Json::parse(slurp(o.in_path)));
      HeckeData h = hecke_from_opts(o, file.tower.context());
      auto relrep = verify_norm_relations(file.dist, h);
      VerificationReport rep(tower_to_json(file.tower), o.cfg.timings);
      size_t failures = 0;
      for (const auto& c : relrep.checks)
        if (!c.pass) ++failures;
      rep.add({"verify-dist", "norm-relations", Json{{"steps", relrep.checks.size()}},
               relrep.all_pass(), Json{{"failing_steps", failures}}});
      return emit_report(rep, o);
    }
    if (refine_cmd->parsed()) {
      auto file = distribution_from_json(Json::parse(slurp(o.in_path)));
      HeckeData h = hecke_from_opts(o, file.tower.context());
      auto fam = s_refine(file.dist, h);
      auto compat = verify_refined_compat(fam);
      Json out;
      out["family"] = to_json(fam);
      out["compatibility"] = Json{{"pass", compat.all_pass()}, {"steps", compat.checks.size()}};
      spit(o.out_path, out.dump(2) + "\n");
      return compat.all_pass() ? 0 : 1;
    }
    if (fitting_cmd->parsed()) {
      PresentedModule m = module_from_json(Json::parse(slurp(o.in_path)));
      spit(o.out_path, to_json(fitting_ideal(m)).dump(2) + "\n");
      return 0;
    }
    if (theta1->parsed()) {
      Json j = Json::parse(slurp(o.in_path));
      PadicContext ctx(j.at("p").get<uint64_t>(), j.at("N").get<uint32_t>());
      std::map<uint64_t, PadicInt> table;
      for (const auto& [key, val] : j.at("table").items())
        table.emplace(std::stoull(key),
                      PadicInt(ctx, std::stoull(val.get<std::string>()) % ctx.pN));
      auto theta = theta_from_symbol_table(table, level_n, ctx);
      Json out;
      out["theta_prime"] = to_json(theta.theta_prime);
      out["theta_n"] = to_json(theta.theta_n);
      spit(o.out_path, out.dump(2) + "\n");
      return 0;
    }
    if (compare->parsed()) {
      GroupRingElement l1 = element_from_json(Json::parse(slurp(o.in_path)));
      GroupRingElement l2 = element_from_json(Json::parse(slurp(second_path)));
      auto cs = compare_scalars(l1, l2);
      Json out{{"proportional", cs.proportional},
               {"ratio", cs.proportional ? cs.ratio.str() : ""},
               {"unit", cs.unit}};
      spit(o.out_path, out.dump(2) + "\n");
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
