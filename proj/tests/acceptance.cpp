// Acceptance runner: one pass/fail line per criterion, nonzero exit on any
// failure. Desk-scale defaults: p = 5, N = 8, prime-to-p factors trivial,
// Z/2 and Z/4; caps (2,2) for the relation suites and (3,3) where levels
// with n+m = 3 must exist.

#include <functional>
#include <iostream>
#include <vector>

#include "mtkit/suites.hpp"

using namespace mtkit;

namespace {

RunConfig base_config(uint32_t caps, std::vector<uint64_t> delta, uint64_t seed) {
  RunConfig cfg;
  cfg.p = 5;
  cfg.prec = 8;
  cfg.cap_a = cfg.cap_b = caps;
  cfg.delta = std::move(delta);
  cfg.seed = seed;
  return cfg;
}

VerificationReport run_over_deltas(const std::string& suite, uint32_t caps, uint64_t seed) {
  VerificationReport total(Json{{"suite", suite}, {"caps", caps}});
  int tag = 0;
  for (auto delta : std::vector<std::vector<uint64_t>>{{1}, {2}, {4}}) {
    RunConfig cfg = base_config(caps, delta, seed + (uint64_t)tag);
    cfg.suites = {suite};
    VerificationReport rep = run_suites(cfg);
    for (auto c : rep.checks()) {
      c.id = "delta" + std::to_string(tag) + "." + c.id;
      total.add(c);
    }
    ++tag;
  }
  return total;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<VerificationReport()> run;
  };

  std::vector<Criterion> criteria;

  criteria.push_back({"group-ring unit detection (single factor oracle + symmetric trinomial)",
                      [] { return run_over_deltas("lemma45", 2, 100); }});

  criteria.push_back({"norm relations: 50 seeded families over 3 tower configs + perturbation controls",
                      [] {
                        RunConfig cfg = base_config(2, {2}, 200);
                        cfg.suites = {"norm-relations"};
                        return run_suites(cfg);
                      }});

  criteria.push_back({"refined norm-compatibility of every generated family",
                      [] {
                        RunConfig cfg = base_config(2, {2}, 200);
                        cfg.suites = {"refined-compat"};
                        return run_suites(cfg);
                      }});

  criteria.push_back({"unrefinement recursion and projected units, levels 1 <= n+m <= 3 "
                      "(excluded pairs reported unasserted)",
                      [] { return run_over_deltas("cb-recursion", 3, 300); }});

  criteria.push_back({"theta ideal equality at every level with n+m >= 1 + negative control",
                      [] { return run_over_deltas("theta-ideal", 3, 400); }});

  criteria.push_back({"Fitting ideals: quotient identity on 100 presentations, presentation "
                      "independence, direct-sum multiplicativity",
                      [] {
                        RunConfig cfg = base_config(2, {2}, 500);
                        cfg.suites = {"fitting"};
                        return run_suites(cfg);
                      }});

  criteria.push_back({"end-to-end ideal chain: 20 seeds, all levels 1 <= n+m <= 3",
                      [] {
                        RunConfig cfg = base_config(3, {2}, 600);
                        cfg.suites = {"theorem71"};
                        return run_suites(cfg);
                      }});

  criteria.push_back({"determinism: identical config+seed give byte-identical reports",
                      [] {
                        RunConfig cfg = base_config(2, {2}, 700);
                        cfg.suites = {"norm-relations", "determinism"};
                        std::string a = run_suites(cfg).to_json().dump();
                        std::string b = run_suites(cfg).to_json().dump();
                        VerificationReport rep(cfg.to_json());
                        rep.add({"byte-identical-reports", "determinism",
                                 Json{{"bytes", a.size()}}, a == b, Json::object()});
                        return rep;
                      }});

  bool all_ok = true;
  int k = 1;
  for (const auto& c : criteria) {
    VerificationReport rep = c.run();
    bool ok = rep.all_pass();
    all_ok = all_ok && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion-" << k << "  " << c.name << "  ("
              << rep.checks().size() - rep.failed_count() << "/" << rep.checks().size()
              << " checks)" << std::endl;
    if (!ok) {
      for (const auto& chk : rep.checks())
        if (!chk.pass)
          std::cout << "      failing: " << chk.id << " " << chk.witness.dump() << "\n";
    }
    ++k;
  }
  std::cout << (all_ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << std::endl;
  return all_ok ? 0 : 1;
}
