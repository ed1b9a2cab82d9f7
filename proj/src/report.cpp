#include "mtkit/report.hpp"

#include <sstream>

namespace mtkit {

const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> registry = {
      {"padic-ring", "fixed-precision arithmetic laws of the coefficient ring"},
      {"group-ring-unit",
       "invertibility of Euler-factor elements in the group ring, detected by the "
       "regular-representation determinant"},
      {"norm-relations", "two-case norm relations of a ray class family"},
      {"refined-norm-compat", "norm compatibility of the S-refined family at every step"},
      {"unrefine-recursion",
       "theta = U * theta^S with U from the recursive unrefinement factor"},
      {"projected-unit",
       "the projected unrefinement factor B is a unit; its constant term follows the "
       "displayed recursions"},
      {"theta-ideal-swap", "(theta) = (theta^S) as ideals at a finite level"},
      {"lfunction-ratio", "two L-normalizations agree up to a unit scalar"},
      {"fitting-quotient", "Fitt_{R/I}(M/IM) = pi(Fitt_R(M)) for omega-type ideals"},
      {"fitting-base-change", "Fitting ideal base change along ring maps"},
      {"fitting-presentation", "presentation independence of the Fitting ideal"},
      {"fitting-direct-sum", "Fitting ideals multiply over direct sums"},
      {"mt-membership", "theta lies in the Fitting ideal of the presented module"},
      {"mt-generates", "theta generates the Fitting ideal of the presented module"},
      {"main-chain",
       "end-to-end chain: principal Fitting ideal, unit-ratio swap, quotient projection, "
       "theta-ideal swap, final equality at every finite level"},
      {"generator-soundness", "seeded generator output passes its defining relations"},
      {"determinism", "identical configuration and seeds give byte-identical reports"},
  };
  return registry;
}

void VerificationReport::add(CheckRecord c) {
  if (!anchor_registry().count(c.anchor))
    throw ConfigError("unknown report anchor: " + c.anchor);
  auto now = std::chrono::steady_clock::now();
  if (!timings_) {
    c.runtime_ms = 0;
  } else if (c.runtime_ms == 0) {
    c.runtime_ms = std::chrono::duration<double, std::milli>(now - mark_).count();
  }
  mark_ = now;
  checks_.push_back(std::move(c));
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.checks()) add(c);
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

size_t VerificationReport::failed_count() const {
  size_t n = 0;
  for (const auto& c : checks_)
    if (!c.pass) ++n;
  return n;
}

Json VerificationReport::to_json() const {
  Json out;
  out["config"] = config_;
  Json arr = Json::array();
  for (const auto& c : checks_) {
    Json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["params"] = c.params;
    j["pass"] = c.pass;
    j["witness"] = c.witness;
    j["runtime_ms"] = c.runtime_ms;
    arr.push_back(std::move(j));
  }
  out["checks"] = std::move(arr);
  out["summary"] = Json{{"total", checks_.size()},
                        {"failed", failed_count()},
                        {"pass", all_pass()}};
  return out;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.id << "  [" << c.anchor << "]";
    if (!c.params.empty()) os << "  " << c.params.dump();
    if (!c.pass && !c.witness.empty()) os << "\n      witness: " << c.witness.dump();
    os << "\n";
  }
  os << (all_pass() ? "OK" : "FAILED") << ": " << checks_.size() - failed_count() << "/"
     << checks_.size() << " checks passed\n";
  return os.str();
}

}  // namespace mtkit
