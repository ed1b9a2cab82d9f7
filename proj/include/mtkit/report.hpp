#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtkit/errors.hpp"

namespace mtkit {

using Json = nlohmann::ordered_json;

/// Registry of the statements checks can point at. Fixed so report anchors
/// cannot drift from the code; add_check rejects unknown ids.
const std::map<std::string, std::string>& anchor_registry();

struct CheckRecord {
  std::string id;      // unique name of this check instance
  std::string anchor;  // registry key of the statement being checked
  Json params;         // inputs that parameterize the check
  bool pass = false;
  Json witness;  // discrepancy data on failure, informative values otherwise
  double runtime_ms = 0;  // populated only when timings are enabled
};

class VerificationReport {
 public:
  VerificationReport() = default;
  explicit VerificationReport(Json config, bool timings = false)
      : config_(std::move(config)), timings_(timings) {}

  /// With timings enabled, a record arriving with runtime 0 is stamped with
  /// the wall time elapsed since the previous add (suites run their checks
  /// sequentially, so that is the record's own compute time).
  void add(CheckRecord c);
  void merge(const VerificationReport& other);

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const Json& config() const { return config_; }
  bool timings() const { return timings_; }

  bool all_pass() const;
  size_t failed_count() const;

  Json to_json() const;
  std::string to_text() const;

 private:
  Json config_;
  bool timings_ = false;
  std::vector<CheckRecord> checks_;
  std::chrono::steady_clock::time_point mark_ = std::chrono::steady_clock::now();
};

}  // namespace mtkit
