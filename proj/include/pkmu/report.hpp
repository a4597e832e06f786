#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pkmu {

/// One named check with an optional human-readable witness for failures.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

/// Ordered collection of check results plus free-form facts (computed values
/// worth surfacing even when nothing failed). Renders to text and to JSON with
/// stable field names.
class VerificationReport {
 public:
  void add(std::string name, bool pass, std::string witness = "");
  void fact(std::string key, std::string value);
  void merge(const VerificationReport& other);

  bool all_pass() const;
  const std::vector<CheckResult>& checks() const { return m_checks; }
  const std::vector<std::pair<std::string, std::string>>& facts() const { return m_facts; }

  /// First failing check, if any.
  const CheckResult* first_failure() const;

  std::string to_text(const std::string& indent = "") const;
  nlohmann::json to_json() const;

 private:
  std::vector<CheckResult> m_checks;
  std::vector<std::pair<std::string, std::string>> m_facts;
};

}  // namespace pkmu
