#include "pkmu/report.hpp"

#include <sstream>

namespace pkmu {

void VerificationReport::add(std::string name, bool pass, std::string witness) {
  m_checks.push_back({std::move(name), pass, std::move(witness)});
}

void VerificationReport::fact(std::string key, std::string value) {
  m_facts.emplace_back(std::move(key), std::move(value));
}

void VerificationReport::merge(const VerificationReport& other) {
  m_checks.insert(m_checks.end(), other.m_checks.begin(), other.m_checks.end());
  m_facts.insert(m_facts.end(), other.m_facts.begin(), other.m_facts.end());
}

bool VerificationReport::all_pass() const {
  for (const CheckResult& c : m_checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const CheckResult& c : m_checks)
    if (!c.pass) return &c;
  return nullptr;
}

std::string VerificationReport::to_text(const std::string& indent) const {
  std::ostringstream os;
  for (const CheckResult& c : m_checks) {
    os << indent << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.pass && !c.witness.empty()) os << "  --  " << c.witness;
    os << "\n";
  }
  for (const auto& [key, value] : m_facts) os << indent << key << ": " << value << "\n";
  return os.str();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : m_checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  nlohmann::json facts = nlohmann::json::object();
  for (const auto& [key, value] : m_facts) facts[key] = value;
  return {{"checks", checks}, {"facts", facts}, {"all_pass", all_pass()}};
}

}  // namespace pkmu
