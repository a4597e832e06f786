#pragma once

#include "pkmu/canonical.hpp"
#include "pkmu/nullity.hpp"
#include "pkmu/structure.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pkmu {

struct ParamSpec {
  std::string name;
  std::string constraint;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  /// What the full pipeline is expected to report for this entry.
  std::string expected;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a built-in structure; throws invalid_argument on an unknown name or
/// parameters violating the entry's constraints.
ParacontactStructure instantiate_builtin(const std::string& name,
                                         const std::map<std::string, long>& params);

/// Per-point section of a full report: h-rank plus, when the normal-form
/// construction applies, the canonical basis and its verification.
struct PointReport {
  std::map<std::string, Rat> point;
  std::vector<std::string> labels;
  int rank = 0;
  bool exact = true;
  std::optional<CanonicalBasisResult> basis;
  std::optional<VerificationReport> normal_form;
  std::string error;
};

struct FullReport {
  VerificationReport almost_paracontact, compatibility, paracontact;
  VerificationReport h_identities, killing, normality, parasasakian_curvature;
  bool paracontact_metric = false;
  bool k_paracontact = false;
  bool normal = false;
  bool parasasakian = false;
  NullityResult nullity;
  std::optional<VerificationReport> h_squared;
  std::optional<CaseClassification> classification;
  std::vector<PointReport> points;

  /// All axiom and identity checks (not the classification outcomes).
  bool core_checks_pass() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Full pipeline: axioms, h identities, Killing agreement, normality, nullity
/// solve, h^2 law, case classification, and per-point rank / canonical bases.
FullReport run_full_report(const ParacontactStructure& s,
                           const std::vector<std::map<std::string, Rat>>& points = {});

/// Text rendering of a canonical basis over the structure's frame labels.
std::string render_canonical_basis(const CanonicalBasisResult& r,
                                   const std::vector<std::string>& labels,
                                   const std::string& indent);

/// Structured rendering of a canonical basis with stable field names.
nlohmann::json canonical_basis_json(const CanonicalBasisResult& r);

}  // namespace pkmu
