#pragma once

#include "pkmu/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pkmu {

enum class NullityStatus { unique, mu_indeterminate, inconsistent };

std::string to_string(NullityStatus s);

/// Outcome of solving the nullity condition
///   R(X,Y)xi = kappa (eta(Y)X - eta(X)Y) + mu (eta(Y)hX - eta(X)hY)
/// for constant rationals. mu is left empty when h == 0 makes it drop out of
/// the condition entirely; that case is reported as mu_indeterminate rather
/// than pretending mu = 0 is the unique solution.
struct NullityResult {
  NullityStatus status = NullityStatus::inconsistent;
  std::optional<Rat> kappa;
  std::optional<Rat> mu;
  bool h_zero = false;
  /// Nonzero residual components when inconsistent.
  std::vector<std::string> residual_witnesses;
  /// "kappa > -1", "kappa < -1", "kappa = -1", or "n/a".
  std::string case_tag = "n/a";
};

/// Forms the residual on every frame pair, splits each distinct monomial
/// coefficient into an exact linear equation in (kappa, mu) over the
/// rationals, solves, and verifies the candidate by substituting back into
/// the full tensor equation.
NullityResult solve_kappa_mu(const ParacontactStructure& s);

/// h^2 = (kappa + 1) phi^2, componentwise exact.
VerificationReport check_h_squared(const ParacontactStructure& s, const Rat& kappa);

struct CaseClassification {
  std::string tag;
  /// For kappa = -1: states the h^2 = 0 equivalence and whether h == 0.
  std::string note;
};

/// Sign-of-(kappa + 1) case tag; requires a non-inconsistent result.
CaseClassification classify_case(const NullityResult& r);

}  // namespace pkmu
