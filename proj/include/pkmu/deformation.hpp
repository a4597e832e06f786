#pragma once

#include "pkmu/nullity.hpp"
#include "pkmu/structure.hpp"

#include <utility>

namespace pkmu {

/// Homothetic deformation with parameter c != 0:
///   phi' = phi, xi' = xi/c, eta' = c eta, g' = c g + c(c-1) eta (x) eta.
/// The frame is rebased by diag(1/c, 1, ..., 1) so index 0 remains the Reeb
/// field of the deformed structure.
ParacontactStructure deform(const ParacontactStructure& s, const AlgNum& c);

/// kappa' = (kappa + 1 - c^2)/c^2, mu' = (mu - 2 + 2c)/c.
std::pair<Rat, Rat> deform_kappa_mu(const Rat& kappa, const Rat& mu, const Rat& c);

/// Deforms s, re-solves (kappa', mu') from the deformed structure's freshly
/// computed curvature and h, and compares against deform_kappa_mu. Requires
/// the input to solve to a unique (kappa, mu).
VerificationReport verify_deformation_consistency(const ParacontactStructure& s, const Rat& c);

}  // namespace pkmu
