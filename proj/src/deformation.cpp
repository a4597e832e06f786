#include "pkmu/deformation.hpp"

#include <stdexcept>

namespace pkmu {

ParacontactStructure deform(const ParacontactStructure& s, const AlgNum& c) {
  if (c.is_zero()) throw std::invalid_argument("deformation parameter c must be nonzero");
  const int d = s.dim();

  Mat<AlgNum> a = Mat<AlgNum>::Constant(d, d, AlgNum(0));
  a(0, 0) = AlgNum(1) / c;
  for (int i = 1; i < d; ++i) a(i, i) = AlgNum(1);

  Mat<AlgNum> g_new = s.g() * c + Mat<AlgNum>(s.eta() * s.eta().transpose()) * (c * (c - AlgNum(1)));
  g_new = a.transpose() * g_new * a;

  auto a_inv = inverse_exact(a);
  Mat<AlgNum> phi_new = (*a_inv) * s.phi() * a;

  return ParacontactStructure(s.frame().rebase(a), g_new, phi_new);
}

std::pair<Rat, Rat> deform_kappa_mu(const Rat& kappa, const Rat& mu, const Rat& c) {
  if (sgn(c) == 0) throw std::invalid_argument("deformation parameter c must be nonzero");
  const Rat c2 = c * c;
  return {(kappa + 1 - c2) / c2, (mu - 2 + 2 * c) / c};
}

VerificationReport verify_deformation_consistency(const ParacontactStructure& s, const Rat& c) {
  VerificationReport rep;
  const NullityResult before = solve_kappa_mu(s);
  if (before.status != NullityStatus::unique) {
    rep.add("input solves to a unique (kappa, mu)", false,
            "nullity status: " + to_string(before.status));
    return rep;
  }
  rep.add("input solves to a unique (kappa, mu)", true);
  rep.fact("kappa", rat_to_string(*before.kappa));
  rep.fact("mu", rat_to_string(*before.mu));
  rep.fact("c", rat_to_string(c));

  const auto [kappa_f, mu_f] = deform_kappa_mu(*before.kappa, *before.mu, c);
  const ParacontactStructure deformed = deform(s, AlgNum(c));
  const NullityResult after = solve_kappa_mu(deformed);

  rep.add("deformed structure solves to a unique (kappa', mu')",
          after.status == NullityStatus::unique,
          after.status == NullityStatus::unique ? "" : "nullity status: " + to_string(after.status));
  if (after.status != NullityStatus::unique) return rep;

  rep.fact("kappa' recomputed", rat_to_string(*after.kappa));
  rep.fact("mu' recomputed", rat_to_string(*after.mu));
  rep.add("kappa' = (kappa + 1 - c^2)/c^2", *after.kappa == kappa_f,
          *after.kappa == kappa_f
              ? ""
              : "recomputed " + rat_to_string(*after.kappa) + ", formula " + rat_to_string(kappa_f));
  rep.add("mu' = (mu - 2 + 2c)/c", *after.mu == mu_f,
          *after.mu == mu_f
              ? ""
              : "recomputed " + rat_to_string(*after.mu) + ", formula " + rat_to_string(mu_f));
  return rep;
}

}  // namespace pkmu
