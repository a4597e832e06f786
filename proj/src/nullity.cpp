#include "pkmu/nullity.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pkmu {
namespace {

/// One rational equation p*kappa + q*mu = r.
struct RatRow {
  Rat p, q, r;
};

/// Coefficient triple (a, b, c) of one monomial key in kappa*a + mu*b = c.
struct KeyTriple {
  Monomial key;
  AlgNum a, b, c;
};

void accumulate(std::vector<KeyTriple>& triples, const Scalar& s, int slot) {
  for (const Monomial& t : s.terms()) {
    auto it = std::find_if(triples.begin(), triples.end(), [&](const KeyTriple& e) {
      return e.key.powers == t.powers && e.key.exp_rates == t.exp_rates;
    });
    if (it == triples.end()) {
      triples.push_back({t, AlgNum(0), AlgNum(0), AlgNum(0)});
      it = std::prev(triples.end());
    }
    AlgNum& slot_ref = slot == 0 ? it->a : slot == 1 ? it->b : it->c;
    slot_ref = slot_ref + t.coeff;
  }
}

/// eta(e_j) e_i - eta(e_i) e_j.
Vec<Scalar> eta_wedge(const ParacontactStructure& s, int i, int j) {
  Vec<Scalar> v = Vec<Scalar>::Constant(s.dim(), Scalar(0));
  v(i) += Scalar(s.eta()(j));
  v(j) -= Scalar(s.eta()(i));
  return v;
}

/// eta(e_j) h e_i - eta(e_i) h e_j.
Vec<Scalar> eta_wedge_h(const ParacontactStructure& s, int i, int j) {
  return Vec<Scalar>(s.h().col(i) * Scalar(s.eta()(j)) - s.h().col(j) * Scalar(s.eta()(i)));
}

}  // namespace

std::string to_string(NullityStatus s) {
  switch (s) {
    case NullityStatus::unique:
      return "unique";
    case NullityStatus::mu_indeterminate:
      return "mu_indeterminate";
    case NullityStatus::inconsistent:
      return "inconsistent";
  }
  return "?";
}

NullityResult solve_kappa_mu(const ParacontactStructure& s) {
  NullityResult out;
  out.h_zero = is_zero_mat(s.h());
  const int d = s.dim();
  const FrameSpec& f = s.frame();

  std::vector<RatRow> rows;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Vec<Scalar> a = eta_wedge(s, i, j);
      const Vec<Scalar> b = eta_wedge_h(s, i, j);
      const Vec<Scalar> c = s.curvature().apply(i, j, 0);
      for (int l = 0; l < d; ++l) {
        std::vector<KeyTriple> triples;
        accumulate(triples, a(l), 0);
        accumulate(triples, b(l), 1);
        accumulate(triples, c(l), 2);
        for (const KeyTriple& t : triples) {
          rows.push_back({t.a.a, t.b.a, t.c.a});
          rows.push_back({t.a.b, t.b.b, t.c.b});
        }
      }
    }

  auto nonzero = [](const Rat& q) { return sgn(q) != 0; };
  const bool any_equation = std::any_of(rows.begin(), rows.end(), [&](const RatRow& r) {
    return nonzero(r.p) || nonzero(r.q) || nonzero(r.r);
  });
  if (!any_equation) {
    // No frame pair constrains anything (dimension 1): the condition is vacuous.
    out.status = NullityStatus::mu_indeterminate;
    out.case_tag = "n/a";
    return out;
  }

  const RatRow* pivot = nullptr;
  for (const RatRow& r : rows)
    if (nonzero(r.p)) {
      pivot = &r;
      break;
    }
  if (!pivot) {
    out.residual_witnesses.push_back("no equation determines kappa");
    return out;
  }
  const Rat q1 = pivot->q / pivot->p;
  const Rat r1 = pivot->r / pivot->p;

  // Eliminate kappa: each row becomes (q - p q1) mu = r - p r1.
  std::optional<Rat> mu;
  bool mu_appears = false;
  for (const RatRow& r : rows) {
    if (nonzero(r.q)) mu_appears = true;
    const Rat q2 = r.q - r.p * q1;
    const Rat r2 = r.r - r.p * r1;
    if (!mu && nonzero(q2)) mu = r2 / q2;
  }

  if (!mu && mu_appears) {
    // All equations are proportional to the pivot but mu has a nonzero
    // coefficient: a one-parameter family of solutions, never a unique pair.
    out.residual_witnesses.push_back(
        "kappa and mu are only constrained to the line kappa + (" + rat_to_string(q1) +
        ")*mu = " + rat_to_string(r1));
    return out;
  }

  const Rat mu_value = mu ? *mu : Rat(0);
  const Rat kappa_value = r1 - q1 * mu_value;

  // Substitute back into the tensor equation on every pair; any nonzero
  // component disproves the candidate (and with it all rational candidates).
  const Scalar kappa_s((AlgNum(kappa_value)));
  const Scalar mu_s((AlgNum(mu_value)));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec<Scalar> res = s.curvature().apply(i, j, 0) - eta_wedge(s, i, j) * kappa_s -
                        eta_wedge_h(s, i, j) * mu_s;
      if (!is_zero_vec(res))
        out.residual_witnesses.push_back(first_nonzero_component(
            res, f.labels(),
            "residual R(" + f.labels()[i] + "," + f.labels()[j] + ")xi - kappa*... - mu*..."));
    }
  if (!out.residual_witnesses.empty()) return out;

  out.kappa = kappa_value;
  if (mu) {
    out.mu = mu_value;
    out.status = NullityStatus::unique;
  } else {
    out.status = NullityStatus::mu_indeterminate;
  }
  out.case_tag = classify_case(out).tag;
  return out;
}

VerificationReport check_h_squared(const ParacontactStructure& s, const Rat& kappa) {
  VerificationReport rep;
  Mat<Scalar> diff = s.h() * s.h() -
                     promote(Mat<AlgNum>(s.phi() * s.phi())) * Scalar(AlgNum(kappa + 1));
  std::string w = first_nonzero_entry(diff, s.frame().labels(), "h^2 - (kappa+1) phi^2");
  rep.add("h^2 = (kappa+1) phi^2", w.empty(), w);
  rep.fact("kappa", rat_to_string(kappa));
  return rep;
}

CaseClassification classify_case(const NullityResult& r) {
  if (r.status == NullityStatus::inconsistent)
    throw std::invalid_argument("classify_case requires a consistent nullity result");
  CaseClassification c;
  if (!r.kappa) {
    c.tag = "n/a";
    return c;
  }
  if (*r.kappa > Rat(-1)) {
    c.tag = "kappa > -1";
  } else if (*r.kappa < Rat(-1)) {
    c.tag = "kappa < -1";
  } else {
    c.tag = "kappa = -1";
    c.note = std::string("kappa = -1 is equivalent to h^2 = 0 but not to h = 0; here h == 0 is ") +
             (r.h_zero ? "true" : "false");
  }
  return c;
}

}  // namespace pkmu
