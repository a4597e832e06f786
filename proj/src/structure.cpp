#include "pkmu/structure.hpp"

#include <stdexcept>
#include <utility>

namespace pkmu {
namespace {

std::string first_witness(const Mat<Scalar>& m, const FrameSpec& f, const std::string& what) {
  return first_nonzero_entry(m, f.labels(), what);
}

std::string first_witness(const Mat<AlgNum>& m, const FrameSpec& f, const std::string& what) {
  return first_nonzero_entry(promote(m), f.labels(), what);
}

std::string vector_witness(const Vec<Scalar>& v, const FrameSpec& f, const std::string& what) {
  return first_nonzero_component(v, f.labels(), what);
}

void add_matrix_check(VerificationReport& rep, std::string name, const Mat<Scalar>& diff,
                      const FrameSpec& f, const std::string& what) {
  std::string w = first_witness(diff, f, what);
  rep.add(std::move(name), w.empty(), w);
}

}  // namespace

ParacontactStructure::ParacontactStructure(FrameSpec frame, Mat<AlgNum> g, Mat<AlgNum> phi)
    : m_frame(std::move(frame)), m_g(std::move(g)), m_phi(std::move(phi)) {
  const int d = m_frame.dim();
  if (d < 1 || d % 2 == 0)
    throw std::invalid_argument("structure dimension must be odd, got " + std::to_string(d));
  if (m_g.rows() != d || m_g.cols() != d)
    throw std::invalid_argument("metric must be dim x dim");
  if (m_phi.rows() != d || m_phi.cols() != d)
    throw std::invalid_argument("phi must be dim x dim");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (!(m_g(i, j) == m_g(j, i))) throw std::invalid_argument("metric must be symmetric");
  auto inv = inverse_exact(m_g);
  if (!inv) throw std::invalid_argument("metric is degenerate");
  m_g_inv = std::move(*inv);
  m_eta = m_g.col(0);

  m_conn = Connection::levi_civita(m_frame, m_g, m_g_inv);
  m_curv = pkmu::curvature(m_frame, m_conn);
  m_d_eta = exterior_derivative_oneform(m_frame, m_eta);

  const Mat<Scalar> phi_s = promote(m_phi);
  const Vec<Scalar> xi = unit_field(d, 0);
  const Scalar half(AlgNum(rat(1, 2)));
  m_h = Mat<Scalar>(d, d);
  for (int i = 0; i < d; ++i) {
    Vec<Scalar> lie = m_frame.bracket_fields(xi, phi_s.col(i)) - phi_s * m_frame.bracket(0, i);
    m_h.col(i) = lie * half;
  }
}

Scalar ParacontactStructure::pair(const Vec<Scalar>& v, const Vec<Scalar>& w) const {
  Scalar out(0);
  for (int i = 0; i < dim(); ++i) {
    if (v(i).is_zero()) continue;
    for (int j = 0; j < dim(); ++j)
      if (!m_g(i, j).is_zero()) out += v(i) * w(j) * Scalar(m_g(i, j));
  }
  return out;
}

VerificationReport verify_almost_paracontact(const ParacontactStructure& s) {
  VerificationReport rep;
  const int d = s.dim();
  const int n = s.n();
  const FrameSpec& f = s.frame();

  const AlgNum eta_xi = s.eta()(0);
  rep.add("eta(xi) = 1", eta_xi == AlgNum(1),
          eta_xi == AlgNum(1) ? "" : "eta(xi) = " + to_string(eta_xi));

  Mat<AlgNum> phi_xi = s.phi().col(0);
  std::string w = first_witness(Mat<AlgNum>(phi_xi), f, "phi(xi)");
  // A 1-column matrix: reuse the matrix walker by viewing the column as dim x 1.
  rep.add("phi(xi) = 0", w.empty(), w);

  Mat<AlgNum> eta_phi = s.eta().transpose() * s.phi();
  w = first_witness(Mat<AlgNum>(eta_phi.transpose()), f, "eta(phi e)");
  rep.add("eta o phi = 0", w.empty(), w);

  // phi^2 e_j = e_j - eta(e_j) xi, i.e. column j of phi^2 is e_j - eta_j e_0.
  Mat<AlgNum> sq = s.phi() * s.phi();
  for (int j = 0; j < d; ++j) {
    sq(j, j) -= AlgNum(1);
    sq(0, j) += s.eta()(j);
  }
  w = first_witness(sq, f, "phi^2 - (I - eta (x) xi)");
  rep.add("phi^2 = I - eta (x) xi", w.empty(), w);

  const int rank_phi = rank_exact(s.phi());
  rep.add("rank(phi) = 2n", rank_phi == 2 * n,
          rank_phi == 2 * n ? "" : "rank(phi) = " + std::to_string(rank_phi));

  Mat<AlgNum> plus = s.phi() - Mat<AlgNum>(Mat<AlgNum>::Identity(d, d));
  Mat<AlgNum> minus = s.phi() + Mat<AlgNum>(Mat<AlgNum>::Identity(d, d));
  const int dim_plus = d - rank_exact(plus);
  const int dim_minus = d - rank_exact(minus);
  rep.fact("dim D+", std::to_string(dim_plus));
  rep.fact("dim D-", std::to_string(dim_minus));
  rep.add("eigendistributions have dimension n",
          dim_plus == n && dim_minus == n,
          dim_plus == n && dim_minus == n
              ? ""
              : "dim D+ = " + std::to_string(dim_plus) + ", dim D- = " + std::to_string(dim_minus));
  return rep;
}

VerificationReport verify_compatibility(const ParacontactStructure& s) {
  VerificationReport rep;
  const int n = s.n();
  const FrameSpec& f = s.frame();

  Mat<AlgNum> diff = s.phi().transpose() * s.g() * s.phi() + s.g()
                     - Mat<AlgNum>(s.eta() * s.eta().transpose());
  std::string w = first_witness(diff, f, "g(phi.,phi.) + g - eta (x) eta");
  rep.add("g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y)", w.empty(), w);

  Mat<AlgNum> fundamental = s.g() * s.phi();
  Mat<AlgNum> anti = fundamental + Mat<AlgNum>(fundamental.transpose());
  w = first_witness(anti, f, "Phi + Phi^T");
  rep.add("fundamental form g(.,phi.) antisymmetric", w.empty(), w);

  const auto sig = inertia(s.g());
  rep.fact("signature", "(" + std::to_string(sig.first) + "," + std::to_string(sig.second) + ")");
  rep.add("metric signature (n+1,n)", sig.first == n + 1 && sig.second == n,
          sig.first == n + 1 && sig.second == n
              ? ""
              : "signature (" + std::to_string(sig.first) + "," + std::to_string(sig.second) + ")");
  return rep;
}

VerificationReport verify_paracontact(const ParacontactStructure& s) {
  VerificationReport rep;
  const FrameSpec& f = s.frame();

  Mat<Scalar> diff = s.d_eta() - promote(Mat<AlgNum>(s.g() * s.phi()));
  std::string w = first_witness(diff, f, "d(eta) - g(.,phi.)");
  rep.add("d(eta) = Phi", w.empty(), w);

  // Contact condition: d(eta) restricted to Ker(eta) is non-degenerate,
  // equivalently its determinant is not the zero function.
  Mat<AlgNum> k = kernel_of_covector(s.eta());
  Mat<Scalar> kp = promote(k);
  Mat<Scalar> restricted = kp.transpose() * s.d_eta() * kp;
  Scalar det = det_bareiss(restricted);
  rep.fact("det(d(eta)|Ker eta)", to_string(det));
  rep.add("contact condition: d(eta) non-degenerate on Ker(eta)", !det.is_zero(),
          det.is_zero() ? "restricted determinant is identically zero" : "");
  return rep;
}

VerificationReport verify_h_identities(const ParacontactStructure& s) {
  VerificationReport rep;
  const int d = s.dim();
  const FrameSpec& f = s.frame();
  const Mat<Scalar> g_s = promote(s.g());
  const Mat<Scalar> phi_s = promote(s.phi());

  add_matrix_check(rep, "g(hX,Y) = g(X,hY)",
                   Mat<Scalar>(s.h().transpose() * g_s - g_s * s.h()), f, "h^T g - g h");
  add_matrix_check(rep, "h phi + phi h = 0",
                   Mat<Scalar>(s.h() * phi_s + phi_s * s.h()), f, "h phi + phi h");

  std::string w = vector_witness(s.h().col(0), f, "h(xi)");
  rep.add("h(xi) = 0", w.empty(), w);

  Scalar trace(0);
  for (int i = 0; i < d; ++i) trace += s.h()(i, i);
  rep.add("tr h = 0", trace.is_zero(), trace.is_zero() ? "" : "tr h = " + to_string(trace));

  // grad_X xi = -phi X + phi h X for every frame direction X.
  bool grad_ok = true;
  std::string grad_w;
  const Vec<Scalar> xi = unit_field(d, 0);
  for (int i = 0; i < d && grad_ok; ++i) {
    Vec<Scalar> lhs = s.connection().derivative(f, i, xi);
    Vec<Scalar> rhs = phi_s * Vec<Scalar>(s.h().col(i)) - phi_s.col(i);
    Vec<Scalar> diff = lhs - rhs;
    if (!is_zero_vec(diff)) {
      grad_ok = false;
      grad_w = vector_witness(diff, f, "(grad_{" + f.labels()[i] + "} xi) - (-phi + phi h)" +
                                           f.labels()[i]);
    }
  }
  rep.add("grad xi = -phi + phi h", grad_ok, grad_w);
  return rep;
}

KParacontactResult is_K_paracontact(const ParacontactStructure& s) {
  KParacontactResult out;
  const FrameSpec& f = s.frame();
  const bool h_zero = is_zero_mat(s.h());

  Mat<Scalar> lie = lie_derivative_metric(f, s.g(), unit_field(s.dim(), 0));
  const bool killing = is_zero_mat(lie);
  if (h_zero != killing)
    throw std::logic_error(
        "K-paracontact criteria disagree: h == 0 is " + std::string(h_zero ? "true" : "false") +
        " but the Reeb field Killing test is " + std::string(killing ? "true" : "false"));

  out.value = h_zero;
  out.report.add("h tensor and Killing criterion agree", true);
  out.report.fact("h == 0", h_zero ? "true" : "false");
  out.report.fact("Reeb field Killing", killing ? "true" : "false");
  if (!h_zero) out.report.fact("h witness", first_witness(s.h(), f, "h"));
  return out;
}

VerificationReport nijenhuis_normality(const ParacontactStructure& s) {
  VerificationReport rep;
  const int d = s.dim();
  const FrameSpec& f = s.frame();
  const Mat<Scalar> phi_s = promote(s.phi());
  const Vec<Scalar> xi = unit_field(d, 0);

  bool ok = true;
  std::string w;
  for (int i = 0; i < d && ok; ++i)
    for (int j = i + 1; j < d && ok; ++j) {
      Vec<Scalar> nij = phi_s * (phi_s * f.bracket(i, j))
                        + f.bracket_fields(phi_s.col(i), phi_s.col(j))
                        - phi_s * f.bracket_fields(phi_s.col(i), Vec<Scalar>(unit_field(d, j)))
                        - phi_s * f.bracket_fields(unit_field(d, i), Vec<Scalar>(phi_s.col(j)));
      nij -= xi * (Scalar(2) * s.d_eta()(i, j));
      if (!is_zero_vec(nij)) {
        ok = false;
        w = vector_witness(nij, f,
                           "N(" + f.labels()[i] + "," + f.labels()[j] + ")");
      }
    }
  rep.add("normality tensor N = [phi,phi] - 2 d(eta) (x) xi vanishes", ok, w);
  rep.fact("normal", ok ? "true" : "false");
  return rep;
}

bool is_normal(const ParacontactStructure& s) { return nijenhuis_normality(s).all_pass(); }

bool is_paraSasakian(const ParacontactStructure& s) {
  return verify_paracontact(s).all_pass() && is_normal(s);
}

VerificationReport check_paraSasakian_curvature(const ParacontactStructure& s) {
  VerificationReport rep;
  const int d = s.dim();
  const FrameSpec& f = s.frame();

  bool ok = true;
  std::string w;
  for (int i = 0; i < d && ok; ++i)
    for (int j = i + 1; j < d && ok; ++j) {
      // Expected R(e_i,e_j) xi = -(eta_j e_i - eta_i e_j).
      Vec<Scalar> expected = Vec<Scalar>::Constant(d, Scalar(0));
      expected(i) -= Scalar(s.eta()(j));
      expected(j) += Scalar(s.eta()(i));
      Vec<Scalar> diff = s.curvature().apply(i, j, 0) - expected;
      if (!is_zero_vec(diff)) {
        ok = false;
        w = vector_witness(diff, f,
                           "R(" + f.labels()[i] + "," + f.labels()[j] +
                               ")xi + eta(Y)X - eta(X)Y at pair");
      }
    }
  rep.add("R(X,Y)xi = -(eta(Y)X - eta(X)Y)", ok, w);
  return rep;
}

bool tensor_equal(const ParacontactStructure& a, const ParacontactStructure& b) {
  if (!(a.frame() == b.frame())) return false;
  if (a.dim() != b.dim()) return false;
  return is_zero_mat(Mat<AlgNum>(a.g() - b.g())) && is_zero_mat(Mat<AlgNum>(a.phi() - b.phi()));
}

}  // namespace pkmu
