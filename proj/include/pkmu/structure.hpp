#pragma once

#include "pkmu/connection.hpp"
#include "pkmu/report.hpp"

namespace pkmu {

/// An almost paracontact metric candidate: a frame with the Reeb direction at
/// index 0, constant metric components g, and a constant endomorphism phi.
/// The dual form eta is always derived as g(., e_0). All derived tensors
/// (connection, curvature, h, d(eta)) are computed eagerly at construction, so
/// instances are immutable values and cheap to share.
///
/// Construction validates only structural soundness (shapes, symmetry,
/// invertibility of g, odd dimension). Geometric axioms are verified by the
/// free functions below, which report failures instead of throwing.
class ParacontactStructure {
 public:
  ParacontactStructure(FrameSpec frame, Mat<AlgNum> g, Mat<AlgNum> phi);

  const FrameSpec& frame() const { return m_frame; }
  const Mat<AlgNum>& g() const { return m_g; }
  const Mat<AlgNum>& g_inv() const { return m_g_inv; }
  const Mat<AlgNum>& phi() const { return m_phi; }
  /// eta as a covector: eta(e_i) = g(e_i, e_0).
  const Vec<AlgNum>& eta() const { return m_eta; }

  int dim() const { return m_frame.dim(); }
  /// n with dim = 2n + 1.
  int n() const { return (dim() - 1) / 2; }

  const Connection& connection() const { return m_conn; }
  const CurvatureTensor& curvature() const { return m_curv; }
  /// Column i holds the frame coefficients of the h-image of e_i, where h is
  /// half the Lie derivative of phi along the Reeb field.
  const Mat<Scalar>& h() const { return m_h; }
  const Mat<Scalar>& d_eta() const { return m_d_eta; }

  /// g(v, w) in the function ring.
  Scalar pair(const Vec<Scalar>& v, const Vec<Scalar>& w) const;

 private:
  FrameSpec m_frame;
  Mat<AlgNum> m_g, m_g_inv, m_phi;
  Vec<AlgNum> m_eta;
  Connection m_conn;
  CurvatureTensor m_curv;
  Mat<Scalar> m_h;
  Mat<Scalar> m_d_eta;
};

/// eta(xi) = 1, phi^2 = I - eta (x) xi, phi xi = 0, eta o phi = 0, and the
/// +1/-1 eigendistributions of phi both have dimension n.
VerificationReport verify_almost_paracontact(const ParacontactStructure& s);

/// g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y) on frame pairs, g symmetric and
/// non-degenerate with signature (n+1, n), and g(., phi .) antisymmetric.
VerificationReport verify_compatibility(const ParacontactStructure& s);

/// d(eta) = Phi where Phi(X,Y) = g(X, phi Y), plus non-degeneracy of d(eta)
/// restricted to the kernel of eta (the contact condition).
VerificationReport verify_paracontact(const ParacontactStructure& s);

/// Symmetry of h w.r.t. g, anticommutation with phi, h xi = 0, tr h = 0 and
/// the covariant derivative identity for the Reeb field: grad xi = -phi + phi h.
VerificationReport verify_h_identities(const ParacontactStructure& s);

struct KParacontactResult {
  bool value = false;
  VerificationReport report;
};

/// h == 0, cross-checked against the vanishing of the metric Lie derivative
/// along the Reeb field; the two criteria must agree.
KParacontactResult is_K_paracontact(const ParacontactStructure& s);

/// Normality tensor N = [phi,phi] - 2 d(eta) (x) xi on frame pairs.
VerificationReport nijenhuis_normality(const ParacontactStructure& s);

bool is_normal(const ParacontactStructure& s);

/// Paracontact axioms all pass and the structure is normal.
bool is_paraSasakian(const ParacontactStructure& s);

/// R(X,Y) xi = -(eta(Y) X - eta(X) Y) on all frame pairs; necessary for
/// paraSasakian but satisfied by some structures with nonzero h as well.
VerificationReport check_paraSasakian_curvature(const ParacontactStructure& s);

/// Tensor-by-tensor equality (frame brackets/fields, g, phi).
bool tensor_equal(const ParacontactStructure& a, const ParacontactStructure& b);

}  // namespace pkmu
