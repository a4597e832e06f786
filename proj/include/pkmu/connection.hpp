#pragma once

#include "pkmu/frame.hpp"

#include <vector>

namespace pkmu {

/// Levi-Civita connection coefficients of a metric with constant frame
/// components: gamma(i) column j holds the frame coefficients of the covariant
/// derivative of e_j along e_i.
class Connection {
 public:
  /// Koszul's formula; the metric derivative terms vanish because the metric
  /// components are constant in the frame.
  static Connection levi_civita(const FrameSpec& frame, const Mat<AlgNum>& g,
                                const Mat<AlgNum>& g_inv);

  const Mat<Scalar>& gamma(int i) const { return m_gamma[i]; }

  /// Covariant derivative along e_i of a frame-coefficient field:
  /// component k of e_i(V^k) e_k + V^j (derivative of e_j along e_i).
  Vec<Scalar> derivative(const FrameSpec& frame, int i, const Vec<Scalar>& v) const;

  /// Covariant derivative along an arbitrary frame-coefficient field X,
  /// tensorial in X.
  Vec<Scalar> derivative_along(const FrameSpec& frame, const Vec<Scalar>& x,
                               const Vec<Scalar>& v) const;

 private:
  std::vector<Mat<Scalar>> m_gamma;
};

/// Riemann curvature on frame pairs: comp[i][j] column k holds the frame
/// coefficients of the curvature operator applied to (e_i, e_j, e_k), defined
/// as the commutator of covariant derivatives minus the bracket derivative.
/// Only i < j is stored; the (j,i) slot holds the negative.
struct CurvatureTensor {
  std::vector<std::vector<Mat<Scalar>>> comp;

  /// R(e_i,e_j) e_k.
  Vec<Scalar> apply(int i, int j, int k) const { return comp[i][j].col(k); }
};

CurvatureTensor curvature(const FrameSpec& frame, const Connection& conn);

/// (L_V g)(e_i, e_j) = V(g_ij) - g([V,e_i], e_j) - g(e_i, [V,e_j]); the first
/// term vanishes for constant metric components.
Mat<Scalar> lie_derivative_metric(const FrameSpec& frame, const Mat<AlgNum>& g,
                                  const Vec<Scalar>& v);

/// Exterior derivative of a 1-form with the 1/2 convention:
/// d(eta)(e_i,e_j) = (e_i(eta_j) - e_j(eta_i) - eta([e_i,e_j])) / 2.
Mat<Scalar> exterior_derivative_oneform(const FrameSpec& frame, const Vec<AlgNum>& eta);

}  // namespace pkmu
