#include "pkmu/connection.hpp"

namespace pkmu {

namespace {

Vec<Scalar> zero_vec(int n) {
  Vec<Scalar> v(n);
  for (int i = 0; i < n; ++i) v(i) = Scalar();
  return v;
}

Mat<Scalar> zero_mat(int n) {
  Mat<Scalar> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = Scalar();
  return m;
}

/// g(v, w) for frame-coefficient fields and constant metric components.
Scalar pair_g(const Mat<AlgNum>& g, const Vec<Scalar>& v, const Vec<Scalar>& w) {
  Scalar acc;
  const int n = static_cast<int>(g.rows());
  for (int i = 0; i < n; ++i) {
    if (v(i).is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (g(i, j).is_zero() || w(j).is_zero()) continue;
      acc += v(i) * Scalar(g(i, j)) * w(j);
    }
  }
  return acc;
}

}  // namespace

Connection Connection::levi_civita(const FrameSpec& frame, const Mat<AlgNum>& g,
                                   const Mat<AlgNum>& g_inv) {
  const int n = frame.dim();
  Connection conn;
  conn.m_gamma.assign(n, zero_mat(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // 2 g(D_i e_j, e_k) = g(e_k,[e_i,e_j]) - g(e_i,[e_j,e_k]) - g(e_j,[e_i,e_k]).
      Vec<Scalar> rhs = zero_vec(n);
      for (int k = 0; k < n; ++k) {
        Scalar acc;
        for (int l = 0; l < n; ++l) {
          if (!g(k, l).is_zero()) acc += Scalar(g(k, l)) * frame.bracket(i, j)(l);
          if (!g(i, l).is_zero()) acc -= Scalar(g(i, l)) * frame.bracket(j, k)(l);
          if (!g(j, l).is_zero()) acc -= Scalar(g(j, l)) * frame.bracket(i, k)(l);
        }
        rhs(k) = std::move(acc);
      }
      const AlgNum half = AlgNum(Rat(1, 2));
      for (int k = 0; k < n; ++k) {
        Scalar acc;
        for (int l = 0; l < n; ++l)
          if (!g_inv(k, l).is_zero()) acc += Scalar(g_inv(k, l) * half) * rhs(l);
        conn.m_gamma[i](k, j) = std::move(acc);
      }
    }
  return conn;
}

Vec<Scalar> Connection::derivative(const FrameSpec& frame, int i, const Vec<Scalar>& v) const {
  const int n = frame.dim();
  Vec<Scalar> out = zero_vec(n);
  for (int k = 0; k < n; ++k) out(k) = frame.derive(i, v(k));
  for (int j = 0; j < n; ++j) {
    if (v(j).is_zero()) continue;
    for (int k = 0; k < n; ++k) out(k) += v(j) * m_gamma[i](k, j);
  }
  return out;
}

Vec<Scalar> Connection::derivative_along(const FrameSpec& frame, const Vec<Scalar>& x,
                                         const Vec<Scalar>& v) const {
  const int n = frame.dim();
  Vec<Scalar> out = zero_vec(n);
  for (int i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    Vec<Scalar> di = derivative(frame, i, v);
    for (int k = 0; k < n; ++k) out(k) += x(i) * di(k);
  }
  return out;
}

CurvatureTensor curvature(const FrameSpec& frame, const Connection& conn) {
  const int n = frame.dim();
  CurvatureTensor r;
  r.comp.assign(n, std::vector<Mat<Scalar>>(n, zero_mat(n)));
  Vec<Scalar> basis = zero_vec(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        basis(k) = Scalar(1);
        Vec<Scalar> first = conn.derivative(frame, i, conn.derivative(frame, j, basis));
        Vec<Scalar> second = conn.derivative(frame, j, conn.derivative(frame, i, basis));
        Vec<Scalar> third = conn.derivative_along(frame, frame.bracket(i, j), basis);
        for (int l = 0; l < n; ++l) r.comp[i][j](l, k) = first(l) - second(l) - third(l);
        basis(k) = Scalar();
      }
      r.comp[j][i] = -r.comp[i][j];
    }
  return r;
}

Mat<Scalar> lie_derivative_metric(const FrameSpec& frame, const Mat<AlgNum>& g,
                                  const Vec<Scalar>& v) {
  const int n = frame.dim();
  Mat<Scalar> out = zero_mat(n);
  Vec<Scalar> basis_i = zero_vec(n);
  Vec<Scalar> basis_j = zero_vec(n);
  for (int i = 0; i < n; ++i) {
    basis_i(i) = Scalar(1);
    for (int j = i; j < n; ++j) {
      basis_j(j) = Scalar(1);
      // V(g_ij) vanishes: constant metric components in the frame.
      Scalar acc = -pair_g(g, frame.bracket_fields(v, basis_i), basis_j);
      acc -= pair_g(g, basis_i, frame.bracket_fields(v, basis_j));
      out(i, j) = acc;
      out(j, i) = std::move(acc);
      basis_j(j) = Scalar();
    }
    basis_i(i) = Scalar();
  }
  return out;
}

Mat<Scalar> exterior_derivative_oneform(const FrameSpec& frame, const Vec<AlgNum>& eta) {
  const int n = frame.dim();
  Mat<Scalar> out = zero_mat(n);
  const AlgNum half(Rat(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Scalar acc = frame.derive(i, Scalar(eta(j))) - frame.derive(j, Scalar(eta(i)));
      for (int k = 0; k < n; ++k)
        if (!eta(k).is_zero()) acc -= Scalar(eta(k)) * frame.bracket(i, j)(k);
      acc *= Scalar(half);
      out(i, j) = acc;
      out(j, i) = -acc;
    }
  return out;
}

}  // namespace pkmu
