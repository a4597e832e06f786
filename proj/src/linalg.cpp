#include "pkmu/linalg.hpp"

#include <cmath>

namespace pkmu {

Mat<Scalar> promote(const Mat<AlgNum>& m) {
  Mat<Scalar> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = Scalar(m(i, j));
  return out;
}

Vec<Scalar> promote(const Vec<AlgNum>& v) {
  Vec<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Scalar(v(i));
  return out;
}

Vec<Scalar> unit_field(int dim, int i) {
  Vec<Scalar> v = Vec<Scalar>::Constant(dim, Scalar(0));
  v(i) = Scalar(1);
  return v;
}

Eigen::MatrixXd to_double(const Mat<AlgNum>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::VectorXd to_double(const Vec<AlgNum>& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

int rank_exact(Mat<AlgNum> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index lead = 0;
  for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = lead; r < rows; ++r)
      if (!m(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(lead));
    for (Eigen::Index r = lead + 1; r < rows; ++r) {
      if (m(r, col).is_zero()) continue;
      AlgNum f = m(r, col) / m(lead, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(lead, c);
    }
    ++lead;
    ++rank;
  }
  return rank;
}

int rank_numeric(Eigen::MatrixXd m, double tol) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index lead = 0;
  for (Eigen::Index col = 0; col < cols && lead < rows; ++col) {
    Eigen::Index pivot = lead;
    for (Eigen::Index r = lead + 1; r < rows; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) <= tol) continue;
    m.row(pivot).swap(m.row(lead));
    for (Eigen::Index r = lead + 1; r < rows; ++r) {
      double f = m(r, col) / m(lead, col);
      for (Eigen::Index c = col; c < cols; ++c) m(r, c) -= f * m(lead, c);
    }
    ++lead;
    ++rank;
  }
  return rank;
}

std::optional<Mat<AlgNum>> solve_exact(Mat<AlgNum> a, Mat<AlgNum> b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve_exact: shape mismatch");
  // Gauss-Jordan with first-nonzero pivoting; exact field operations.
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (!a(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    a.row(pivot).swap(a.row(col));
    b.row(pivot).swap(b.row(col));
    AlgNum inv = AlgNum(1) / a(col, col);
    for (Eigen::Index c = 0; c < n; ++c) a(col, c) *= inv;
    for (Eigen::Index c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      AlgNum f = a(r, col);
      for (Eigen::Index c = 0; c < n; ++c) a(r, c) -= f * a(col, c);
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  return b;
}

std::optional<Mat<AlgNum>> inverse_exact(const Mat<AlgNum>& m) {
  Mat<AlgNum> id = Mat<AlgNum>::Zero(m.rows(), m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) id(i, i) = AlgNum(1);
  return solve_exact(m, id);
}

std::pair<int, int> inertia(Mat<AlgNum> m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inertia: square matrix required");
  int pos = 0, neg = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    // Bring a nonzero entry onto the diagonal position (k,k) by congruence.
    if (m(k, k).is_zero()) {
      Eigen::Index d = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (!m(r, r).is_zero()) {
          d = r;
          break;
        }
      if (d >= 0) {
        m.row(k).swap(m.row(d));
        m.col(k).swap(m.col(d));
      } else {
        Eigen::Index i = -1, j = -1;
        for (Eigen::Index r = k; r < n && i < 0; ++r)
          for (Eigen::Index c = r + 1; c < n; ++c)
            if (!m(r, c).is_zero()) {
              i = r;
              j = c;
              break;
            }
        if (i < 0) break;  // remaining block is identically zero
        // Basis change e_i <- e_i + e_j creates the diagonal entry 2*m(i,j).
        m.row(i) += m.row(j);
        m.col(i) += m.col(j);
        if (i != k) {
          m.row(k).swap(m.row(i));
          m.col(k).swap(m.col(i));
        }
      }
    }
    const AlgNum pivot = m(k, k);
    (pivot.sign() > 0 ? pos : neg) += 1;
    for (Eigen::Index r = k + 1; r < n; ++r) {
      if (m(r, k).is_zero()) continue;
      AlgNum f = m(r, k) / pivot;
      m.row(r) -= m.row(k) * f;
      m.col(r) -= m.col(k) * f;
    }
  }
  return {pos, neg};
}

Scalar det_bareiss(Mat<Scalar> m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("det_bareiss: square matrix required");
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      Eigen::Index pivot = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (!m(r, k).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Scalar(0);
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Scalar num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw std::domain_error("det_bareiss: interior division failed");
        m(i, j) = std::move(*q);
      }
    prev = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

std::optional<Vec<Scalar>> solve_cramer(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_cramer: shape mismatch");
  const Scalar det = det_bareiss(a);
  if (det.is_zero()) return std::nullopt;
  Vec<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Mat<Scalar> ai = a;
    ai.col(i) = b;
    auto q = exact_divide(det_bareiss(ai), det);
    if (!q) return std::nullopt;
    x(i) = std::move(*q);
  }
  return x;
}

Mat<AlgNum> kernel_of_covector(const Vec<AlgNum>& row) {
  const Eigen::Index n = row.size();
  Eigen::Index pivot = -1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!row(i).is_zero()) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw std::domain_error("kernel_of_covector: zero covector");
  Mat<AlgNum> basis = Mat<AlgNum>::Zero(n, n - 1);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == pivot) continue;
    basis(i, col) = AlgNum(1);
    basis(pivot, col) = -row(i) / row(pivot);
    ++col;
  }
  return basis;
}

}  // namespace pkmu
