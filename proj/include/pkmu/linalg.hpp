#pragma once

#include "pkmu/algnum.hpp"
#include "pkmu/scalar.hpp"

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace pkmu {

/// Dense column-major dynamic types over an arbitrary scalar ring.
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

inline bool entry_is_zero(const AlgNum& x) { return x.is_zero(); }
inline bool entry_is_zero(const Scalar& x) { return x.is_zero(); }
inline bool entry_is_zero(double x) { return x == 0.0; }

template <class S>
bool is_zero_mat(const Mat<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!entry_is_zero(m(i, j))) return false;
  return true;
}

template <class S>
bool is_zero_vec(const Vec<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!entry_is_zero(v(i))) return false;
  return true;
}

/// Promotes an exact-constant matrix into the function ring.
Mat<Scalar> promote(const Mat<AlgNum>& m);
Vec<Scalar> promote(const Vec<AlgNum>& v);

/// Frame coefficients of the i-th frame vector itself.
Vec<Scalar> unit_field(int dim, int i);

Eigen::MatrixXd to_double(const Mat<AlgNum>& m);
Eigen::VectorXd to_double(const Vec<AlgNum>& v);

/// Rank over an exact field: Gaussian elimination with first-nonzero pivoting.
int rank_exact(Mat<AlgNum> m);

/// Numeric rank with an absolute pivot threshold.
int rank_numeric(Eigen::MatrixXd m, double tol);

/// Exact inverse over Q(sqrt2); nullopt when singular.
std::optional<Mat<AlgNum>> inverse_exact(const Mat<AlgNum>& m);

/// Exact solve A x = b over Q(sqrt2) for matrix right-hand sides; nullopt when
/// A is rank-deficient or the system is unsolvable.
std::optional<Mat<AlgNum>> solve_exact(Mat<AlgNum> a, Mat<AlgNum> b);

/// Signature (#positive, #negative) of an exact symmetric bilinear form,
/// computed by congruence diagonalization.
std::pair<int, int> inertia(Mat<AlgNum> sym);

/// Determinant in the function ring via fraction-free Bareiss elimination;
/// every intermediate division is exact.
Scalar det_bareiss(Mat<Scalar> m);

/// Exact solve A x = b inside the function ring via Cramer's rule; nullopt when
/// det A = 0 or some component quotient leaves the ring.
std::optional<Vec<Scalar>> solve_cramer(const Mat<Scalar>& a, const Vec<Scalar>& b);

/// Basis of the kernel of a single exact covector (one row); the result
/// columns are linearly independent vectors annihilated by it.
Mat<AlgNum> kernel_of_covector(const Vec<AlgNum>& row);

}  // namespace pkmu
