#pragma once

#include "pkmu/structure.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pkmu {

/// All structure tensors evaluated at one chart point. g, phi and eta have
/// constant frame components and stay exact; h may involve exponentials, so
/// the exact matrices are only valid when `exact` is true. The double matrices
/// are always filled.
struct PointEvaluation {
  std::map<std::string, Rat> point;
  bool exact = true;
  int dim = 0;
  int n = 0;
  std::vector<std::string> labels;

  Mat<AlgNum> g, phi, h;
  Vec<AlgNum> eta;

  Eigen::MatrixXd g_d, phi_d, h_d;
  Eigen::VectorXd eta_d;
};

/// Tolerance for all numeric-path zero decisions in this module.
inline constexpr double kCanonicalTol = 1e-9;

PointEvaluation evaluate_at_point(const ParacontactStructure& s,
                                  const std::map<std::string, Rat>& point);

/// rank(h_p) per point: exact when the evaluation is exact, numeric with
/// kCanonicalTol otherwise.
std::vector<std::pair<std::map<std::string, Rat>, int>> h_rank_profile(
    const ParacontactStructure& s, const std::vector<std::map<std::string, Rat>>& points);

/// Pointwise basis {xi, X_1, Y_1, ..., X_n, Y_n} in which g has Gram entries
/// g(xi,xi) = 1, g(X_i,Y_i) = eps_i and h consists of m lower-triangular 2x2
/// blocks mapping X_i to Y_i. Columns of `basis` hold the frame coordinates of
/// the new basis vectors in that order.
struct CanonicalBasisResult {
  bool exact = true;
  int n = 0;
  /// rank(h_p): the number of h-active pairs, listed first.
  int m = 0;
  std::vector<int> signs;

  Mat<AlgNum> basis, gram, h_matrix;
  Eigen::MatrixXd basis_d, gram_d, h_matrix_d;

  std::vector<std::string> notes;
};

/// Runs the constructive normal-form algorithm: repeatedly picks a vector of
/// Ker eta_p with nonzero h-pairing, makes it isotropic, scales it into an
/// (X_i, Y_i = h X_i) pair, passes to the g-orthogonal complement, and finishes
/// the kernel of h_p with a pseudo-orthonormal basis folded into null pairs.
/// Runs exactly over Q(sqrt2) whenever every required square root stays in the
/// field, silently falling back to the numeric path otherwise.
/// Throws domain_error when h_p^2 != 0, g_p is degenerate, or a normal-form
/// invariant fails beyond tolerance.
CanonicalBasisResult canonical_basis(const PointEvaluation& pe);

/// Recomputes Gram and h matrices from the returned basis against the original
/// point data and confirms every normal-form invariant, including the block
/// count and, for n = 1 with h_p != 0, the phi-eigenvector property of X_1.
VerificationReport verify_normal_form(const CanonicalBasisResult& r, const PointEvaluation& pe);

}  // namespace pkmu
