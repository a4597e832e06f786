#pragma once

#include "pkmu/linalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace pkmu {

enum class FrameKind { constant_algebra, coordinate };

/// A frame of vector fields, either presented abstractly by constant structure
/// coefficients (a Lie algebra basis) or concretely as coordinate vector fields
/// with Scalar coefficients. Frame vector 0 is the distinguished Reeb direction.
///
/// The full antisymmetric bracket table [e_i, e_j] (coefficients in the frame)
/// is computed once at construction and the object is immutable afterwards.
class FrameSpec {
 public:
  /// Abstract frame from bracket coefficients: brackets[i][j] = [e_i, e_j]
  /// expanded in the frame. Only entries with i < j are read; antisymmetry and
  /// zero diagonal are filled in. Coefficients must be constants.
  static FrameSpec constant_algebra(std::vector<std::string> labels,
                                    const std::vector<std::vector<Vec<Scalar>>>& brackets);

  /// Coordinate frame: fields[i] holds the components of e_i in the coordinate
  /// basis of the chart (one Scalar per coordinate). Requires #chart == #labels;
  /// brackets are computed by differentiation and exact re-expression in the
  /// frame, which must succeed inside the function ring.
  static FrameSpec coordinate(std::vector<std::string> labels, std::vector<std::string> chart,
                              std::vector<Vec<Scalar>> fields);

  int dim() const { return static_cast<int>(m_labels.size()); }
  FrameKind kind() const { return m_kind; }
  const std::vector<std::string>& labels() const { return m_labels; }
  const std::vector<std::string>& chart() const { return m_chart; }
  const std::vector<Vec<Scalar>>& fields() const { return m_fields; }

  /// [e_i, e_j] as frame coefficients.
  const Vec<Scalar>& bracket(int i, int j) const { return m_brackets[i][j]; }

  /// Directional derivative e_i(f); identically zero for an abstract frame,
  /// where every scalar is constant.
  Scalar derive(int i, const Scalar& f) const;

  /// Bracket of two frame-coefficient vector fields:
  /// [X,Y] = sum_j (X(Y^j) - Y(X^j)) e_j + sum_{i,j} X^i Y^j [e_i, e_j].
  Vec<Scalar> bracket_fields(const Vec<Scalar>& x, const Vec<Scalar>& y) const;

  /// Triples (i,j,k), i<j<k, with nonzero Jacobiator. Empty iff the constant
  /// coefficients define a Lie algebra. Requires the abstract kind.
  std::vector<std::array<int, 3>> jacobi_violations() const;

  /// Frame change e_i' = sum_j a(j,i) e_j with constant invertible a; brackets
  /// (and coordinate fields, if any) are rewritten in the new frame.
  FrameSpec rebase(const Mat<AlgNum>& a) const;

  bool operator==(const FrameSpec& o) const;

 private:
  FrameSpec() = default;
  void compute_coordinate_brackets();

  FrameKind m_kind = FrameKind::constant_algebra;
  std::vector<std::string> m_labels;
  std::vector<std::string> m_chart;
  std::vector<Vec<Scalar>> m_fields;
  std::vector<std::vector<Vec<Scalar>>> m_brackets;
};

/// First nonzero entry of a tensor-difference matrix rendered with frame
/// labels, e.g. "what(e1,e2) = x". Empty string when the matrix vanishes.
std::string first_nonzero_entry(const Mat<Scalar>& m, const std::vector<std::string>& labels,
                                const std::string& what);

/// First nonzero component of a frame-coefficient vector, rendered as
/// "what has e2-component x". Empty string when the vector vanishes.
std::string first_nonzero_component(const Vec<Scalar>& v, const std::vector<std::string>& labels,
                                    const std::string& what);

/// Frame-coefficient combination like "x*e2 - e3"; "0" when zero.
std::string format_combination(const Vec<Scalar>& v, const std::vector<std::string>& labels);

}  // namespace pkmu
