#include "pkmu/frame.hpp"

#include <set>

namespace pkmu {

namespace {

Vec<Scalar> zero_vec(int n) {
  Vec<Scalar> v(n);
  for (int i = 0; i < n; ++i) v(i) = Scalar();
  return v;
}

void check_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) throw std::invalid_argument("frame: empty label list");
  std::set<std::string> seen;
  for (const std::string& l : labels)
    if (!seen.insert(l).second) throw std::invalid_argument("frame: duplicate label " + l);
}

}  // namespace

FrameSpec FrameSpec::constant_algebra(std::vector<std::string> labels,
                                      const std::vector<std::vector<Vec<Scalar>>>& brackets) {
  check_labels(labels);
  const int n = static_cast<int>(labels.size());
  FrameSpec f;
  f.m_kind = FrameKind::constant_algebra;
  f.m_labels = std::move(labels);
  f.m_brackets.assign(n, std::vector<Vec<Scalar>>(n, zero_vec(n)));
  if (static_cast<int>(brackets.size()) != n)
    throw std::invalid_argument("frame: bracket table has wrong size");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(brackets[i].size()) != n)
      throw std::invalid_argument("frame: bracket table has wrong size");
    for (int j = i + 1; j < n; ++j) {
      const Vec<Scalar>& b = brackets[i][j];
      if (b.size() != n) throw std::invalid_argument("frame: bracket coefficient vector has wrong size");
      for (int k = 0; k < n; ++k)
        if (!b(k).is_constant())
          throw std::invalid_argument("frame: abstract bracket coefficients must be constants");
      f.m_brackets[i][j] = b;
      f.m_brackets[j][i] = -b;
    }
  }
  return f;
}

FrameSpec FrameSpec::coordinate(std::vector<std::string> labels, std::vector<std::string> chart,
                                std::vector<Vec<Scalar>> fields) {
  check_labels(labels);
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(chart.size()) != n)
    throw std::invalid_argument("frame: chart size must match the frame dimension");
  if (static_cast<int>(fields.size()) != n)
    throw std::invalid_argument("frame: one coordinate field required per label");
  for (const Vec<Scalar>& v : fields)
    if (v.size() != n) throw std::invalid_argument("frame: field component count must match the chart");
  FrameSpec f;
  f.m_kind = FrameKind::coordinate;
  f.m_labels = std::move(labels);
  f.m_chart = std::move(chart);
  f.m_fields = std::move(fields);
  f.compute_coordinate_brackets();
  return f;
}

void FrameSpec::compute_coordinate_brackets() {
  const int n = dim();
  // Column j of the transition matrix holds e_j's coordinate components.
  Mat<Scalar> transition(n, n);
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) transition(c, j) = m_fields[j](c);

  m_brackets.assign(n, std::vector<Vec<Scalar>>(n, zero_vec(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // [X,Y]^c = X^d d_d Y^c - Y^d d_d X^c in coordinates.
      Vec<Scalar> coords = zero_vec(n);
      for (int c = 0; c < n; ++c) {
        Scalar acc;
        for (int d = 0; d < n; ++d) {
          acc += m_fields[i](d) * m_fields[j](c).derivative(m_chart[d]);
          acc -= m_fields[j](d) * m_fields[i](c).derivative(m_chart[d]);
        }
        coords(c) = std::move(acc);
      }
      auto sol = solve_cramer(transition, coords);
      if (!sol)
        throw std::domain_error("frame: bracket [" + m_labels[i] + "," + m_labels[j] +
                                "] is not expressible in the frame over the function ring");
      m_brackets[i][j] = *sol;
      m_brackets[j][i] = -*sol;
    }
}

Scalar FrameSpec::derive(int i, const Scalar& f) const {
  if (m_kind == FrameKind::constant_algebra) return Scalar();
  Scalar out;
  for (int d = 0; d < dim(); ++d) out += m_fields[i](d) * f.derivative(m_chart[d]);
  return out;
}

Vec<Scalar> FrameSpec::bracket_fields(const Vec<Scalar>& x, const Vec<Scalar>& y) const {
  const int n = dim();
  Vec<Scalar> out = zero_vec(n);
  for (int j = 0; j < n; ++j) {
    Scalar acc;
    for (int i = 0; i < n; ++i) {
      acc += x(i) * derive(i, y(j));
      acc -= y(i) * derive(i, x(j));
    }
    out(j) = std::move(acc);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (x(i).is_zero() || y(j).is_zero()) continue;
      const Scalar f = x(i) * y(j);
      for (int k = 0; k < n; ++k) out(k) += f * m_brackets[i][j](k);
    }
  return out;
}

std::vector<std::array<int, 3>> FrameSpec::jacobi_violations() const {
  if (m_kind != FrameKind::constant_algebra)
    throw std::invalid_argument("jacobi_violations: abstract frame required");
  const int n = dim();
  std::vector<std::array<int, 3>> bad;
  auto bracket_with_vec = [&](const Vec<Scalar>& v, int k) {
    Vec<Scalar> out = zero_vec(n);
    for (int l = 0; l < n; ++l) {
      if (v(l).is_zero()) continue;
      for (int c = 0; c < n; ++c) out(c) += v(l) * m_brackets[l][k](c);
    }
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec<Scalar> jac = bracket_with_vec(m_brackets[i][j], k);
        jac += bracket_with_vec(m_brackets[j][k], i);
        jac += bracket_with_vec(m_brackets[k][i], j);
        if (!is_zero_vec(jac)) bad.push_back({i, j, k});
      }
  return bad;
}

FrameSpec FrameSpec::rebase(const Mat<AlgNum>& a) const {
  const int n = dim();
  if (a.rows() != n || a.cols() != n) throw std::invalid_argument("rebase: shape mismatch");
  auto ainv = inverse_exact(a);
  if (!ainv) throw std::domain_error("rebase: singular frame change");

  if (m_kind == FrameKind::coordinate) {
    std::vector<Vec<Scalar>> fields(n, zero_vec(n));
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < n; ++c) {
        Scalar acc;
        for (int j = 0; j < n; ++j) acc += Scalar(a(j, i)) * m_fields[j](c);
        fields[i](c) = std::move(acc);
      }
    return coordinate(m_labels, m_chart, std::move(fields));
  }

  // [e_i', e_j'] = sum_{k,l} a(k,i) a(l,j) [e_k, e_l], re-expressed via a^{-1}.
  FrameSpec f;
  f.m_kind = FrameKind::constant_algebra;
  f.m_labels = m_labels;
  f.m_brackets.assign(n, std::vector<Vec<Scalar>>(n, zero_vec(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec<Scalar> old = zero_vec(n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const AlgNum c = a(k, i) * a(l, j);
          if (c.is_zero()) continue;
          for (int s = 0; s < n; ++s) old(s) += Scalar(c) * m_brackets[k][l](s);
        }
      Vec<Scalar> reexpressed = zero_vec(n);
      for (int r = 0; r < n; ++r) {
        Scalar acc;
        for (int s = 0; s < n; ++s) acc += Scalar((*ainv)(r, s)) * old(s);
        reexpressed(r) = std::move(acc);
      }
      f.m_brackets[i][j] = reexpressed;
      f.m_brackets[j][i] = -reexpressed;
    }
  return f;
}

bool FrameSpec::operator==(const FrameSpec& o) const {
  if (m_kind != o.m_kind || m_labels != o.m_labels || m_chart != o.m_chart) return false;
  const int n = dim();
  if (n != o.dim()) return false;
  for (int i = 0; i < n; ++i) {
    if (m_kind == FrameKind::coordinate)
      for (int c = 0; c < n; ++c)
        if (m_fields[i](c) != o.m_fields[i](c)) return false;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (m_brackets[i][j](k) != o.m_brackets[i][j](k)) return false;
  }
  return true;
}

std::string first_nonzero_entry(const Mat<Scalar>& m, const std::vector<std::string>& labels,
                                const std::string& what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero())
        return what + "(" + labels[i] + "," + labels[j] + ") = " + to_string(m(i, j));
  return "";
}

std::string first_nonzero_component(const Vec<Scalar>& v, const std::vector<std::string>& labels,
                                    const std::string& what) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero())
      return what + " has " + labels[i] + "-component " + to_string(v(i));
  return "";
}

std::string format_combination(const Vec<Scalar>& v, const std::vector<std::string>& labels) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).is_zero()) continue;
    std::string c = to_string(v(i));
    std::string piece;
    if (c == "1")
      piece = labels[i];
    else if (c == "-1")
      piece = "-" + labels[i];
    else if (v(i).terms().size() > 1)
      piece = "(" + c + ")*" + labels[i];
    else
      piece = c + "*" + labels[i];
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out.empty() ? "0" : out;
}

}  // namespace pkmu
