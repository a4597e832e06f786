#include "pkmu/canonical.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace pkmu {
namespace {

/// Raised by the exact path when a required square root leaves Q(sqrt2);
/// the construction then reruns numerically.
struct ExactFallback {};

struct ExactOps {
  using K = AlgNum;
  static bool is_zero(const K& x) { return x.is_zero(); }
  static int sign_of(const K& x) { return x.sign(); }
  static K sqrt_abs(const K& x) {
    auto r = sqrt_exact(abs(x));
    if (!r) throw ExactFallback{};
    return *r;
  }
  static K inv_sqrt2() { return AlgNum(Rat(0), Rat(1, 2)); }
  static int pivot_index(const Vec<K>& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!v(i).is_zero()) return static_cast<int>(i);
    return -1;
  }
  static std::optional<Mat<K>> inverse(const Mat<K>& m) { return inverse_exact(m); }
  static int rank(const Mat<K>& m) { return rank_exact(m); }
  static std::string render(const K& x) { return to_string(x); }
  /// Pivot ranking: any nonzero value is as good as any other, so argmax
  /// keeps the first nonzero candidate and the path stays deterministic.
  static double score(const K& x) { return x.is_zero() ? 0.0 : 1.0; }
  static void normalize(Vec<K>&) {}
};

struct NumericOps {
  using K = double;
  static bool is_zero(double x) { return std::fabs(x) < kCanonicalTol; }
  static int sign_of(double x) {
    return x > kCanonicalTol ? 1 : (x < -kCanonicalTol ? -1 : 0);
  }
  static double sqrt_abs(double x) { return std::sqrt(std::fabs(x)); }
  static double inv_sqrt2() { return 1.0 / std::sqrt(2.0); }
  static int pivot_index(const Eigen::VectorXd& v) {
    int best = -1;
    double mag = kCanonicalTol;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::fabs(v(i)) > mag) {
        mag = std::fabs(v(i));
        best = static_cast<int>(i);
      }
    return best;
  }
  static std::optional<Eigen::MatrixXd> inverse(const Eigen::MatrixXd& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) return std::nullopt;
    return Eigen::MatrixXd(lu.inverse());
  }
  static int rank(const Eigen::MatrixXd& m) { return rank_numeric(m, kCanonicalTol); }
  static std::string render(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
  }
  static double score(double x) { return std::fabs(x); }
  /// Rescale to unit max-norm so the absolute tolerance keeps its meaning
  /// after repeated projections.
  static void normalize(Eigen::VectorXd& v) {
    const double mag = v.cwiseAbs().maxCoeff();
    if (mag > 0.0) v /= mag;
  }
};

template <class Ops>
struct NormalFormEngine {
  using K = typename Ops::K;

  int dim;
  Mat<K> G, H;
  Vec<K> eta;

  K pairing(const Vec<K>& v, const Vec<K>& w) const {
    K out(0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out += v(i) * G(i, j) * w(j);
    return out;
  }

  /// Greedy elimination keeping the first vectors that increase the span.
  /// Candidates arrive normalized, so the pivot threshold drops projection
  /// residue without scaling it back up.
  std::vector<Vec<K>> independent_subset(const std::vector<Vec<K>>& vs) const {
    std::vector<Vec<K>> kept, reduced;
    std::vector<int> pivots;
    for (const Vec<K>& v : vs) {
      Vec<K> w = v;
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        K c = w(pivots[k]);
        if (!Ops::is_zero(c)) w -= reduced[k] * c;
      }
      const int p = Ops::pivot_index(w);
      if (p >= 0) {
        reduced.push_back(w / w(p));
        pivots.push_back(p);
        kept.push_back(v);
      }
    }
    return kept;
  }

  std::vector<Vec<K>> eta_kernel() const {
    const int p = Ops::pivot_index(eta);
    if (p < 0) throw std::domain_error("eta vanishes at the point");
    std::vector<Vec<K>> out;
    for (int i = 0; i < dim; ++i) {
      if (i == p) continue;
      Vec<K> v = Vec<K>::Constant(dim, K(0));
      v(i) = K(1);
      v(p) -= eta(i) / eta(p);
      out.push_back(v);
    }
    return out;
  }

  void run(Mat<K>& basis, std::vector<int>& signs, int& m) {
    if (Ops::rank(G) != dim) throw std::domain_error("g_p is degenerate");
    Mat<K> h2 = H * H;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (!Ops::is_zero(h2(i, j)))
          throw std::domain_error("h_p^2 != 0: entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") = " + Ops::render(h2(i, j)));

    std::vector<Vec<K>> work = eta_kernel();
    struct BuiltPair {
      Vec<K> x, y;
      int sign;
    };
    std::vector<BuiltPair> pairs;

    for (;;) {
      for (Vec<K>& w : work) Ops::normalize(w);
      // Candidate pair seeds are the basis vectors and their two-vector sums,
      // ranked by the self-pairing g(v, h v) the extraction divides by. The
      // pairing form vanishes on the complement exactly when h does, so an
      // empty sweep ends the h-phase.
      const int nw = static_cast<int>(work.size());
      std::vector<Vec<K>> hw;
      hw.reserve(work.size());
      for (const Vec<K>& w : work) hw.push_back(Vec<K>(H * w));
      Mat<K> b(nw, nw);
      for (int i = 0; i < nw; ++i)
        for (int j = 0; j < nw; ++j) b(i, j) = pairing(work[i], hw[j]);

      int ci = -1, cj = -1;
      double best = 0.0;
      auto consider = [&](int i, int j, const K& alpha_cand) {
        if (Ops::is_zero(alpha_cand)) return;
        if (Ops::score(alpha_cand) > best) {
          best = Ops::score(alpha_cand);
          ci = i;
          cj = j;
        }
      };
      for (int i = 0; i < nw; ++i) consider(i, i, b(i, i));
      for (int i = 0; i < nw; ++i)
        for (int j = i + 1; j < nw; ++j)
          consider(i, j, K(b(i, i) + b(j, j) + b(i, j) + b(j, i)));
      if (ci < 0) break;  // h vanishes on the remaining complement
      Vec<K> v = ci == cj ? work[ci] : Vec<K>(work[ci] + work[cj]);

      // Make v isotropic without changing h v: the corrected vector satisfies
      // g(v',v') = g(v,v) - g(v,v) + coef^2 g(hv,hv) = 0 since h^2 = 0.
      Vec<K> hv = H * v;
      K alpha = pairing(v, hv);
      const K gvv = pairing(v, v);
      if (!Ops::is_zero(gvv)) {
        v -= hv * (gvv / (alpha * K(2)));
        hv = H * v;
        alpha = pairing(v, hv);
      }

      const K scale = Ops::sqrt_abs(alpha);
      BuiltPair p;
      p.x = v / scale;
      p.y = hv / scale;
      p.sign = Ops::sign_of(alpha);
      // Pass to the g-orthogonal complement of span{x, y}.
      for (Vec<K>& w : work)
        w -= (p.x * pairing(w, p.y) + p.y * pairing(w, p.x)) * K(p.sign);
      work = independent_subset(work);
      pairs.push_back(std::move(p));
    }
    m = static_cast<int>(pairs.size());

    // Pseudo-orthonormal basis of the h-kernel, then null pairs.
    std::vector<Vec<K>> plus, minus;
    while (!work.empty()) {
      for (Vec<K>& w : work) Ops::normalize(w);
      Vec<K> u;
      bool found = false;
      double best = 0.0;
      for (const Vec<K>& w : work) {
        const K a = pairing(w, w);
        if (Ops::is_zero(a)) continue;
        if (Ops::score(a) > best) {
          best = Ops::score(a);
          u = w;
          found = true;
        }
      }
      if (!found) {
        for (std::size_t i = 0; i < work.size(); ++i)
          for (std::size_t j = i + 1; j < work.size(); ++j) {
            const K a = pairing(work[i], work[j]);
            if (Ops::is_zero(a)) continue;
            if (Ops::score(a) > best) {
              best = Ops::score(a);
              u = work[i] + work[j];
              found = true;
            }
          }
        if (!found) throw std::domain_error("metric degenerate on the kernel of h_p");
      }
      const K a = pairing(u, u);
      u = u / Ops::sqrt_abs(a);
      const int sg = Ops::sign_of(a);
      (sg > 0 ? plus : minus).push_back(u);
      for (Vec<K>& w : work) w -= u * (pairing(w, u) * K(sg));
      work = independent_subset(work);
    }
    if (plus.size() != minus.size())
      throw std::domain_error("kernel of h_p has unbalanced signature");

    const int total = 1 + 2 * m + 2 * static_cast<int>(plus.size());
    if (total != dim) throw std::domain_error("canonical basis does not span the tangent space");

    basis = Mat<K>(dim, dim);
    basis.col(0) = Vec<K>::Constant(dim, K(0));
    basis(0, 0) = K(1);
    signs.clear();
    int col = 1;
    for (const BuiltPair& p : pairs) {
      basis.col(col++) = p.x;
      basis.col(col++) = p.y;
      signs.push_back(p.sign);
    }
    const K is2 = Ops::inv_sqrt2();
    for (std::size_t k = 0; k < plus.size(); ++k) {
      basis.col(col++) = (plus[k] + minus[k]) * is2;
      basis.col(col++) = (plus[k] - minus[k]) * is2;
      signs.push_back(1);
    }
  }
};

template <class Ops>
void check_normal_form(VerificationReport& rep, const Mat<typename Ops::K>& basis,
                       const Mat<typename Ops::K>& g, const Mat<typename Ops::K>& h,
                       const Mat<typename Ops::K>& phi, int n, int m,
                       const std::vector<int>& signs) {
  using K = typename Ops::K;
  const int dim = 2 * n + 1;

  rep.add("basis has 2n+1 vectors and n signs",
          basis.rows() == dim && basis.cols() == dim && static_cast<int>(signs.size()) == n,
          "");

  auto inv = Ops::inverse(basis);
  rep.add("change of basis invertible", inv.has_value(),
          inv ? "" : "basis matrix is singular");
  if (!inv) return;

  Mat<K> gram = basis.transpose() * g * basis;
  bool gram_ok = true;
  std::string gram_w;
  for (int i = 0; i < dim && gram_ok; ++i)
    for (int j = 0; j < dim && gram_ok; ++j) {
      K expected(0);
      if (i == 0 && j == 0) expected = K(1);
      for (int k = 1; k <= n; ++k)
        if ((i == 2 * k - 1 && j == 2 * k) || (i == 2 * k && j == 2 * k - 1))
          expected = K(signs[k - 1]);
      if (!Ops::is_zero(gram(i, j) - expected)) {
        gram_ok = false;
        gram_w = "gram(" + std::to_string(i) + "," + std::to_string(j) +
                 ") = " + Ops::render(gram(i, j)) + ", expected " + Ops::render(expected);
      }
    }
  rep.add("Gram matrix in normal form", gram_ok, gram_w);

  Mat<K> hn = *inv * h * basis;
  bool h_ok = true;
  std::string h_w;
  int blocks = 0;
  for (int i = 0; i < dim && h_ok; ++i)
    for (int j = 0; j < dim && h_ok; ++j) {
      K expected(0);
      for (int k = 1; k <= m; ++k)
        if (i == 2 * k && j == 2 * k - 1) expected = K(1);
      if (!Ops::is_zero(hn(i, j) - expected)) {
        h_ok = false;
        h_w = "h(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
              Ops::render(hn(i, j)) + ", expected " + Ops::render(expected);
      }
    }
  for (int k = 1; k <= m; ++k)
    if (Ops::is_zero(hn(2 * k, 2 * k - 1) - K(1))) ++blocks;
  rep.add("h matrix has exactly m unit subdiagonal blocks", h_ok && blocks == m, h_w);
  rep.fact("blocks", std::to_string(blocks));

  const int rank_h = Ops::rank(h);
  rep.add("m = rank(h_p)", rank_h == m,
          rank_h == m ? "" : "rank(h_p) = " + std::to_string(rank_h) + ", m = " +
                                 std::to_string(m));
  const bool h_nonzero = rank_h > 0;
  rep.add("rank bounds", h_nonzero ? (1 <= m && m <= n) : m == 0,
          "m = " + std::to_string(m));

  bool signs_ok = true;
  for (int sgn_i : signs)
    if (sgn_i != 1 && sgn_i != -1) signs_ok = false;
  rep.add("signs are +1 or -1", signs_ok, "");

  if (n == 1 && m == 1) {
    // In dimension 3 with h_p != 0 the pair vectors are phi-eigenvectors:
    // phi X_1 = t X_1 and phi Y_1 = -t Y_1 for one sign t.
    bool eigen_ok = false;
    for (int t : {1, -1}) {
      Vec<K> dx = phi * Vec<K>(basis.col(1)) - basis.col(1) * K(t);
      Vec<K> dy = phi * Vec<K>(basis.col(2)) + basis.col(2) * K(t);
      bool ok = true;
      for (int i = 0; i < dim; ++i)
        if (!Ops::is_zero(dx(i)) || !Ops::is_zero(dy(i))) ok = false;
      if (ok) eigen_ok = true;
    }
    rep.add("phi_p X_1 = +/- X_1 and phi_p Y_1 = -/+ Y_1", eigen_ok, eigen_ok ? "" : "X_1 is not a phi_p eigenvector");
  }
}

std::string signs_to_string(const std::vector<int>& signs) {
  std::string out;
  for (int s : signs) {
    if (!out.empty()) out += ",";
    out += s > 0 ? "+1" : "-1";
  }
  return out;
}

}  // namespace

PointEvaluation evaluate_at_point(const ParacontactStructure& s,
                                  const std::map<std::string, Rat>& point) {
  PointEvaluation pe;
  pe.point = point;
  pe.dim = s.dim();
  pe.n = s.n();
  pe.labels = s.frame().labels();
  pe.g = s.g();
  pe.phi = s.phi();
  pe.eta = s.eta();
  pe.g_d = to_double(pe.g);
  pe.phi_d = to_double(pe.phi);
  pe.eta_d = to_double(pe.eta);

  std::map<std::string, double> dpoint;
  for (const auto& [name, value] : point) dpoint[name] = value.get_d();

  pe.h = Mat<AlgNum>::Constant(pe.dim, pe.dim, AlgNum(0));
  pe.h_d = Eigen::MatrixXd(pe.dim, pe.dim);
  for (int i = 0; i < pe.dim; ++i)
    for (int j = 0; j < pe.dim; ++j) {
      const Scalar& entry = s.h()(i, j);
      pe.h_d(i, j) = entry.evaluate(dpoint);
      if (auto exact = entry.evaluate_exact(point))
        pe.h(i, j) = *exact;
      else
        pe.exact = false;
    }
  return pe;
}

std::vector<std::pair<std::map<std::string, Rat>, int>> h_rank_profile(
    const ParacontactStructure& s, const std::vector<std::map<std::string, Rat>>& points) {
  std::vector<std::pair<std::map<std::string, Rat>, int>> out;
  for (const auto& point : points) {
    PointEvaluation pe = evaluate_at_point(s, point);
    const int rank = pe.exact ? rank_exact(pe.h) : rank_numeric(pe.h_d, kCanonicalTol);
    out.emplace_back(point, rank);
  }
  return out;
}

CanonicalBasisResult canonical_basis(const PointEvaluation& pe) {
  CanonicalBasisResult out;
  out.n = pe.n;
  out.notes.push_back(
      "isotropic correction uses v' = v - (g(v,v) / (2 g(v, h v))) h v; "
      "the denominator factor 2 is what makes g(v',v') = 0 exactly");

  if (pe.exact) {
    try {
      NormalFormEngine<ExactOps> engine{pe.dim, pe.g, pe.h, pe.eta};
      engine.run(out.basis, out.signs, out.m);
      out.exact = true;
      auto inv = inverse_exact(out.basis);
      if (!inv) throw std::domain_error("canonical basis is singular");
      out.gram = out.basis.transpose() * pe.g * out.basis;
      out.h_matrix = *inv * pe.h * out.basis;
      out.basis_d = to_double(out.basis);
      out.gram_d = to_double(out.gram);
      out.h_matrix_d = to_double(out.h_matrix);
    } catch (const ExactFallback&) {
      out.exact = false;
    }
  } else {
    out.exact = false;
  }

  if (!out.exact) {
    NormalFormEngine<NumericOps> engine{pe.dim, pe.g_d, pe.h_d, pe.eta_d};
    engine.run(out.basis_d, out.signs, out.m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(out.basis_d);
    if (!lu.isInvertible()) throw std::domain_error("canonical basis is singular");
    out.gram_d = out.basis_d.transpose() * pe.g_d * out.basis_d;
    out.h_matrix_d = lu.solve(pe.h_d * out.basis_d);
  }

  VerificationReport rep = verify_normal_form(out, pe);
  if (!rep.all_pass()) {
    const CheckResult* fail = rep.first_failure();
    throw std::domain_error("canonical basis postcondition failed: " + fail->name +
                            (fail->witness.empty() ? "" : " (" + fail->witness + ")"));
  }
  return out;
}

VerificationReport verify_normal_form(const CanonicalBasisResult& r, const PointEvaluation& pe) {
  VerificationReport rep;
  rep.fact("exact", r.exact ? "true" : "false");
  rep.fact("m", std::to_string(r.m));
  rep.fact("signs", signs_to_string(r.signs));
  if (r.exact && pe.exact)
    check_normal_form<ExactOps>(rep, r.basis, pe.g, pe.h, pe.phi, r.n, r.m, r.signs);
  else
    check_normal_form<NumericOps>(rep, r.basis_d, pe.g_d, pe.h_d, pe.phi_d, r.n, r.m, r.signs);
  return rep;
}

}  // namespace pkmu
