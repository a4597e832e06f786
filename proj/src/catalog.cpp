#include "pkmu/catalog.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace pkmu {
namespace {

// Basis layout for the algebra families: xi = 0, X_i = 2i-1, Y_i = 2i.
int X(int i) { return 2 * i - 1; }
int Y(int i) { return 2 * i; }

std::vector<std::string> pair_labels(int n) {
  std::vector<std::string> labels{"xi"};
  for (int i = 1; i <= n; ++i) {
    labels.push_back("X" + std::to_string(i));
    labels.push_back("Y" + std::to_string(i));
  }
  return labels;
}

using BracketTable = std::vector<std::vector<Vec<Scalar>>>;

BracketTable empty_brackets(int dim) {
  return BracketTable(dim, std::vector<Vec<Scalar>>(dim, Vec<Scalar>::Constant(dim, Scalar(0))));
}

// Adds c * e_k to [e_a, e_b], storing only the a < b slot (antisymmetrically).
void add_bracket(BracketTable& t, int a, int b, int k, const AlgNum& c) {
  if (a < b)
    t[a][b](k) += Scalar(c);
  else
    t[b][a](k) -= Scalar(c);
}

// g(xi, xi) = 1 and g(X_i, Y_i) = pair_signs[i-1], everything else zero.
Mat<AlgNum> pair_metric(int n, const std::vector<int>& pair_signs) {
  const int d = 2 * n + 1;
  Mat<AlgNum> g = Mat<AlgNum>::Constant(d, d, AlgNum(0));
  g(0, 0) = AlgNum(1);
  for (int i = 1; i <= n; ++i) {
    g(X(i), Y(i)) = AlgNum(pair_signs[i - 1]);
    g(Y(i), X(i)) = AlgNum(pair_signs[i - 1]);
  }
  return g;
}

// phi X_i = x_signs[i-1] X_i, phi Y_i = -x_signs[i-1] Y_i, phi xi = 0.
Mat<AlgNum> pair_phi(int n, const std::vector<int>& x_signs) {
  const int d = 2 * n + 1;
  Mat<AlgNum> phi = Mat<AlgNum>::Constant(d, d, AlgNum(0));
  for (int i = 1; i <= n; ++i) {
    phi(X(i), X(i)) = AlgNum(x_signs[i - 1]);
    phi(Y(i), Y(i)) = AlgNum(-x_signs[i - 1]);
  }
  return phi;
}

ParacontactStructure build_mu2_hm(long n, long m) {
  const int d = static_cast<int>(2 * n + 1);
  const AlgNum s2 = AlgNum::sqrt2();
  BracketTable t = empty_brackets(d);

  for (int i = 1; i <= m; ++i) add_bracket(t, 0, X(i), Y(i), AlgNum(1));
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      if (i == j) {
        add_bracket(t, X(i), Y(j), 0, AlgNum(2));
        add_bracket(t, X(i), Y(j), Y(static_cast<int>(m)), s2 * AlgNum(i == m ? 2 : 1));
      } else {
        if (i == m) add_bracket(t, X(i), Y(j), Y(j), s2);
        if (j == m) add_bracket(t, X(i), Y(j), Y(i), s2);
      }
    }
  for (int i = static_cast<int>(m) + 1; i <= n; ++i) {
    add_bracket(t, X(i), Y(i), 0, AlgNum(2));
    add_bracket(t, X(i), Y(i), Y(i), s2);
  }
  for (int i = 1; i <= m; ++i)
    for (int j = static_cast<int>(m) + 1; j <= n; ++j) add_bracket(t, X(i), Y(j), Y(i), s2);

  std::vector<int> plus(n, 1);
  FrameSpec frame = FrameSpec::constant_algebra(pair_labels(static_cast<int>(n)), t);
  return ParacontactStructure(frame, pair_metric(static_cast<int>(n), plus),
                              pair_phi(static_cast<int>(n), plus));
}

ParacontactStructure build_mu0_h1(long n) {
  const int d = static_cast<int>(2 * n + 1);
  BracketTable t = empty_brackets(d);

  add_bracket(t, 0, X(1), X(1), AlgNum(1));
  add_bracket(t, 0, X(1), Y(1), AlgNum(1));
  add_bracket(t, 0, Y(1), Y(1), AlgNum(-1));
  add_bracket(t, X(1), Y(1), 0, AlgNum(2));
  for (int i = 2; i <= n; ++i) {
    add_bracket(t, X(i), Y(i), 0, AlgNum(2));
    add_bracket(t, X(i), Y(i), Y(i), AlgNum(2));
    add_bracket(t, X(1), Y(i), X(1), AlgNum(1));
    add_bracket(t, X(1), Y(i), Y(1), AlgNum(1));
    add_bracket(t, Y(1), Y(i), Y(1), AlgNum(-1));
  }

  std::vector<int> signs(n, -1);
  signs[0] = 1;
  FrameSpec frame = FrameSpec::constant_algebra(pair_labels(static_cast<int>(n)), t);
  return ParacontactStructure(frame, pair_metric(static_cast<int>(n), signs),
                              pair_phi(static_cast<int>(n), signs));
}

ParacontactStructure build_mu0_hm(long n, long m) {
  const int d = static_cast<int>(2 * n + 1);
  const int mi = static_cast<int>(m);
  const AlgNum s2 = AlgNum::sqrt2();
  BracketTable t = empty_brackets(d);

  add_bracket(t, 0, X(1), X(1), AlgNum(1));
  add_bracket(t, 0, X(1), X(2), AlgNum(1));
  add_bracket(t, 0, X(1), Y(1), AlgNum(1));
  add_bracket(t, 0, Y(1), Y(1), AlgNum(-1));
  add_bracket(t, 0, Y(1), Y(2), AlgNum(1));
  add_bracket(t, 0, X(2), X(1), AlgNum(1));
  add_bracket(t, 0, X(2), X(2), AlgNum(1));
  add_bracket(t, 0, X(2), Y(2), AlgNum(1));
  add_bracket(t, 0, Y(2), Y(1), AlgNum(1));
  add_bracket(t, 0, Y(2), Y(2), AlgNum(-1));
  for (int i = 3; i <= mi; ++i) {
    add_bracket(t, 0, X(i), X(i), AlgNum(1));
    add_bracket(t, 0, X(i), Y(i), AlgNum(1));
    add_bracket(t, 0, Y(i), Y(i), AlgNum(-1));
  }

  add_bracket(t, X(1), X(2), X(1), s2);
  for (int j = 3; j <= mi; ++j) add_bracket(t, X(2), X(j), X(j), -s2);
  for (int i = 1; i <= mi; ++i)
    for (int j = mi + 1; j <= n; ++j) {
      if (i == 1) {
        add_bracket(t, X(i), X(j), X(1), s2);
        add_bracket(t, X(i), X(j), X(2), s2);
        add_bracket(t, X(i), X(j), Y(1), s2);
      } else if (i == 2) {
        add_bracket(t, X(i), X(j), X(1), s2);
        add_bracket(t, X(i), X(j), X(2), s2);
        add_bracket(t, X(i), X(j), Y(2), s2);
      } else {
        add_bracket(t, X(i), X(j), X(i), s2);
        add_bracket(t, X(i), X(j), Y(i), s2);
      }
    }

  add_bracket(t, Y(1), Y(2), Y(1), -s2);
  add_bracket(t, Y(1), Y(2), Y(2), s2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 3; j <= mi; ++j) add_bracket(t, Y(i), Y(j), Y(j), s2);

  add_bracket(t, X(1), Y(1), 0, AlgNum(2));
  add_bracket(t, X(1), Y(1), X(2), s2);
  add_bracket(t, X(1), Y(1), Y(2), s2);
  add_bracket(t, X(2), Y(2), 0, AlgNum(-2));
  add_bracket(t, X(2), Y(2), X(1), s2);
  for (int i = 3; i <= mi; ++i) {
    add_bracket(t, X(i), Y(i), 0, AlgNum(-2));
    add_bracket(t, X(i), Y(i), X(1), s2);
    add_bracket(t, X(i), Y(i), X(2), -s2);
    add_bracket(t, X(i), Y(i), Y(2), -s2);
  }
  for (int i = mi + 1; i <= n; ++i) {
    add_bracket(t, X(i), Y(i), 0, AlgNum(-2));
    add_bracket(t, X(i), Y(i), X(i), -s2);
  }

  add_bracket(t, X(1), Y(2), Y(1), s2);
  add_bracket(t, X(1), Y(2), X(2), s2);
  add_bracket(t, X(2), Y(1), X(1), s2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 3; j <= mi; ++j) add_bracket(t, X(i), Y(j), X(j), s2);
  for (int i = 3; i <= mi; ++i) add_bracket(t, X(i), Y(2), Y(i), s2);
  for (int i = mi + 1; i <= n; ++i)
    for (int j = 1; j <= mi; ++j) {
      if (j == 1) {
        add_bracket(t, X(i), Y(j), Y(1), s2);
        add_bracket(t, X(i), Y(j), Y(2), -s2);
      } else if (j == 2) {
        add_bracket(t, X(i), Y(j), Y(1), -s2);
        add_bracket(t, X(i), Y(j), Y(2), s2);
      } else {
        add_bracket(t, X(i), Y(j), Y(j), s2);
      }
    }

  std::vector<int> pair_signs(n, -1);
  pair_signs[0] = 1;
  std::vector<int> x_signs(n, 1);
  FrameSpec frame = FrameSpec::constant_algebra(pair_labels(static_cast<int>(n)), t);
  return ParacontactStructure(frame, pair_metric(static_cast<int>(n), pair_signs),
                              pair_phi(static_cast<int>(n), x_signs));
}

ParacontactStructure build_heisenberg(long n) {
  const int d = static_cast<int>(2 * n + 1);
  BracketTable t = empty_brackets(d);
  for (int i = 1; i <= n; ++i) add_bracket(t, X(i), Y(i), 0, AlgNum(2));

  std::vector<int> plus(n, 1);
  FrameSpec frame = FrameSpec::constant_algebra(pair_labels(static_cast<int>(n)), t);
  return ParacontactStructure(frame, pair_metric(static_cast<int>(n), plus),
                              pair_phi(static_cast<int>(n), plus));
}

Mat<AlgNum> r3_metric() {
  Mat<AlgNum> g = Mat<AlgNum>::Constant(3, 3, AlgNum(0));
  g(0, 0) = AlgNum(1);
  g(1, 2) = AlgNum(1);
  g(2, 1) = AlgNum(1);
  return g;
}

Mat<AlgNum> r3_phi() {
  Mat<AlgNum> phi = Mat<AlgNum>::Constant(3, 3, AlgNum(0));
  phi(1, 1) = AlgNum(1);
  phi(2, 2) = AlgNum(-1);
  return phi;
}

// xi = d/dz, e1 = d/dx + f(x,z) d/dy - 2y d/dz, e2 = d/dy.
ParacontactStructure build_r3(const Scalar& f) {
  std::vector<Vec<Scalar>> fields(3, Vec<Scalar>::Constant(3, Scalar(0)));
  fields[0](2) = Scalar(1);
  fields[1](0) = Scalar(1);
  fields[1](1) = f;
  fields[1](2) = Scalar(-2) * Scalar::coordinate("y");
  fields[2](1) = Scalar(1);
  FrameSpec frame = FrameSpec::coordinate({"xi", "e1", "e2"}, {"x", "y", "z"}, fields);
  return ParacontactStructure(frame, r3_metric(), r3_phi());
}

ParacontactStructure build_mu2_nonconstant() {
  return build_r3(Scalar::coordinate("x") * Scalar::coordinate("z"));
}

ParacontactStructure build_mu0_nonconstant() {
  return build_r3(Scalar::coordinate("x") * Scalar::exponential("z", rat(-2)));
}

long require_param(const std::map<std::string, long>& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end())
    throw std::invalid_argument("missing parameter '" + name + "'");
  return it->second;
}

void reject_unknown(const std::map<std::string, long>& params,
                    const std::vector<std::string>& known) {
  for (const auto& [key, value] : params) {
    (void)value;
    bool found = false;
    for (const auto& k : known)
      if (k == key) found = true;
    if (!found) throw std::invalid_argument("unknown parameter '" + key + "'");
  }
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"ex-mu2-hm-n",
       "Lie algebra family in dimension 2n+1 realizing kappa = -1, mu = 2 with rank(h) = m",
       {{"n", "n >= 1"}, {"m", "1 <= m <= n"}},
       "paracontact metric; h^2 = 0 with rank(h) = m; kappa = -1, mu = 2 (unique); "
       "not K-paracontact, not paraSasakian"},
      {"ex-mu0-h1",
       "Lie algebra family in dimension 2n+1 realizing kappa = -1, mu = 0 with rank(h) = 1",
       {{"n", "n >= 1"}},
       "paracontact metric; h^2 = 0 with rank(h) = 1; kappa = -1, mu = 0 (unique); "
       "satisfies R(X,Y)xi = -(eta(Y)X - eta(X)Y) without being paraSasakian"},
      {"ex-mu0-h2+",
       "Lie algebra family in dimension 2n+1 realizing kappa = -1, mu = 0 with rank(h) = m >= 2",
       {{"n", "n >= 2"}, {"m", "2 <= m <= n"}},
       "paracontact metric; h^2 = 0 with rank(h) = m; kappa = -1, mu = 0 (unique); "
       "satisfies R(X,Y)xi = -(eta(Y)X - eta(X)Y) without being paraSasakian"},
      {"ex-mu2-nonconstant",
       "coordinate frame on R^3 realizing kappa = -1, mu = 2 with h-rank 0 on the "
       "plane x = 0 and 1 elsewhere",
       {},
       "paracontact metric; kappa = -1, mu = 2 (unique); rank(h_p) = 0 iff x = 0; "
       "not paraSasakian"},
      {"ex-mu0-nonconstant",
       "coordinate frame on R^3 realizing kappa = -1, mu = 0 with h-rank 0 on the "
       "plane x = 0 and 1 elsewhere",
       {},
       "paracontact metric; kappa = -1, mu = 0 (unique); rank(h_p) = 0 iff x = 0; "
       "satisfies R(X,Y)xi = -(eta(Y)X - eta(X)Y) without being paraSasakian"},
      {"parasasakian-heisenberg",
       "Lie algebra family in dimension 2n+1 with h = 0: a paraSasakian structure",
       {{"n", "n >= 1"}},
       "paracontact metric; h = 0, K-paracontact, normal, paraSasakian; "
       "kappa = -1 with mu indeterminate"},
  };
  return entries;
}

ParacontactStructure instantiate_builtin(const std::string& name,
                                         const std::map<std::string, long>& params) {
  if (name == "ex-mu2-hm-n") {
    reject_unknown(params, {"n", "m"});
    long n = require_param(params, "n"), m = require_param(params, "m");
    if (n < 1) throw std::invalid_argument("ex-mu2-hm-n requires n >= 1");
    if (m < 1 || m > n) throw std::invalid_argument("ex-mu2-hm-n requires 1 <= m <= n");
    return build_mu2_hm(n, m);
  }
  if (name == "ex-mu0-h1") {
    reject_unknown(params, {"n"});
    long n = require_param(params, "n");
    if (n < 1) throw std::invalid_argument("ex-mu0-h1 requires n >= 1");
    return build_mu0_h1(n);
  }
  if (name == "ex-mu0-h2+") {
    reject_unknown(params, {"n", "m"});
    long n = require_param(params, "n"), m = require_param(params, "m");
    if (n < 2) throw std::invalid_argument("ex-mu0-h2+ requires n >= 2");
    if (m < 2 || m > n) throw std::invalid_argument("ex-mu0-h2+ requires 2 <= m <= n");
    return build_mu0_hm(n, m);
  }
  if (name == "ex-mu2-nonconstant") {
    reject_unknown(params, {});
    return build_mu2_nonconstant();
  }
  if (name == "ex-mu0-nonconstant") {
    reject_unknown(params, {});
    return build_mu0_nonconstant();
  }
  if (name == "parasasakian-heisenberg") {
    reject_unknown(params, {"n"});
    long n = require_param(params, "n");
    if (n < 1) throw std::invalid_argument("parasasakian-heisenberg requires n >= 1");
    return build_heisenberg(n);
  }
  std::string known;
  for (const auto& e : catalog_entries()) known += (known.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown builtin '" + name + "' (known: " + known + ")");
}

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string point_to_string(const std::map<std::string, Rat>& point) {
  if (point.empty()) return "(constant frame)";
  std::string out;
  for (const auto& [name, value] : point)
    out += (out.empty() ? "" : ", ") + name + " = " + rat_to_string(value);
  return out;
}

nlohmann::json point_to_json(const std::map<std::string, Rat>& point) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : point) j[name] = rat_to_string(value);
  return j;
}

nlohmann::json matrix_to_json(const Mat<AlgNum>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

nlohmann::json canonical_basis_json(const CanonicalBasisResult& r) {
  nlohmann::json j;
  j["exact"] = r.exact;
  j["n"] = r.n;
  j["m"] = r.m;
  j["signs"] = r.signs;
  if (r.exact) {
    j["basis"] = matrix_to_json(r.basis);
    j["gram"] = matrix_to_json(r.gram);
    j["h"] = matrix_to_json(r.h_matrix);
  } else {
    j["basis"] = matrix_to_json(r.basis_d);
    j["gram"] = matrix_to_json(r.gram_d);
    j["h"] = matrix_to_json(r.h_matrix_d);
  }
  j["notes"] = r.notes;
  return j;
}

std::string render_canonical_basis(const CanonicalBasisResult& r,
                                   const std::vector<std::string>& labels,
                                   const std::string& indent) {
  std::ostringstream os;
  os << indent << "m = " << r.m << ", signs:";
  for (int s : r.signs) os << " " << (s > 0 ? "+1" : "-1");
  os << (r.exact ? " (exact)" : " (numeric)") << "\n";
  // Canonical basis vectors are named xi, X1, Y1, ..., Xn, Yn.
  const std::vector<std::string> names = pair_labels(r.n);
  const int d = 2 * r.n + 1;
  for (int c = 0; c < d; ++c) {
    os << indent << names[static_cast<std::size_t>(c)] << " = ";
    if (r.exact) {
      Vec<Scalar> col = Vec<Scalar>::Constant(d, Scalar(0));
      for (int i = 0; i < d; ++i) col(i) = Scalar(r.basis(i, c));
      os << format_combination(col, labels);
    } else {
      bool first = true;
      for (int i = 0; i < d; ++i) {
        if (std::abs(r.basis_d(i, c)) <= kCanonicalTol) continue;
        os << (first ? "" : " + ") << r.basis_d(i, c) << "*" << labels[static_cast<std::size_t>(i)];
        first = false;
      }
      if (first) os << "0";
    }
    os << "\n";
  }
  return os.str();
}

bool FullReport::core_checks_pass() const {
  return almost_paracontact.all_pass() && compatibility.all_pass() && paracontact.all_pass() &&
         h_identities.all_pass() && killing.all_pass();
}

std::string FullReport::to_text() const {
  std::ostringstream os;
  os << "axioms:\n";
  os << "  almost paracontact:\n" << almost_paracontact.to_text("    ");
  os << "  compatibility:\n" << compatibility.to_text("    ");
  os << "  paracontact (d eta = Phi):\n" << paracontact.to_text("    ");
  os << "  h identities:\n" << h_identities.to_text("    ");
  os << "  Killing agreement:\n" << killing.to_text("    ");
  os << "normality:\n" << normality.to_text("  ");
  os << "curvature law R(X,Y) xi = -(eta(Y) X - eta(X) Y):\n"
     << parasasakian_curvature.to_text("  ");
  os << "flags:\n";
  os << "  paracontact metric: " << yes_no(paracontact_metric) << "\n";
  os << "  K-paracontact: " << yes_no(k_paracontact) << "\n";
  os << "  normal: " << yes_no(normal) << "\n";
  os << "  paraSasakian: " << yes_no(parasasakian) << "\n";
  os << "nullity:\n";
  os << "  status: " << to_string(nullity.status) << "\n";
  if (nullity.kappa) os << "  kappa: " << rat_to_string(*nullity.kappa) << "\n";
  if (nullity.mu) os << "  mu: " << rat_to_string(*nullity.mu) << "\n";
  os << "  h == 0: " << yes_no(nullity.h_zero) << "\n";
  for (const auto& w : nullity.residual_witnesses) os << "  witness: " << w << "\n";
  if (classification) {
    os << "  case: " << classification->tag << "\n";
    if (!classification->note.empty()) os << "  note: " << classification->note << "\n";
  }
  if (h_squared) os << "h^2 = (kappa + 1) phi^2:\n" << h_squared->to_text("  ");
  for (const auto& p : points) {
    os << "point " << point_to_string(p.point) << ":\n";
    os << "  rank(h_p) = " << p.rank << (p.exact ? "" : " (numeric)") << "\n";
    if (!p.error.empty()) {
      os << "  canonical basis: " << p.error << "\n";
      continue;
    }
    if (p.basis) os << render_canonical_basis(*p.basis, p.labels, "  ");
    if (p.normal_form) os << "  normal form:\n" << p.normal_form->to_text("    ");
  }
  return os.str();
}

nlohmann::json FullReport::to_json() const {
  nlohmann::json j;
  j["checks"]["almost_paracontact"] = almost_paracontact.to_json();
  j["checks"]["compatibility"] = compatibility.to_json();
  j["checks"]["paracontact"] = paracontact.to_json();
  j["checks"]["h_identities"] = h_identities.to_json();
  j["checks"]["killing_agreement"] = killing.to_json();
  j["checks"]["normality"] = normality.to_json();
  j["checks"]["reeb_curvature_law"] = parasasakian_curvature.to_json();
  j["flags"] = {{"paracontact_metric", paracontact_metric},
                {"k_paracontact", k_paracontact},
                {"normal", normal},
                {"parasasakian", parasasakian}};
  nlohmann::json nj;
  nj["status"] = to_string(nullity.status);
  nj["h_zero"] = nullity.h_zero;
  nj["kappa"] = nullity.kappa ? nlohmann::json(rat_to_string(*nullity.kappa)) : nullptr;
  nj["mu"] = nullity.mu ? nlohmann::json(rat_to_string(*nullity.mu)) : nullptr;
  nj["witnesses"] = nullity.residual_witnesses;
  nj["case"] = classification ? nlohmann::json(classification->tag) : nullptr;
  nj["note"] = classification && !classification->note.empty()
                   ? nlohmann::json(classification->note)
                   : nullptr;
  j["nullity"] = nj;
  j["h_squared"] = h_squared ? h_squared->to_json() : nlohmann::json(nullptr);
  j["points"] = nlohmann::json::array();
  for (const auto& p : points) {
    nlohmann::json pj;
    pj["point"] = point_to_json(p.point);
    pj["rank"] = p.rank;
    pj["exact"] = p.exact;
    pj["canonical"] = p.basis ? canonical_basis_json(*p.basis) : nlohmann::json(nullptr);
    pj["normal_form"] = p.normal_form ? p.normal_form->to_json() : nlohmann::json(nullptr);
    pj["error"] = p.error;
    j["points"].push_back(pj);
  }
  return j;
}

FullReport run_full_report(const ParacontactStructure& s,
                           const std::vector<std::map<std::string, Rat>>& points) {
  FullReport out;
  out.almost_paracontact = verify_almost_paracontact(s);
  out.compatibility = verify_compatibility(s);
  out.paracontact = verify_paracontact(s);
  out.h_identities = verify_h_identities(s);

  KParacontactResult kp = is_K_paracontact(s);
  out.killing = kp.report;
  out.k_paracontact = kp.value;

  out.normality = nijenhuis_normality(s);
  out.parasasakian_curvature = check_paraSasakian_curvature(s);

  out.paracontact_metric = out.almost_paracontact.all_pass() && out.compatibility.all_pass() &&
                           out.paracontact.all_pass();
  out.normal = out.normality.all_pass();
  out.parasasakian = out.paracontact.all_pass() && out.normal;

  out.nullity = solve_kappa_mu(s);
  if (out.nullity.kappa) out.h_squared = check_h_squared(s, *out.nullity.kappa);
  if (out.nullity.status != NullityStatus::inconsistent)
    out.classification = classify_case(out.nullity);

  for (const auto& pt : points) {
    PointReport pr;
    pr.point = pt;
    pr.labels = s.frame().labels();
    try {
      PointEvaluation pe = evaluate_at_point(s, pt);
      pr.exact = pe.exact;
      pr.rank = pe.exact ? rank_exact(pe.h) : rank_numeric(pe.h_d, kCanonicalTol);
      CanonicalBasisResult cb = canonical_basis(pe);
      pr.normal_form = verify_normal_form(cb, pe);
      pr.basis = std::move(cb);
    } catch (const std::exception& e) {
      pr.error = e.what();
    }
    out.points.push_back(std::move(pr));
  }
  return out;
}

}  // namespace pkmu
