#include "pkmu/dsl.hpp"

#include "pkmu/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace pkmu {
namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != "sqrt2" && s != "exp";
}

std::vector<std::string> tokens_of(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// True when `line` starts with the keyword as a whole word.
bool starts_with_word(const std::string& line, const std::string& word) {
  if (line.rfind(word, 0) != 0) return false;
  return line.size() == word.size() ||
         std::isspace(static_cast<unsigned char>(line[word.size()]));
}

// One `lhs = rhs` statement with source position of the rhs for error columns.
struct Statement {
  int line = 0;
  std::vector<std::string> lhs;
  std::string rhs;
  int rhs_col = 0;  // 1-based column of the first rhs character
};

struct Document {
  std::optional<long> dim;
  int dim_line = 0;
  std::vector<std::string> chart;
  int chart_line = 0;
  std::vector<std::string> basis;
  int basis_line = 0;
  std::vector<Statement> brackets, vectors, metric, phi, eta;
  bool frame_seen = false, frame_nonempty = false, eta_seen = false;
};

Statement split_statement(const std::string& text, int line_no, std::size_t keyword_len,
                          int expected_lhs) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos) throw DocumentError("expected '='", line_no);
  Statement st;
  st.line = line_no;
  st.lhs = tokens_of(text.substr(keyword_len, eq - keyword_len));
  st.rhs = text.substr(eq + 1);
  st.rhs_col = static_cast<int>(eq) + 2;
  if (static_cast<int>(st.lhs.size()) != expected_lhs)
    throw DocumentError("expected " + std::to_string(expected_lhs) + " label(s) before '='",
                        line_no);
  for (const auto& l : st.lhs)
    if (!is_identifier(l)) throw DocumentError("invalid label '" + l + "'", line_no);
  return st;
}

Document scan(const std::string& text) {
  Document doc;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  std::string section;
  std::vector<std::string> seen_sections;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::size_t last = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line.back() != ']') throw DocumentError("unterminated section header", line_no);
      const std::string name = line.substr(1, line.size() - 2);
      if (name != "dim" && name != "chart" && name != "frame" && name != "metric" &&
          name != "phi" && name != "eta")
        throw DocumentError("unknown section [" + name + "]", line_no);
      if (std::find(seen_sections.begin(), seen_sections.end(), name) != seen_sections.end())
        throw DocumentError("duplicate section [" + name + "]", line_no);
      seen_sections.push_back(name);
      section = name;
      if (section == "frame") doc.frame_seen = true;
      if (section == "eta") doc.eta_seen = true;
      continue;
    }
    if (section.empty()) throw DocumentError("content before the first section header", line_no);

    if (section == "dim") {
      if (doc.dim) throw DocumentError("duplicate dimension", line_no);
      try {
        std::size_t used = 0;
        doc.dim = std::stol(line, &used);
        if (used != line.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw DocumentError("expected an integer dimension, got '" + line + "'", line_no);
      }
      doc.dim_line = line_no;
    } else if (section == "chart") {
      if (!doc.chart.empty()) throw DocumentError("duplicate chart line", line_no);
      doc.chart = tokens_of(line);
      doc.chart_line = line_no;
      for (const auto& c : doc.chart)
        if (!is_identifier(c)) throw DocumentError("invalid coordinate name '" + c + "'", line_no);
    } else if (section == "frame") {
      doc.frame_nonempty = true;
      if (starts_with_word(line, "basis")) {
        if (!doc.basis.empty()) throw DocumentError("duplicate basis line", line_no);
        doc.basis = tokens_of(line.substr(5));
        doc.basis_line = line_no;
        if (doc.basis.empty()) throw DocumentError("empty basis line", line_no);
        for (const auto& l : doc.basis)
          if (!is_identifier(l)) throw DocumentError("invalid label '" + l + "'", line_no);
      } else if (starts_with_word(line, "bracket")) {
        doc.brackets.push_back(split_statement(line, line_no, 7, 2));
      } else if (starts_with_word(line, "vector")) {
        doc.vectors.push_back(split_statement(line, line_no, 6, 1));
      } else {
        throw DocumentError("expected a basis, bracket or vector line", line_no);
      }
    } else if (section == "metric") {
      if (!starts_with_word(line, "g"))
        throw DocumentError("expected a 'g a b = ...' line", line_no);
      doc.metric.push_back(split_statement(line, line_no, 1, 2));
    } else if (section == "phi") {
      if (!starts_with_word(line, "phi"))
        throw DocumentError("expected a 'phi a = ...' line", line_no);
      doc.phi.push_back(split_statement(line, line_no, 3, 1));
    } else {
      if (!starts_with_word(line, "eta"))
        throw DocumentError("expected an 'eta a = ...' line", line_no);
      doc.eta.push_back(split_statement(line, line_no, 3, 1));
    }
  }
  return doc;
}

Scalar parse_rhs(const Statement& st, const std::vector<std::string>& symbols) {
  try {
    return parse_scalar(st.rhs, symbols);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    const std::size_t suffix = msg.rfind(" (at position ");
    if (suffix != std::string::npos) msg.erase(suffix);
    throw DocumentError(msg, st.line, st.rhs_col + static_cast<int>(e.position));
  }
}

// Decomposes a combination that must be linear in the symbols: every term
// carries exactly one symbol, to the first power, outside any exponential.
// Returns the per-symbol coefficient Scalars.
std::vector<Scalar> split_linear(const Scalar& s, const std::vector<std::string>& symbols,
                                 int line_no) {
  std::vector<std::vector<Monomial>> parts(symbols.size());
  for (const Monomial& t : s.terms()) {
    std::string found;
    for (const auto& [name, rate] : t.exp_rates) {
      (void)rate;
      if (std::find(symbols.begin(), symbols.end(), name) != symbols.end())
        throw DocumentError("'" + name + "' may not appear inside exp()", line_no);
    }
    for (const auto& [name, power] : t.powers) {
      if (std::find(symbols.begin(), symbols.end(), name) == symbols.end()) continue;
      if (!found.empty())
        throw DocumentError("term mixes '" + found + "' and '" + name + "'", line_no);
      if (power != 1)
        throw DocumentError("'" + name + "' may only appear to the first power", line_no);
      found = name;
    }
    if (found.empty())
      throw DocumentError("term without a basis factor: " + to_string(Scalar::from_terms({t})),
                          line_no);
    Monomial c = t;
    c.powers.erase(found);
    const auto idx = std::find(symbols.begin(), symbols.end(), found) - symbols.begin();
    parts[static_cast<std::size_t>(idx)].push_back(std::move(c));
  }
  std::vector<Scalar> out;
  out.reserve(symbols.size());
  for (auto& p : parts) out.push_back(Scalar::from_terms(std::move(p)));
  return out;
}

AlgNum constant_rhs(const Statement& st) {
  const Scalar s = parse_rhs(st, {});
  return s.is_zero() ? AlgNum(0) : s.constant_value();
}

int label_index(const std::vector<std::string>& labels, const std::string& name, int line_no) {
  const auto it = std::find(labels.begin(), labels.end(), name);
  if (it == labels.end()) throw DocumentError("unknown frame label '" + name + "'", line_no);
  return static_cast<int>(it - labels.begin());
}

}  // namespace

ParacontactStructure load_document(const std::string& text) {
  Document doc = scan(text);

  if (!doc.dim) throw DocumentError("missing [dim] section");
  if (!doc.frame_seen || !doc.frame_nonempty) throw DocumentError("missing or empty [frame] section");
  if (!doc.brackets.empty() && !doc.vectors.empty())
    throw DocumentError("a frame is either bracket lines or vector lines, not both",
                        doc.vectors.front().line);

  const bool coordinate_kind = !doc.vectors.empty() || !doc.chart.empty();
  if (coordinate_kind && doc.vectors.empty())
    throw DocumentError("a [chart] section requires vector lines in [frame]", doc.chart_line);
  if (coordinate_kind && doc.chart.empty())
    throw DocumentError("vector lines require a [chart] section", doc.vectors.front().line);

  // Labels: the basis line when present, otherwise the vector-line order.
  std::vector<std::string> labels = doc.basis;
  if (labels.empty()) {
    if (doc.vectors.empty()) throw DocumentError("an abstract frame requires a basis line");
    for (const auto& st : doc.vectors) labels.push_back(st.lhs[0]);
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw DocumentError("duplicate frame label '" + labels[i] + "'",
                            doc.basis.empty() ? doc.vectors[j].line : doc.basis_line);

  // xi is reserved and bound to index 0.
  const auto xi_it = std::find(labels.begin(), labels.end(), "xi");
  if (xi_it == labels.end()) throw DocumentError("the frame must contain the reserved label 'xi'");
  std::rotate(labels.begin(), xi_it, xi_it + 1);

  const int d = static_cast<int>(labels.size());
  if (*doc.dim != d)
    throw DocumentError("dimension " + std::to_string(*doc.dim) + " does not match the " +
                            std::to_string(d) + " frame labels",
                        doc.dim_line);

  for (const auto& c : doc.chart) {
    if (std::find(labels.begin(), labels.end(), c) != labels.end())
      throw DocumentError("'" + c + "' is both a coordinate and a frame label", doc.chart_line);
    for (std::size_t i = 0; i < doc.chart.size(); ++i)
      if ("d" + doc.chart[i] == c)
        throw DocumentError("coordinate '" + c + "' collides with the d" + doc.chart[i] +
                                " basis one-form",
                            doc.chart_line);
  }
  for (std::size_t i = 0; i < doc.chart.size(); ++i)
    for (std::size_t j = i + 1; j < doc.chart.size(); ++j)
      if (doc.chart[i] == doc.chart[j])
        throw DocumentError("duplicate coordinate '" + doc.chart[i] + "'", doc.chart_line);

  FrameSpec frame = [&] {
    if (coordinate_kind) {
      if (static_cast<int>(doc.chart.size()) != d)
        throw DocumentError("a coordinate frame needs exactly one coordinate per frame vector",
                            doc.chart_line);
      std::vector<std::string> dsyms;
      std::vector<std::string> rhs_symbols = doc.chart;
      for (const auto& c : doc.chart) {
        dsyms.push_back("d" + c);
        rhs_symbols.push_back("d" + c);
      }
      std::vector<Vec<Scalar>> fields(static_cast<std::size_t>(d),
                                      Vec<Scalar>::Constant(d, Scalar(0)));
      std::vector<bool> given(static_cast<std::size_t>(d), false);
      for (const auto& st : doc.vectors) {
        const int i = label_index(labels, st.lhs[0], st.line);
        if (given[static_cast<std::size_t>(i)])
          throw DocumentError("duplicate vector line for '" + st.lhs[0] + "'", st.line);
        given[static_cast<std::size_t>(i)] = true;
        const std::vector<Scalar> comps = split_linear(parse_rhs(st, rhs_symbols), dsyms, st.line);
        for (int c = 0; c < d; ++c) fields[static_cast<std::size_t>(i)](c) = comps[static_cast<std::size_t>(c)];
      }
      for (int i = 0; i < d; ++i)
        if (!given[static_cast<std::size_t>(i)])
          throw DocumentError("no vector line for frame label '" + labels[static_cast<std::size_t>(i)] + "'");
      try {
        return FrameSpec::coordinate(labels, doc.chart, std::move(fields));
      } catch (const std::exception& e) {
        throw DocumentError(std::string("frame rejected: ") + e.what());
      }
    }
    std::vector<std::vector<Vec<Scalar>>> table(
        static_cast<std::size_t>(d),
        std::vector<Vec<Scalar>>(static_cast<std::size_t>(d), Vec<Scalar>::Constant(d, Scalar(0))));
    std::vector<std::vector<bool>> given(static_cast<std::size_t>(d),
                                         std::vector<bool>(static_cast<std::size_t>(d), false));
    for (const auto& st : doc.brackets) {
      const int a = label_index(labels, st.lhs[0], st.line);
      const int b = label_index(labels, st.lhs[1], st.line);
      if (a == b) throw DocumentError("bracket of '" + st.lhs[0] + "' with itself", st.line);
      const int lo = std::min(a, b), hi = std::max(a, b);
      if (given[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)])
        throw DocumentError("duplicate bracket for (" + st.lhs[0] + ", " + st.lhs[1] + ")",
                            st.line);
      given[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] = true;
      const std::vector<Scalar> comps = split_linear(parse_rhs(st, labels), labels, st.line);
      for (int k = 0; k < d; ++k) {
        if (!comps[static_cast<std::size_t>(k)].is_constant())
          throw DocumentError("bracket coefficients must be constant", st.line);
        table[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)](k) =
            a < b ? comps[static_cast<std::size_t>(k)] : -comps[static_cast<std::size_t>(k)];
      }
    }
    return FrameSpec::constant_algebra(labels, table);
  }();

  if (frame.kind() == FrameKind::constant_algebra) {
    const auto violations = frame.jacobi_violations();
    if (!violations.empty()) {
      const auto [i, j, k] = violations.front();
      throw DocumentError("Jacobi identity fails on (" + labels[static_cast<std::size_t>(i)] +
                          ", " + labels[static_cast<std::size_t>(j)] + ", " +
                          labels[static_cast<std::size_t>(k)] + ")");
    }
  }

  Mat<AlgNum> g = Mat<AlgNum>::Constant(d, d, AlgNum(0));
  std::vector<std::vector<bool>> g_given(static_cast<std::size_t>(d),
                                         std::vector<bool>(static_cast<std::size_t>(d), false));
  for (const auto& st : doc.metric) {
    const int a = label_index(labels, st.lhs[0], st.line);
    const int b = label_index(labels, st.lhs[1], st.line);
    const int lo = std::min(a, b), hi = std::max(a, b);
    if (g_given[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)])
      throw DocumentError("duplicate metric entry for (" + st.lhs[0] + ", " + st.lhs[1] + ")",
                          st.line);
    g_given[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] = true;
    const AlgNum v = constant_rhs(st);
    g(a, b) = v;
    g(b, a) = v;
  }

  Mat<AlgNum> phi = Mat<AlgNum>::Constant(d, d, AlgNum(0));
  std::vector<bool> phi_given(static_cast<std::size_t>(d), false);
  for (const auto& st : doc.phi) {
    const int i = label_index(labels, st.lhs[0], st.line);
    if (phi_given[static_cast<std::size_t>(i)])
      throw DocumentError("duplicate phi line for '" + st.lhs[0] + "'", st.line);
    phi_given[static_cast<std::size_t>(i)] = true;
    const std::vector<Scalar> comps = split_linear(parse_rhs(st, labels), labels, st.line);
    for (int k = 0; k < d; ++k) {
      if (!comps[static_cast<std::size_t>(k)].is_constant())
        throw DocumentError("phi coefficients must be constant", st.line);
      phi(k, i) = comps[static_cast<std::size_t>(k)].is_zero()
                      ? AlgNum(0)
                      : comps[static_cast<std::size_t>(k)].constant_value();
    }
  }

  auto structure = [&] {
    try {
      return ParacontactStructure(std::move(frame), std::move(g), std::move(phi));
    } catch (const std::exception& e) {
      throw DocumentError(std::string("structure rejected: ") + e.what());
    }
  }();

  if (doc.eta_seen) {
    Vec<AlgNum> eta_given = Vec<AlgNum>::Constant(d, AlgNum(0));
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (const auto& st : doc.eta) {
      const int i = label_index(labels, st.lhs[0], st.line);
      if (seen[static_cast<std::size_t>(i)])
        throw DocumentError("duplicate eta line for '" + st.lhs[0] + "'", st.line);
      seen[static_cast<std::size_t>(i)] = true;
      eta_given(i) = constant_rhs(st);
    }
    for (int i = 0; i < d; ++i)
      if (eta_given(i) != structure.eta()(i))
        throw DocumentError("eta(" + labels[static_cast<std::size_t>(i)] + ") = " +
                            to_string(eta_given(i)) + " but g(" + labels[static_cast<std::size_t>(i)] +
                            ", xi) = " + to_string(structure.eta()(i)));
  }

  VerificationReport axioms = verify_almost_paracontact(structure);
  if (!axioms.all_pass()) {
    const CheckResult* f = axioms.first_failure();
    throw DocumentError("almost paracontact axiom failed: " + f->name +
                        (f->witness.empty() ? "" : " (" + f->witness + ")"));
  }
  return structure;
}

std::string serialize(const ParacontactStructure& s) {
  const FrameSpec& f = s.frame();
  const std::vector<std::string>& labels = f.labels();
  const int d = f.dim();
  std::ostringstream os;

  os << "[dim]\n" << d << "\n\n";
  if (f.kind() == FrameKind::coordinate) {
    os << "[chart]\n";
    for (std::size_t c = 0; c < f.chart().size(); ++c) os << (c ? " " : "") << f.chart()[c];
    os << "\n\n";
  }

  os << "[frame]\nbasis";
  for (const auto& l : labels) os << " " << l;
  os << "\n";
  if (f.kind() == FrameKind::coordinate) {
    std::vector<std::string> dsyms;
    for (const auto& c : f.chart()) dsyms.push_back("d" + c);
    for (int i = 0; i < d; ++i)
      os << "vector " << labels[static_cast<std::size_t>(i)] << " = "
         << format_combination(f.fields()[static_cast<std::size_t>(i)], dsyms) << "\n";
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        if (is_zero_vec(f.bracket(i, j))) continue;
        os << "bracket " << labels[static_cast<std::size_t>(i)] << " "
           << labels[static_cast<std::size_t>(j)] << " = "
           << format_combination(f.bracket(i, j), labels) << "\n";
      }
  }

  os << "\n[metric]\n";
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      if (!s.g()(i, j).is_zero())
        os << "g " << labels[static_cast<std::size_t>(i)] << " "
           << labels[static_cast<std::size_t>(j)] << " = " << to_string(s.g()(i, j)) << "\n";

  os << "\n[phi]\n";
  for (int i = 0; i < d; ++i) {
    Vec<Scalar> col = Vec<Scalar>::Constant(d, Scalar(0));
    bool nonzero = false;
    for (int k = 0; k < d; ++k) {
      col(k) = Scalar(s.phi()(k, i));
      nonzero = nonzero || !s.phi()(k, i).is_zero();
    }
    if (nonzero)
      os << "phi " << labels[static_cast<std::size_t>(i)] << " = "
         << format_combination(col, labels) << "\n";
  }

  os << "\n[eta]\n";
  for (int i = 0; i < d; ++i)
    if (!s.eta()(i).is_zero())
      os << "eta " << labels[static_cast<std::size_t>(i)] << " = " << to_string(s.eta()(i))
         << "\n";
  return os.str();
}

}  // namespace pkmu
