#include "pkmu/cli.hpp"

#include "pkmu/catalog.hpp"
#include "pkmu/deformation.hpp"
#include "pkmu/dsl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkmu {
namespace {

struct InputOptions {
  std::string builtin, file;
  std::vector<std::string> params;
  std::vector<std::string> points;
  std::string format = "text";
};

void add_input_flags(CLI::App* cmd, InputOptions& in, bool with_points) {
  auto* b = cmd->add_option("--builtin", in.builtin, "catalog entry name");
  auto* f = cmd->add_option("--file", in.file, "structure document path");
  b->excludes(f);
  f->excludes(b);
  cmd->add_option("--param", in.params, "builtin parameter k=v (repeatable)");
  if (with_points) cmd->add_option("--point", in.points, "chart point x,y,z (repeatable)");
  cmd->add_option("--format", in.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

std::map<std::string, long> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, long> out;
  for (const auto& p : raw) {
    const std::size_t eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects k=v, got '" + p + "'");
    const std::string key = p.substr(0, eq);
    const std::string value = p.substr(eq + 1);
    std::size_t used = 0;
    long v = 0;
    bool bad = false;
    try {
      v = std::stol(value, &used);
    } catch (const std::exception&) {
      bad = true;
    }
    if (bad || used != value.size())
      throw std::invalid_argument("--param value must be an integer: '" + p + "'");
    if (out.count(key)) throw std::invalid_argument("duplicate --param " + key);
    out[key] = v;
  }
  return out;
}

ParacontactStructure resolve_input(const InputOptions& in) {
  if (in.builtin.empty() == in.file.empty())
    throw std::invalid_argument("exactly one of --builtin or --file is required");
  if (!in.builtin.empty()) return instantiate_builtin(in.builtin, parse_params(in.params));
  if (!in.params.empty()) throw std::invalid_argument("--param applies only to --builtin");
  std::ifstream is(in.file);
  if (!is) throw std::invalid_argument("cannot open file: " + in.file);
  std::ostringstream buf;
  buf << is.rdbuf();
  return load_document(buf.str());
}

// Parses the repeated --point values against the structure's chart. When no
// point is given and `default_origin` holds, evaluates at all-zero coordinates.
std::vector<std::map<std::string, Rat>> resolve_points(const ParacontactStructure& s,
                                                       const std::vector<std::string>& raw,
                                                       bool default_origin) {
  const std::vector<std::string>& chart = s.frame().chart();
  std::vector<std::map<std::string, Rat>> out;
  for (const auto& text : raw) {
    if (chart.empty())
      throw std::invalid_argument("--point given but the frame has no chart");
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream is(text);
    while (std::getline(is, piece, ',')) parts.push_back(piece);
    if (parts.size() != chart.size())
      throw std::invalid_argument("--point needs " + std::to_string(chart.size()) +
                                  " coordinates, got '" + text + "'");
    std::map<std::string, Rat> point;
    for (std::size_t c = 0; c < chart.size(); ++c) {
      const std::optional<Rat> v = parse_rat(parts[c]);
      if (!v) throw std::invalid_argument("not a rational coordinate: '" + parts[c] + "'");
      point[chart[c]] = *v;
    }
    out.push_back(std::move(point));
  }
  if (out.empty() && default_origin) {
    std::map<std::string, Rat> origin;
    for (const auto& c : chart) origin[c] = Rat(0);
    out.push_back(std::move(origin));
  }
  return out;
}

bool structured(const InputOptions& in) { return in.format == "structured"; }

void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

std::string point_text(const std::map<std::string, Rat>& point) {
  if (point.empty()) return "(constant frame)";
  std::string out;
  for (const auto& [name, value] : point)
    out += (out.empty() ? "" : ", ") + name + " = " + rat_to_string(value);
  return out;
}

nlohmann::json point_json(const std::map<std::string, Rat>& point) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : point) j[name] = rat_to_string(value);
  return j;
}

nlohmann::json nullity_json(const NullityResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["h_zero"] = r.h_zero;
  j["kappa"] = r.kappa ? nlohmann::json(rat_to_string(*r.kappa)) : nullptr;
  j["mu"] = r.mu ? nlohmann::json(rat_to_string(*r.mu)) : nullptr;
  j["case"] = r.case_tag;
  j["witnesses"] = r.residual_witnesses;
  return j;
}

int cmd_list(const InputOptions& in, std::ostream& out) {
  if (structured(in)) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : catalog_entries()) {
      nlohmann::json ej;
      ej["name"] = e.name;
      ej["description"] = e.description;
      ej["params"] = nlohmann::json::array();
      for (const auto& p : e.params) ej["params"].push_back({{"name", p.name}, {"constraint", p.constraint}});
      ej["expected"] = e.expected;
      j.push_back(ej);
    }
    emit_json(out, j);
    return 0;
  }
  for (const auto& e : catalog_entries()) {
    out << e.name << "\n  " << e.description << "\n";
    if (!e.params.empty()) {
      out << "  parameters:";
      for (std::size_t i = 0; i < e.params.size(); ++i)
        out << (i ? ", " : " ") << e.params[i].name << " (" << e.params[i].constraint << ")";
      out << "\n";
    }
    out << "  expected: " << e.expected << "\n";
  }
  return 0;
}

int cmd_verify(const InputOptions& in, std::ostream& out) {
  const ParacontactStructure s = resolve_input(in);
  const VerificationReport almost = verify_almost_paracontact(s);
  const VerificationReport compat = verify_compatibility(s);
  const VerificationReport para = verify_paracontact(s);
  const VerificationReport ident = verify_h_identities(s);
  const bool ok =
      almost.all_pass() && compat.all_pass() && para.all_pass() && ident.all_pass();
  if (structured(in)) {
    nlohmann::json j;
    j["almost_paracontact"] = almost.to_json();
    j["compatibility"] = compat.to_json();
    j["paracontact"] = para.to_json();
    j["h_identities"] = ident.to_json();
    j["all_pass"] = ok;
    emit_json(out, j);
  } else {
    out << "almost paracontact:\n" << almost.to_text("  ");
    out << "compatibility:\n" << compat.to_text("  ");
    out << "paracontact (d eta = Phi):\n" << para.to_text("  ");
    out << "h identities:\n" << ident.to_text("  ");
    out << "result: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_classify(const InputOptions& in, std::ostream& out) {
  const ParacontactStructure s = resolve_input(in);
  const NullityResult r = solve_kappa_mu(s);
  std::optional<VerificationReport> hsq;
  if (r.kappa) hsq = check_h_squared(s, *r.kappa);
  const bool ok =
      r.status != NullityStatus::inconsistent && (!hsq || hsq->all_pass());
  if (structured(in)) {
    nlohmann::json j;
    j["nullity"] = nullity_json(r);
    j["h_squared"] = hsq ? hsq->to_json() : nlohmann::json(nullptr);
    emit_json(out, j);
  } else {
    out << "status: " << to_string(r.status) << "\n";
    if (r.status == NullityStatus::unique)
      out << "(kappa, mu) = (" << rat_to_string(*r.kappa) << ", " << rat_to_string(*r.mu)
          << ")\n";
    else if (r.status == NullityStatus::mu_indeterminate)
      out << "(kappa, mu) = (" << rat_to_string(*r.kappa) << ", mu indeterminate)\n";
    out << "h == 0: " << (r.h_zero ? "yes" : "no") << "\n";
    out << "case: " << r.case_tag << "\n";
    for (const auto& w : r.residual_witnesses) out << "witness: " << w << "\n";
    if (hsq) out << "h^2 = (kappa + 1) phi^2:\n" << hsq->to_text("  ");
  }
  return ok ? 0 : 1;
}

int cmd_canonical(const InputOptions& in, std::ostream& out) {
  const ParacontactStructure s = resolve_input(in);
  const auto points = resolve_points(s, in.points, true);
  bool ok = true;
  nlohmann::json pj = nlohmann::json::array();
  for (const auto& point : points) {
    if (!structured(in)) out << "point " << point_text(point) << ":\n";
    nlohmann::json entry;
    entry["point"] = point_json(point);
    try {
      const PointEvaluation pe = evaluate_at_point(s, point);
      const int rank = pe.exact ? rank_exact(pe.h) : rank_numeric(pe.h_d, kCanonicalTol);
      const CanonicalBasisResult basis = canonical_basis(pe);
      const VerificationReport nf = verify_normal_form(basis, pe);
      ok = ok && nf.all_pass();
      if (structured(in)) {
        entry["rank"] = rank;
        entry["canonical"] = canonical_basis_json(basis);
        entry["normal_form"] = nf.to_json();
        entry["error"] = "";
      } else {
        out << "  rank(h_p) = " << rank << "\n";
        out << render_canonical_basis(basis, s.frame().labels(), "  ");
        out << "  normal form:\n" << nf.to_text("    ");
      }
    } catch (const std::exception& e) {
      ok = false;
      if (structured(in)) {
        entry["canonical"] = nullptr;
        entry["error"] = e.what();
      } else {
        out << "  canonical basis: " << e.what() << "\n";
      }
    }
    pj.push_back(entry);
  }
  if (structured(in)) emit_json(out, pj);
  return ok ? 0 : 1;
}

int cmd_deform(const InputOptions& in, const std::string& c_text, bool check,
               std::ostream& out) {
  const ParacontactStructure s = resolve_input(in);
  const std::optional<Rat> c = parse_rat(c_text);
  if (!c) throw std::invalid_argument("--c must be rational, got '" + c_text + "'");
  if (sgn(*c) == 0) throw std::invalid_argument("--c must be nonzero");

  const ParacontactStructure deformed = deform(s, AlgNum(*c));
  const NullityResult before = solve_kappa_mu(s);
  std::optional<std::pair<Rat, Rat>> law;
  if (before.status == NullityStatus::unique)
    law = deform_kappa_mu(*before.kappa, *before.mu, *c);

  std::optional<VerificationReport> consistency;
  std::optional<VerificationReport> axioms;
  bool ok = true;
  if (check) {
    consistency = verify_deformation_consistency(s, *c);
    VerificationReport ax;
    ax.merge(verify_almost_paracontact(deformed));
    ax.merge(verify_compatibility(deformed));
    ax.merge(verify_paracontact(deformed));
    ax.merge(verify_h_identities(deformed));
    axioms = ax;
    ok = consistency->all_pass() && axioms->all_pass();
  }

  if (structured(in)) {
    nlohmann::json j;
    j["c"] = rat_to_string(*c);
    j["document"] = serialize(deformed);
    j["kappa_prime"] = law ? nlohmann::json(rat_to_string(law->first)) : nullptr;
    j["mu_prime"] = law ? nlohmann::json(rat_to_string(law->second)) : nullptr;
    j["consistency"] = consistency ? consistency->to_json() : nlohmann::json(nullptr);
    j["axioms"] = axioms ? axioms->to_json() : nlohmann::json(nullptr);
    emit_json(out, j);
  } else {
    out << "c = " << rat_to_string(*c) << "\n";
    if (law)
      out << "(kappa', mu') = (" << rat_to_string(law->first) << ", "
          << rat_to_string(law->second) << ")\n";
    out << "deformed structure:\n" << serialize(deformed);
    if (consistency) out << "consistency:\n" << consistency->to_text("  ");
    if (axioms) out << "deformed axioms:\n" << axioms->to_text("  ");
  }
  return ok ? 0 : 1;
}

bool report_ok(const FullReport& r) {
  if (!r.core_checks_pass()) return false;
  if (r.nullity.status == NullityStatus::inconsistent) return false;
  if (r.h_squared && !r.h_squared->all_pass()) return false;
  for (const auto& p : r.points) {
    if (!p.error.empty()) return false;
    if (p.normal_form && !p.normal_form->all_pass()) return false;
  }
  return true;
}

// Smallest parameters admitted by each entry's constraints.
const std::map<std::string, long>& default_params(const std::string& name) {
  static const std::map<std::string, std::map<std::string, long>> defaults = {
      {"ex-mu2-hm-n", {{"n", 2}, {"m", 1}}},
      {"ex-mu0-h1", {{"n", 2}}},
      {"ex-mu0-h2+", {{"n", 2}, {"m", 2}}},
      {"ex-mu2-nonconstant", {}},
      {"ex-mu0-nonconstant", {}},
      {"parasasakian-heisenberg", {{"n", 1}}},
  };
  return defaults.at(name);
}

int cmd_report(const InputOptions& in, bool all, std::ostream& out) {
  if (all) {
    if (!in.builtin.empty() || !in.file.empty() || !in.points.empty())
      throw std::invalid_argument("--all excludes --builtin, --file and --point");
    bool ok = true;
    nlohmann::json j = nlohmann::json::object();
    for (const auto& e : catalog_entries()) {
      const ParacontactStructure s = instantiate_builtin(e.name, default_params(e.name));
      const FullReport r = run_full_report(s, resolve_points(s, {}, true));
      ok = ok && report_ok(r);
      if (structured(in))
        j[e.name] = r.to_json();
      else
        out << "=== " << e.name << " ===\n" << r.to_text();
    }
    if (structured(in)) emit_json(out, j);
    return ok ? 0 : 1;
  }
  const ParacontactStructure s = resolve_input(in);
  const FullReport r = run_full_report(s, resolve_points(s, in.points, true));
  if (structured(in))
    emit_json(out, r.to_json());
  else
    out << r.to_text();
  return report_ok(r) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification, classification and deformation of paracontact metric structures"};
  app.name("pkmu");
  app.require_subcommand(1);

  InputOptions list_in, verify_in, classify_in, canonical_in, deform_in, report_in;
  std::string c_text;
  bool deform_check = false, report_all = false;

  CLI::App* list_cmd = app.add_subcommand("list", "enumerate the built-in structures");
  list_cmd->add_option("--format", list_in.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the structure axiom checks");
  add_input_flags(verify_cmd, verify_in, false);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "solve for the curvature constants (kappa, mu)");
  add_input_flags(classify_cmd, classify_in, false);

  CLI::App* canonical_cmd =
      app.add_subcommand("canonical", "construct the pointwise canonical basis");
  add_input_flags(canonical_cmd, canonical_in, true);

  CLI::App* deform_cmd = app.add_subcommand("deform", "apply the homothetic deformation D_c");
  add_input_flags(deform_cmd, deform_in, false);
  deform_cmd->add_option("--c", c_text, "deformation constant (nonzero rational)")->required();
  deform_cmd->add_flag("--check", deform_check,
                       "re-verify the deformed structure and the (kappa, mu) law");

  CLI::App* report_cmd = app.add_subcommand("report", "run the full verification pipeline");
  add_input_flags(report_cmd, report_in, true);
  report_cmd->add_flag("--all", report_all, "report on every catalog entry");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (list_cmd->parsed()) return cmd_list(list_in, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_in, out);
    if (classify_cmd->parsed()) return cmd_classify(classify_in, out);
    if (canonical_cmd->parsed()) return cmd_canonical(canonical_in, out);
    if (deform_cmd->parsed()) return cmd_deform(deform_in, c_text, deform_check, out);
    if (report_cmd->parsed()) return cmd_report(report_in, report_all, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no command given\n";
  return 2;
}

}  // namespace pkmu
