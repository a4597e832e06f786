#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pkmu/catalog.hpp"
#include "pkmu/dsl.hpp"

using namespace pkmu;

namespace {

const std::vector<std::pair<std::string, std::map<std::string, long>>>& grid() {
  static const std::vector<std::pair<std::string, std::map<std::string, long>>> g{
      {"ex-mu2-hm-n", {{"n", 1}, {"m", 1}}},
      {"ex-mu2-hm-n", {{"n", 2}, {"m", 1}}},
      {"ex-mu2-hm-n", {{"n", 2}, {"m", 2}}},
      {"ex-mu2-hm-n", {{"n", 3}, {"m", 2}}},
      {"ex-mu0-h1", {{"n", 1}}},
      {"ex-mu0-h1", {{"n", 2}}},
      {"ex-mu0-h1", {{"n", 3}}},
      {"ex-mu0-h2+", {{"n", 2}, {"m", 2}}},
      {"ex-mu0-h2+", {{"n", 3}, {"m", 2}}},
      {"ex-mu0-h2+", {{"n", 3}, {"m", 3}}},
      {"ex-mu2-nonconstant", {}},
      {"ex-mu0-nonconstant", {}},
      {"parasasakian-heisenberg", {{"n", 1}}},
      {"parasasakian-heisenberg", {{"n", 2}}},
  };
  return g;
}

std::map<std::string, Rat> pt(long x, long y, long z) {
  return {{"x", rat(x)}, {"y", rat(y)}, {"z", rat(z)}};
}

}  // namespace

TEST_CASE("catalog lists each builtin with its parameter contract") {
  const auto& entries = catalog_entries();
  REQUIRE(entries.size() == 6);

  std::vector<std::string> names;
  for (const auto& e : entries) {
    names.push_back(e.name);
    CHECK(!e.description.empty());
    CHECK(!e.expected.empty());
    for (const auto& p : e.params) {
      CHECK(!p.name.empty());
      CHECK(!p.constraint.empty());
    }
  }
  CHECK(names == std::vector<std::string>{"ex-mu2-hm-n", "ex-mu0-h1", "ex-mu0-h2+",
                                          "ex-mu2-nonconstant", "ex-mu0-nonconstant",
                                          "parasasakian-heisenberg"});

  CHECK(entries[0].params.size() == 2);
  CHECK(entries[0].params[0].name == "n");
  CHECK(entries[0].params[1].name == "m");
  CHECK(entries[1].params.size() == 1);
  CHECK(entries[3].params.empty());
  CHECK(entries[4].params.empty());
}

TEST_CASE("instantiation rejects bad names and parameters") {
  CHECK_THROWS_WITH_AS((void)instantiate_builtin("no-such-entry", {}),
                       doctest::Contains("unknown builtin"), std::invalid_argument);

  // Missing, unknown, and out-of-range parameters.
  CHECK_THROWS_WITH_AS((void)instantiate_builtin("ex-mu2-hm-n", {{"n", 2}}),
                       doctest::Contains("missing parameter 'm'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS((void)instantiate_builtin("ex-mu0-h1", {{"n", 1}, {"m", 1}}),
                       doctest::Contains("unknown parameter 'm'"), std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu2-hm-n", {{"n", 0}, {"m", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu2-hm-n", {{"n", 1}, {"m", 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu2-hm-n", {{"n", 1}, {"m", 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu0-h1", {{"n", 0}}), std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu0-h2+", {{"n", 1}, {"m", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu0-h2+", {{"n", 2}, {"m", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu0-h2+", {{"n", 2}, {"m", 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("ex-mu2-nonconstant", {{"n", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)instantiate_builtin("parasasakian-heisenberg", {{"n", 0}}),
                  std::invalid_argument);
}

TEST_CASE("every family member is a Lie algebra passing the core checks") {
  for (const auto& [name, params] : grid()) {
    CAPTURE(name);
    ParacontactStructure s = instantiate_builtin(name, params);
    if (s.frame().kind() == FrameKind::constant_algebra)
      CHECK(s.frame().jacobi_violations().empty());
    FullReport rep = run_full_report(s);
    CHECK(rep.core_checks_pass());
    CHECK(rep.paracontact_metric);
  }
}

TEST_CASE("full report separates the structure classes") {
  FullReport mu2 = run_full_report(instantiate_builtin("ex-mu2-hm-n", {{"n", 1}, {"m", 1}}));
  CHECK(mu2.paracontact_metric);
  CHECK(!mu2.k_paracontact);
  CHECK(!mu2.normal);
  CHECK(!mu2.parasasakian);
  REQUIRE(mu2.nullity.status == NullityStatus::unique);
  CHECK(*mu2.nullity.kappa == rat(-1));
  CHECK(*mu2.nullity.mu == rat(2));
  REQUIRE(mu2.h_squared.has_value());
  CHECK(mu2.h_squared->all_pass());
  REQUIRE(mu2.classification.has_value());
  CHECK(mu2.classification->tag == "kappa = -1");

  FullReport ps = run_full_report(instantiate_builtin("parasasakian-heisenberg", {{"n", 1}}));
  CHECK(ps.paracontact_metric);
  CHECK(ps.k_paracontact);
  CHECK(ps.normal);
  CHECK(ps.parasasakian);
  CHECK(ps.nullity.status == NullityStatus::mu_indeterminate);
  CHECK(ps.nullity.h_zero);
  CHECK(*ps.nullity.kappa == rat(-1));
  CHECK(!ps.nullity.mu.has_value());

  // The mu = 0 family obeys the paraSasakian curvature law without being normal.
  FullReport mu0 = run_full_report(instantiate_builtin("ex-mu0-nonconstant", {}));
  CHECK(mu0.parasasakian_curvature.all_pass());
  CHECK(!mu0.normal);
  CHECK(!mu0.parasasakian);

  FullReport mu2c = run_full_report(instantiate_builtin("ex-mu2-nonconstant", {}));
  CHECK(!mu2c.parasasakian_curvature.all_pass());
}

TEST_CASE("reports carry the h rank and canonical basis per point") {
  ParacontactStructure s = instantiate_builtin("ex-mu2-nonconstant", {});
  FullReport rep = run_full_report(s, {pt(0, 0, 0), pt(1, 0, 0), pt(-2, 3, 5)});
  REQUIRE(rep.points.size() == 3);

  CHECK(rep.points[0].rank == 0);
  CHECK(rep.points[1].rank == 1);
  CHECK(rep.points[2].rank == 1);
  for (const auto& p : rep.points) {
    CAPTURE(p.rank);
    CHECK(p.error.empty());
    CHECK(p.exact);
    REQUIRE(p.basis.has_value());
    REQUIRE(p.normal_form.has_value());
    CHECK(p.normal_form->all_pass());
    CHECK(p.labels == std::vector<std::string>{"xi", "e1", "e2"});
  }
  REQUIRE(rep.points[1].basis->signs.size() == 1);
  CHECK(rep.points[1].basis->signs[0] == 1);
  CHECK(rep.points[2].basis->signs[0] == -1);

  // Only coordinates that appear in h matter; here h involves x alone.
  FullReport partial = run_full_report(s, {{{"x", rat(1)}}});
  REQUIRE(partial.points.size() == 1);
  CHECK(partial.points[0].error.empty());
  CHECK(partial.points[0].rank == 1);

  // A point that misses a needed coordinate is reported, not fatal.
  FullReport bad = run_full_report(s, {{}});
  REQUIRE(bad.points.size() == 1);
  CHECK(!bad.points[0].error.empty());
  CHECK(!bad.points[0].basis.has_value());
}

TEST_CASE("text rendering names every section") {
  ParacontactStructure s = instantiate_builtin("ex-mu2-nonconstant", {});
  FullReport rep = run_full_report(s, {pt(1, 0, 0)});
  std::string text = rep.to_text();

  for (const char* piece :
       {"axioms:", "almost paracontact:", "compatibility:", "paracontact (d eta = Phi):",
        "h identities:", "Killing agreement:", "normality:", "flags:",
        "paracontact metric: yes", "K-paracontact: no", "paraSasakian: no", "nullity:",
        "status: unique", "kappa: -1", "mu: 2", "case: kappa = -1",
        "h^2 = (kappa + 1) phi^2:", "rank(h_p) = 1", "m = 1, signs: +1 (exact)", "X1 =",
        "Y1 =", "normal form:"}) {
    CAPTURE(piece);
    CHECK(text.find(piece) != std::string::npos);
  }

  std::string ps_text =
      run_full_report(instantiate_builtin("parasasakian-heisenberg", {{"n", 1}})).to_text();
  CHECK(ps_text.find("K-paracontact: yes") != std::string::npos);
  CHECK(ps_text.find("paraSasakian: yes") != std::string::npos);
  CHECK(ps_text.find("status: mu_indeterminate") != std::string::npos);
}

TEST_CASE("structured rendering keeps stable field names") {
  ParacontactStructure s = instantiate_builtin("ex-mu0-h1", {{"n", 1}});
  nlohmann::json j = run_full_report(s).to_json();

  for (const char* key : {"almost_paracontact", "compatibility", "paracontact", "h_identities",
                          "killing_agreement", "normality", "reeb_curvature_law"})
    CHECK(j["checks"].contains(key));
  CHECK(j["flags"]["paracontact_metric"] == true);
  CHECK(j["flags"]["k_paracontact"] == false);
  CHECK(j["flags"]["normal"] == false);
  CHECK(j["flags"]["parasasakian"] == false);
  CHECK(j["nullity"]["status"] == "unique");
  CHECK(j["nullity"]["kappa"] == "-1");
  CHECK(j["nullity"]["mu"] == "0");
  CHECK(j["nullity"]["h_zero"] == false);
  CHECK(j["nullity"]["witnesses"].is_array());
  CHECK(j["nullity"]["witnesses"].empty());
  CHECK(j["nullity"]["case"] == "kappa = -1");
  CHECK(!j["h_squared"].is_null());
  CHECK(j["points"].is_array());

  // Round-trips through its own text form.
  nlohmann::json reparsed = nlohmann::json::parse(j.dump());
  CHECK(reparsed == j);

  nlohmann::json ps =
      run_full_report(instantiate_builtin("parasasakian-heisenberg", {{"n", 1}})).to_json();
  CHECK(ps["nullity"]["status"] == "mu_indeterminate");
  CHECK(ps["nullity"]["mu"].is_null());
  CHECK(ps["flags"]["parasasakian"] == true);

  nlohmann::json withpt =
      run_full_report(instantiate_builtin("ex-mu0-nonconstant", {}), {pt(2, 0, 0)}).to_json();
  REQUIRE(withpt["points"].size() == 1);
  const nlohmann::json& pj = withpt["points"][0];
  for (const char* key : {"point", "rank", "exact", "canonical", "normal_form", "error"}) {
    CAPTURE(key);
    CHECK(pj.contains(key));
  }
  CHECK(pj["rank"] == 1);
  CHECK(pj["point"]["x"] == "2");
  CHECK(pj["canonical"]["m"] == 1);
  CHECK(pj["canonical"]["signs"].size() == 1);
}

TEST_CASE("serialized documents reload to the same tensors") {
  for (const auto& [name, params] : grid()) {
    CAPTURE(name);
    ParacontactStructure s = instantiate_builtin(name, params);
    ParacontactStructure back = load_document(serialize(s));
    CHECK(tensor_equal(back, s));
  }
}

TEST_CASE("hand-written documents match the builtins") {
  // Same structures as the coordinate builtins, written independently with
  // comments, reordering, and redundant whitespace.
  const char* mu2_doc = R"(# polynomial twist
[dim]
3

[chart]
x y z

[frame]
basis xi e1 e2
vector e2 = dy
vector e1 = dx + x*z*dy - 2*y*dz   # twist grows along the z axis
vector xi = dz

[metric]
g e1 e2 = 1
g xi xi = 1

[phi]
phi e1 = e1
phi e2 = -e2
)";
  CHECK(tensor_equal(load_document(mu2_doc), instantiate_builtin("ex-mu2-nonconstant", {})));

  const char* mu0_doc = R"([dim]
3
[chart]
x y z
[frame]
basis xi e1 e2
vector xi = dz
vector e1 = dx + x*exp(-2*z)*dy - 2*y*dz
vector e2 = dy
[metric]
g xi xi = 1
g e1 e2 = 1
[phi]
phi e1 = e1
phi e2 = -e2
[eta]
eta xi = 1
)";
  CHECK(tensor_equal(load_document(mu0_doc), instantiate_builtin("ex-mu0-nonconstant", {})));

  const char* heis_doc = R"([dim]
3
[frame]
basis xi X1 Y1
bracket Y1 X1 = -2*xi
[metric]
g xi xi = 1
g Y1 X1 = 1
[phi]
phi X1 = X1
phi Y1 = -Y1
)";
  CHECK(tensor_equal(load_document(heis_doc),
                     instantiate_builtin("parasasakian-heisenberg", {{"n", 1}})));
}
