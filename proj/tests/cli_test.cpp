#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pkmu/cli.hpp"
#include "pkmu/dsl.hpp"
#include "pkmu/nullity.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pkmu;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / name;
  std::ofstream os(path);
  os << content;
  return path.string();
}

const char* kAbelianDoc = R"([dim]
3
[frame]
basis xi X1 Y1
[metric]
g xi xi = 1
g X1 Y1 = 1
[phi]
phi X1 = X1
phi Y1 = -Y1
)";

const char* kInconsistentDoc = R"([dim]
3
[chart]
x y z
[frame]
basis xi e1 e2
vector xi = dz
vector e1 = dx + z*z*dy - 2*y*dz
vector e2 = dy
[metric]
g xi xi = 1
g e1 e2 = 1
[phi]
phi e1 = e1
phi e2 = -e2
)";

}  // namespace

TEST_CASE("help is printed and usage errors exit with 2") {
  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* cmd : {"list", "verify", "classify", "canonical", "deform", "report"}) {
    CAPTURE(cmd);
    CHECK(help.out.find(cmd) != std::string::npos);
  }

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--builtin", "ex-mu0-h1", "--file", "x.doc"}).code == 2);
  CHECK(run({"verify", "--builtin", "ex-mu0-h1", "--param", "n=1", "--format", "yaml"}).code == 2);
  CHECK(run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=1"}).code == 2);

  CliResult no_input = run({"verify"});
  CHECK(no_input.code == 2);
  CHECK(no_input.err.find("exactly one of --builtin or --file") != std::string::npos);

  CliResult unknown = run({"verify", "--builtin", "no-such-entry"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown builtin") != std::string::npos);

  CliResult bad_param = run({"classify", "--builtin", "ex-mu0-h1", "--param", "n=two"});
  CHECK(bad_param.code == 2);
  CHECK(bad_param.err.find("--param value must be an integer") != std::string::npos);

  CliResult missing = run({"verify", "--file", "/no/such/file.doc"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open file") != std::string::npos);
}

TEST_CASE("verify reports pass and fail with matching exit codes") {
  CliResult pass = run({"verify", "--builtin", "ex-mu2-hm-n", "--param", "n=1", "--param", "m=1"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("result: pass") != std::string::npos);
  CHECK(pass.out.find("[pass] d(eta) = Phi") != std::string::npos);
  CHECK(pass.out.find("[FAIL]") == std::string::npos);

  // All brackets zero: a valid almost paracontact structure that is not contact.
  const std::string abelian = write_temp("pkmu_cli_abelian.doc", kAbelianDoc);
  CliResult fail = run({"verify", "--file", abelian});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("result: fail") != std::string::npos);
  CHECK(fail.out.find("[FAIL] d(eta) = Phi") != std::string::npos);

  CliResult structured =
      run({"verify", "--builtin", "ex-mu0-h1", "--param", "n=2", "--format", "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  CHECK(j["all_pass"] == true);
  for (const char* key : {"almost_paracontact", "compatibility", "paracontact", "h_identities"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
}

TEST_CASE("document ingestion errors carry their position or witness") {
  const std::string bad_dim = write_temp("pkmu_cli_baddim.doc", "[dim]\nthree\n");
  CliResult dim = run({"verify", "--file", bad_dim});
  CHECK(dim.code == 2);
  CHECK(dim.err.find("line 2") != std::string::npos);

  const std::string bad_jacobi = write_temp("pkmu_cli_jacobi.doc", R"([dim]
3
[frame]
basis xi X1 Y1
bracket xi X1 = X1
bracket X1 Y1 = Y1
[metric]
g xi xi = 1
g X1 Y1 = 1
[phi]
phi X1 = X1
phi Y1 = -Y1
)");
  CliResult jac = run({"verify", "--file", bad_jacobi});
  CHECK(jac.code == 2);
  CHECK(jac.err.find("Jacobi") != std::string::npos);
}

TEST_CASE("classify prints the solved constants") {
  CliResult mu2 = run({"classify", "--builtin", "ex-mu2-hm-n", "--param", "n=2", "--param", "m=1"});
  CHECK(mu2.code == 0);
  CHECK(mu2.out.find("status: unique") != std::string::npos);
  CHECK(mu2.out.find("(kappa, mu) = (-1, 2)") != std::string::npos);
  CHECK(mu2.out.find("case: kappa = -1") != std::string::npos);

  CliResult heis = run({"classify", "--builtin", "parasasakian-heisenberg", "--param", "n=1"});
  CHECK(heis.code == 0);
  CHECK(heis.out.find("(kappa, mu) = (-1, mu indeterminate)") != std::string::npos);
  CHECK(heis.out.find("h == 0: yes") != std::string::npos);

  const std::string inconsistent = write_temp("pkmu_cli_inconsistent.doc", kInconsistentDoc);
  CliResult bad = run({"classify", "--file", inconsistent});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("status: inconsistent") != std::string::npos);
  CHECK(bad.out.find("witness:") != std::string::npos);

  CliResult structured = run(
      {"classify", "--builtin", "ex-mu0-nonconstant", "--format", "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  CHECK(j["nullity"]["status"] == "unique");
  CHECK(j["nullity"]["kappa"] == "-1");
  CHECK(j["nullity"]["mu"] == "0");
  CHECK(!j["h_squared"].is_null());
}

TEST_CASE("canonical evaluates at the requested points") {
  CliResult two = run({"canonical", "--builtin", "ex-mu2-nonconstant", "--point", "1,0,0",
                       "--point", "-1,0,0"});
  CHECK(two.code == 0);
  CHECK(two.out.find("point x = 1, y = 0, z = 0:") != std::string::npos);
  CHECK(two.out.find("rank(h_p) = 1") != std::string::npos);
  CHECK(two.out.find("signs: +1 (exact)") != std::string::npos);
  CHECK(two.out.find("signs: -1 (exact)") != std::string::npos);

  // No --point defaults to the origin, where h vanishes.
  CliResult origin = run({"canonical", "--builtin", "ex-mu2-nonconstant"});
  CHECK(origin.code == 0);
  CHECK(origin.out.find("rank(h_p) = 0") != std::string::npos);
  CHECK(origin.out.find("m = 0") != std::string::npos);

  CliResult rational = run({"canonical", "--builtin", "ex-mu2-nonconstant", "--point", "1/2,0,3"});
  CHECK(rational.code == 0);
  CHECK(rational.out.find("rank(h_p) = 1") != std::string::npos);

  // Constant frames have no chart: points are rejected, the frame itself is used.
  CHECK(run({"canonical", "--builtin", "ex-mu0-h1", "--param", "n=1", "--point", "0,0,0"}).code ==
        2);
  CliResult constant = run({"canonical", "--builtin", "ex-mu0-h1", "--param", "n=1"});
  CHECK(constant.code == 0);
  CHECK(constant.out.find("point (constant frame):") != std::string::npos);
  CHECK(constant.out.find("rank(h_p) = 1") != std::string::npos);

  CHECK(run({"canonical", "--builtin", "ex-mu2-nonconstant", "--point", "1,0"}).code == 2);
  CHECK(run({"canonical", "--builtin", "ex-mu2-nonconstant", "--point", "a,0,0"}).code == 2);

  CliResult structured = run({"canonical", "--builtin", "ex-mu0-nonconstant", "--point", "2,0,0",
                              "--format", "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["rank"] == 1);
  CHECK(j[0]["error"] == "");
  CHECK(j[0]["canonical"]["m"] == 1);
  CHECK(j[0]["point"]["x"] == "2");
}

TEST_CASE("deform emits the transformed constants and a reloadable document") {
  CliResult res = run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=1", "--c", "-1",
                       "--check"});
  CHECK(res.code == 0);
  CHECK(res.out.find("c = -1") != std::string::npos);
  CHECK(res.out.find("(kappa', mu') = (-1, 4)") != std::string::npos);
  CHECK(res.out.find("deformed structure:") != std::string::npos);
  CHECK(res.out.find("[dim]") != std::string::npos);
  CHECK(res.out.find("consistency:") != std::string::npos);
  CHECK(res.out.find("[FAIL]") == std::string::npos);

  CHECK(run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=1", "--c", "0"}).code == 2);
  CHECK(run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=1", "--c", "x"}).code == 2);

  // The emitted document reloads and classifies to the transformed constants.
  CliResult structured = run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=1", "--c", "-1",
                              "--format", "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  CHECK(j["kappa_prime"] == "-1");
  CHECK(j["mu_prime"] == "4");
  CHECK(j["consistency"].is_null());
  const std::string path = write_temp("pkmu_cli_deformed.doc", j["document"].get<std::string>());
  CliResult verify = run({"verify", "--file", path});
  CHECK(verify.code == 0);
  CliResult classify = run({"classify", "--file", path});
  CHECK(classify.code == 0);
  CHECK(classify.out.find("(kappa, mu) = (-1, 4)") != std::string::npos);

  // Without --check nothing is verified; with it the escape from the nullity
  // class in the higher-dimensional family is caught.
  CHECK(run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=2", "--c", "2"}).code == 0);
  CliResult escape =
      run({"deform", "--builtin", "ex-mu0-h1", "--param", "n=2", "--c", "2", "--check"});
  CHECK(escape.code == 1);
  CHECK(escape.out.find("[FAIL] deformed structure solves to a unique (kappa', mu')") !=
        std::string::npos);
}

TEST_CASE("report runs the full pipeline for one entry or all") {
  CliResult one = run({"report", "--builtin", "parasasakian-heisenberg", "--param", "n=1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("K-paracontact: yes") != std::string::npos);
  CHECK(one.out.find("paraSasakian: yes") != std::string::npos);

  CliResult all = run({"report", "--all"});
  CHECK(all.code == 0);
  for (const char* name : {"ex-mu2-hm-n", "ex-mu0-h1", "ex-mu0-h2+", "ex-mu2-nonconstant",
                           "ex-mu0-nonconstant", "parasasakian-heisenberg"}) {
    CAPTURE(name);
    CHECK(all.out.find(std::string("=== ") + name + " ===") != std::string::npos);
  }

  CHECK(run({"report", "--all", "--builtin", "ex-mu0-h1"}).code == 2);

  CliResult structured = run({"report", "--builtin", "ex-mu2-nonconstant", "--format",
                              "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  CHECK(j["flags"]["paracontact_metric"] == true);
  CHECK(j["nullity"]["kappa"] == "-1");
  CHECK(j["nullity"]["mu"] == "2");
  REQUIRE(j["points"].size() == 1);
  CHECK(j["points"][0]["point"]["x"] == "0");
  CHECK(j["points"][0]["rank"] == 0);
}

TEST_CASE("list shows every catalog entry with its contract") {
  CliResult text = run({"list"});
  CHECK(text.code == 0);
  for (const char* name : {"ex-mu2-hm-n", "ex-mu0-h1", "ex-mu0-h2+", "ex-mu2-nonconstant",
                           "ex-mu0-nonconstant", "parasasakian-heisenberg"}) {
    CAPTURE(name);
    CHECK(text.out.find(name) != std::string::npos);
  }
  CHECK(text.out.find("parameters: n (n >= 1), m (1 <= m <= n)") != std::string::npos);
  CHECK(text.out.find("expected:") != std::string::npos);

  CliResult structured = run({"list", "--format", "structured"});
  CHECK(structured.code == 0);
  nlohmann::json j = nlohmann::json::parse(structured.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 6);
  CHECK(j[0]["name"] == "ex-mu2-hm-n");
  CHECK(j[0]["params"].size() == 2);
}
