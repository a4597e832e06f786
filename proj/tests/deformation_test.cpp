#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pkmu/catalog.hpp"
#include "pkmu/deformation.hpp"

#include <random>

using namespace pkmu;

namespace {

Rat random_nonzero_rat(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  long n = 0;
  while (n == 0) n = num(rng);
  return rat(n, den(rng));
}

}  // namespace

TEST_CASE("parameter values compose as a group action") {
  ParacontactStructure s = instantiate_builtin("ex-mu0-h1", {{"n", 1}});

  CHECK(tensor_equal(deform(s, AlgNum(1)), s));

  std::mt19937 rng(53);
  for (int k = 0; k < 20; ++k) {
    Rat c1 = random_nonzero_rat(rng), c2 = random_nonzero_rat(rng);
    CAPTURE(rat_to_string(c1));
    CAPTURE(rat_to_string(c2));
    ParacontactStructure once = deform(deform(s, AlgNum(c2)), AlgNum(c1));
    ParacontactStructure direct = deform(s, AlgNum(c1 * c2));
    CHECK(tensor_equal(once, direct));
  }

  for (long c : {2L, -1L, 3L}) {
    ParacontactStructure forward = deform(s, AlgNum(c));
    CHECK(tensor_equal(deform(forward, AlgNum(rat(1, c))), s));
  }
}

TEST_CASE("deformed tensors follow the defining formulas") {
  ParacontactStructure s = instantiate_builtin("ex-mu2-hm-n", {{"n", 2}, {"m", 1}});
  const int d = s.dim();
  const AlgNum c(rat(3, 2));
  ParacontactStructure t = deform(s, c);

  // Frame rebased by diag(1/c, 1, ..., 1): in the new frame the metric
  // components are A^T (c g + c(c-1) eta eta^T) A.
  Mat<AlgNum> a = Mat<AlgNum>::Identity(d, d);
  a(0, 0) = AlgNum(1) / c;
  Mat<AlgNum> expected =
      a.transpose() * (c * s.g() + c * (c - AlgNum(1)) * (s.eta() * s.eta().transpose())) * a;
  CHECK(Mat<AlgNum>(t.g()) == expected);

  // phi is unchanged as an endomorphism: A^{-1} phi A.
  Mat<AlgNum> ainv = Mat<AlgNum>::Identity(d, d);
  ainv(0, 0) = c;
  CHECK(Mat<AlgNum>(t.phi()) == Mat<AlgNum>(ainv * s.phi() * a));

  CHECK(t.eta()(0) == AlgNum(1));

  // The new Reeb field is xi / c, so h' = h / c in the rebased frame.
  Mat<Scalar> h_expected = promote(ainv) * s.h() * promote(a);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      CHECK(Scalar(c) * t.h()(i, j) == h_expected(i, j));
}

TEST_CASE("axioms survive deformation") {
  ParacontactStructure s = instantiate_builtin("ex-mu0-h2+", {{"n", 2}, {"m", 2}});
  for (long c : {2L, -3L}) {
    ParacontactStructure t = deform(s, AlgNum(c));
    CAPTURE(c);
    CHECK(verify_almost_paracontact(t).all_pass());
    CHECK(verify_compatibility(t).all_pass());
    CHECK(verify_paracontact(t).all_pass());
    CHECK(verify_h_identities(t).all_pass());
  }
}

TEST_CASE("constant transformation law") {
  // (-1, 2) is a fixed point of the parameter map for every c.
  for (long num : {1L, -1L, 5L}) {
    auto [k, mu] = deform_kappa_mu(rat(-1), rat(2), rat(num, 2));
    CHECK(k == rat(-1));
    CHECK(mu == rat(2));
  }

  // (-1, 0) reaches (-1, 4) under c = -1.
  auto [k1, m1] = deform_kappa_mu(rat(-1), rat(0), rat(-1));
  CHECK(k1 == rat(-1));
  CHECK(m1 == rat(4));

  // kappa + 1 scales by 1/c^2.
  auto [k2, m2] = deform_kappa_mu(rat(0), rat(2), rat(2));
  CHECK(k2 == rat(-3, 4));
  CHECK(m2 == rat(2));

  CHECK_THROWS_AS(deform_kappa_mu(rat(-1), rat(0), rat(0)), std::invalid_argument);
}

TEST_CASE("solved constants match the law after deformation") {
  std::mt19937 rng(59);
  for (auto& [name, params] :
       std::vector<std::pair<std::string, std::map<std::string, long>>>{
           {"ex-mu2-hm-n", {{"n", 1}, {"m", 1}}},
           {"ex-mu2-hm-n", {{"n", 2}, {"m", 1}}},
           {"ex-mu0-h1", {{"n", 1}}},
           {"ex-mu0-h2+", {{"n", 2}, {"m", 2}}},
           {"ex-mu2-nonconstant", {}},
           {"ex-mu0-nonconstant", {}}}) {
    ParacontactStructure s = instantiate_builtin(name, params);
    Rat c = random_nonzero_rat(rng);
    CAPTURE(name);
    CAPTURE(rat_to_string(c));
    VerificationReport rep = verify_deformation_consistency(s, c);
    CHECK(rep.all_pass());
    if (!rep.all_pass() && rep.first_failure() != nullptr)
      MESSAGE(rep.first_failure()->name << ": " << rep.first_failure()->witness);
  }

  // Cross-check one case end to end: deform, re-solve, compare.
  ParacontactStructure s = instantiate_builtin("ex-mu0-h1", {{"n", 1}});
  NullityResult before = solve_kappa_mu(s);
  REQUIRE(before.status == NullityStatus::unique);
  ParacontactStructure t = deform(s, AlgNum(-1));
  NullityResult after = solve_kappa_mu(t);
  REQUIRE(after.status == NullityStatus::unique);
  CHECK(*after.kappa == rat(-1));
  CHECK(*after.mu == rat(4));
}

TEST_CASE("deformation can leave the nullity class when h is nilpotent nonzero") {
  // For the rank-1 family in dimension >= 5 the cross-pair bracket
  // [X1, Y_i] = X1 + Y1 gives R'(X1, Y_i)xi' = 2(1-c)/c * Y1 after deforming,
  // so the constants only survive at c = 1. The checker must report this
  // instead of forcing a solution.
  ParacontactStructure s = instantiate_builtin("ex-mu0-h1", {{"n", 2}});
  REQUIRE(solve_kappa_mu(s).status == NullityStatus::unique);

  for (long c : {2L, -1L}) {
    CAPTURE(c);
    ParacontactStructure t = deform(s, AlgNum(c));
    CHECK(verify_paracontact(t).all_pass());
    CHECK(verify_h_identities(t).all_pass());

    NullityResult r = solve_kappa_mu(t);
    CHECK(r.status == NullityStatus::inconsistent);
    CHECK(!r.residual_witnesses.empty());

    // xi' = xi/c sits at frame index 0; X1, Y1, Y2 at 1, 2, 4.
    Vec<Scalar> res = t.curvature().apply(1, 4, 0);
    CHECK(res(2) == Scalar(rat(2 * (1 - c), c)));
    for (int k : {0, 1, 3, 4}) CHECK(res(k).is_zero());

    VerificationReport rep = verify_deformation_consistency(s, rat(c));
    CHECK(!rep.all_pass());
    REQUIRE(rep.first_failure() != nullptr);
    CHECK(rep.first_failure()->name == "deformed structure solves to a unique (kappa', mu')");
  }

  // The same escape occurs for the rank-2 family once an unpaired block exists.
  VerificationReport rep =
      verify_deformation_consistency(instantiate_builtin("ex-mu0-h2+", {{"n", 3}, {"m", 2}}), rat(2));
  CHECK(!rep.all_pass());
}

TEST_CASE("consistency requires a unique input solution") {
  ParacontactStructure heis = instantiate_builtin("parasasakian-heisenberg", {{"n", 1}});
  VerificationReport rep = verify_deformation_consistency(heis, rat(2));
  CHECK(!rep.all_pass());
  REQUIRE(rep.first_failure() != nullptr);
  CHECK(rep.first_failure()->name == "input solves to a unique (kappa, mu)");
}

TEST_CASE("zero parameter is rejected") {
  ParacontactStructure s = instantiate_builtin("parasasakian-heisenberg", {{"n", 1}});
  CHECK_THROWS_AS((void)deform(s, AlgNum(0)), std::invalid_argument);
}
