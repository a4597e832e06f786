#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pkmu/linalg.hpp"
#include "pkmu/parse.hpp"

#include <cmath>
#include <random>

using namespace pkmu;

namespace {

Scalar coord(const char* name) { return Scalar::coordinate(name); }

AlgNum random_algnum(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  return AlgNum(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-3, -6) == rat(1, 2));
  CHECK(rat_to_string(rat(-1, 2)) == "-1/2");
  CHECK(rat_to_string(rat(3)) == "3");

  CHECK(is_perfect_square(rat(9, 4)));
  CHECK(!is_perfect_square(rat(2)));
  CHECK(sqrt_rat(rat(9, 4)) == rat(3, 2));

  CHECK(parse_rat("7") == rat(7));
  CHECK(parse_rat("-3/4") == rat(-3, 4));
  CHECK(parse_rat("0.5") == rat(1, 2));
  CHECK(parse_rat("-2.25") == rat(-9, 4));
  CHECK(!parse_rat("1/0").has_value());
  CHECK(!parse_rat("abc").has_value());
}

TEST_CASE("algebraic number field arithmetic") {
  const AlgNum s2 = AlgNum::sqrt2();
  CHECK(s2 * s2 == AlgNum(2));
  CHECK((AlgNum(1) + s2) * (AlgNum(1) - s2) == AlgNum(-1));
  CHECK(AlgNum(1) / (AlgNum(1) + s2) == AlgNum(-1) + s2);

  std::mt19937 rng(7);
  for (int k = 0; k < 50; ++k) {
    AlgNum x = random_algnum(rng), y = random_algnum(rng);
    CHECK(x.field_norm() == (x * x.conjugate()).a);
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("exact sign decisions near sqrt2") {
  // 1.4 < sqrt2 < 1.5 and 99/70 < sqrt2 < 17/12, margins below double noise floor matter not here,
  // only that no floating point is consulted.
  CHECK((AlgNum(rat(7, 5)) - AlgNum::sqrt2()).sign() < 0);
  CHECK((AlgNum(rat(3, 2)) - AlgNum::sqrt2()).sign() > 0);
  CHECK((AlgNum(rat(41, 29)) - AlgNum::sqrt2()).sign() < 0);
  CHECK((AlgNum(rat(99, 70)) - AlgNum::sqrt2()).sign() > 0);
  CHECK(AlgNum().sign() == 0);
  CHECK((AlgNum(rat(-7, 5)) + AlgNum::sqrt2()).sign() > 0);
  CHECK(abs(AlgNum(rat(7, 5)) - AlgNum::sqrt2()) == AlgNum::sqrt2() - AlgNum(rat(7, 5)));
}

TEST_CASE("square roots stay in the field exactly when possible") {
  std::mt19937 rng(11);
  for (int k = 0; k < 50; ++k) {
    AlgNum x = random_algnum(rng);
    auto r = sqrt_exact(x * x);
    REQUIRE(r.has_value());
    CHECK(*r == abs(x));
    CHECK(r->sign() >= 0);
  }
  CHECK(sqrt_exact(AlgNum(2)) == AlgNum::sqrt2());
  CHECK(!sqrt_exact(AlgNum(3)).has_value());
  // 3 + 2*sqrt2 = (1 + sqrt2)^2
  CHECK(sqrt_exact(AlgNum(rat(3), rat(2))) == AlgNum(rat(1), rat(1)));
  CHECK(!sqrt_exact(AlgNum(rat(1), rat(1))).has_value());
}

TEST_CASE("algebraic number text form round-trips") {
  std::mt19937 rng(13);
  for (int k = 0; k < 30; ++k) {
    AlgNum x = random_algnum(rng);
    Scalar parsed = parse_scalar(to_string(x), {});
    REQUIRE(parsed.is_constant());
    CHECK(parsed.constant_value() == x);
  }
  CHECK(to_string(AlgNum(rat(2), rat(-3))) == "2-3*sqrt2");
  CHECK(std::abs(AlgNum(rat(2), rat(-3)).to_double() - (2 - 3 * std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("scalar ring canonicalization") {
  Scalar x = coord("x"), y = coord("y");
  CHECK(x + x == Scalar(2) * x);
  CHECK((x - x).is_zero());
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(x * y == y * x);
  CHECK(-(x - y) == y - x);

  // Same functional content assembled in a different term order is one canonical value.
  Scalar a = (x + Scalar(1)) * (x + Scalar(2));
  Scalar b = x * x + Scalar(3) * x + Scalar(2);
  CHECK(a == b);
  CHECK(to_string(a) == to_string(b));

  CHECK(Scalar(5).is_constant());
  CHECK(Scalar(5).constant_value() == AlgNum(5));
  CHECK(!x.is_constant());
}

TEST_CASE("exponential factors merge by rate") {
  Scalar ez = Scalar::exponential("z", rat(1));
  Scalar e2z = Scalar::exponential("z", rat(2));
  CHECK(ez * ez == e2z);
  CHECK(ez * Scalar::exponential("z", rat(-1)) == Scalar(1));
  CHECK(to_string(Scalar::exponential("z", rat(-2))) == "exp(-2*z)");
  CHECK(to_string(coord("x") * coord("x") * Scalar::exponential("z", rat(-2))) ==
        "x^2*exp(-2*z)");
}

TEST_CASE("derivative is a ring derivation") {
  Scalar x = coord("x"), z = coord("z");
  Scalar e3x = Scalar::exponential("x", rat(3));
  CHECK((x * x).derivative("x") == Scalar(2) * x);
  CHECK((x * x * e3x).derivative("x") == (Scalar(2) * x + Scalar(3) * x * x) * e3x);
  CHECK((x * z).derivative("y").is_zero());

  std::mt19937 rng(17);
  std::uniform_int_distribution<long> small(-3, 3);
  for (int k = 0; k < 20; ++k) {
    Scalar f = Scalar(small(rng)) + Scalar(small(rng)) * x + Scalar(small(rng)) * x * z +
               Scalar(small(rng)) * Scalar::exponential("z", rat(small(rng)));
    Scalar g = Scalar(small(rng)) + Scalar(small(rng)) * z + Scalar(small(rng)) * x * x;
    CHECK((f * g).derivative("z") == f.derivative("z") * g + f * g.derivative("z"));
    CHECK((f + g).derivative("x") == f.derivative("x") + g.derivative("x"));
  }
}

TEST_CASE("exact evaluation groups exponentials by exponent") {
  Scalar x = coord("x"), z = coord("z");
  Scalar f = x * Scalar::exponential("z", rat(1)) - Scalar::exponential("z", rat(1));

  // Coefficients of the exponent-5 group cancel at x = 1 and survive at x = 2.
  CHECK(f.evaluate_exact({{"x", rat(1)}, {"z", rat(5)}}) == AlgNum(0));
  CHECK(!f.evaluate_exact({{"x", rat(2)}, {"z", rat(5)}}).has_value());

  // Exponent 0 is exact regardless of cancellation.
  Scalar g = x * Scalar::exponential("z", rat(-2));
  CHECK(g.evaluate_exact({{"x", rat(3)}, {"z", rat(0)}}) == AlgNum(3));
  CHECK(!g.evaluate_exact({{"x", rat(3)}, {"z", rat(1)}}).has_value());

  Scalar p = x * x * z + Scalar(AlgNum::sqrt2()) * x;
  CHECK(p.evaluate_exact({{"x", rat(1, 2)}, {"z", rat(4)}}) ==
        AlgNum(rat(1), rat(1, 2)));

  CHECK_THROWS_AS((void)p.evaluate_exact({{"x", rat(1)}}), std::invalid_argument);

  double v = p.evaluate({{"x", 0.5}, {"z", 4.0}});
  CHECK(std::abs(v - (1.0 + 0.5 * std::sqrt(2.0))) < 1e-15);
  double w = g.evaluate({{"x", 3.0}, {"z", 1.0}});
  CHECK(std::abs(w - 3.0 * std::exp(-2.0)) < 1e-14);
}

TEST_CASE("coordinate listing") {
  Scalar f = coord("x") * Scalar::exponential("z", rat(-2)) + coord("y");
  auto names = f.coordinates();
  CHECK(names == std::vector<std::string>({"x", "y", "z"}));
}

TEST_CASE("exact division recognizes ring multiples") {
  Scalar x = coord("x"), z = coord("z");
  auto q = exact_divide(x * x - Scalar(1), x - Scalar(1));
  REQUIRE(q.has_value());
  CHECK(*q == x + Scalar(1));

  CHECK(!exact_divide(x * x + Scalar(1), x - Scalar(1)).has_value());

  std::mt19937 rng(19);
  std::uniform_int_distribution<long> small(-3, 3);
  for (int k = 0; k < 20; ++k) {
    Scalar f = Scalar(small(rng)) + Scalar(small(rng)) * x +
               Scalar(small(rng)) * Scalar::exponential("z", rat(2)) * x;
    Scalar g = Scalar(1 + (k % 3)) + Scalar(small(rng)) * x * z;
    auto back = exact_divide(f * g, g);
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
}

TEST_CASE("parser accepts the documented grammar") {
  Scalar x = coord("x"), z = coord("z");
  CHECK(parse_scalar("x^2*exp(-2*z)", {"x", "y", "z"}) ==
        x * x * Scalar::exponential("z", rat(-2)));
  CHECK(parse_scalar("2-3*sqrt2", {}) == Scalar(AlgNum(rat(2), rat(-3))));
  CHECK(parse_scalar("-x/2 + 1/2", {"x"}) == Scalar(rat(1, 2)) * (Scalar(1) - x));
  CHECK(parse_scalar("(x+1)^2", {"x"}) == x * x + Scalar(2) * x + Scalar(1));
  CHECK(parse_scalar("exp(x - 2*z)", {"x", "z"}) ==
        Scalar::exponential("x", rat(1)) * Scalar::exponential("z", rat(-2)));
  CHECK(parse_scalar("0", {}).is_zero());
}

TEST_CASE("parser round-trips canonical text") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> small(-4, 4);
  std::vector<std::string> chart = {"x", "y", "z"};
  Scalar x = coord("x"), y = coord("y"), z = coord("z");
  for (int k = 0; k < 40; ++k) {
    Scalar f = Scalar(AlgNum(rat(small(rng)), rat(small(rng), 2))) * x * y +
               Scalar(small(rng)) * Scalar::exponential("z", rat(small(rng))) +
               Scalar(small(rng)) * z * z * z + Scalar(AlgNum(rat(small(rng), 3)));
    CHECK(parse_scalar(to_string(f), chart) == f);
  }
}

TEST_CASE("parser reports failure positions") {
  CHECK_THROWS_AS((void)parse_scalar("x + ", {"x"}), ParseError);
  CHECK_THROWS_AS((void)parse_scalar("x/y", {"x", "y"}), ParseError);
  CHECK_THROWS_AS((void)parse_scalar("x^(-1)", {"x"}), ParseError);
  CHECK_THROWS_AS((void)parse_scalar("exp(x*y)", {"x", "y"}), ParseError);
  CHECK_THROWS_AS((void)parse_scalar("(x+1", {"x"}), ParseError);

  try {
    (void)parse_scalar("x + oops", {"x"});
    FAIL("unknown name accepted");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
}

TEST_CASE("exact linear algebra over the field") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<long> small(-5, 5);
  auto random_mat = [&](int r, int c) {
    Mat<AlgNum> m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = AlgNum(rat(small(rng), 1 + (j % 2)));
    return m;
  };

  for (int k = 0; k < 20; ++k) {
    // rank(A B) with full-rank random factors equals the inner dimension.
    Mat<AlgNum> a = random_mat(5, 3), b = random_mat(3, 5);
    if (rank_exact(a) < 3 || rank_exact(b) < 3) continue;
    CHECK(rank_exact(Mat<AlgNum>(a * b)) == 3);
  }

  for (int k = 0; k < 20; ++k) {
    Mat<AlgNum> m = random_mat(4, 4);
    auto inv = inverse_exact(m);
    if (!inv.has_value()) {
      CHECK(rank_exact(m) < 4);
      continue;
    }
    CHECK(Mat<AlgNum>(m * *inv) == Mat<AlgNum>(Mat<AlgNum>::Identity(4, 4)));
    Mat<AlgNum> rhs = random_mat(4, 2);
    auto sol = solve_exact(m, rhs);
    REQUIRE(sol.has_value());
    CHECK(Mat<AlgNum>(m * *sol) == rhs);
  }

  // Inertia of P^T D P equals the sign pattern of D for invertible P.
  for (int k = 0; k < 10; ++k) {
    Mat<AlgNum> p = random_mat(5, 5);
    if (rank_exact(p) < 5) continue;
    Mat<AlgNum> d = Mat<AlgNum>::Zero(5, 5);
    int pos = 0;
    for (int i = 0; i < 5; ++i) {
      bool plus = small(rng) >= 0;
      d(i, i) = AlgNum(plus ? 1 : -1);
      pos += plus ? 1 : 0;
    }
    auto sig = inertia(Mat<AlgNum>(p.transpose() * d * p));
    CHECK(sig.first == pos);
    CHECK(sig.second == 5 - pos);
  }
}

TEST_CASE("function ring determinant and solve") {
  Scalar x = coord("x");
  Mat<Scalar> m(2, 2);
  m(0, 0) = x;
  m(0, 1) = Scalar(1);
  m(1, 0) = Scalar(1);
  m(1, 1) = x;
  CHECK(det_bareiss(m) == x * x - Scalar(1));

  Vec<Scalar> sol(2);
  sol(0) = x;
  sol(1) = Scalar(3);
  Vec<Scalar> b = m * sol;
  auto got = solve_cramer(m, b);
  REQUIRE(got.has_value());
  CHECK((*got)(0) == sol(0));
  CHECK((*got)(1) == sol(1));

  Mat<Scalar> sing(2, 2);
  sing(0, 0) = x;
  sing(0, 1) = x;
  sing(1, 0) = Scalar(1);
  sing(1, 1) = Scalar(1);
  CHECK(det_bareiss(sing).is_zero());
  CHECK(!solve_cramer(sing, b).has_value());

  Vec<AlgNum> row(3);
  row << AlgNum(1), AlgNum(0), AlgNum(2);
  Mat<AlgNum> ker = kernel_of_covector(row);
  CHECK(ker.cols() == 2);
  CHECK(rank_exact(ker) == 2);
  for (int j = 0; j < ker.cols(); ++j) {
    AlgNum dot;
    for (int i = 0; i < 3; ++i) dot += row(i) * ker(i, j);
    CHECK(dot.is_zero());
  }
}
