#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>

namespace pkmu {

/// Exact rational number (GMP).
using Rat = mpq_class;
using Int = mpz_class;

/// Canonicalized rational from a numerator/denominator pair.
Rat rat(long num, long den = 1);

/// True iff q is the square of a rational (requires q >= 0 and exact square num/den).
bool is_perfect_square(const Rat& q);

/// Non-negative rational square root. Precondition: is_perfect_square(q).
Rat sqrt_rat(const Rat& q);

/// Canonical text form ("3", "-1/2").
std::string rat_to_string(const Rat& q);

/// Parses "n", "n/d" or a plain decimal ("0.5") into an exact rational.
std::optional<Rat> parse_rat(const std::string& text);

/// Element a + b*sqrt(2) of the real quadratic field Q(sqrt(2)).
/// All arithmetic, sign decisions and equality tests are exact.
struct AlgNum {
  Rat a;
  Rat b;

  AlgNum() : a(0), b(0) {}
  AlgNum(long v) : a(v), b(0) {}
  AlgNum(Rat v) : a(std::move(v)), b(0) {}
  AlgNum(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}

  static AlgNum sqrt2() { return AlgNum(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool is_rational() const { return sgn(b) == 0; }

  /// Exact sign (-1, 0, +1); decided by comparing a^2 with 2b^2 when a and b disagree.
  int sign() const;

  /// Galois conjugate a - b*sqrt(2).
  AlgNum conjugate() const { return AlgNum(a, -b); }

  /// Field norm a^2 - 2b^2; zero iff the element is zero.
  Rat field_norm() const { return a * a - 2 * b * b; }

  double to_double() const;

  AlgNum operator-() const { return AlgNum(-a, -b); }
  AlgNum& operator+=(const AlgNum& o) { a += o.a; b += o.b; return *this; }
  AlgNum& operator-=(const AlgNum& o) { a -= o.a; b -= o.b; return *this; }
  AlgNum& operator*=(const AlgNum& o);
  AlgNum& operator/=(const AlgNum& o);
};

inline AlgNum operator+(AlgNum l, const AlgNum& r) { return l += r; }
inline AlgNum operator-(AlgNum l, const AlgNum& r) { return l -= r; }
inline AlgNum operator*(AlgNum l, const AlgNum& r) { return l *= r; }
inline AlgNum operator/(AlgNum l, const AlgNum& r) { return l /= r; }

inline bool operator==(const AlgNum& l, const AlgNum& r) { return l.a == r.a && l.b == r.b; }
inline bool operator!=(const AlgNum& l, const AlgNum& r) { return !(l == r); }
inline bool operator<(const AlgNum& l, const AlgNum& r) { return (l - r).sign() < 0; }
inline bool operator>(const AlgNum& l, const AlgNum& r) { return (l - r).sign() > 0; }
inline bool operator<=(const AlgNum& l, const AlgNum& r) { return (l - r).sign() <= 0; }
inline bool operator>=(const AlgNum& l, const AlgNum& r) { return (l - r).sign() >= 0; }

inline AlgNum abs(const AlgNum& x) { return x.sign() < 0 ? -x : x; }
inline AlgNum conj(const AlgNum& x) { return x; }
inline AlgNum real(const AlgNum& x) { return x; }
inline AlgNum imag(const AlgNum&) { return AlgNum(0); }
inline AlgNum abs2(const AlgNum& x) { return x * x; }

/// Exact square root within Q(sqrt(2)), if one exists. Requires x >= 0.
/// Returns the non-negative root; nullopt when the root leaves the field.
std::optional<AlgNum> sqrt_exact(const AlgNum& x);

/// Canonical text form re-parseable by the scalar grammar ("2-3*sqrt2").
std::string to_string(const AlgNum& x);

std::ostream& operator<<(std::ostream& os, const AlgNum& x);

}  // namespace pkmu

namespace Eigen {

template <>
struct NumTraits<pkmu::AlgNum> : GenericNumTraits<pkmu::AlgNum> {
  using Real = pkmu::AlgNum;
  using NonInteger = pkmu::AlgNum;
  using Nested = pkmu::AlgNum;
  using Literal = long;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 60,
  };
};

}  // namespace Eigen
