#pragma once

#include "pkmu/algnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pkmu {

/// One term coeff * prod_c c^powers[c] * prod_c exp(exp_rates[c] * c).
/// Canonical sparsity: no zero powers, no zero rates, coeff nonzero once inside a Scalar.
struct Monomial {
  AlgNum coeff;
  std::map<std::string, long> powers;
  std::map<std::string, Rat> exp_rates;
};

/// Total order on monomial keys (powers, exp_rates), coefficient ignored.
/// Compares exponent vectors over the union of coordinate names, absent = 0,
/// so the order is translation invariant under monomial multiplication.
/// Returns <0, 0, >0.
int compare_key(const Monomial& l, const Monomial& r);

/// Element of the exact function ring Q(sqrt2)[coords, exp(q*coord)].
/// Terms are held in canonical form: strictly descending key order, unique keys,
/// nonzero coefficients. Canonical equality coincides with functional equality
/// because distinct monomials are linearly independent functions.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : Scalar(AlgNum(v)) {}
  Scalar(const Rat& v) : Scalar(AlgNum(v)) {}
  Scalar(AlgNum v);

  static Scalar coordinate(const std::string& name);
  static Scalar exponential(const std::string& name, const Rat& rate);
  /// Normalizes an arbitrary term list into canonical form.
  static Scalar from_terms(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return m_terms; }

  bool is_zero() const { return m_terms.empty(); }
  bool is_constant() const;
  /// Precondition: is_constant().
  AlgNum constant_value() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  /// Term-wise partial derivative: d/dc (c^k e^{qc}) = (k c^{k-1} + q c^k) e^{qc}.
  Scalar derivative(const std::string& coord) const;

  /// Exact value at a rational point, when the value stays in Q(sqrt2).
  /// Exponential terms are grouped by their total exponent q·c(p); every group
  /// with a nonzero exponent must cancel exactly, otherwise returns nullopt.
  std::optional<AlgNum> evaluate_exact(const std::map<std::string, Rat>& point) const;

  /// Floating-point value at a point.
  double evaluate(const std::map<std::string, double>& point) const;

  /// Names of every coordinate appearing in a power or an exponential rate.
  std::vector<std::string> coordinates() const;

 private:
  std::vector<Monomial> m_terms;
};

Scalar operator+(Scalar l, const Scalar& r);
Scalar operator-(Scalar l, const Scalar& r);
Scalar operator*(Scalar l, const Scalar& r);
bool operator==(const Scalar& l, const Scalar& r);
bool operator!=(const Scalar& l, const Scalar& r);

inline Scalar conj(const Scalar& x) { return x; }
inline Scalar real(const Scalar& x) { return x; }
inline Scalar imag(const Scalar&) { return Scalar(); }
inline Scalar abs2(const Scalar& x) { return x * x; }
inline Scalar abs(const Scalar& x) { return x; }  // placeholder; never used for ordering

/// Exact quotient l / r when l is a multiple of r in the ring, nullopt otherwise.
/// Greedy leading-term division; terminates in #terms(quotient) steps for exact
/// divisions (the key order is translation invariant), a step cap guards the rest.
std::optional<Scalar> exact_divide(const Scalar& l, const Scalar& r);

/// Canonical text form, re-parseable by parse_scalar.
std::string to_string(const Scalar& s);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace pkmu

namespace Eigen {

template <>
struct NumTraits<pkmu::Scalar> : GenericNumTraits<pkmu::Scalar> {
  using Real = pkmu::Scalar;
  using NonInteger = pkmu::Scalar;
  using Nested = pkmu::Scalar;
  using Literal = long;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 100,
    MulCost = 200,
  };
};

}  // namespace Eigen
