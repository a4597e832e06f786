#include "pkmu/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

namespace pkmu {

namespace {

/// Lexicographic comparison of sparse exponent maps over the union of keys,
/// absent entries read as zero.
template <class V>
int compare_sparse(const std::map<std::string, V>& l, const std::map<std::string, V>& r) {
  auto il = l.begin();
  auto ir = r.begin();
  const V zero{};
  while (il != l.end() || ir != r.end()) {
    if (ir == r.end() || (il != l.end() && il->first < ir->first)) {
      if (il->second != zero) return il->second > zero ? 1 : -1;
      ++il;
    } else if (il == l.end() || ir->first < il->first) {
      if (ir->second != zero) return ir->second > zero ? -1 : 1;
      ++ir;
    } else {
      if (il->second != ir->second) return il->second > ir->second ? 1 : -1;
      ++il;
      ++ir;
    }
  }
  return 0;
}

bool keys_equal(const Monomial& l, const Monomial& r) {
  return l.powers == r.powers && l.exp_rates == r.exp_rates;
}

Monomial key_product(const Monomial& l, const Monomial& r) {
  Monomial out;
  out.coeff = l.coeff * r.coeff;
  out.powers = l.powers;
  for (const auto& [name, p] : r.powers) {
    long& slot = out.powers[name];
    slot += p;
    if (slot == 0) out.powers.erase(name);
  }
  out.exp_rates = l.exp_rates;
  for (const auto& [name, q] : r.exp_rates) {
    Rat& slot = out.exp_rates[name];
    slot += q;
    if (sgn(slot) == 0) out.exp_rates.erase(name);
  }
  return out;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  // Coprime numerator/denominator stay coprime under powers.
  return Rat(n, d);
}

}  // namespace

int compare_key(const Monomial& l, const Monomial& r) {
  if (int c = compare_sparse(l.powers, r.powers); c != 0) return c;
  return compare_sparse(l.exp_rates, r.exp_rates);
}

Scalar::Scalar(AlgNum v) {
  if (!v.is_zero()) {
    Monomial m;
    m.coeff = std::move(v);
    m_terms.push_back(std::move(m));
  }
}

Scalar Scalar::coordinate(const std::string& name) {
  Monomial m;
  m.coeff = AlgNum(1);
  m.powers[name] = 1;
  Scalar s;
  s.m_terms.push_back(std::move(m));
  return s;
}

Scalar Scalar::exponential(const std::string& name, const Rat& rate) {
  if (sgn(rate) == 0) return Scalar(AlgNum(1));
  Monomial m;
  m.coeff = AlgNum(1);
  m.exp_rates[name] = rate;
  Scalar s;
  s.m_terms.push_back(std::move(m));
  return s;
}

Scalar Scalar::from_terms(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& l, const Monomial& r) { return compare_key(l, r) > 0; });
  Scalar out;
  for (Monomial& t : terms) {
    if (!out.m_terms.empty() && keys_equal(out.m_terms.back(), t))
      out.m_terms.back().coeff += t.coeff;
    else
      out.m_terms.push_back(std::move(t));
    if (!out.m_terms.empty() && out.m_terms.back().coeff.is_zero()) out.m_terms.pop_back();
  }
  return out;
}

bool Scalar::is_constant() const {
  if (m_terms.empty()) return true;
  return m_terms.size() == 1 && m_terms[0].powers.empty() && m_terms[0].exp_rates.empty();
}

AlgNum Scalar::constant_value() const {
  if (m_terms.empty()) return AlgNum(0);
  if (!is_constant()) throw std::domain_error("Scalar::constant_value: not a constant: " + to_string(*this));
  return m_terms[0].coeff;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (Monomial& t : out.m_terms) t.coeff = -t.coeff;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  // Merge of two canonically sorted term lists.
  std::vector<Monomial> merged;
  merged.reserve(m_terms.size() + o.m_terms.size());
  std::size_t i = 0, j = 0;
  while (i < m_terms.size() || j < o.m_terms.size()) {
    int c;
    if (i == m_terms.size())
      c = -1;
    else if (j == o.m_terms.size())
      c = 1;
    else
      c = compare_key(m_terms[i], o.m_terms[j]);
    if (c > 0) {
      merged.push_back(std::move(m_terms[i++]));
    } else if (c < 0) {
      merged.push_back(o.m_terms[j++]);
    } else {
      Monomial t = std::move(m_terms[i++]);
      t.coeff += o.m_terms[j++].coeff;
      if (!t.coeff.is_zero()) merged.push_back(std::move(t));
    }
  }
  m_terms = std::move(merged);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  std::vector<Monomial> products;
  products.reserve(m_terms.size() * o.m_terms.size());
  for (const Monomial& l : m_terms)
    for (const Monomial& r : o.m_terms) products.push_back(key_product(l, r));
  *this = from_terms(std::move(products));
  return *this;
}

Scalar Scalar::derivative(const std::string& coord) const {
  std::vector<Monomial> out;
  for (const Monomial& t : m_terms) {
    long k = 0;
    if (auto it = t.powers.find(coord); it != t.powers.end()) k = it->second;
    Rat q(0);
    if (auto it = t.exp_rates.find(coord); it != t.exp_rates.end()) q = it->second;
    if (k > 0) {
      Monomial d = t;
      d.coeff = d.coeff * AlgNum(Rat(k));
      if (k == 1)
        d.powers.erase(coord);
      else
        d.powers[coord] = k - 1;
      out.push_back(std::move(d));
    }
    if (sgn(q) != 0) {
      Monomial d = t;
      d.coeff = d.coeff * AlgNum(q);
      out.push_back(std::move(d));
    }
  }
  return from_terms(std::move(out));
}

std::optional<AlgNum> Scalar::evaluate_exact(const std::map<std::string, Rat>& point) const {
  // Group terms by total exponential exponent; Lindemann-Weierstrass makes the
  // value rational-algebraic iff every nonzero-exponent group cancels.
  std::map<Rat, AlgNum> groups;
  for (const Monomial& t : m_terms) {
    AlgNum val = t.coeff;
    for (const auto& [name, k] : t.powers) {
      auto it = point.find(name);
      if (it == point.end()) throw std::invalid_argument("evaluate: coordinate not assigned: " + name);
      val *= AlgNum(pow_rat(it->second, k));
    }
    Rat expo(0);
    for (const auto& [name, q] : t.exp_rates) {
      auto it = point.find(name);
      if (it == point.end()) throw std::invalid_argument("evaluate: coordinate not assigned: " + name);
      expo += q * it->second;
    }
    groups[expo] += val;
  }
  AlgNum result;
  for (const auto& [expo, coeff] : groups) {
    if (sgn(expo) == 0)
      result = coeff;
    else if (!coeff.is_zero())
      return std::nullopt;
  }
  return result;
}

double Scalar::evaluate(const std::map<std::string, double>& point) const {
  double sum = 0.0;
  for (const Monomial& t : m_terms) {
    double val = t.coeff.to_double();
    for (const auto& [name, k] : t.powers) {
      auto it = point.find(name);
      if (it == point.end()) throw std::invalid_argument("evaluate: coordinate not assigned: " + name);
      val *= std::pow(it->second, static_cast<double>(k));
    }
    double expo = 0.0;
    for (const auto& [name, q] : t.exp_rates) {
      auto it = point.find(name);
      if (it == point.end()) throw std::invalid_argument("evaluate: coordinate not assigned: " + name);
      expo += q.get_d() * it->second;
    }
    sum += val * std::exp(expo);
  }
  return sum;
}

std::vector<std::string> Scalar::coordinates() const {
  std::set<std::string> names;
  for (const Monomial& t : m_terms) {
    for (const auto& [name, k] : t.powers) names.insert(name);
    for (const auto& [name, q] : t.exp_rates) names.insert(name);
  }
  return {names.begin(), names.end()};
}

Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }

bool operator==(const Scalar& l, const Scalar& r) {
  const auto& lt = l.terms();
  const auto& rt = r.terms();
  if (lt.size() != rt.size()) return false;
  for (std::size_t i = 0; i < lt.size(); ++i)
    if (!(lt[i].coeff == rt[i].coeff) || !keys_equal(lt[i], rt[i])) return false;
  return true;
}

bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }

namespace {

/// lt(l)/lt(r) as a monomial, when the power differences stay non-negative.
std::optional<Monomial> divide_leading(const Monomial& l, const Monomial& r) {
  Monomial q;
  q.coeff = l.coeff / r.coeff;
  q.powers = l.powers;
  for (const auto& [name, p] : r.powers) {
    long& slot = q.powers[name];
    slot -= p;
    if (slot < 0) return std::nullopt;
    if (slot == 0) q.powers.erase(name);
  }
  q.exp_rates = l.exp_rates;
  for (const auto& [name, rr] : r.exp_rates) {
    Rat& slot = q.exp_rates[name];
    slot -= rr;
    if (sgn(slot) == 0) q.exp_rates.erase(name);
  }
  return q;
}

}  // namespace

std::optional<Scalar> exact_divide(const Scalar& l, const Scalar& r) {
  if (r.is_zero()) throw std::domain_error("exact_divide: division by zero");
  Scalar quotient;
  Scalar rem = l;
  // Cap guards hypothetical non-terminating inexact divisions; exact ones finish
  // in #terms(quotient) steps.
  for (int step = 0; step < 100000; ++step) {
    if (rem.is_zero()) return quotient;
    const Monomial lead = rem.terms().front();
    auto t = divide_leading(lead, r.terms().front());
    if (!t) return std::nullopt;
    Scalar tq = Scalar::from_terms({*t});
    quotient += tq;
    rem -= tq * r;
    // The leading key must strictly decrease after each cancellation.
    if (!rem.is_zero() && compare_key(rem.terms().front(), lead) >= 0) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::string render_rate(const Rat& q, const std::string& name) {
  if (q == 1) return "exp(" + name + ")";
  if (q == -1) return "exp(-" + name + ")";
  return "exp(" + rat_to_string(q) + "*" + name + ")";
}

/// Renders one monomial with a non-negative coefficient assumed handled by the caller.
std::string render_term(const Monomial& t) {
  std::vector<std::string> parts;
  const AlgNum& c = t.coeff;
  const bool symbolic = !t.powers.empty() || !t.exp_rates.empty();
  if (!symbolic) {
    std::string s = to_string(c);
    if (!c.is_rational() && sgn(c.a) != 0) s = "(" + s + ")";
    return s;
  }
  if (!(c == AlgNum(1))) {
    std::string s = to_string(c);
    if (!c.is_rational() && sgn(c.a) != 0) s = "(" + s + ")";
    parts.push_back(s);
  }
  for (const auto& [name, k] : t.powers)
    parts.push_back(k == 1 ? name : name + "^" + std::to_string(k));
  for (const auto& [name, q] : t.exp_rates) parts.push_back(render_rate(q, name));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_string(const Scalar& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Monomial& t : s.terms()) {
    Monomial shown = t;
    const bool negative = t.coeff.sign() < 0;
    if (negative) shown.coeff = -shown.coeff;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += render_term(shown);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace pkmu
