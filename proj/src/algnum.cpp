#include "pkmu/algnum.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace pkmu {

Rat rat(long num, long den) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

bool is_perfect_square(const Rat& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den().get_mpz_t()) != 0;
}

Rat sqrt_rat(const Rat& q) {
  if (!is_perfect_square(q)) throw std::domain_error("sqrt_rat: not a perfect square");
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  // num/den coprime implies their square roots are coprime.
  return Rat(n, d);
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

std::optional<Rat> parse_rat(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;

  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t& pos) {
    std::string out;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out.push_back(s[pos++]);
    return out;
  };

  std::string intpart = digits(i);
  Rat value;
  if (i < s.size() && s[i] == '/') {
    ++i;
    std::string den = digits(i);
    if (intpart.empty() || den.empty() || i != s.size()) return std::nullopt;
    Int n(intpart), d(den);
    if (sgn(d) == 0) return std::nullopt;
    value = Rat(n, d);
    value.canonicalize();
  } else if (i < s.size() && s[i] == '.') {
    ++i;
    std::string frac = digits(i);
    if ((intpart.empty() && frac.empty()) || i != s.size()) return std::nullopt;
    Int scale(1);
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    Int n(intpart.empty() ? std::string("0") : intpart);
    Int f(frac.empty() ? std::string("0") : frac);
    value = Rat(n * scale + f, scale);
    value.canonicalize();
  } else {
    if (intpart.empty() || i != s.size()) return std::nullopt;
    value = Rat(Int(intpart));
  }
  if (neg) value = -value;
  return value;
}

int AlgNum::sign() const {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| with |b|*sqrt(2) via squares. a^2 = 2b^2 is
  // impossible for nonzero rationals, so the result is never zero here.
  const int sd = sgn(Rat(a * a - 2 * b * b));
  return sa > 0 ? sd : -sd;
}

double AlgNum::to_double() const { return a.get_d() + b.get_d() * std::sqrt(2.0); }

AlgNum& AlgNum::operator*=(const AlgNum& o) {
  Rat na = a * o.a + 2 * b * o.b;
  Rat nb = a * o.b + b * o.a;
  a = std::move(na);
  b = std::move(nb);
  return *this;
}

AlgNum& AlgNum::operator/=(const AlgNum& o) {
  Rat nrm = o.field_norm();
  if (sgn(nrm) == 0) throw std::domain_error("AlgNum: division by zero");
  // 1/(c+d*sqrt2) = (c-d*sqrt2)/(c^2-2d^2)
  *this *= o.conjugate();
  a /= nrm;
  b /= nrm;
  return *this;
}

std::optional<AlgNum> sqrt_exact(const AlgNum& x) {
  const int sx = x.sign();
  if (sx < 0) throw std::domain_error("sqrt_exact: negative argument");
  if (sx == 0) return AlgNum(0);

  if (x.is_rational()) {
    if (is_perfect_square(x.a)) return AlgNum(sqrt_rat(x.a));
    Rat half = x.a / 2;
    if (is_perfect_square(half)) return AlgNum(Rat(0), sqrt_rat(half));
    return std::nullopt;
  }

  // y = c + d*sqrt2 with y^2 = x requires c^2 + 2d^2 = a, 2cd = b; eliminating d
  // gives c^2 = (a ± sqrt(a^2 - 2b^2))/2.
  Rat disc = x.field_norm();
  if (sgn(disc) < 0 || !is_perfect_square(disc)) return std::nullopt;
  Rat s = sqrt_rat(disc);
  for (Rat c2 : {Rat((x.a + s) / 2), Rat((x.a - s) / 2)}) {
    if (sgn(c2) <= 0 || !is_perfect_square(c2)) continue;
    Rat c = sqrt_rat(c2);
    AlgNum y(c, Rat(x.b / (2 * c)));
    if (y * y == x) return y.sign() >= 0 ? y : -y;
  }
  return std::nullopt;
}

namespace {

std::string sqrt2_part(const Rat& b) {
  if (b == 1) return "sqrt2";
  if (b == -1) return "-sqrt2";
  return rat_to_string(b) + "*sqrt2";
}

}  // namespace

std::string to_string(const AlgNum& x) {
  if (x.is_rational()) return rat_to_string(x.a);
  if (sgn(x.a) == 0) return sqrt2_part(x.b);
  std::string out = rat_to_string(x.a);
  if (sgn(x.b) > 0)
    out += "+" + sqrt2_part(x.b);
  else
    out += "-" + sqrt2_part(Rat(-x.b));
  return out;
}

std::ostream& operator<<(std::ostream& os, const AlgNum& x) { return os << to_string(x); }

}  // namespace pkmu
