#include "pkmu/parse.hpp"

#include <cctype>

namespace pkmu {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : m_text(text) { advance(); }

  const Token& peek() const { return m_current; }

  Token next() {
    Token t = m_current;
    advance();
    return t;
  }

 private:
  void advance() {
    while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) ++m_pos;
    m_current.pos = m_pos;
    if (m_pos >= m_text.size()) {
      m_current.kind = Tok::end;
      m_current.text.clear();
      return;
    }
    const char c = m_text[m_pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = m_pos;
      while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) ++m_pos;
      m_current = {Tok::number, m_text.substr(start, m_pos - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = m_pos;
      while (m_pos < m_text.size() &&
             (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_'))
        ++m_pos;
      m_current = {Tok::ident, m_text.substr(start, m_pos - start), start};
      return;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", m_pos);
    }
    m_current = {kind, std::string(1, c), m_pos};
    ++m_pos;
  }

  const std::string& m_text;
  std::size_t m_pos = 0;
  Token m_current;
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& chart)
      : m_lexer(text), m_chart(chart) {}

  Scalar parse() {
    Scalar s = expression();
    const Token& t = m_lexer.peek();
    if (t.kind != Tok::end) throw ParseError("trailing input '" + t.text + "'", t.pos);
    return s;
  }

 private:
  Scalar expression() {
    Scalar s = term();
    for (;;) {
      const Token& t = m_lexer.peek();
      if (t.kind == Tok::plus) {
        m_lexer.next();
        s += term();
      } else if (t.kind == Tok::minus) {
        m_lexer.next();
        s -= term();
      } else {
        return s;
      }
    }
  }

  Scalar term() {
    Scalar s = factor();
    for (;;) {
      const Token& t = m_lexer.peek();
      if (t.kind == Tok::star) {
        m_lexer.next();
        s *= factor();
      } else if (t.kind == Tok::slash) {
        Token op = m_lexer.next();
        Scalar d = factor();
        if (!d.is_constant())
          throw ParseError("division is only defined by nonzero constants", op.pos);
        AlgNum dv = d.constant_value();
        if (dv.is_zero()) throw ParseError("division by zero", op.pos);
        s *= Scalar(AlgNum(1) / dv);
      } else {
        return s;
      }
    }
  }

  Scalar factor() {
    const Token& t = m_lexer.peek();
    if (t.kind == Tok::minus) {
      m_lexer.next();
      return -factor();
    }
    if (t.kind == Tok::plus) {
      m_lexer.next();
      return factor();
    }
    Scalar base = primary();
    if (m_lexer.peek().kind == Tok::caret) {
      Token op = m_lexer.next();
      Token e = m_lexer.next();
      if (e.kind != Tok::number) throw ParseError("'^' needs a non-negative integer exponent", op.pos);
      long exponent = std::stol(e.text);
      Scalar out(1);
      for (long i = 0; i < exponent; ++i) out *= base;
      return out;
    }
    return base;
  }

  Scalar primary() {
    Token t = m_lexer.next();
    switch (t.kind) {
      case Tok::number:
        return Scalar(AlgNum(Rat(Int(t.text))));
      case Tok::lparen: {
        Scalar s = expression();
        Token close = m_lexer.next();
        if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.pos);
        return s;
      }
      case Tok::ident: {
        if (t.text == "sqrt2") return Scalar(AlgNum::sqrt2());
        if (t.text == "exp") return exponential(t.pos);
        for (const std::string& name : m_chart)
          if (name == t.text) return Scalar::coordinate(name);
        throw ParseError("unknown name '" + t.text + "'", t.pos);
      }
      default:
        throw ParseError("expected a number, name or '('", t.pos);
    }
  }

  /// exp(<argument>): the argument must be a homogeneous linear form in the
  /// coordinates with rational coefficients; each coordinate contributes one
  /// exponential rate factor.
  Scalar exponential(std::size_t callPos) {
    Token open = m_lexer.next();
    if (open.kind != Tok::lparen) throw ParseError("expected '(' after exp", open.pos);
    Scalar arg = expression();
    Token close = m_lexer.next();
    if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.pos);

    Scalar out(1);
    for (const Monomial& term : arg.terms()) {
      const bool linear = term.exp_rates.empty() && term.powers.size() == 1 &&
                          term.powers.begin()->second == 1;
      if (!linear)
        throw ParseError("exp argument must be rational multiples of coordinates", callPos);
      if (!term.coeff.is_rational())
        throw ParseError("exp rate must be rational", callPos);
      out *= Scalar::exponential(term.powers.begin()->first, term.coeff.a);
    }
    return out;
  }

  Lexer m_lexer;
  const std::vector<std::string>& m_chart;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const std::vector<std::string>& chart) {
  return Parser(text, chart).parse();
}

}  // namespace pkmu
