#include "bihamil/ring/parse.hpp"

#include <cctype>

#include "bihamil/errors.hpp"

namespace bihamil {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& coords) : s_(text), coords_(coords) {}

  Scalar run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v += term();
      } else if (peek('-')) {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        v *= unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        Scalar d = unary();
        if (d.is_zero()) throw ParseError("division by the zero polynomial", at);
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    return power();
  }

  Scalar power() {
    Scalar base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !digit(s_[pos_])) throw ParseError("exponent must be a nonnegative integer", at);
      std::size_t start = pos_;
      while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
      std::string digits = s_.substr(start, pos_ - start);
      if (digits.size() > 6) throw ParseError("exponent too large", at);
      unsigned e = static_cast<unsigned>(std::stoul(digits));
      if (peek('^')) throw ParseError("chained exponents need parentheses", pos_);
      return base.pow(e);
    }
    return base;
  }

  Scalar primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return v;
    }
    if (digit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
      if (pos_ < s_.size() && ident_char(s_[pos_])) throw ParseError("malformed number", pos_);
      return Scalar(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] == name) return Scalar::variable(coords_.size(), i);
      throw ParseError("unknown coordinate '" + name + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& s_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const std::vector<std::string>& coords) {
  return Parser(text, coords).run();
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

}  // namespace bihamil
