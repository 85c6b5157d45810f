#include "nckdv/parser.hpp"

#include <cctype>
#include <sstream>

namespace nckdv {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input, expected '+', '-' or end");
    return p;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) {
    throw ParseError("expected " + expected, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("'") + c + "'");
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    Poly acc;
    bool neg = eat('-');
    acc += neg ? -term() : term();
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc{Rational(1)};
    bool saw_factor = false;
    skip_ws();
    if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
      acc = Poly{rational()};
      if (!eat('*')) return acc;  // bare constant term
    }
    acc = acc * factor();
    saw_factor = true;
    while (eat('*')) acc = acc * factor();
    (void)saw_factor;
    return acc;
  }

  Rational rational() {
    Rational num(integer());
    if (eat('/')) {
      Rational den(integer());
      if (den == 0) fail("nonzero denominator");
      return num / den;
    }
    return num;
  }

  boost::multiprecision::cpp_int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
    if (pos_ == start) fail("integer");
    return boost::multiprecision::cpp_int(s_.substr(start, pos_ - start));
  }

  Poly factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("factor");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (c == '[' || c == '{') {
      ++pos_;
      Poly a = expr();
      expect(',');
      Poly b = expr();
      expect(c == '[' ? ']' : '}');
      return c == '[' ? a * b - b * a : a * b + b * a;
    }
    if (std::isalpha((unsigned char)c)) {
      std::string name = ident_name();
      if (name == "D" && peek() == '(') {
        ++pos_;
        Poly p = expr();
        expect(')');
        return x_derive(p);
      }
      if (name == "inv") {
        expect('(');
        std::string var = ident_name();
        expect(')');
        return Poly::letter(var, 0, true);
      }
      return jet_letter(name);
    }
    fail("factor");
  }

  std::string ident_name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum((unsigned char)s_[pos_]))) ++pos_;
    if (pos_ == start) fail("identifier");
    return s_.substr(start, pos_ - start);
  }

  // name, name_x .. name_xxxx, name_xN
  Poly jet_letter(const std::string& name) {
    if (pos_ < s_.size() && s_[pos_] == '_') {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == 'x') {
        ++pos_;
        if (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
          int order = (int)integer();
          return Poly::letter(name, order);
        }
        int order = 1;
        while (pos_ < s_.size() && s_[pos_] == 'x') {
          ++order;
          ++pos_;
        }
        return Poly::letter(name, order);
      }
      pos_ = mark;  // '_' not followed by x: not a jet suffix
      fail("'_x' derivative suffix");
    }
    return Poly::letter(name, 0);
  }
};

std::string letter_to_string(const Letter& l) {
  if (l.inverted) return "inv(" + l.var + ")";
  if (l.order == 0) return l.var;
  if (l.order <= 4) return l.var + "_" + std::string(l.order, 'x');
  return l.var + "_x" + std::to_string(l.order);
}

std::string coeff_to_string(const Rational& c) {
  return rational_to_string(c);
}

}  // namespace

Poly parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += letter_to_string(w[i]);
  }
  return out;
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (w.empty()) {
      out += coeff_to_string(mag);
    } else if (mag == 1) {
      out += to_string(w);
    } else {
      out += coeff_to_string(mag) + "*" + to_string(w);
    }
  }
  return out;
}

std::string notation(const Poly& p) {
  if (p.is_zero()) return "0";
  if (p.size() == 1) {
    const auto& [w, c] = *p.terms().begin();
    if (c == 1 && !w.empty()) {
      std::string out;
      for (const auto& l : w) {
        if (l.inverted) {
          out += l.var + "^{-1}";
        } else if (l.order == 0) {
          out += l.var;
        } else if (l.order <= 4) {
          out += l.var + "_" + std::string(l.order, 'x');
        } else {
          out += l.var + "_x" + std::to_string(l.order);
        }
      }
      return out;
    }
  }
  return "(" + to_string(p) + ")";
}

}  // namespace nckdv
