#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nckdv/errors.hpp"
#include "nckdv/rational.hpp"

namespace nckdv {

// A jet letter: the order-th x-derivative of a dependent variable, or the
// formal inverse of the variable itself. Inverses exist only at order 0.
struct Letter {
  std::string var;
  int order = 0;
  bool inverted = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter jet(std::string var, int order = 0) { return Letter{std::move(var), order, false}; }
inline Letter inv(std::string var) { return Letter{std::move(var), 0, true}; }

// A word is a finite product of letters; the empty word is the identity.
using Word = std::vector<Letter>;

// Cancels adjacent (u, inv u) and (inv u, u) pairs. A single stack scan is
// confluent for this rewriting system since inverses occur only at order 0.
Word normalize_word(Word w);

// Free associative differential polynomial with exact rational coefficients,
// kept in canonical form: normalized words, no zero coefficients, words
// ordered lexicographically on (var, order, inverted) with ties by length.
class Poly {
 public:
  using TermMap = std::map<Word, Rational>;

  Poly() = default;
  explicit Poly(Rational c);

  static Poly letter(const Letter& l);
  static Poly letter(std::string var, int order = 0, bool inverted = false);
  static Poly term(Rational c, Word w);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Coefficient of a word (zero if absent).
  Rational coeff(const Word& w) const;

  void add_term(Rational c, Word w);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& p);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  std::set<std::string> variables() const;

 private:
  TermMap terms_;
};

// The canonical-form pass: already applied by every constructor/operation,
// exposed so idempotence can be asserted from outside.
Poly normalize(const Poly& p);

// x-derivation: linear, Leibniz on words, D(u^(k)) = u^(k+1),
// D(u^{-1}) = -u^{-1} u_x u^{-1}.
Poly x_derive(const Poly& p);
Poly x_derive(Poly p, int times);

// Evolution rule u_t = rhs, with rhs a polynomial in jets of u.
struct EvolutionRule {
  std::string variable;
  Poly rhs;
};

// Total t-derivative under an evolution rule. Throws UnknownVariableError if
// p mentions jets of any other variable.
Poly t_derive(const Poly& p, const EvolutionRule& rule);

struct Binding {
  Poly image;
  std::optional<Poly> inverse_image;
};
using Bindings = std::map<std::string, Binding>;

// Replaces jets u^(k) of bound variables by D^k(image) and u^{-1} by the
// inverse image (explicit, or derived when the image is a single word of
// order-0 letters). Throws NonInvertibleImageError otherwise.
Poly substitute(const Poly& p, const Bindings& bindings);

// Formal integration: returns q with x_derive(q) == p, found by an exact
// linear solve over a finite candidate word basis. Throws
// NotExactDerivativeError if no differential polynomial antiderivative exists.
Poly formal_integrate(const Poly& p);

// Commutative canonical form: letters commute, u * u^{-1} cancels globally.
// Used for the scalar-chart checks where the dependent variables commute.
Poly commutative_form(const Poly& p);

}  // namespace nckdv
