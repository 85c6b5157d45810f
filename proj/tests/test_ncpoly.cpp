#include <doctest.h>

#include "nckdv/ncpoly.hpp"
#include "nckdv/opcalc.hpp"
#include "nckdv/parser.hpp"

using namespace nckdv;

TEST_CASE("word normalization cancels adjacent inverse pairs") {
  Word w{jet("Q"), inv("Q")};
  CHECK(normalize_word(w).empty());

  Word nested{jet("Q", 1), jet("Q"), inv("Q"), inv("Q"), jet("Q")};
  CHECK(normalize_word(nested) == Word{jet("Q", 1)});

  // cascading cancellation: a inv(a) exposes a new pair
  Word cascade{inv("Q"), jet("Q"), inv("Q"), jet("Q")};
  CHECK(normalize_word(cascade).empty());

  // different orders never cancel
  Word keep{jet("Q", 1), inv("Q")};
  CHECK(normalize_word(keep) == keep);
}

TEST_CASE("normalization is idempotent and drops zero coefficients") {
  Poly p = parse_expr("Q*inv(Q) + Q_x - 1");
  CHECK(normalize(p) == p);
  Poly zero = p - p;
  CHECK(zero.is_zero());
  CHECK(zero.size() == 0);
}

TEST_CASE("x_derive follows Leibniz and the inverse rule") {
  Poly v = Poly::letter("V");
  CHECK(x_derive(v) == Poly::letter("V", 1));
  CHECK(x_derive(v * v) == parse_expr("V_x*V + V*V_x"));
  CHECK(x_derive(Poly::letter("Q", 0, true)) == parse_expr("-inv(Q)*Q_x*inv(Q)"));
  CHECK(x_derive(Poly(Rational(5))).is_zero());
  CHECK(x_derive(parse_expr("Q*inv(Q)")).is_zero());
}

TEST_CASE("repeated derivation and derivative of a product of three") {
  Poly q = parse_expr("Q*Q*Q");
  Poly d1 = x_derive(q);
  CHECK(d1 == parse_expr("Q_x*Q*Q + Q*Q_x*Q + Q*Q*Q_x"));
  CHECK(x_derive(q, 2) == x_derive(d1));
  CHECK(x_derive(q, 0) == q);
}

TEST_CASE("t_derive under the registered meta rule") {
  EvolutionRule meta{"Q", parse_expr("Q_xxx - 3*Q_xx*inv(Q)*Q_x")};
  CHECK(t_derive(Poly::letter("Q"), meta) == meta.rhs);
  CHECK(t_derive(Poly::letter("Q", 1), meta) == x_derive(meta.rhs));
  // inverse evolves by -Q^{-1} Q_t Q^{-1}
  Poly qi = Poly::letter("Q", 0, true);
  CHECK(t_derive(qi, meta) == -(qi * meta.rhs * qi));
  CHECK_THROWS_AS(t_derive(Poly::letter("W"), meta), UnknownVariableError);
}

TEST_CASE("t_derive commutes with x_derive") {
  EvolutionRule meta{"Q", parse_expr("Q_xxx - 3*Q_xx*inv(Q)*Q_x")};
  Poly p = parse_expr("Q_x*inv(Q)*Q_xx - 2*Q*Q");
  CHECK(t_derive(x_derive(p), meta) == x_derive(t_derive(p, meta)));
}

TEST_CASE("substitution replaces jets by derivatives of the image") {
  Bindings b{{"V", Binding{parse_expr("Q_x*inv(Q)"), std::nullopt}}};
  CHECK(substitute(parse_expr("V_x"), b) ==
        parse_expr("Q_xx*inv(Q) - Q_x*inv(Q)*Q_x*inv(Q)"));
  CHECK(substitute(parse_expr("V*V"), b) == parse_expr("Q_x*inv(Q)*Q_x*inv(Q)"));
  // unbound variables pass through
  CHECK(substitute(parse_expr("W_x"), b) == parse_expr("W_x"));
}

TEST_CASE("substitution of inverses") {
  // single-word order-0 image: inverse derived automatically
  Bindings b{{"S", Binding{parse_expr("Q*P"), std::nullopt}}};
  CHECK(substitute(parse_expr("inv(S)"), b) == parse_expr("inv(P)*inv(Q)"));
  CHECK(substitute(parse_expr("S*inv(S)"), b) == Poly(Rational(1)));

  Bindings scaled{{"S", Binding{parse_expr("2*Q"), std::nullopt}}};
  CHECK(substitute(parse_expr("inv(S)"), scaled) == parse_expr("1/2*inv(Q)"));

  // explicit inverse image wins
  Bindings ex{{"s", Binding{parse_expr("q*q"), parse_expr("inv(q)*inv(q)")}}};
  CHECK(substitute(parse_expr("inv(s)"), ex) == parse_expr("inv(q)*inv(q)"));

  // a sum has no word inverse
  Bindings bad{{"S", Binding{parse_expr("Q + Q_x"), std::nullopt}}};
  CHECK_THROWS_AS(substitute(parse_expr("inv(S)"), bad), NonInvertibleImageError);
}

TEST_CASE("mirror transformation composed twice is the identity") {
  Bindings fwd{{"tQ", Binding{parse_expr("inv(Q)"), std::nullopt}}};
  Bindings back{{"Q", Binding{parse_expr("inv(tQ)"), std::nullopt}}};
  Poly p = parse_expr("tQ_xxx - 3*tQ_x*inv(tQ)*tQ_xx");
  CHECK(substitute(substitute(p, fwd), back) == p);
}

TEST_CASE("formal integration recovers antiderivatives exactly") {
  CHECK(formal_integrate(parse_expr("{V, V_x}")) == parse_expr("V*V"));
  CHECK(formal_integrate(parse_expr("V_xx")) == parse_expr("V_x"));
  CHECK(formal_integrate(parse_expr("V_x*V + V*V_x")) == parse_expr("V*V"));
  CHECK(formal_integrate(Poly()).is_zero());
  // V V_x alone is not an exact derivative in the free algebra
  CHECK_THROWS_AS(formal_integrate(parse_expr("V*V_x")), NotExactDerivativeError);
  // neither is a bare constant
  CHECK_THROWS_AS(formal_integrate(Poly(Rational(1))), NotExactDerivativeError);
}

TEST_CASE("formal integration handles inverse letters") {
  Poly p = x_derive(parse_expr("Q_x*inv(Q)"));
  CHECK(formal_integrate(p) == parse_expr("Q_x*inv(Q)"));
}

TEST_CASE("commutative form collapses letter order and cancels globally") {
  CHECK(commutative_form(parse_expr("q_x*q*inv(q)")) == commutative_form(parse_expr("q_x")));
  CHECK(commutative_form(parse_expr("q*q_x - q_x*q")).is_zero());
  CHECK(commutative_form(parse_expr("[q, q_xx]")).is_zero());
  Poly anti = commutative_form(parse_expr("{V, V_x}"));
  CHECK(anti == commutative_form(parse_expr("2*V*V_x")));
}

TEST_CASE("algebra laws hold on randomized polynomials") {
  GenBounds bounds;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Poly a = random_poly(bounds, 3 * s + 1);
    Poly b = random_poly(bounds, 3 * s + 2);
    Poly c = random_poly(bounds, 3 * s + 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK(x_derive(a * b) == x_derive(a) * b + a * x_derive(b));
    CHECK(x_derive(a + b) == x_derive(a) + x_derive(b));
    CHECK(normalize(a) == a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("formal_integrate inverts x_derive on randomized polynomials") {
  GenBounds bounds;
  for (std::uint64_t s = 1; s <= 100; ++s) {
    Poly p = random_poly(bounds, s);
    Poly d = x_derive(p);
    Poly q = formal_integrate(d);
    CHECK(x_derive(q) == d);
  }
}

TEST_CASE("variables() reports the letter set") {
  Poly p = parse_expr("Q_x*inv(P) + 3*V");
  auto vars = p.variables();
  CHECK(vars == std::set<std::string>{"P", "Q", "V"});
}
