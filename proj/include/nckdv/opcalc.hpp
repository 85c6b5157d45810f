#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nckdv/ncpoly.hpp"
#include "nckdv/report.hpp"

namespace nckdv {

// Tree of primitive linear operators on the free differential algebra.
// Compose applies right-to-left; Dinv integrates formally and fails on
// arguments outside the image of D. Inverse is a formal inverse of a
// derivation-like child, used only for display of the twisted-derivation
// operator forms; applying it throws.
struct Op;
using OpPtr = std::shared_ptr<const Op>;

struct Op {
  enum class Kind {
    D, Dinv, Left, Right, Comm, Anti, Conj, Identity,
    Compose, Sum, Scale, Power, Inverse
  };

  Kind kind;
  Poly a;                            // Left/Right/Comm/Anti/Conj operand
  std::optional<Poly> a_inv;         // explicit inverse for Conj
  Rational c{1};                     // Scale factor
  std::vector<OpPtr> kids;
  int n = 0;                         // Power exponent
};

OpPtr op_d();
OpPtr op_dinv();
OpPtr op_left(Poly a);
OpPtr op_right(Poly a);
OpPtr op_comm(Poly a);
OpPtr op_anti(Poly a);
OpPtr op_conj(Poly a, std::optional<Poly> a_inv = std::nullopt);
OpPtr op_identity();
OpPtr op_compose(std::vector<OpPtr> fs);
OpPtr op_sum(std::vector<OpPtr> fs);
OpPtr op_scale(Rational c, OpPtr f);
OpPtr op_power(OpPtr f, int n);
OpPtr op_inverse(OpPtr f);
inline OpPtr op_sub(OpPtr a, OpPtr b) { return op_sum({std::move(a), op_scale(-1, std::move(b))}); }

Poly apply(const OpPtr& op, const Poly& p);

// Rendering in the usual operator notation (D, D^{-1}, C_V, A_V, L_Q, R_Q, K_Q).
std::string print_op(const OpPtr& op);

// Recursion operators in their factored printed forms.
// eq_id in {mkdv, amkdv, meta, mirror_meta, meta_alt, mirror_meta_alt}.
OpPtr build_recursion(const std::string& eq_id);

// n-th member right-hand side of the meta-mKdV or mKdV hierarchy,
// Phi(Q)^{n-1} Q_x resp. Psi(V)^{n-1} V_x. n >= 1.
Poly hierarchy_rhs(const std::string& eq_id, int n);

struct GenBounds {
  int max_terms = 4;
  int max_word_len = 3;
  int max_order = 3;
  int coeff_range = 5;
};

// Deterministic random polynomial in jets of one variable.
Poly random_poly(const GenBounds& bounds, std::uint64_t seed, const std::string& var = "P");

struct IdentityCheckSpec {
  std::string claim;
  std::string paper_ref;
  OpPtr lhs;
  OpPtr rhs;
  OpPtr lhs2, rhs2;      // optional second identity under the same claim
  Bindings constraint;   // side condition, substituted into both sides
  int trials = 20;
  std::uint64_t seed = 1;
  GenBounds bounds;
};

// Exact evaluation of lhs and rhs on randomized arguments; pass iff every
// normalized difference is the zero polynomial.
VerificationReport check_operator_identity(const IdentityCheckSpec& spec);

// The operator identities shipped with the verification suite:
// lemma_identity, lemma_C1a, lemma_C1b, prop_conj_a, prop_conj_b.
std::vector<IdentityCheckSpec> standard_identity_suite();

// Exact cross-check of the two hierarchy routes at level n:
// substituting V = Q_x Q^{-1} into the mKdV member must equal
// R_{Q^{-1}}(D - L_V) applied to the meta member.
VerificationReport hierarchy_consistency(int n);

}  // namespace nckdv
