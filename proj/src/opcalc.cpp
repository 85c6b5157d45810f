#include "nckdv/opcalc.hpp"

#include <random>

#include "nckdv/parser.hpp"

namespace nckdv {

namespace {

OpPtr make(Op op) { return std::make_shared<const Op>(std::move(op)); }

Poly conj_inverse(const Op& op) {
  if (op.a_inv) return *op.a_inv;
  Bindings b{{"#", Binding{op.a, std::nullopt}}};
  // reuse the substitution machinery's single-word inverse derivation
  return substitute(Poly::letter("#", 0, true), b);
}

}  // namespace

OpPtr op_d() { return make({Op::Kind::D}); }
OpPtr op_dinv() { return make({Op::Kind::Dinv}); }
OpPtr op_left(Poly a) { return make({Op::Kind::Left, std::move(a)}); }
OpPtr op_right(Poly a) { return make({Op::Kind::Right, std::move(a)}); }
OpPtr op_comm(Poly a) { return make({Op::Kind::Comm, std::move(a)}); }
OpPtr op_anti(Poly a) { return make({Op::Kind::Anti, std::move(a)}); }
OpPtr op_conj(Poly a, std::optional<Poly> a_inv) {
  return make({Op::Kind::Conj, std::move(a), std::move(a_inv)});
}
OpPtr op_identity() { return make({Op::Kind::Identity}); }
OpPtr op_compose(std::vector<OpPtr> fs) {
  Op op{Op::Kind::Compose};
  op.kids = std::move(fs);
  return make(std::move(op));
}
OpPtr op_sum(std::vector<OpPtr> fs) {
  Op op{Op::Kind::Sum};
  op.kids = std::move(fs);
  return make(std::move(op));
}
OpPtr op_scale(Rational c, OpPtr f) {
  Op op{Op::Kind::Scale};
  op.c = std::move(c);
  op.kids = {std::move(f)};
  return make(std::move(op));
}
OpPtr op_power(OpPtr f, int n) {
  Op op{Op::Kind::Power};
  op.kids = {std::move(f)};
  op.n = n;
  return make(std::move(op));
}
OpPtr op_inverse(OpPtr f) {
  Op op{Op::Kind::Inverse};
  op.kids = {std::move(f)};
  return make(std::move(op));
}

Poly apply(const OpPtr& op, const Poly& p) {
  switch (op->kind) {
    case Op::Kind::D:
      return x_derive(p);
    case Op::Kind::Dinv:
      return formal_integrate(p);
    case Op::Kind::Left:
      return op->a * p;
    case Op::Kind::Right:
      return p * op->a;
    case Op::Kind::Comm:
      return op->a * p - p * op->a;
    case Op::Kind::Anti:
      return op->a * p + p * op->a;
    case Op::Kind::Conj: {
      Poly ai = conj_inverse(*op);
      return ai * p * op->a;
    }
    case Op::Kind::Identity:
      return p;
    case Op::Kind::Compose: {
      Poly acc = p;
      for (auto it = op->kids.rbegin(); it != op->kids.rend(); ++it) acc = nckdv::apply(*it, acc);
      return acc;
    }
    case Op::Kind::Sum: {
      Poly acc;
      for (const auto& k : op->kids) acc += nckdv::apply(k, p);
      return acc;
    }
    case Op::Kind::Scale:
      return op->c * nckdv::apply(op->kids[0], p);
    case Op::Kind::Power: {
      Poly acc = p;
      for (int i = 0; i < op->n; ++i) acc = nckdv::apply(op->kids[0], acc);
      return acc;
    }
    case Op::Kind::Inverse:
      throw Error("apply: formal operator inverse cannot be applied directly; "
                  "use the multiplied-out form");
  }
  throw Error("apply: unreachable");
}

namespace {

bool is_additive(const OpPtr& op) {
  return op->kind == Op::Kind::Sum || op->kind == Op::Kind::Scale;
}

std::string print_factor(const OpPtr& op) {
  std::string s = print_op(op);
  if (is_additive(op)) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_op(const OpPtr& op) {
  switch (op->kind) {
    case Op::Kind::D:
      return "D";
    case Op::Kind::Dinv:
      return "D^{-1}";
    case Op::Kind::Left:
      return "L_" + notation(op->a);
    case Op::Kind::Right:
      return "R_" + notation(op->a);
    case Op::Kind::Comm:
      return "C_" + notation(op->a);
    case Op::Kind::Anti:
      return "A_" + notation(op->a);
    case Op::Kind::Conj:
      return "K_" + notation(op->a);
    case Op::Kind::Identity:
      return "Id";
    case Op::Kind::Compose: {
      std::string out;
      for (std::size_t i = 0; i < op->kids.size(); ++i) {
        if (i) out += " ";
        out += print_factor(op->kids[i]);
      }
      return out;
    }
    case Op::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < op->kids.size(); ++i) {
        const auto& k = op->kids[i];
        if (k->kind == Op::Kind::Scale && k->c == -1) {
          out += (i ? " - " : "-");
          out += print_factor(k->kids[0]);
        } else {
          if (i) out += " + ";
          out += print_op(k);
        }
      }
      return out;
    }
    case Op::Kind::Scale:
      return rational_to_string(op->c) + " " + print_factor(op->kids[0]);
    case Op::Kind::Power:
      return print_factor(op->kids[0]) + "^" + std::to_string(op->n);
    case Op::Kind::Inverse: {
      const auto& k = op->kids[0];
      std::string body = print_op(k);
      if (k->kind != Op::Kind::Compose && !is_additive(k) && k->kind != Op::Kind::Power)
        return body + "^{-1}";
      return "(" + body + ")^{-1}";
    }
  }
  return "?";
}

namespace {

Poly L(const std::string& var, int order = 0, bool inverted = false) {
  return Poly::letter(var, order, inverted);
}

}  // namespace

OpPtr build_recursion(const std::string& eq_id) {
  if (eq_id == "mkdv") {
    Poly V = L("V");
    return op_compose({
        op_sub(op_d(), op_compose({op_comm(V), op_dinv(), op_comm(V)})),
        op_sub(op_d(), op_compose({op_anti(V), op_dinv(), op_anti(V)})),
    });
  }
  if (eq_id == "amkdv") {
    Poly tV = L("tV");
    OpPtr Dt = op_sum({op_d(), op_comm(tV)});
    OpPtr Dt_inv = op_inverse(Dt);
    return op_compose({
        op_sum({Dt, op_comm(tV)}),
        op_sub(Dt, op_anti(tV)),
        Dt_inv,
        op_sum({Dt, op_anti(tV)}),
        op_sub(Dt, op_comm(tV)),
        Dt_inv,
    });
  }
  if (eq_id == "meta") {
    Poly V = L("Q", 1) * L("Q", 0, true);  // Q_x Q^{-1}
    return op_compose({
        op_right(L("Q")),
        op_dinv(),
        op_sum({op_d(), op_comm(V)}),
        op_sub(op_d(), op_compose({op_anti(V), op_dinv(), op_anti(V)})),
        op_sub(op_d(), op_comm(V)),
        op_right(L("Q", 0, true)),
    });
  }
  if (eq_id == "mirror_meta") {
    Poly W = L("tQ", 0, true) * L("tQ", 1);  // tQ^{-1} tQ_x
    return op_compose({
        op_left(L("tQ")),
        op_dinv(),
        op_sub(op_d(), op_comm(W)),
        op_sub(op_d(), op_compose({op_anti(W), op_dinv(), op_anti(W)})),
        op_sum({op_d(), op_comm(W)}),
        op_left(L("tQ", 0, true)),
    });
  }
  if (eq_id == "meta_alt") {
    Poly W = L("Q", 0, true) * L("Q", 1);  // Q^{-1} Q_x
    OpPtr DD = op_sum({op_d(), op_comm(W)});
    OpPtr DD_inv = op_inverse(DD);
    return op_compose({
        op_left(L("Q")),
        DD_inv,
        op_sum({DD, op_comm(W)}),
        op_sub(DD, op_compose({op_anti(W), DD_inv, op_anti(W)})),
        op_sub(DD, op_comm(W)),
        op_left(L("Q", 0, true)),
    });
  }
  if (eq_id == "mirror_meta_alt") {
    Poly W = L("tQ", 1) * L("tQ", 0, true);  // tQ_x tQ^{-1}
    OpPtr DDt = op_sub(op_d(), op_comm(W));
    OpPtr DDt_inv = op_inverse(DDt);
    return op_compose({
        op_right(L("tQ")),
        DDt_inv,
        op_sub(DDt, op_comm(W)),
        op_sub(DDt, op_compose({op_anti(W), DDt_inv, op_anti(W)})),
        op_sum({DDt, op_comm(W)}),
        op_right(L("tQ", 0, true)),
    });
  }
  throw UnknownEquationError("build_recursion: unknown equation '" + eq_id + "'");
}

Poly hierarchy_rhs(const std::string& eq_id, int n) {
  if (n < 1) throw Error("hierarchy_rhs: n must be >= 1");
  Poly p;
  if (eq_id == "meta") {
    p = L("Q", 1);
  } else if (eq_id == "mkdv") {
    p = L("V", 1);
  } else {
    throw UnknownEquationError("hierarchy_rhs: unknown equation '" + eq_id + "'");
  }
  OpPtr phi = build_recursion(eq_id);
  for (int i = 1; i < n; ++i) p = nckdv::apply(phi, p);
  return p;
}

Poly random_poly(const GenBounds& bounds, std::uint64_t seed, const std::string& var) {
  std::mt19937_64 rng(seed);
  Poly p;
  if (bounds.max_terms <= 0) return p;
  std::uniform_int_distribution<int> nterms(1, bounds.max_terms);
  std::uniform_int_distribution<int> wlen(0, bounds.max_word_len);
  std::uniform_int_distribution<int> order(0, bounds.max_order);
  std::uniform_int_distribution<int> coeff(1, 2 * bounds.coeff_range);
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Word w;
    int len = wlen(rng);
    for (int i = 0; i < len; ++i) w.push_back(jet(var, order(rng)));
    int c = coeff(rng) - bounds.coeff_range;  // in [1-r, r] \ handled below
    if (c <= 0) c -= 1;                       // skip zero, range [-r, r]\{0}
    p.add_term(Rational(c), std::move(w));
  }
  return p;
}

VerificationReport check_operator_identity(const IdentityCheckSpec& spec) {
  VerificationReport rep;
  rep.claim = spec.claim;
  rep.paper_ref = spec.paper_ref;
  rep.trials = spec.trials;
  rep.status = VerificationReport::Status::pass;
  if (spec.trials < 1) {
    rep.status = VerificationReport::Status::skipped;
    rep.notes = "no trials requested";
    return rep;
  }
  for (int t = 0; t < spec.trials; ++t) {
    Poly arg = random_poly(spec.bounds, spec.seed * 1000003ULL + (std::uint64_t)t);
    std::vector<std::pair<OpPtr, OpPtr>> sides{{spec.lhs, spec.rhs}};
    if (spec.lhs2 && spec.rhs2) sides.push_back({spec.lhs2, spec.rhs2});
    for (const auto& [lhs, rhs] : sides) {
      Poly diff = substitute(nckdv::apply(lhs, arg), spec.constraint) -
                  substitute(nckdv::apply(rhs, arg), spec.constraint);
      if (!diff.is_zero()) {
        rep.status = VerificationReport::Status::fail;
        rep.witness = to_string(diff);
        rep.trials = t + 1;
        rep.notes = "argument: " + to_string(arg);
        return rep;
      }
    }
  }
  rep.residual = 0.0;
  return rep;
}

std::vector<IdentityCheckSpec> standard_identity_suite() {
  std::vector<IdentityCheckSpec> specs;

  Poly Q = L("Q"), Qx = L("Q", 1), Qinv = L("Q", 0, true);
  Poly S = L("S"), Sx = L("S", 1), Sinv = L("S", 0, true);
  Poly V = L("V"), T = L("T"), tV = L("tV");

  {
    IdentityCheckSpec s;
    s.claim = "lemma_identity";
    s.paper_ref = "transformation-operator identity (D-L_V) R_Q = R_Q (D-C_V) under Q_x = VQ";
    s.lhs = op_compose({op_sub(op_d(), op_left(V)), op_right(Q)});
    s.rhs = op_compose({op_right(Q), op_sub(op_d(), op_comm(V))});
    s.constraint = {{"V", Binding{Qx * Qinv, std::nullopt}}};
    specs.push_back(std::move(s));
  }
  {
    IdentityCheckSpec s;
    s.claim = "lemma_C1a";
    s.paper_ref = "(D+L_T) R_S = R_S (D+C_T) for T = -S_x S^{-1}";
    s.lhs = op_compose({op_sum({op_d(), op_left(T)}), op_right(S)});
    s.rhs = op_compose({op_right(S), op_sum({op_d(), op_comm(T)})});
    s.constraint = {{"T", Binding{-(Sx * Sinv), std::nullopt}}};
    specs.push_back(std::move(s));
  }
  {
    IdentityCheckSpec s;
    s.claim = "lemma_C1b";
    s.paper_ref = "(D+R_T) L_S = L_S (D-C_T) for T = -S^{-1} S_x";
    s.lhs = op_compose({op_sum({op_d(), op_right(T)}), op_left(S)});
    s.rhs = op_compose({op_left(S), op_sub(op_d(), op_comm(T))});
    s.constraint = {{"T", Binding{-(Sinv * Sx), std::nullopt}}};
    specs.push_back(std::move(s));
  }
  {
    IdentityCheckSpec s;
    s.claim = "prop_conj_a";
    s.paper_ref = "conjugation intertwines derivations: K_Q D K_Q^{-1} = D + C_{Q^{-1}Q_x}";
    s.lhs = op_compose({op_conj(Q), op_d(), op_conj(Qinv)});
    s.rhs = op_sum({op_d(), op_comm(tV)});
    s.constraint = {{"tV", Binding{Qinv * Qx, std::nullopt}}};
    specs.push_back(std::move(s));
  }
  {
    IdentityCheckSpec s;
    s.claim = "prop_conj_b";
    s.paper_ref = "K_Q C_V K_{Q^{-1}} = C_{tV} and K_Q A_V K_{Q^{-1}} = A_{tV} "
                  "for V = Q_x Q^{-1}, tV = Q^{-1} Q_x";
    s.lhs = op_compose({op_conj(Q), op_comm(V), op_conj(Qinv)});
    s.rhs = op_comm(tV);
    s.lhs2 = op_compose({op_conj(Q), op_anti(V), op_conj(Qinv)});
    s.rhs2 = op_anti(tV);
    s.constraint = {{"V", Binding{Qx * Qinv, std::nullopt}},
                    {"tV", Binding{Qinv * Qx, std::nullopt}}};
    specs.push_back(std::move(s));
  }
  return specs;
}

VerificationReport hierarchy_consistency(int n) {
  VerificationReport rep;
  rep.claim = "hier_consistency_n" + std::to_string(n);
  rep.paper_ref = "hierarchy transfer: V_t = R_{Q^{-1}}(D-L_V) Q_t links the mKdV and "
                  "meta-mKdV hierarchy members at level " + std::to_string(n);

  Poly V = L("Q", 1) * L("Q", 0, true);
  Poly meta_n = hierarchy_rhs("meta", n);
  Poly mkdv_n = hierarchy_rhs("mkdv", n);

  Poly lhs = substitute(mkdv_n, {{"V", Binding{V, std::nullopt}}});
  Poly rhs = (x_derive(meta_n) - V * meta_n) * L("Q", 0, true);
  Poly diff = lhs - rhs;
  if (diff.is_zero()) {
    rep.status = VerificationReport::Status::pass;
    rep.residual = 0.0;
  } else {
    rep.status = VerificationReport::Status::fail;
    rep.witness = to_string(diff);
  }
  return rep;
}

}  // namespace nckdv
