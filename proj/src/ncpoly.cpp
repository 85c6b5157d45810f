#include "nckdv/ncpoly.hpp"

#include <algorithm>
#include <cassert>

namespace nckdv {

namespace {

bool cancels(const Letter& a, const Letter& b) {
  return a.var == b.var && a.order == 0 && b.order == 0 && a.inverted != b.inverted;
}

}  // namespace

Word normalize_word(Word w) {
  Word out;
  out.reserve(w.size());
  for (auto& l : w) {
    if (!out.empty() && cancels(out.back(), l)) {
      out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return out;
}

Poly::Poly(Rational c) {
  if (c != 0) terms_[Word{}] = std::move(c);
}

Poly Poly::letter(const Letter& l) {
  Poly p;
  p.terms_[Word{l}] = 1;
  return p;
}

Poly Poly::letter(std::string var, int order, bool inverted) {
  return letter(Letter{std::move(var), order, inverted});
}

Poly Poly::term(Rational c, Word w) {
  Poly p;
  p.add_term(std::move(c), std::move(w));
  return p;
}

Rational Poly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(Rational c, Word w) {
  if (c == 0) return;
  w = normalize_word(std::move(w));
  auto [it, inserted] = terms_.emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [w, c] : terms_) out.terms_[w] = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [w, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [w, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(w, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(ca * cb, std::move(w));
    }
  }
  return out;
}

Poly operator*(const Rational& c, const Poly& p) {
  Poly out;
  if (c == 0) return out;
  for (const auto& [w, pc] : p.terms_) out.terms_[w] = c * pc;
  return out;
}

std::set<std::string> Poly::variables() const {
  std::set<std::string> vars;
  for (const auto& [w, c] : terms_)
    for (const auto& l : w) vars.insert(l.var);
  return vars;
}

Poly normalize(const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p.terms()) out.add_term(c, w);
  return out;
}

Poly x_derive(const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Letter& l = w[i];
      if (!l.inverted) {
        Word dw = w;
        dw[i].order += 1;
        out.add_term(c, std::move(dw));
      } else {
        // D(u^{-1}) = -u^{-1} u_x u^{-1}
        Word dw(w.begin(), w.begin() + i);
        dw.push_back(l);
        dw.push_back(jet(l.var, 1));
        dw.push_back(l);
        dw.insert(dw.end(), w.begin() + i + 1, w.end());
        out.add_term(-c, std::move(dw));
      }
    }
  }
  return out;
}

Poly x_derive(Poly p, int times) {
  for (int i = 0; i < times; ++i) p = x_derive(p);
  return p;
}

Poly t_derive(const Poly& p, const EvolutionRule& rule) {
  // cache D^k(rhs)
  std::vector<Poly> rhs_jets{rule.rhs};
  auto rhs_jet = [&](int k) -> const Poly& {
    while ((int)rhs_jets.size() <= k) rhs_jets.push_back(x_derive(rhs_jets.back()));
    return rhs_jets[k];
  };

  Poly out;
  for (const auto& [w, c] : p.terms()) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Letter& l = w[i];
      if (l.var != rule.variable)
        throw UnknownVariableError("t_derive: polynomial mentions jets of '" + l.var +
                                   "', rule is for '" + rule.variable + "'");
      Poly prefix = Poly::term(c, Word(w.begin(), w.begin() + i));
      Poly suffix = Poly::term(1, Word(w.begin() + i + 1, w.end()));
      Poly mid;
      if (!l.inverted) {
        mid = rhs_jet(l.order);
      } else {
        // D_t(u^{-1}) = -u^{-1} rhs u^{-1}
        Poly li = Poly::letter(l);
        mid = -(li * rule.rhs * li);
      }
      out += prefix * mid * suffix;
    }
  }
  return out;
}

namespace {

// Derives the inverse of a bound image when it is a single word of
// order-0 letters: the reversed word with toggled inversion flags.
Poly derived_inverse(const std::string& var, const Poly& image) {
  if (image.size() != 1)
    throw NonInvertibleImageError("substitute: no inverse image for '" + var +
                                  "' and image is not a single word");
  const auto& [w, c] = *image.terms().begin();
  Word invw;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (it->order != 0)
      throw NonInvertibleImageError("substitute: image of '" + var +
                                    "' contains a non-invertible jet letter");
    invw.push_back(Letter{it->var, 0, !it->inverted});
  }
  return Poly::term(Rational(1) / c, std::move(invw));
}

}  // namespace

Poly substitute(const Poly& p, const Bindings& bindings) {
  // memoized jets of each image
  std::map<std::string, std::vector<Poly>> jets;
  std::map<std::string, Poly> inverses;

  auto image_jet = [&](const std::string& var, int k) -> const Poly& {
    auto& v = jets[var];
    if (v.empty()) v.push_back(bindings.at(var).image);
    while ((int)v.size() <= k) v.push_back(x_derive(v.back()));
    return v[k];
  };
  auto image_inverse = [&](const std::string& var) -> const Poly& {
    auto it = inverses.find(var);
    if (it != inverses.end()) return it->second;
    const Binding& b = bindings.at(var);
    Poly inv_poly = b.inverse_image ? *b.inverse_image : derived_inverse(var, b.image);
    return inverses.emplace(var, std::move(inv_poly)).first->second;
  };

  Poly out;
  for (const auto& [w, c] : p.terms()) {
    Poly acc{Rational(c)};
    for (const Letter& l : w) {
      if (!bindings.count(l.var)) {
        acc = acc * Poly::letter(l);
      } else if (!l.inverted) {
        acc = acc * image_jet(l.var, l.order);
      } else {
        acc = acc * image_inverse(l.var);
      }
    }
    out += acc;
  }
  return out;
}

namespace {

// Candidate antiderivative words for a word of D's image: lower one letter's
// derivative order. Order-0 letters and inverses are skipped.
void add_candidates(const Word& w, std::set<Word>& basis, bool& grew) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].inverted || w[i].order < 1) continue;
    Word c = w;
    c[i].order -= 1;
    c = normalize_word(std::move(c));
    if (basis.insert(std::move(c)).second) grew = true;
  }
}

// Exact linear solve for D(sum c_i w_i) = p over the given basis.
std::optional<Poly> try_solve(const std::vector<Word>& basis, const Poly& p) {
  // row space: every word appearing in p or in some D(w_i)
  std::map<Word, std::size_t> row_of;
  std::vector<Poly> images;
  images.reserve(basis.size());
  for (const auto& w : basis) {
    images.push_back(x_derive(Poly::term(1, w)));
    for (const auto& [iw, ic] : images.back().terms())
      row_of.emplace(iw, row_of.size());
  }
  for (const auto& [pw, pc] : p.terms()) row_of.emplace(pw, row_of.size());

  const std::size_t m = row_of.size(), n = basis.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1, Rational(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [iw, ic] : images[j].terms()) a[row_of[iw]][j] = ic;
  for (const auto& [pw, pc] : p.terms()) a[row_of[pw]][n] = pc;

  // Gaussian elimination
  std::vector<std::size_t> pivot_col(m, n + 1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = m;
    for (std::size_t r = rank; r < m; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv == m) continue;
    std::swap(a[rank], a[piv]);
    Rational inv_p = Rational(1) / a[rank][col];
    for (std::size_t k = col; k <= n; ++k) a[rank][k] *= inv_p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[rank][k];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r)
    if (a[r][n] != 0) return std::nullopt;  // inconsistent

  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = a[r][n];

  Poly q;
  for (std::size_t j = 0; j < n; ++j)
    if (x[j] != 0) q.add_term(x[j], basis[j]);
  if (!(x_derive(q) == p)) return std::nullopt;
  return q;
}

}  // namespace

Poly formal_integrate(const Poly& p) {
  if (p.is_zero()) return Poly{};

  std::set<Word> basis;
  bool grew = false;
  for (const auto& [w, c] : p.terms()) add_candidates(w, basis, grew);

  // D preserves the per-variable weight grading, so the candidate space stays
  // finite; one decrement pass can miss antiderivative words whose derivative
  // images cancel inside p (e.g. V_x*V_x behind {V, V_xxx}), hence the
  // enrichment loop: also lower orders in the derivative images of current
  // candidates, until a fixed point or a solution.
  for (int round = 0; round < 16; ++round) {
    std::vector<Word> basis_vec(basis.begin(), basis.end());
    if (auto q = try_solve(basis_vec, p)) return *q;

    grew = false;
    for (const auto& w : basis_vec) {
      Poly dw = x_derive(Poly::term(1, w));
      for (const auto& [iw, ic] : dw.terms()) add_candidates(iw, basis, grew);
    }
    if (!grew) break;
  }
  throw NotExactDerivativeError("formal_integrate: input is not an exact x-derivative");
}

Poly commutative_form(const Poly& p) {
  Poly out;
  for (const auto& [w, c] : p.terms()) {
    std::map<std::pair<std::string, int>, int> exps;
    for (const auto& l : w) exps[{l.var, l.order}] += l.inverted ? -1 : 1;
    Word cw;
    for (const auto& [key, e] : exps) {
      if (e > 0) {
        for (int k = 0; k < e; ++k) cw.push_back(jet(key.first, key.second));
      } else if (e < 0) {
        assert(key.second == 0 && "negative exponent on a derivative letter");
        for (int k = 0; k < -e; ++k) cw.push_back(inv(key.first));
      }
    }
    out.add_term(c, std::move(cw));
  }
  return out;
}

}  // namespace nckdv
