#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvmom/monomial.hpp"
#include "mvmom/rational.hpp"

namespace mvmom {

struct Term {
  Monomial mono;
  Rational coef;
};

// Sparse multivariate polynomial over Q in the correlation variables c_ij.
// Invariants: terms sorted in descending pure-lex order, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit by design
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
  }
  Polynomial(long v) : Polynomial(Rational(v)) {}  // NOLINT
  static Polynomial variable(Var v) {
    Polynomial p;
    p.terms_.push_back({Monomial(v), Rational(1)});
    return p;
  }
  static Polynomial term(Monomial m, Rational c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  // Builds from unsorted terms, merging duplicates and dropping zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_[0].mono.is_unit() &&
           terms_[0].coef.is_one();
  }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  uint64_t total_degree() const;
  // Constant value; exact only when is_constant().
  Rational constant_value() const {
    return terms_.empty() ? Rational(0) : terms_[0].coef;
  }
  const Term& leading_term() const;  // throws on zero polynomial

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a.negate(), a; }
  void negate() {
    for (auto& t : terms_) t.coef.neg();
  }

  void scale(const Rational& c);
  // *this += other * mono * c, a single ordered merge.
  void add_scaled(const Polynomial& other, const Monomial& mono,
                  const Rational& c);

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  // Coefficient of an exact monomial (0 when absent).
  Rational coeff(const Monomial& m) const;

  // Full evaluation; every variable occurring in the polynomial must be
  // assigned or std::invalid_argument is thrown.  Assignments are
  // (var, value) pairs.
  Rational eval(const std::vector<std::pair<Var, Rational>>& assign) const;

  // Substitutes values for a subset of variables, keeping the rest symbolic.
  Polynomial substitute(
      const std::vector<std::pair<Var, Rational>>& assign) const;

  // Exact division: returns nullopt unless o divides *this exactly.
  // A zero divisor throws std::domain_error.
  std::optional<Polynomial> divide_exact(const Polynomial& o) const;

  // Variables occurring with positive exponent, ascending.
  std::vector<Var> variables() const;

  // Canonical text form: terms in descending lex order joined with " + " /
  // " - ", e.g. "6*c12^3 + 9*c12", "3/2*c13 - 1".  Zero prints "0".
  std::string str() const;
  // Inverse of str(); also accepts redundant whitespace, explicit "+" signs,
  // "^1" exponents and "1*" coefficients. Throws std::invalid_argument.
  static Polynomial parse(std::string_view text);

  // JSON round-trip: list of {"coeff": "p/q", "exps": {"c12": 3, ...}} in
  // canonical term order.
  std::string to_json() const;
  static Polynomial from_json(std::string_view json_text);

 private:
  std::vector<Term> terms_;
};

}  // namespace mvmom
