#include "mvmom/polynomial.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mvmom {

namespace {

// Merges two canonical term ranges into one, combining b-terms transformed by
// (mono shift, coefficient factor). The shift preserves lex order, so the
// transformed range stays sorted.
std::vector<Term> merge_terms(const std::vector<Term>& a,
                              const std::vector<Term>& b, const Monomial& shift,
                              const Rational& factor) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t x = 0, y = 0;
  auto b_mono = [&](size_t i) { return b[i].mono * shift; };
  while (x < a.size() && y < b.size()) {
    Monomial bm = b_mono(y);
    int c = Monomial::lex_cmp(a[x].mono, bm);
    if (c > 0) {
      out.push_back(a[x++]);
    } else if (c < 0) {
      out.push_back({std::move(bm), b[y].coef * factor});
      ++y;
    } else {
      Rational s = a[x].coef + b[y].coef * factor;
      if (!s.is_zero()) out.push_back({a[x].mono, std::move(s)});
      ++x;
      ++y;
    }
  }
  for (; x < a.size(); ++x) out.push_back(a[x]);
  for (; y < b.size(); ++y) out.push_back({b_mono(y), b[y].coef * factor});
  return out;
}

}  // namespace

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return Monomial::lex_cmp(a.mono, b.mono) > 0;
  });
  Polynomial p;
  for (auto& t : terms) {
    if (t.coef.is_zero()) continue;
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef.is_zero()) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

uint64_t Polynomial::total_degree() const {
  uint64_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero");
  return terms_.front();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  terms_ = merge_terms(terms_, o.terms_, Monomial(), Rational(1));
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  terms_ = merge_terms(terms_, o.terms_, Monomial(), Rational(-1));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (auto& ta : a.terms_)
    for (auto& tb : b.terms_)
      prods.push_back({ta.mono * tb.mono, ta.coef * tb.coef});
  return Polynomial::from_terms(std::move(prods));
}

void Polynomial::scale(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return;
  }
  for (auto& t : terms_) t.coef *= c;
}

void Polynomial::add_scaled(const Polynomial& other, const Monomial& mono,
                            const Rational& c) {
  if (c.is_zero() || other.is_zero()) return;
  terms_ = merge_terms(terms_, other.terms_, mono, c);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono ||
        a.terms_[i].coef != b.terms_[i].coef)
      return false;
  }
  return true;
}

Rational Polynomial::coeff(const Monomial& m) const {
  // Terms are sorted; binary search by lex order.
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
        return Monomial::lex_cmp(t.mono, key) > 0;
      });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return Rational(0);
}

Rational Polynomial::eval(
    const std::vector<std::pair<Var, Rational>>& assign) const {
  auto lookup = [&](Var v) -> const Rational* {
    for (auto& [w, val] : assign)
      if (w == v) return &val;
    return nullptr;
  };
  Rational acc(0);
  for (auto& t : terms_) {
    Rational prod = t.coef;
    for (auto& [v, e] : t.mono.parts()) {
      const Rational* val = lookup(v);
      if (!val) {
        throw std::invalid_argument("eval: no value assigned to " + v.name());
      }
      prod *= Rational::pow(*val, static_cast<long>(e));
    }
    acc += prod;
  }
  return acc;
}

Polynomial Polynomial::substitute(
    const std::vector<std::pair<Var, Rational>>& assign) const {
  auto lookup = [&](Var v) -> const Rational* {
    for (auto& [w, val] : assign)
      if (w == v) return &val;
    return nullptr;
  };
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    Rational c = t.coef;
    std::vector<std::pair<Var, uint32_t>> keep;
    for (auto& [v, e] : t.mono.parts()) {
      if (const Rational* val = lookup(v)) {
        c *= Rational::pow(*val, static_cast<long>(e));
      } else {
        keep.emplace_back(v, e);
      }
    }
    out.push_back({Monomial::from_parts(std::move(keep)), std::move(c)});
  }
  return from_terms(std::move(out));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Polynomial();
  if (o.is_constant()) {
    Polynomial q(*this);
    q.scale(o.constant_value().inverse());
    return q;
  }
  Polynomial rem(*this);
  std::vector<Term> quot;
  const Term& lead = o.leading_term();
  while (!rem.is_zero()) {
    Monomial qm;
    if (!rem.leading_term().mono.try_divide(lead.mono, qm)) return std::nullopt;
    Rational qc = rem.leading_term().coef / lead.coef;
    rem.add_scaled(o, qm, -qc);
    quot.push_back({std::move(qm), std::move(qc)});
  }
  return from_terms(std::move(quot));
}

std::vector<Var> Polynomial::variables() const {
  std::vector<Var> vars;
  for (auto& t : terms_) {
    for (auto& [v, e] : t.mono.parts()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
  }
  std::sort(vars.begin(), vars.end());
  return vars;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms_) {
    Rational c = t.coef;
    bool negative = c.sign() < 0;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    Rational a = c.abs();
    if (t.mono.is_unit()) {
      out += a.str();
    } else {
      if (!a.is_one()) out += a.str() + "*";
      out += t.mono.str();
    }
  }
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos == s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("polynomial parse error at position " +
                                std::to_string(pos) + ": " + why);
  }

  std::string digits() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected digits");
    return std::string(s.substr(start, pos - start));
  }

  Rational number() {
    std::string num = digits();
    if (accept('/')) return Rational(num + "/" + digits());
    return Rational(num);
  }

  Var var_name() {
    ++pos;  // consume 'c'
    std::string d = digits();
    if (pos < s.size() && s[pos] == '_') {
      ++pos;
      return Var(std::stoi(d), std::stoi(digits()));
    }
    if (d.size() != 2) fail("variable needs two indices, e.g. c12 or c1_12");
    return Var(d[0] - '0', d[1] - '0');
  }

  // factor := number | var ['^' digits]
  void factor(Rational& coef, std::vector<std::pair<Var, uint32_t>>& parts) {
    char c = peek();
    if (c == 'c') {
      Var v = var_name();
      uint32_t e = 1;
      if (accept('^')) e = static_cast<uint32_t>(std::stoul(digits()));
      parts.emplace_back(v, e);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      coef *= number();
    } else {
      fail("expected a number or a variable");
    }
  }

  Term term() {
    Rational coef(1);
    std::vector<std::pair<Var, uint32_t>> parts;
    factor(coef, parts);
    while (accept('*')) factor(coef, parts);
    return {Monomial::from_parts(std::move(parts)), std::move(coef)};
  }

  Polynomial poly() {
    std::vector<Term> terms;
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    while (true) {
      Term t = term();
      if (neg) t.coef.neg();
      terms.push_back(std::move(t));
      if (eof()) break;
      if (accept('+'))
        neg = false;
      else if (accept('-'))
        neg = true;
      else
        fail("expected '+' or '-' between terms");
    }
    return Polynomial::from_terms(std::move(terms));
  }
};

Var var_from_name(const std::string& name) {
  if (name.size() < 3 || name[0] != 'c')
    throw std::invalid_argument("bad variable name: " + name);
  Parser p{name, 0};
  return p.var_name();
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  Parser p{text, 0};
  if (p.eof()) throw std::invalid_argument("empty polynomial text");
  if (p.peek() == '0') {
    size_t save = p.pos;
    ++p.pos;
    if (p.eof()) return Polynomial();
    p.pos = save;
  }
  return p.poly();
}

std::string Polynomial::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& t : terms_) {
    nlohmann::ordered_json exps = nlohmann::ordered_json::object();
    for (auto& [v, e] : t.mono.parts()) exps[v.name()] = e;
    arr.push_back({{"coeff", t.coef.str()}, {"exps", std::move(exps)}});
  }
  return arr.dump();
}

Polynomial Polynomial::from_json(std::string_view json_text) {
  try {
    nlohmann::json arr = nlohmann::json::parse(json_text);
    if (!arr.is_array())
      throw std::invalid_argument("polynomial json must be an array");
    std::vector<Term> terms;
    for (auto& item : arr) {
      Rational coef(item.at("coeff").get<std::string>());
      std::vector<std::pair<Var, uint32_t>> parts;
      for (auto& [key, val] : item.at("exps").items()) {
        parts.emplace_back(var_from_name(key), val.get<uint32_t>());
      }
      terms.push_back(
          {Monomial::from_parts(std::move(parts)), std::move(coef)});
    }
    return from_terms(std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad polynomial json: ") +
                                e.what());
  }
}

}  // namespace mvmom
