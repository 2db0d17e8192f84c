#include "mvmom/rational.hpp"

#include <deque>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace mvmom {

namespace {

std::string mpz_to_string(mpz_srcptr z) {
  std::string out(mpz_sizeinbase(z, 10) + 2, '\0');
  mpz_get_str(out.data(), 10, z);
  out.resize(out.find('\0'));
  return out;
}

void mpz_from_string(mpz_ptr z, std::string_view text) {
  std::string buf(text);
  if (buf.empty() || mpz_set_str(z, buf.c_str(), 10) != 0) {
    throw std::invalid_argument("bad integer literal: '" + buf + "'");
  }
}

}  // namespace

Integer::Integer(std::string_view text) {
  mpz_init(z_);
  mpz_from_string(z_, text);
}

Integer Integer::factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.z_, n);
  return r;
}

Integer Integer::double_factorial(long n) {
  Integer r(1);
  for (long v = n; v >= 2; v -= 2) r.mul_ui(static_cast<unsigned long>(v));
  return r;
}

Integer Integer::pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.z_, base.z_, e);
  return r;
}

Integer Integer::binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.z_, n, k);
  return r;
}

std::string Integer::str() const { return mpz_to_string(z_); }

size_t Integer::digits10() const {
  const size_t upper = mpz_sizeinbase(z_, 10);
  if (upper <= 1) return upper;
  // sizeinbase is exact or one high; settle it with one comparison to 10^(u-1)
  mpz_t bound;
  mpz_init(bound);
  mpz_ui_pow_ui(bound, 10, upper - 1);
  const bool exact = mpz_cmpabs(z_, bound) >= 0;
  mpz_clear(bound);
  return exact ? upper : upper - 1;
}

uint64_t Integer::mod_u64(uint64_t m) const {
  mpz_t mm, r;
  mpz_init_set_ui(mm, m);
  mpz_init(r);
  mpz_mod(r, z_, mm);
  uint64_t out = mpz_get_ui(r);
  mpz_clear(mm);
  mpz_clear(r);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Integer& v) {
  return os << v.str();
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_init(q_);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpq_set_si(q_, num, static_cast<unsigned long>(den));
  mpq_canonicalize(q_);
}

Rational::Rational(const Integer& num) {
  mpq_init(q_);
  mpq_set_z(q_, num.raw());
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  mpq_init(q_);
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  if (mpz_sgn(mpq_denref(q_)) < 0) {
    mpz_neg(mpq_numref(q_), mpq_numref(q_));
    mpz_neg(mpq_denref(q_), mpq_denref(q_));
  }
  mpq_canonicalize(q_);
}

Rational::Rational(std::string_view text) {
  mpq_init(q_);
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      mpz_from_string(mpq_numref(q_), text);
    } else {
      mpz_from_string(mpq_numref(q_), text.substr(0, slash));
      mpz_from_string(mpq_denref(q_), text.substr(slash + 1));
      if (mpz_sgn(mpq_denref(q_)) == 0) {
        throw std::invalid_argument("zero denominator");
      }
      if (mpz_sgn(mpq_denref(q_)) < 0) {
        mpz_neg(mpq_numref(q_), mpq_numref(q_));
        mpz_neg(mpq_denref(q_), mpq_denref(q_));
      }
      mpq_canonicalize(q_);
    }
  } catch (...) {
    mpq_clear(q_);
    throw;
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  mpq_div(q_, q_, o.q_);
  return *this;
}

Rational& Rational::mul_si(long v) {
  mpq_t t;
  mpq_init(t);
  mpq_set_si(t, v, 1);
  mpq_mul(q_, q_, t);
  mpq_clear(t);
  return *this;
}

void Rational::add_mul(const Rational& a, const Rational& b) {
  mpq_t t;
  mpq_init(t);
  mpq_mul(t, a.q_, b.q_);
  mpq_add(q_, q_, t);
  mpq_clear(t);
}

Integer Rational::numerator() const {
  Integer r;
  mpz_set(r.raw(), mpq_numref(q_));
  return r;
}

Integer Rational::denominator() const {
  Integer r;
  mpz_set(r.raw(), mpq_denref(q_));
  return r;
}

Rational Rational::pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = e < 0 ? base.inverse() : base;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(b.q_), n);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(b.q_), n);
  return r;  // already canonical: powers of coprime values stay coprime
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rational r;
  mpq_inv(r.q_, q_);
  return r;
}

std::string Rational::str() const {
  std::string n = mpz_to_string(mpq_numref(q_));
  if (is_integer()) return n;
  return n + "/" + mpz_to_string(mpq_denref(q_));
}

size_t Rational::hash() const {
  // FNV-1a over the limbs of numerator and denominator.
  uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](mpz_srcptr z) {
    h ^= static_cast<uint64_t>(mpz_sgn(z)) + 0x9e3779b9;
    h *= 1099511628211ULL;
    for (size_t i = 0; i < mpz_size(z); ++i) {
      h ^= mpz_getlimbn(z, i);
      h *= 1099511628211ULL;
    }
  };
  feed(mpq_numref(q_));
  feed(mpq_denref(q_));
  return static_cast<size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const Rational& v) {
  return os << v.str();
}

const Integer& cached_factorial(unsigned long n) {
  // deque: growth never invalidates references handed out earlier
  static std::deque<Integer> table{Integer(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    Integer next = table.back();
    next.mul_ui(static_cast<unsigned long>(table.size()));
    table.push_back(std::move(next));
  }
  return table[n];
}

}  // namespace mvmom
