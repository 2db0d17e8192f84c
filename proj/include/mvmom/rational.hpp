#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mvmom {

// Arbitrary-precision integer, a thin RAII wrapper over GMP's mpz_t.
class Integer {
 public:
  Integer() { mpz_init(z_); }
  Integer(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
  explicit Integer(std::string_view text);
  Integer(const Integer& o) { mpz_init_set(z_, o.z_); }
  Integer(Integer&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  Integer& operator=(const Integer& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  Integer& operator=(Integer&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~Integer() { mpz_clear(z_); }

  static Integer factorial(unsigned long n);
  // Product n*(n-2)*(n-4)*...; empty product for n <= 0.
  static Integer double_factorial(long n);
  static Integer pow(const Integer& base, unsigned long e);
  static Integer binomial(unsigned long n, unsigned long k);

  Integer& operator+=(const Integer& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }
  Integer& operator-=(const Integer& o) {
    mpz_sub(z_, z_, o.z_);
    return *this;
  }
  Integer& operator*=(const Integer& o) {
    mpz_mul(z_, z_, o.z_);
    return *this;
  }
  Integer& mul_ui(unsigned long v) {
    mpz_mul_ui(z_, z_, v);
    return *this;
  }
  // Exact division; quotient must be integral.
  Integer& divexact(const Integer& o) {
    mpz_divexact(z_, z_, o.z_);
    return *this;
  }
  Integer& divexact_ui(unsigned long v) {
    mpz_divexact_ui(z_, z_, v);
    return *this;
  }
  Integer& mul_2exp(unsigned long e) {
    mpz_mul_2exp(z_, z_, e);
    return *this;
  }
  Integer& neg() {
    mpz_neg(z_, z_);
    return *this;
  }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend bool operator==(const Integer& a, const Integer& b) {
    return mpz_cmp(a.z_, b.z_) == 0;
  }
  friend bool operator!=(const Integer& a, const Integer& b) {
    return !(a == b);
  }
  friend bool operator<(const Integer& a, const Integer& b) {
    return mpz_cmp(a.z_, b.z_) < 0;
  }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
  bool fits_slong() const { return mpz_fits_slong_p(z_) != 0; }
  long to_long() const { return mpz_get_si(z_); }
  // Exact count of decimal digits (sign excluded); mpz_sizeinbase alone may
  // overshoot by one.
  size_t digits10() const;

  std::string str() const;

  static Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  static Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.z_, a.z_, b.z_);
    return r;
  }

  // Residue in [0, m); m must fit an unsigned 64-bit word.
  uint64_t mod_u64(uint64_t m) const;

  mpz_ptr raw() { return z_; }
  mpz_srcptr raw() const { return z_; }

 private:
  mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

// Exact rational number, a thin RAII wrapper over GMP's mpq_t.
// Always kept canonical: lowest terms, positive denominator.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long v) {  // NOLINT: implicit by design
    mpq_init(q_);
    mpq_set_si(q_, v, 1);
  }
  Rational(long num, long den);
  Rational(const Integer& num);  // NOLINT: implicit by design
  Rational(const Integer& num, const Integer& den);
  // Parses "p", "-p", or "p/q"; throws std::invalid_argument on bad input.
  explicit Rational(std::string_view text);
  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  Rational& operator+=(const Rational& o) {
    mpq_add(q_, q_, o.q_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(q_, q_, o.q_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(q_, q_, o.q_);
    return *this;
  }
  // Division by zero throws std::domain_error.
  Rational& operator/=(const Rational& o);
  Rational& mul_si(long v);
  Rational& neg() {
    mpq_neg(q_, q_);
    return *this;
  }
  // *this += a*b without a temporary canonicalization per step.
  void add_mul(const Rational& a, const Rational& b);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(Rational a) { return a.neg(); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <= 0;
  }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  Integer numerator() const;
  Integer denominator() const;

  static Rational pow(const Rational& base, long e);
  Rational inverse() const;
  Rational abs() const {
    Rational r(*this);
    mpq_abs(r.q_, r.q_);
    return r;
  }

  // "p" when integral, "p/q" otherwise.
  std::string str() const;

  size_t hash() const;

  mpq_ptr raw() { return q_; }
  mpq_srcptr raw() const { return q_; }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

// Shared table of factorials 0..n as exact integers.
const Integer& cached_factorial(unsigned long n);

}  // namespace mvmom
