#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvmom/rational.hpp"

namespace mvmom {

// Dense matrix of exact rationals, row-major.
class QMatrix {
 public:
  QMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

 private:
  size_t rows_, cols_;
  std::vector<Rational> data_;
};

// Basis of the right kernel {x : A x = 0}, one vector per free column, with
// the free coordinate set to 1.  Exact; uses fraction-free (Bareiss)
// elimination on the denominator-cleared matrix so intermediate entries stay
// integral.
std::vector<std::vector<Rational>> nullspace(const QMatrix& a);

// Canonical kernel vector of a matrix over GF(p), from reduced row echelon
// form: the first free column carries 1.  Empty when the kernel is trivial.
struct ModKernel {
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  std::vector<uint64_t> vec;  // empty when nullity == 0
};
ModKernel kernel_mod_p(std::vector<std::vector<uint64_t>> m, size_t cols,
                       uint64_t p);

// Incremental Chinese remaindering: given x = value (mod modulus) and a
// fresh residue mod p, lifts value to the unique class mod modulus*p.
// The caller multiplies modulus by p afterwards (one multiply may serve
// many values combined against the same prime).
void crt_combine(Integer& value, const Integer& modulus, uint64_t residue,
                 uint64_t p);

// Reconstructs p/q from a residue mod M with |p|, q <= sqrt(M/2);
// nullopt when no such fraction exists.
std::optional<Rational> rational_reconstruct(const Integer& residue,
                                             const Integer& modulus);

}  // namespace mvmom
