#include "mvmom/qmatrix.hpp"

#include "mvmom/modarith.hpp"

#include <stdexcept>

namespace mvmom {

std::vector<std::vector<Rational>> nullspace(const QMatrix& a) {
  const size_t rows = a.rows(), cols = a.cols();

  // Clear denominators row by row; the kernel is unchanged.
  std::vector<std::vector<Integer>> m(rows, std::vector<Integer>(cols));
  for (size_t r = 0; r < rows; ++r) {
    Integer l(1);
    for (size_t c = 0; c < cols; ++c) {
      l = Integer::lcm(l, a.at(r, c).denominator());
    }
    for (size_t c = 0; c < cols; ++c) {
      Rational v = a.at(r, c);
      Integer scaled = v.numerator();
      Integer extra = l;
      extra.divexact(v.denominator());
      scaled *= extra;
      m[r][c] = std::move(scaled);
    }
  }

  // Fraction-free elimination: after each step entries stay integral because
  // the previous pivot divides the two-by-two determinants exactly.
  std::vector<size_t> pivot_col_of_row;
  std::vector<bool> pivotal_col(cols, false);
  Integer prev(1);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    for (size_t r = row + 1; r < rows; ++r) {
      for (size_t c = col + 1; c < cols; ++c) {
        Integer t = m[r][c] * m[row][col] - m[r][col] * m[row][c];
        t.divexact(prev);
        m[r][c] = std::move(t);
      }
      m[r][col] = Integer(0);
    }
    prev = m[row][col];
    pivot_col_of_row.push_back(col);
    pivotal_col[col] = true;
    ++row;
  }
  const size_t rank = pivot_col_of_row.size();

  std::vector<std::vector<Rational>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (pivotal_col[f]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[f] = Rational(1);
    for (size_t t = rank; t-- > 0;) {
      const size_t pc = pivot_col_of_row[t];
      Rational s(0);
      for (size_t c = pc + 1; c < cols; ++c) {
        if (!x[c].is_zero() && !m[t][c].is_zero()) {
          s.add_mul(Rational(m[t][c]), x[c]);
        }
      }
      x[pc] = -(s / Rational(m[t][pc]));
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

ModKernel kernel_mod_p(std::vector<std::vector<uint64_t>> m, size_t cols,
                       uint64_t p) {
  const size_t rows = m.size();
  ModKernel out;
  std::vector<size_t> pivot_row_of_col(cols, SIZE_MAX);
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t sel = row;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[row]);
    const uint64_t inv = inv_mod(m[row][col], p);
    for (size_t c = col; c < cols; ++c) m[row][c] = mul_mod(m[row][c], inv, p);
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const uint64_t f = m[r][col];
      for (size_t c = col; c < cols; ++c) {
        m[r][c] = sub_mod(m[r][c], mul_mod(f, m[row][c], p), p);
      }
    }
    out.pivot_cols.push_back(col);
    pivot_row_of_col[col] = row;
    ++row;
  }
  out.rank = out.pivot_cols.size();
  if (out.rank == cols) return out;  // trivial kernel

  // Canonical vector: first free column = 1, remaining free columns = 0.
  size_t free_col = 0;
  while (pivot_row_of_col[free_col] != SIZE_MAX) ++free_col;
  out.vec.assign(cols, 0);
  out.vec[free_col] = 1;
  for (size_t col = 0; col < cols; ++col) {
    const size_t r = pivot_row_of_col[col];
    if (r == SIZE_MAX) continue;
    const uint64_t v = m[r][free_col];
    out.vec[col] = v == 0 ? 0 : p - v;
  }
  return out;
}

void crt_combine(Integer& value, const Integer& modulus, uint64_t residue,
                 uint64_t p) {
  // value' = value + modulus * t where t = (residue - value) / modulus mod p
  const uint64_t vp = value.mod_u64(p);
  const uint64_t mp = modulus.mod_u64(p);
  if (mp == 0) throw std::invalid_argument("moduli must be coprime");
  const uint64_t t =
      mul_mod(sub_mod(residue % p, vp, p), inv_mod(mp, p), p);
  Integer add = modulus;
  add *= Integer(static_cast<long>(t));
  value += add;
}

std::optional<Rational> rational_reconstruct(const Integer& residue,
                                             const Integer& modulus) {
  // Half-extended Euclid on (modulus, residue); stop when the remainder
  // drops below sqrt(modulus/2).
  mpz_t r0, r1, t0, t1, q, tmp, bound;
  mpz_inits(r0, r1, t0, t1, q, tmp, bound, nullptr);
  mpz_set(r0, modulus.raw());
  mpz_mod(r1, residue.raw(), modulus.raw());
  mpz_set_ui(t0, 0);
  mpz_set_ui(t1, 1);
  mpz_fdiv_q_ui(bound, modulus.raw(), 2);
  mpz_sqrt(bound, bound);

  std::optional<Rational> out;
  while (true) {
    if (mpz_cmp(r1, bound) <= 0) {
      // candidate n/d = r1/t1
      if (mpz_sgn(t1) != 0 && mpz_cmpabs(t1, bound) <= 0) {
        Integer n, d;
        mpz_set(n.raw(), r1);
        mpz_set(d.raw(), t1);
        if (d.sign() < 0) {
          n.neg();
          d.neg();
        }
        mpz_gcd(tmp, n.raw(), d.raw());
        if (mpz_cmp_ui(tmp, 1) == 0) out = Rational(n, d);
      }
      break;
    }
    mpz_fdiv_q(q, r0, r1);
    mpz_mul(tmp, q, r1);
    mpz_sub(r0, r0, tmp);
    mpz_swap(r0, r1);
    mpz_mul(tmp, q, t1);
    mpz_sub(t0, t0, tmp);
    mpz_swap(t0, t1);
  }
  mpz_clears(r0, r1, t0, t1, q, tmp, bound, nullptr);
  return out;
}

}  // namespace mvmom
