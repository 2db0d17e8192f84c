#include "mvmom/wick.hpp"

#include <algorithm>
#include <stdexcept>

namespace mvmom {

Integer univariate_moment(long r) {
  if (r < 0) throw std::invalid_argument("negative moment order");
  if (r % 2 != 0) return Integer(0);
  return Integer::double_factorial(r - 1);
}

Integer pairing_type_weight(const MultiIndex& m, const PairingType& type) {
  const int k = static_cast<int>(m.size());
  Integer w(1);
  for (int i = 0; i < k; ++i) {
    w *= cached_factorial(static_cast<unsigned long>(m[i]));
  }
  for (long a : type.cross) {
    w.divexact(cached_factorial(static_cast<unsigned long>(a)));
  }
  unsigned long twos = 0;
  for (long b : type.same) {
    w.divexact(cached_factorial(static_cast<unsigned long>(b)));
    twos += static_cast<unsigned long>(b);
  }
  Integer d(1);
  d.mul_2exp(twos);
  w.divexact(d);
  return w;
}

void for_each_pairing_type(const MultiIndex& m,
                           const std::function<void(const PairingType&)>& fn) {
  const int k = static_cast<int>(m.size());
  if (!m.all_nonnegative()) throw std::invalid_argument("negative exponent");
  if (m.sum_is_odd()) return;
  const int P = pair_count(k);

  // Coordinates whose residual parity is fixed once pair l is chosen (no
  // later pair touches them); lets infeasible branches die early.
  std::vector<std::vector<int>> closes(P);
  for (int c = 1; c <= k; ++c) {
    int last = -1;
    for (int idx = 0; idx < P; ++idx) {
      auto [i, j] = pair_at(idx, k);
      if (i == c || j == c) last = idx;
    }
    if (last >= 0) closes[last].push_back(c - 1);
  }

  PairingType type;
  type.cross.assign(P, 0);
  type.same.assign(k, 0);
  std::vector<long> rem = m.values();

  std::function<void(int)> rec = [&](int idx) {
    if (idx == P) {
      for (int i = 0; i < k; ++i) {
        if (rem[i] % 2 != 0) return;  // only reachable when P == 0
        type.same[i] = rem[i] / 2;
      }
      fn(type);
      return;
    }
    auto [i1, j1] = pair_at(idx, k);
    const int i = i1 - 1, j = j1 - 1;
    const long bound = std::min(rem[i], rem[j]);
    for (long a = 0; a <= bound; ++a) {
      type.cross[idx] = a;
      rem[i] -= a;
      rem[j] -= a;
      bool ok = true;
      for (int c : closes[idx]) {
        if (rem[c] % 2 != 0) {
          ok = false;
          break;
        }
      }
      if (ok) rec(idx + 1);
      rem[i] += a;
      rem[j] += a;
    }
    type.cross[idx] = 0;
  };
  rec(0);
}

std::vector<PairingType> enumerate_pairing_types(const MultiIndex& m) {
  std::vector<PairingType> out;
  for_each_pairing_type(m, [&](const PairingType& t) { out.push_back(t); });
  return out;
}

namespace {

// All-numeric k=3 path.  Works in scaled integers: with S = sum(m) and
// c_l = p_l/q_l, the sum of weight * prod c^a over pairing types equals
// N / (2^(S/2) * prod q_l^(Amax_l)) where every contribution to N is an
// integer and consecutive a23 terms differ by a cheap word-sized factor.
Rational wick_numeric_k3(const CovarianceSpec& cov, const MultiIndex& m) {
  const long m1 = m[0], m2 = m[1], m3 = m[2];
  const Integer p12 = cov.value(1, 2).numerator();
  const Integer q12 = cov.value(1, 2).denominator();
  const Integer p13 = cov.value(1, 3).numerator();
  const Integer q13 = cov.value(1, 3).denominator();
  const Integer p23 = cov.value(2, 3).numerator();
  const Integer q23 = cov.value(2, 3).denominator();

  const long max12 = std::min(m1, m2);
  const long max13 = std::min(m1, m3);
  const long max23 = std::min(m2, m3);

  // Powers of numerators/denominators reused across the outer loops.
  auto powers = [](const Integer& base, long top) {
    std::vector<Integer> pw(static_cast<size_t>(top) + 1, Integer(1));
    for (long e = 1; e <= top; ++e) pw[e] = pw[e - 1] * base;
    return pw;
  };
  const auto pw_p12 = powers(p12 * Integer(2), max12);
  const auto pw_q12 = powers(q12, max12);
  const auto pw_p13 = powers(p13 * Integer(2), max13);
  const auto pw_q13 = powers(q13, max13);
  const auto pw_p23 = powers(p23 * Integer(2), max23);
  const auto pw_q23 = powers(q23, max23);

  const Integer q23_sq = q23 * q23;
  const bool p23_zero = p23.is_zero();
  Integer p23_sq4 = p23 * p23;
  p23_sq4.mul_ui(4);

  Integer accum(0);
  Integer term, step_num;
  const Integer fac1 = cached_factorial(static_cast<unsigned long>(m1));
  const Integer fac2 = cached_factorial(static_cast<unsigned long>(m2));
  const Integer fac3 = cached_factorial(static_cast<unsigned long>(m3));

  for (long a12 = 0; a12 <= max12; ++a12) {
    const long r1 = m1 - a12;  // remaining degree on coordinate 1
    for (long a13 = 0; a13 <= std::min(r1, max13); ++a13) {
      if ((r1 - a13) % 2 != 0) continue;  // coordinate 1 must balance
      const long b1 = (r1 - a13) / 2;
      const long par = (m2 - a12) % 2;
      if ((m3 - a13) % 2 != par) continue;  // coordinate 2/3 parity must agree
      const long a23_top = std::min(m2 - a12, std::min(m3 - a13, max23));
      if (a23_top < par) continue;

      // Base term at a23 = par, fully built once per (a12, a13).
      long a23 = par;
      long b2 = (m2 - a12 - a23) / 2;
      long b3 = (m3 - a13 - a23) / 2;
      term = fac1;
      term *= fac2;
      term *= fac3;
      term.divexact(cached_factorial(static_cast<unsigned long>(a12)));
      term.divexact(cached_factorial(static_cast<unsigned long>(a13)));
      term.divexact(cached_factorial(static_cast<unsigned long>(b1)));
      term.divexact(cached_factorial(static_cast<unsigned long>(b2)));
      term.divexact(cached_factorial(static_cast<unsigned long>(b3)));
      term *= pw_p12[a12];
      term *= pw_q12[max12 - a12];
      term *= pw_p13[a13];
      term *= pw_q13[max13 - a13];
      term *= pw_p23[a23];
      term *= pw_q23[max23 - a23];
      accum += term;
      if (p23_zero) continue;

      // term(a23+2) = term(a23) * 4 p23^2 b2 b3 / (q23^2 (a23+1)(a23+2))
      while (a23 + 2 <= a23_top) {
        step_num = p23_sq4;
        step_num.mul_ui(static_cast<unsigned long>(b2));
        step_num.mul_ui(static_cast<unsigned long>(b3));
        term *= step_num;
        term.divexact(q23_sq);
        term.divexact_ui(static_cast<unsigned long>(a23 + 1));
        term.divexact_ui(static_cast<unsigned long>(a23 + 2));
        a23 += 2;
        --b2;
        --b3;
        accum += term;
      }
    }
  }

  Integer denom = Integer::pow(q12, static_cast<unsigned long>(max12));
  denom *= Integer::pow(q13, static_cast<unsigned long>(max13));
  denom *= Integer::pow(q23, static_cast<unsigned long>(max23));
  denom.mul_2exp(static_cast<unsigned long>(m.sum() / 2));
  return Rational(accum, denom);
}

}  // namespace

Polynomial moment_wick(const CovarianceSpec& cov, const MultiIndex& m) {
  const int k = cov.dimension();
  if (static_cast<int>(m.size()) != k) {
    throw std::invalid_argument("multi-index size does not match dimension");
  }
  if (!m.all_nonnegative()) throw std::invalid_argument("negative exponent");
  if (m.sum_is_odd()) return Polynomial();

  if (k == 3 && cov.all_numeric()) {
    return Polynomial(wick_numeric_k3(cov, m));
  }

  const int P = pair_count(k);
  if (cov.all_numeric()) {
    Rational acc(0);
    for_each_pairing_type(m, [&](const PairingType& t) {
      Rational term(pairing_type_weight(m, t));
      for (int idx = 0; idx < P; ++idx) {
        if (t.cross[idx] == 0) continue;
        auto [i, j] = pair_at(idx, k);
        term *= Rational::pow(cov.value(i, j), t.cross[idx]);
      }
      acc += term;
    });
    return Polynomial(acc);
  }

  std::vector<Term> terms;
  for_each_pairing_type(m, [&](const PairingType& t) {
    Rational coef(pairing_type_weight(m, t));
    std::vector<std::pair<Var, uint32_t>> parts;
    for (int idx = 0; idx < P; ++idx) {
      if (t.cross[idx] == 0) continue;
      auto [i, j] = pair_at(idx, k);
      if (cov.is_symbolic(i, j)) {
        parts.emplace_back(Var(i, j), static_cast<uint32_t>(t.cross[idx]));
      } else {
        coef *= Rational::pow(cov.value(i, j), t.cross[idx]);
      }
    }
    terms.push_back({Monomial::from_parts(std::move(parts)), std::move(coef)});
  });
  return Polynomial::from_terms(std::move(terms));
}

Polynomial moment_bruteforce(const CovarianceSpec& cov, const MultiIndex& m) {
  const int k = cov.dimension();
  if (static_cast<int>(m.size()) != k) {
    throw std::invalid_argument("multi-index size does not match dimension");
  }
  if (!m.all_nonnegative()) throw std::invalid_argument("negative exponent");
  const long n = m.sum();
  if (n > 12) {
    throw std::length_error("matching enumeration guarded to sum(m) <= 12");
  }
  if (n % 2 != 0) return Polynomial();

  // One point per factor, labelled by its coordinate.
  std::vector<int> coord;
  for (int i = 0; i < k; ++i)
    for (long c = 0; c < m[i]; ++c) coord.push_back(i + 1);

  std::vector<bool> used(coord.size(), false);
  Polynomial total;
  std::function<void(size_t, const Polynomial&)> rec =
      [&](size_t lo, const Polynomial& weight) {
        while (lo < used.size() && used[lo]) ++lo;
        if (lo == used.size()) {
          total += weight;
          return;
        }
        used[lo] = true;
        for (size_t hi = lo + 1; hi < used.size(); ++hi) {
          if (used[hi]) continue;
          used[hi] = true;
          int a = coord[lo], b = coord[hi];
          if (a == b) {
            rec(lo + 1, weight);  // E[x_i x_i] = 1
          } else {
            rec(lo + 1, weight * cov.entry(std::min(a, b), std::max(a, b)));
          }
          used[hi] = false;
        }
        used[lo] = false;
      };
  rec(0, Polynomial(1));
  return total;
}

}  // namespace mvmom
