#include "mvmom/discover.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "mvmom/modarith.hpp"
#include "mvmom/qmatrix.hpp"

namespace mvmom {

namespace {

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::lex_cmp(a, b) < 0;
  }
};

// Lazily evaluated moments along the ray, indexed by i with n_i = parity+2i.
class SampleBank {
 public:
  SampleBank(const CovarianceSpec& cov, int direction,
             const std::vector<long>& fixed, long parity,
             const SteinOptions& stein)
      : parity_(parity) {
    batch_ = [cov, direction, fixed, stein, parity](long count) {
      return seed_sequence(cov, direction, fixed, parity, count, 2, stein);
    };
  }
  SampleBank(long parity, const RaySupplier& supplier) : parity_(parity) {
    batch_ = [supplier, parity](long count) {
      std::vector<Polynomial> out;
      out.reserve(static_cast<size_t>(count));
      for (long i = 0; i < count; ++i) out.push_back(supplier(parity + 2 * i));
      return out;
    };
  }

  void ensure(long count) {
    if (count <= static_cast<long>(vals_.size())) return;
    long grow = std::max<long>(count, 2 * static_cast<long>(vals_.size()));
    grow = std::max<long>(grow, 16);
    vals_ = batch_(grow);
  }
  const Polynomial& at(long i) {
    ensure(i + 1);
    return vals_[static_cast<size_t>(i)];
  }
  long n_of(long i) const { return parity_ + 2 * i; }

 private:
  long parity_;
  std::function<std::vector<Polynomial>(long)> batch_;
  std::vector<Polynomial> vals_;
};

struct Candidate {
  int r, d, e;
};

// All monomials of total degree <= e in `vars`, in a fixed deterministic
// order (degree-graded, lexicographic within a degree).
std::vector<Monomial> monomials_up_to(const std::vector<Var>& vars, int e) {
  std::vector<Monomial> out;
  std::vector<std::pair<Var, uint32_t>> parts;
  std::function<void(size_t, int)> rec = [&](size_t idx, int left) {
    if (idx == vars.size()) {
      out.push_back(Monomial::from_parts(parts));
      return;
    }
    for (int use = 0; use <= left; ++use) {
      if (use > 0) parts.emplace_back(vars[idx], static_cast<uint32_t>(use));
      rec(idx + 1, left - use);
      if (use > 0) parts.pop_back();
    }
  };
  rec(0, e);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    if (a.total_degree() != b.total_degree())
      return a.total_degree() < b.total_degree();
    return Monomial::lex_cmp(a, b) < 0;
  });
  return out;
}

// One unknown per (t, e, f): lambda multiplying n^e * fm_f * M(n - 2t).
struct Layout {
  int r, d;
  size_t F;
  size_t cols() const {
    return static_cast<size_t>(r + 1) * static_cast<size_t>(d + 1) * F;
  }
  size_t col(int t, int e, size_t f) const {
    return (static_cast<size_t>(t) * static_cast<size_t>(d + 1) +
            static_cast<size_t>(e)) *
               F +
           f;
  }
};

// The residual monomial index for one application row group.
using MonoIndex = std::map<Monomial, size_t, MonoLess>;

MonoIndex residual_monomials(SampleBank& bank, long j, const Layout& lay,
                             const std::vector<Monomial>& fms) {
  MonoIndex idx;
  for (int t = 0; t <= lay.r; ++t) {
    const Polynomial& sample = bank.at(j - t);
    for (const auto& fm : fms) {
      for (const auto& term : sample.terms()) {
        idx.emplace(term.mono * fm, 0);
      }
    }
  }
  size_t row = 0;
  for (auto& [mono, id] : idx) id = row++;
  return idx;
}

// Reduces a rational to a residue mod p; false when the denominator vanishes.
bool residue_of(const Rational& v, uint64_t p, uint64_t& out) {
  const uint64_t den = v.denominator().mod_u64(p);
  if (den == 0) return false;
  uint64_t num = v.numerator().mod_u64(p);
  // mod_u64 returns the canonical nonnegative residue already
  out = mul_mod(num, inv_mod(den, p), p);
  return true;
}

struct WindowSpec {
  long first_app;  // lowest application index j (into the bank)
  long apps;       // number of fitted applications
};

// Builds the fitting matrix modulo p.  Returns false when p divides one of
// the sample denominators (choose another prime).
bool build_matrix_mod_p(SampleBank& bank, const Layout& lay,
                        const std::vector<Monomial>& fms,
                        const WindowSpec& win, bool symbolic, uint64_t p,
                        std::vector<std::vector<uint64_t>>& rows) {
  rows.clear();
  for (long j = win.first_app; j < win.first_app + win.apps; ++j) {
    const uint64_t n_mod = static_cast<uint64_t>(bank.n_of(j)) % p;
    if (!symbolic) {
      std::vector<uint64_t> row(lay.cols(), 0);
      for (int t = 0; t <= lay.r; ++t) {
        uint64_t sample_mod;
        if (!residue_of(bank.at(j - t).constant_value(), p, sample_mod))
          return false;
        uint64_t npow = 1;
        for (int e = 0; e <= lay.d; ++e) {
          row[lay.col(t, e, 0)] = mul_mod(npow, sample_mod, p);
          npow = mul_mod(npow, n_mod, p);
        }
      }
      rows.push_back(std::move(row));
      continue;
    }
    MonoIndex idx = residual_monomials(bank, j, lay, fms);
    const size_t base = rows.size();
    rows.resize(base + idx.size(), std::vector<uint64_t>(lay.cols(), 0));
    for (int t = 0; t <= lay.r; ++t) {
      const Polynomial& sample = bank.at(j - t);
      for (size_t f = 0; f < fms.size(); ++f) {
        for (const auto& term : sample.terms()) {
          uint64_t c_mod;
          if (!residue_of(term.coef, p, c_mod)) return false;
          const size_t row_id = base + idx.at(term.mono * fms[f]);
          uint64_t npow = 1;
          for (int e = 0; e <= lay.d; ++e) {
            auto& cell = rows[row_id][lay.col(t, e, f)];
            cell = add_mod(cell, mul_mod(npow, c_mod, p), p);
            npow = mul_mod(npow, n_mod, p);
          }
        }
      }
    }
  }
  return true;
}

// Exact version of the fitting matrix, for the fallback solve.
QMatrix build_matrix_exact(SampleBank& bank, const Layout& lay,
                           const std::vector<Monomial>& fms,
                           const WindowSpec& win, bool symbolic) {
  std::vector<std::vector<Rational>> rows;
  for (long j = win.first_app; j < win.first_app + win.apps; ++j) {
    const Rational n_val(bank.n_of(j));
    if (!symbolic) {
      std::vector<Rational> row(lay.cols(), Rational(0));
      for (int t = 0; t <= lay.r; ++t) {
        const Rational sample = bank.at(j - t).constant_value();
        Rational npow(1);
        for (int e = 0; e <= lay.d; ++e) {
          row[lay.col(t, e, 0)] = npow * sample;
          npow *= n_val;
        }
      }
      rows.push_back(std::move(row));
      continue;
    }
    MonoIndex idx = residual_monomials(bank, j, lay, fms);
    const size_t base = rows.size();
    rows.resize(base + idx.size(), std::vector<Rational>(lay.cols(), Rational(0)));
    for (int t = 0; t <= lay.r; ++t) {
      const Polynomial& sample = bank.at(j - t);
      for (size_t f = 0; f < fms.size(); ++f) {
        for (const auto& term : sample.terms()) {
          const size_t row_id = base + idx.at(term.mono * fms[f]);
          Rational npow(1);
          for (int e = 0; e <= lay.d; ++e) {
            rows[row_id][lay.col(t, e, f)] += npow * term.coef;
            npow *= n_val;
          }
        }
      }
    }
  }
  QMatrix m(rows.size(), lay.cols());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < lay.cols(); ++c) m.at(r, c) = std::move(rows[r][c]);
  return m;
}

// Scales the solution to integer-primitive form with a positive first
// nonzero entry, so equal relations always serialize identically.
void canonicalize(std::vector<Rational>& lambda) {
  Integer l(1);
  for (const auto& v : lambda) l = Integer::lcm(l, v.denominator());
  Integer g(0);
  bool negate = false, first = true;
  std::vector<Integer> ints;
  ints.reserve(lambda.size());
  for (const auto& v : lambda) {
    Integer n = v.numerator();
    Integer scale = l;
    scale.divexact(v.denominator());
    n *= scale;
    if (!n.is_zero()) {
      if (first) {
        negate = n.sign() < 0;
        first = false;
      }
      Integer a = n;
      if (a.sign() < 0) a.neg();
      g = g.is_zero() ? a : Integer::gcd(g, a);
    }
    ints.push_back(std::move(n));
  }
  if (g.is_zero()) return;  // all-zero vector; caller rejects it anyway
  for (size_t i = 0; i < lambda.size(); ++i) {
    Integer v = std::move(ints[i]);
    v.divexact(g);
    if (negate) v.neg();
    lambda[i] = Rational(v);
  }
}

Recurrence assemble(const CovarianceSpec& cov, int direction,
                    const std::vector<long>& fixed, long parity,
                    const Layout& lay, const std::vector<Monomial>& fms,
                    const std::vector<Rational>& lambda) {
  Recurrence rec;
  rec.k = cov.dimension();
  rec.direction = direction;
  rec.step = 2;
  rec.order = lay.r;
  rec.offset = parity;
  rec.fixed = fixed;
  rec.cov = cov;
  rec.coeffs.assign(static_cast<size_t>(lay.r) + 1, {});
  for (int t = 0; t <= lay.r; ++t) {
    auto& ct = rec.coeffs[static_cast<size_t>(t)];
    ct.resize(static_cast<size_t>(lay.d) + 1);
    for (int e = 0; e <= lay.d; ++e) {
      std::vector<Term> terms;
      for (size_t f = 0; f < fms.size(); ++f) {
        const Rational& v = lambda[lay.col(t, e, f)];
        if (!v.is_zero()) terms.push_back({fms[f], v});
      }
      ct[static_cast<size_t>(e)] = Polynomial::from_terms(std::move(terms));
    }
    while (ct.size() > 1 && ct.back().is_zero()) ct.pop_back();
  }
  return rec;
}

// Exact residual of the assembled relation at bank index j.
bool residual_zero(const Recurrence& rec, SampleBank& bank, long j) {
  const long n = bank.n_of(j);
  Polynomial acc;
  for (int t = 0; t <= rec.order; ++t) {
    Polynomial c = rec.coeff_at(t, n);
    if (c.is_zero()) continue;
    acc += c * bank.at(j - t);
  }
  return acc.is_zero();
}

bool all_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<Recurrence> try_candidate(const CovarianceSpec& cov,
                                        int direction,
                                        const std::vector<long>& fixed,
                                        long parity, SampleBank& bank,
                                        const Candidate& cand, long shift,
                                        const DiscoverOptions& options) {
  const std::vector<Var> vars = cov.symbolic_vars();
  const bool symbolic = !vars.empty();
  const std::vector<Monomial> fms =
      symbolic ? monomials_up_to(vars, cand.e)
               : std::vector<Monomial>{Monomial()};
  const Layout lay{cand.r, cand.d, fms.size()};
  const long U = static_cast<long>(lay.cols());

  // Window: enough rows to overdetermine by 16 equations, and enough
  // distinct n samples that a degree-d polynomial cannot just interpolate.
  WindowSpec win{shift + cand.r, std::max<long>(cand.d + 1 + 16, 1)};
  if (!symbolic) {
    win.apps = std::max(win.apps, U + 16);
    bank.ensure(win.first_app + win.apps + options.held_out);
  } else {
    long rows = 0;
    for (long j = win.first_app; j < win.first_app + win.apps; ++j) {
      rows += static_cast<long>(residual_monomials(bank, j, lay, fms).size());
    }
    while (rows < U + 16) {
      rows += static_cast<long>(
          residual_monomials(bank, win.first_app + win.apps, lay, fms).size());
      ++win.apps;
    }
    bank.ensure(win.first_app + win.apps + options.held_out);
  }

  // Screen, then solve exactly by CRT + rational reconstruction.
  constexpr int kMaxPrimes = 16;
  std::vector<std::vector<uint64_t>> rows;
  std::vector<size_t> pivot_ref;
  std::vector<Integer> residue(lay.cols(), Integer(0));
  Integer modulus(1);
  bool have_any = false;
  std::optional<std::vector<Rational>> lambda;
  for (int pi = 0; pi < kMaxPrimes && !lambda; ++pi) {
    const uint64_t p = nth_prime_below_2_62(pi);
    if (!build_matrix_mod_p(bank, lay, fms, win, symbolic, p, rows)) continue;
    ModKernel ker = kernel_mod_p(std::move(rows), lay.cols(), p);
    rows.clear();
    if (ker.vec.empty()) {
      if (!have_any) return std::nullopt;  // clean screen reject
      continue;  // unlucky prime after a kernel was seen; try the next one
    }
    if (!have_any) {
      pivot_ref = ker.pivot_cols;
      have_any = true;
      for (size_t c = 0; c < lay.cols(); ++c) {
        residue[c] = Integer(static_cast<long>(ker.vec[c]));
      }
      modulus = Integer(1);
      modulus.mul_ui(p);  // modulus = p
    } else {
      if (ker.pivot_cols != pivot_ref) continue;  // inconsistent rank profile
      for (size_t c = 0; c < lay.cols(); ++c) {
        crt_combine(residue[c], modulus, ker.vec[c], p);
      }
      modulus.mul_ui(p);
    }
    // Attempt full reconstruction.
    std::vector<Rational> cand_lambda(lay.cols());
    bool ok = true;
    for (size_t c = 0; c < lay.cols() && ok; ++c) {
      auto rc = rational_reconstruct(residue[c], modulus);
      if (!rc) {
        ok = false;
      } else {
        cand_lambda[c] = std::move(*rc);
      }
    }
    if (ok && !all_zero(cand_lambda)) {
      canonicalize(cand_lambda);
      Recurrence rec = assemble(cov, direction, fixed, parity, lay, fms,
                                cand_lambda);
      rec.offset = parity + 2 * shift;
      bool verified = true;
      const long verify_end = win.first_app + win.apps + options.held_out;
      for (long j = win.first_app; j < verify_end; ++j) {
        if (!residual_zero(rec, bank, j)) {
          verified = false;
          break;
        }
      }
      if (verified) {
        // Extend validity downward as far as the relation actually holds.
        long j_lo = win.first_app;
        while (j_lo > cand.r && residual_zero(rec, bank, j_lo - 1)) --j_lo;
        rec.offset = parity + 2 * (j_lo - cand.r);
        return rec;
      }
      // Reconstructed but wrong; keep adding primes.
    }
  }

  // Exact fallback: fraction-free elimination over the rationals.
  QMatrix m = build_matrix_exact(bank, lay, fms, win, symbolic);
  auto basis = nullspace(m);
  if (basis.empty()) return std::nullopt;
  std::vector<Rational> exact_lambda = std::move(basis.front());
  canonicalize(exact_lambda);
  Recurrence rec =
      assemble(cov, direction, fixed, parity, lay, fms, exact_lambda);
  rec.offset = parity + 2 * shift;
  const long verify_end = win.first_app + win.apps + options.held_out;
  for (long j = win.first_app; j < verify_end; ++j) {
    if (!residual_zero(rec, bank, j)) return std::nullopt;
  }
  long j_lo = win.first_app;
  while (j_lo > cand.r && residual_zero(rec, bank, j_lo - 1)) --j_lo;
  rec.offset = parity + 2 * (j_lo - cand.r);
  return rec;
}

Recurrence discover_impl(const CovarianceSpec& cov, int direction,
                         const std::vector<long>& fixed,
                         const DiscoverOptions& options, SampleBank& bank) {
  const std::vector<Var> vars = cov.symbolic_vars();
  const int e_top = vars.empty() ? 0 : options.limits.max_sym_degree;

  std::vector<Candidate> candidates;
  for (int r = 1; r <= options.limits.max_order; ++r) {
    for (int d = 0; d <= options.limits.max_degree; ++d) {
      for (int e = 0; e <= e_top; ++e) {
        candidates.push_back({r, d, e});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              const int ta = a.r + a.d + a.e, tb = b.r + b.d + b.e;
              if (ta != tb) return ta < tb;
              if (a.r + a.d != b.r + b.d) return a.r + a.d < b.r + b.d;
              if (a.r != b.r) return a.r < b.r;
              return a.d < b.d;
            });

  long parity = 0;
  for (long f : fixed) parity += f;
  parity &= 1;

  for (long shift : {0L, 8L}) {
    for (const auto& cand : candidates) {
      auto rec = try_candidate(cov, direction, fixed, parity, bank, cand,
                               shift, options);
      if (rec) return std::move(*rec);
    }
  }
  throw NotFoundError(options.limits.max_order, options.limits.max_degree);
}

}  // namespace

Recurrence discover(const CovarianceSpec& cov, int direction,
                    const std::vector<long>& fixed,
                    const DiscoverOptions& options) {
  if (direction < 0 || direction >= cov.dimension()) {
    throw std::invalid_argument("direction out of range");
  }
  if (static_cast<int>(fixed.size()) != cov.dimension() - 1) {
    throw std::invalid_argument("expected one fixed value per non-direction "
                                "coordinate");
  }
  long parity = 0;
  for (long f : fixed) parity += f;
  SampleBank bank(cov, direction, fixed, parity & 1, options.stein);
  return discover_impl(cov, direction, fixed, options, bank);
}

Recurrence discover_with_supplier(const CovarianceSpec& cov, int direction,
                                  const std::vector<long>& fixed,
                                  const DiscoverOptions& options,
                                  const RaySupplier& supplier) {
  if (direction < 0 || direction >= cov.dimension()) {
    throw std::invalid_argument("direction out of range");
  }
  if (static_cast<int>(fixed.size()) != cov.dimension() - 1) {
    throw std::invalid_argument("expected one fixed value per non-direction "
                                "coordinate");
  }
  long parity = 0;
  for (long f : fixed) parity += f;
  SampleBank bank(parity & 1, supplier);
  return discover_impl(cov, direction, fixed, options, bank);
}

}  // namespace mvmom
