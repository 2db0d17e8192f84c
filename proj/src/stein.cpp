#include "mvmom/stein.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mvmom {

namespace {

int pick_pivot(const MultiIndex& m, PivotPolicy policy) {
  const int k = static_cast<int>(m.size());
  int best = -1;
  for (int i = 0; i < k; ++i) {
    if (m[i] <= 0) continue;
    switch (policy) {
      case PivotPolicy::kFirstPositive:
        return i;
      case PivotPolicy::kSmallestPositive:
        if (best < 0 || m[i] < m[best]) best = i;
        break;
      case PivotPolicy::kLargestPositive:
        if (best < 0 || m[i] > m[best]) best = i;
        break;
    }
  }
  return best;
}

// Covariance entry prepared for cheap repeated use: a monomial (the symbolic
// variable, or 1) times a rational factor.
struct PreparedEntry {
  Monomial mono;
  Rational coef;
  bool zero = false;
};

std::vector<PreparedEntry> prepare_entries(const CovarianceSpec& cov) {
  const int k = cov.dimension();
  std::vector<PreparedEntry> out(pair_count(k));
  for (int idx = 0; idx < pair_count(k); ++idx) {
    auto [i, j] = pair_at(idx, k);
    if (cov.is_symbolic(i, j)) {
      out[idx] = {Monomial(Var(i, j)), Rational(1), false};
    } else {
      const Rational& v = cov.value(i, j);
      out[idx] = {Monomial(), v, v.is_zero()};
    }
  }
  return out;
}

using StateSet = std::unordered_set<MultiIndex, MultiIndex::Hash>;
using ValueMap = std::unordered_map<MultiIndex, Polynomial, MultiIndex::Hash>;

void validate(const CovarianceSpec& cov, const MultiIndex& m) {
  if (static_cast<int>(m.size()) != cov.dimension()) {
    throw std::invalid_argument("multi-index size does not match dimension");
  }
  if (!m.all_nonnegative()) throw std::invalid_argument("negative exponent");
}

}  // namespace

std::vector<Polynomial> moment_stein_batch(const CovarianceSpec& cov,
                                           const std::vector<MultiIndex>& targets,
                                           const SteinOptions& options) {
  const int k = cov.dimension();
  const auto entries = prepare_entries(cov);

  long max_total = 0;
  for (const auto& t : targets) {
    validate(cov, t);
    if (!t.sum_is_odd()) max_total = std::max(max_total, t.sum());
  }

  // Mark every state the reduction will touch, grouped by total degree.
  std::vector<StateSet> layer(static_cast<size_t>(max_total) + 1);
  for (const auto& t : targets) {
    if (!t.sum_is_odd()) layer[static_cast<size_t>(t.sum())].insert(t);
  }
  auto for_each_child = [&](const MultiIndex& state, auto&& fn) {
    const int p = pick_pivot(state, options.pivot);
    assert(p >= 0);
    for (int j = 0; j < k; ++j) {
      const long mult = state[j] - (j == p ? 1 : 0);
      if (mult <= 0) continue;
      int a = std::min(p, j) + 1, b = std::max(p, j) + 1;
      const PreparedEntry* entry = (j == p) ? nullptr : &entries[pair_index(a, b, k)];
      if (entry && entry->zero) continue;
      MultiIndex child = state;
      child[p] -= 1;
      child[j] -= 1;
      fn(std::move(child), mult, entry);
    }
  };
  for (long total = max_total; total >= 2; total -= 2) {
    for (const auto& state : layer[static_cast<size_t>(total)]) {
      for_each_child(state, [&](MultiIndex child, long, const PreparedEntry*) {
        layer[static_cast<size_t>(total - 2)].insert(std::move(child));
      });
    }
  }

  // Evaluate upward, keeping only the previous level alive.
  ValueMap prev, cur, found;
  static const Monomial kUnit;
  static const Rational kOne(1);
  for (long total = 0; total <= max_total; total += 2) {
    cur.clear();
    for (const auto& state : layer[static_cast<size_t>(total)]) {
      Polynomial acc;
      if (total == 0) {
        acc = Polynomial(1);
      } else {
        for_each_child(state, [&](MultiIndex child, long mult,
                                  const PreparedEntry* entry) {
          auto it = prev.find(child);
          if (it == prev.end()) {
            throw std::logic_error("reduction reached an unmarked state");
          }
          Rational factor = entry ? entry->coef : kOne;
          factor.mul_si(mult);
          acc.add_scaled(it->second, entry ? entry->mono : kUnit, factor);
        });
      }
      cur.emplace(state, std::move(acc));
    }
    for (const auto& t : targets) {
      if (!t.sum_is_odd() && t.sum() == total) {
        auto it = cur.find(t);
        if (it != cur.end()) found.emplace(t, it->second);
      }
    }
    prev = std::move(cur);
  }

  std::vector<Polynomial> out;
  out.reserve(targets.size());
  for (const auto& t : targets) {
    if (t.sum_is_odd()) {
      out.emplace_back();
    } else {
      out.push_back(found.at(t));
    }
  }
  return out;
}

Polynomial moment_stein(const CovarianceSpec& cov, const MultiIndex& m,
                        const SteinOptions& options) {
  return std::move(moment_stein_batch(cov, {m}, options).front());
}

std::vector<Polynomial> seed_sequence(const CovarianceSpec& cov, int direction,
                                      const std::vector<long>& fixed,
                                      long start, long count, long step,
                                      const SteinOptions& options) {
  const int k = cov.dimension();
  if (direction < 0 || direction >= k) {
    throw std::invalid_argument("direction out of range");
  }
  if (static_cast<int>(fixed.size()) != k - 1) {
    throw std::invalid_argument("expected one fixed value per non-direction "
                                "coordinate");
  }
  if (count < 0 || step <= 0 || start < 0) {
    throw std::invalid_argument("need start >= 0, count >= 0, step > 0");
  }
  std::vector<MultiIndex> targets;
  targets.reserve(static_cast<size_t>(count));
  for (long t = 0; t < count; ++t) {
    std::vector<long> v(static_cast<size_t>(k));
    size_t f = 0;
    for (int i = 0; i < k; ++i) {
      v[static_cast<size_t>(i)] =
          (i == direction) ? start + t * step : fixed[f++];
    }
    targets.emplace_back(std::move(v));
  }
  return moment_stein_batch(cov, targets, options);
}

Polynomial moment_stein_reference(const CovarianceSpec& cov,
                                  const MultiIndex& m,
                                  const SteinOptions& options) {
  validate(cov, m);
  const int k = cov.dimension();
  const auto entries = prepare_entries(cov);
  ValueMap memo;

  std::function<Polynomial(const MultiIndex&)> rec =
      [&](const MultiIndex& state) -> Polynomial {
    if (state.sum_is_odd()) return Polynomial();
    if (state.sum() == 0) return Polynomial(1);
    if (options.memoize) {
      auto it = memo.find(state);
      if (it != memo.end()) return it->second;
    }
    const int p = pick_pivot(state, options.pivot);
    Polynomial acc;
    for (int j = 0; j < k; ++j) {
      const long mult = state[j] - (j == p ? 1 : 0);
      if (mult <= 0) continue;
      MultiIndex child = state;
      child[p] -= 1;
      child[j] -= 1;
      Polynomial sub = rec(child);
      if (j == p) {
        Rational f(mult);
        acc.add_scaled(sub, Monomial(), f);
      } else {
        const auto& e = entries[pair_index(std::min(p, j) + 1,
                                           std::max(p, j) + 1, k)];
        Rational f = e.coef;
        f.mul_si(mult);
        acc.add_scaled(sub, e.mono, f);
      }
    }
    if (options.memoize) memo.emplace(state, acc);
    return acc;
  };
  return rec(m);
}

}  // namespace mvmom
