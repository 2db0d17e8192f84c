#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvmom/monomial.hpp"
#include "mvmom/polynomial.hpp"
#include "mvmom/rational.hpp"

namespace mvmom {

// Off-diagonal pairs (i, j), 1 <= i < j <= k, in lexicographic order:
// (1,2), (1,3), ..., (1,k), (2,3), ...  These index both covariance entries
// and the cross-pair counts of a pairing type.
inline int pair_count(int k) { return k * (k - 1) / 2; }

inline int pair_index(int i, int j, int k) {
  // 1-based i < j
  return (i - 1) * k - (i * (i + 1)) / 2 + (j - 1);
}

inline std::pair<int, int> pair_at(int index, int k) {
  for (int i = 1; i < k; ++i) {
    int row = k - i;
    if (index < row) return {i, i + 1 + index};
    index -= row;
  }
  throw std::out_of_range("pair index out of range");
}

// Covariance matrix of a k-variate standard normal: unit diagonal, and each
// off-diagonal entry c_ij either a fixed rational or left symbolic.
class CovarianceSpec {
 public:
  explicit CovarianceSpec(int k) : k_(k), entries_(pair_count(k)) {
    if (k < 1) throw std::invalid_argument("dimension must be >= 1");
  }

  static CovarianceSpec symbolic(int k) { return CovarianceSpec(k); }
  static CovarianceSpec numeric(int k, std::vector<Rational> values);

  int dimension() const { return k_; }

  void set_entry(int i, int j, Rational v) {
    entries_[pair_index(i, j, k_)] = std::move(v);
  }
  void set_symbolic(int i, int j) {
    entries_[pair_index(i, j, k_)] = std::nullopt;
  }

  bool is_symbolic(int i, int j) const {
    return !entries_[pair_index(i, j, k_)].has_value();
  }
  bool all_numeric() const {
    for (auto& e : entries_)
      if (!e) return false;
    return true;
  }
  bool all_symbolic() const {
    for (auto& e : entries_)
      if (e) return false;
    return true;
  }

  // Numeric value of c_ij; throws when the entry is symbolic.
  const Rational& value(int i, int j) const {
    auto& e = entries_[pair_index(i, j, k_)];
    if (!e) throw std::logic_error("covariance entry is symbolic");
    return *e;
  }

  // c_ij as a polynomial: the variable itself, or a constant.
  Polynomial entry(int i, int j) const {
    auto& e = entries_[pair_index(i, j, k_)];
    if (e) return Polynomial(*e);
    return Polynomial::variable(Var(i, j));
  }
  Polynomial entry_by_index(int idx) const {
    auto [i, j] = pair_at(idx, k_);
    return entry(i, j);
  }

  // Symbolic entries, as variables, in pair order.
  std::vector<Var> symbolic_vars() const {
    std::vector<Var> vars;
    for (int idx = 0; idx < pair_count(k_); ++idx) {
      if (!entries_[idx]) {
        auto [i, j] = pair_at(idx, k_);
        vars.emplace_back(i, j);
      }
    }
    return vars;
  }

  // Stable identity string, e.g. "k=3;c12=sym;c13=1/2;c23=sym".
  std::string fingerprint() const;

  friend bool operator==(const CovarianceSpec& a, const CovarianceSpec& b) {
    return a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  int k_;
  std::vector<std::optional<Rational>> entries_;
};

}  // namespace mvmom
