#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvmom {

// Exponent vector (m_1, ..., m_k) of a mixed moment E[x1^m1 ... xk^mk].
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(size_t k, long fill = 0) : m_(k, fill) {}
  MultiIndex(std::initializer_list<long> v) : m_(v) { check(); }
  explicit MultiIndex(std::vector<long> v) : m_(std::move(v)) { check(); }

  size_t size() const { return m_.size(); }
  long operator[](size_t i) const { return m_[i]; }
  long& operator[](size_t i) { return m_[i]; }
  const std::vector<long>& values() const { return m_; }

  long sum() const { return std::accumulate(m_.begin(), m_.end(), 0L); }
  bool sum_is_odd() const { return sum() % 2 != 0; }
  bool all_nonnegative() const {
    for (long v : m_)
      if (v < 0) return false;
    return true;
  }

  MultiIndex minus_unit(size_t i) const {
    MultiIndex r(*this);
    r.m_[i] -= 1;
    return r;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.m_ == b.m_;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) {
    return !(a == b);
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.m_ < b.m_;
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < m_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m_[i]);
    }
    return s + ")";
  }

  struct Hash {
    size_t operator()(const MultiIndex& m) const {
      uint64_t h = 14695981039346656037ULL;
      for (long v : m.m_) {
        h ^= static_cast<uint64_t>(v);
        h *= 1099511628211ULL;
      }
      return static_cast<size_t>(h);
    }
  };

 private:
  void check() const {
    if (m_.empty()) throw std::invalid_argument("empty multi-index");
  }
  std::vector<long> m_;
};

}  // namespace mvmom
