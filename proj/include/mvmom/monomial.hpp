#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvmom {

// A correlation variable c_ij with 1 <= i < j. Packed so that the natural
// integer order matches the variable order c12 < c13 < ... < c23 < ...
class Var {
 public:
  Var() = default;
  Var(int i, int j) {
    if (i < 1 || j <= i || j > 255) throw std::invalid_argument("bad var pair");
    code_ = static_cast<uint16_t>((i << 8) | j);
  }
  int i() const { return code_ >> 8; }
  int j() const { return code_ & 0xff; }
  uint16_t code() const { return code_; }
  std::string name() const {
    if (j() <= 9) return "c" + std::to_string(i()) + std::to_string(j());
    return "c" + std::to_string(i()) + "_" + std::to_string(j());
  }
  friend bool operator==(Var a, Var b) { return a.code_ == b.code_; }
  friend bool operator!=(Var a, Var b) { return a.code_ != b.code_; }
  friend bool operator<(Var a, Var b) { return a.code_ < b.code_; }

 private:
  uint16_t code_ = 0;
};

// Product of variable powers; exponents positive, parts sorted by variable.
class Monomial {
 public:
  Monomial() = default;  // the empty product (constant 1)
  explicit Monomial(Var v, uint32_t e = 1) {
    if (e > 0) parts_.emplace_back(v, e);
  }

  bool is_unit() const { return parts_.empty(); }
  size_t size() const { return parts_.size(); }
  const std::vector<std::pair<Var, uint32_t>>& parts() const { return parts_; }
  uint64_t total_degree() const {
    uint64_t d = 0;
    for (auto& [v, e] : parts_) d += e;
    return d;
  }
  uint32_t exponent(Var v) const {
    for (auto& [w, e] : parts_)
      if (w == v) return e;
    return 0;
  }

  Monomial operator*(const Monomial& o) const;
  // Componentwise quotient; false when any exponent would go negative.
  bool try_divide(const Monomial& o, Monomial& out) const;

  // Pure lexicographic comparison of dense exponent vectors with variables
  // ordered c12 < c13 < ...; returns -1, 0, or 1.
  static int lex_cmp(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

  std::string str() const;  // e.g. "c12^3*c23"; "1" for the empty product

  // Builds from (var, exponent) pairs in any order; merges duplicates.
  static Monomial from_parts(std::vector<std::pair<Var, uint32_t>> parts);

 private:
  std::vector<std::pair<Var, uint32_t>> parts_;
};

inline Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.parts_.reserve(parts_.size() + o.parts_.size());
  size_t a = 0, b = 0;
  while (a < parts_.size() && b < o.parts_.size()) {
    if (parts_[a].first < o.parts_[b].first) {
      r.parts_.push_back(parts_[a++]);
    } else if (o.parts_[b].first < parts_[a].first) {
      r.parts_.push_back(o.parts_[b++]);
    } else {
      r.parts_.emplace_back(parts_[a].first,
                            parts_[a].second + o.parts_[b].second);
      ++a;
      ++b;
    }
  }
  for (; a < parts_.size(); ++a) r.parts_.push_back(parts_[a]);
  for (; b < o.parts_.size(); ++b) r.parts_.push_back(o.parts_[b]);
  return r;
}

inline bool Monomial::try_divide(const Monomial& o, Monomial& out) const {
  Monomial r;
  size_t a = 0, b = 0;
  while (b < o.parts_.size()) {
    if (a == parts_.size()) return false;
    if (parts_[a].first < o.parts_[b].first) {
      r.parts_.push_back(parts_[a++]);
    } else if (o.parts_[b].first < parts_[a].first) {
      return false;
    } else {
      if (parts_[a].second < o.parts_[b].second) return false;
      if (parts_[a].second > o.parts_[b].second) {
        r.parts_.emplace_back(parts_[a].first,
                              parts_[a].second - o.parts_[b].second);
      }
      ++a;
      ++b;
    }
  }
  for (; a < parts_.size(); ++a) r.parts_.push_back(parts_[a]);
  out = std::move(r);
  return true;
}

inline int Monomial::lex_cmp(const Monomial& a, const Monomial& b) {
  size_t x = 0, y = 0;
  while (x < a.parts_.size() && y < b.parts_.size()) {
    Var va = a.parts_[x].first, vb = b.parts_[y].first;
    if (va < vb) return 1;   // a has a positive power at an earlier variable
    if (vb < va) return -1;
    if (a.parts_[x].second != b.parts_[y].second) {
      return a.parts_[x].second > b.parts_[y].second ? 1 : -1;
    }
    ++x;
    ++y;
  }
  if (x < a.parts_.size()) return 1;
  if (y < b.parts_.size()) return -1;
  return 0;
}

inline std::string Monomial::str() const {
  if (parts_.empty()) return "1";
  std::string out;
  for (auto& [v, e] : parts_) {
    if (!out.empty()) out += "*";
    out += v.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline Monomial Monomial::from_parts(
    std::vector<std::pair<Var, uint32_t>> parts) {
  std::vector<std::pair<Var, uint32_t>> sorted = std::move(parts);
  for (size_t i = 1; i < sorted.size(); ++i) {  // insertion sort: tiny inputs
    auto p = sorted[i];
    size_t j = i;
    while (j > 0 && p.first < sorted[j - 1].first) {
      sorted[j] = sorted[j - 1];
      --j;
    }
    sorted[j] = p;
  }
  Monomial m;
  for (auto& [v, e] : sorted) {
    if (e == 0) continue;
    if (!m.parts_.empty() && m.parts_.back().first == v) {
      m.parts_.back().second += e;
    } else {
      m.parts_.emplace_back(v, e);
    }
  }
  return m;
}

}  // namespace mvmom
