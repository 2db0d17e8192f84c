#pragma once

#include <cstdint>
#include <initializer_list>

namespace mvmom {

inline uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;  // p < 2^63 so no overflow
  return s >= p ? s - p : s;
}

inline uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

inline uint64_t pow_mod(uint64_t base, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t inv_mod(uint64_t a, uint64_t p) {
  return pow_mod(a % p, p - 2, p);  // p prime
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// The i-th prime (i = 0, 1, ...) counting down from 2^62; a fixed sequence so
// modular runs are reproducible.
inline uint64_t nth_prime_below_2_62(int i) {
  uint64_t candidate = (1ULL << 62) - 1;
  int seen = 0;
  for (;; --candidate) {
    if (is_prime_u64(candidate)) {
      if (seen == i) return candidate;
      ++seen;
    }
  }
}

}  // namespace mvmom
