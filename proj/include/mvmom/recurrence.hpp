#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvmom/covariance.hpp"
#include "mvmom/multi_index.hpp"
#include "mvmom/polynomial.hpp"

namespace mvmom {

// Supplies the moment at hole value n along the ray a recurrence lives on.
using RaySupplier = std::function<Polynomial(long n)>;

// A single-direction linear recurrence for moments along one coordinate ray:
//
//   sum_{t=0..order} coeffs[t](n) * M(n - t*step) = 0
//
// asserted for every n >= offset + order*step with n = offset (mod step),
// where M(n) is the moment with coordinate `direction` set to n and the
// remaining coordinates pinned to `fixed`.  Each coeffs[t] is a polynomial in
// n; coeffs[t][e] is the scalar (a polynomial in the symbolic covariance
// entries, constant when the covariance is numeric) multiplying n^e.
// Denominators are always cleared: scaling the relation is free, so the
// coefficient scalars are kept as polynomials with integer-primitive content.
struct Recurrence {
  int k = 0;
  int direction = 0;  // 0-based coordinate index
  long step = 2;
  int order = 0;
  long offset = 0;
  std::vector<long> fixed;  // k-1 values, coordinate order, direction omitted
  CovarianceSpec cov{1};
  std::vector<std::vector<Polynomial>> coeffs;

  int degree() const;  // largest e with a nonzero coeffs[t][e]

  // coeffs[t] evaluated at a concrete n.
  Polynomial coeff_at(int t, long n) const;

  // The full multi-index with the hole filled by n.
  MultiIndex index_at(long n) const;

  // First n at which the relation may be applied.
  long first_application() const { return offset + order * step; }

  std::string to_json() const;
  static Recurrence from_json(const std::string& text);
};

struct VerifyReport {
  bool ok = true;
  long checked = 0;
  long first_failure = -1;  // n of the first failing application
};

// Recomputes the residual at every application point n in [lo, hi] that is
// congruent to offset mod step, with moments drawn from `supplier`.
VerifyReport verify(const Recurrence& rec, long lo, long hi,
                    const RaySupplier& supplier);

struct EvalStats {
  int max_window = 0;        // peak count of retained history values
  long bridged_points = 0;   // applications bypassed via the supplier
  long applications = 0;
};

// Rolls the recurrence from its seeds up to n_target, holding exactly `order`
// history values.  Seeds (and any bridging past a vanishing leading
// coefficient) come from `supplier`.  n_target must be congruent to offset
// modulo step; targets below the first application are delegated to the
// supplier.
Polynomial evaluate(const Recurrence& rec, long n_target,
                    const RaySupplier& supplier, EvalStats* stats = nullptr);

}  // namespace mvmom
