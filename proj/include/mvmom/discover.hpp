#pragma once

#include <stdexcept>
#include <vector>

#include "mvmom/covariance.hpp"
#include "mvmom/recurrence.hpp"
#include "mvmom/stein.hpp"

namespace mvmom {

struct DiscoverLimits {
  int max_order = 8;
  int max_degree = 12;      // degree in the running index n
  int max_sym_degree = 12;  // total degree in symbolic covariance entries
};

struct DiscoverOptions {
  DiscoverLimits limits;
  int held_out = 16;  // consecutive extra points that must verify exactly
  SteinOptions stein;
};

// No recurrence within the search limits.
class NotFoundError : public std::runtime_error {
 public:
  NotFoundError(int max_order, int max_degree)
      : std::runtime_error("no recurrence found up to order " +
                           std::to_string(max_order) + ", degree " +
                           std::to_string(max_degree)),
        max_order(max_order),
        max_degree(max_degree) {}
  int max_order;
  int max_degree;
};

// Finds a linear recurrence with polynomial coefficients for the moments
// along the ray (fixed..., n) in coordinate `direction` (0-based), stepping
// n by 2.  Candidates are screened modulo word-sized primes, solved exactly
// by Chinese remaindering with rational reconstruction (fraction-free
// elimination as fallback), and accepted only after the relation holds
// exactly on the fitting window plus `held_out` further points.
// Throws NotFoundError when the limits are exhausted.
Recurrence discover(const CovarianceSpec& cov, int direction,
                    const std::vector<long>& fixed,
                    const DiscoverOptions& options = {});

// Same, but samples come from a caller-provided source instead of the
// built-in reduction engine (used to cross-check against other oracles).
Recurrence discover_with_supplier(const CovarianceSpec& cov, int direction,
                                  const std::vector<long>& fixed,
                                  const DiscoverOptions& options,
                                  const RaySupplier& supplier);

}  // namespace mvmom
