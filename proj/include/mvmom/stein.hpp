#pragma once

#include <vector>

#include "mvmom/covariance.hpp"
#include "mvmom/multi_index.hpp"
#include "mvmom/polynomial.hpp"

namespace mvmom {

// Which positive coordinate the reduction step pivots on.  Any choice yields
// the same moment; it changes only which intermediate states get computed.
enum class PivotPolicy {
  kSmallestPositive,  // fewest intermediate states on elongated targets
  kLargestPositive,
  kFirstPositive,
};

struct SteinOptions {
  PivotPolicy pivot = PivotPolicy::kSmallestPositive;
  bool memoize = true;  // honoured by the reference evaluator only
};

// Mixed moment via the reduction M(m) = sum_j c_pj (m_j - [j==p]) M(m-e_p-e_j)
// with c_pp = 1, M(0) = 1.  Evaluates level by level in total degree, keeping
// only two levels of intermediate values alive.
Polynomial moment_stein(const CovarianceSpec& cov, const MultiIndex& m,
                        const SteinOptions& options = {});

// Same reduction for a batch of targets, sharing all intermediate work.
// Results align with `targets`.
std::vector<Polynomial> moment_stein_batch(const CovarianceSpec& cov,
                                           const std::vector<MultiIndex>& targets,
                                           const SteinOptions& options = {});

// Moments along one coordinate ray: coordinate `direction` (0-based) takes
// values start, start+step, ..., start+(count-1)*step while the remaining
// coordinates are pinned to `fixed` (given in coordinate order, without the
// direction slot).
std::vector<Polynomial> seed_sequence(const CovarianceSpec& cov, int direction,
                                      const std::vector<long>& fixed,
                                      long start, long count, long step,
                                      const SteinOptions& options = {});

// Straightforward recursive evaluator used to cross-check the layered one;
// exponential without memoization, so keep inputs small.
Polynomial moment_stein_reference(const CovarianceSpec& cov,
                                  const MultiIndex& m,
                                  const SteinOptions& options = {});

}  // namespace mvmom
