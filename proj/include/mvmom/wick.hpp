#pragma once

#include <functional>
#include <vector>

#include "mvmom/covariance.hpp"
#include "mvmom/multi_index.hpp"
#include "mvmom/polynomial.hpp"

namespace mvmom {

// One way the m_1 + ... + m_k points can pair up, counted by type: cross[l]
// copies of each cross-pair (i,j) (pair order, see pair_index) and same[i]
// within-coordinate pairs.  Feasibility: 2*same[i] + sum_j cross[(i,j)] = m_i.
struct PairingType {
  std::vector<long> cross;
  std::vector<long> same;
};

// E[x^r] for a standard normal: 0 for odd r, (r-1)!! for even r.
Integer univariate_moment(long r);

// Number of complete matchings realizing one pairing type:
// prod m_i! / (prod cross! * prod 2^same same!).
Integer pairing_type_weight(const MultiIndex& m, const PairingType& type);

// Enumerates feasible pairing types of m (empty when sum(m) is odd).
void for_each_pairing_type(const MultiIndex& m,
                           const std::function<void(const PairingType&)>& fn);
std::vector<PairingType> enumerate_pairing_types(const MultiIndex& m);

// Mixed moment by summing the pairing-type expansion.  Exact; symbolic
// covariance entries stay symbolic in the result.
Polynomial moment_wick(const CovarianceSpec& cov, const MultiIndex& m);

// Independent check: sums over every complete matching one by one.
// Guarded to sum(m) <= 12 (throws std::length_error beyond).
Polynomial moment_bruteforce(const CovarianceSpec& cov, const MultiIndex& m);

}  // namespace mvmom
