#pragma once

#include <functional>
#include <vector>

#include "mvmom/engines.hpp"
#include "mvmom/multi_index.hpp"
#include "mvmom/polynomial.hpp"
#include "mvmom/rational.hpp"

namespace mvmom {

// Number of ways m_i individuals of gender i (i = 1..k) can form couples
// such that exactly cross[l] couples mix the gender pair l (pair order, see
// pair_index) and everyone is paired, same-gender couples unordered.
// Zero when no arrangement balances.  Equals the coefficient of
// prod c_l^cross[l] in the moment with every entry symbolic.
Integer count_marriages(const MultiIndex& m, const std::vector<long>& cross);

// The full generating polynomial in the c_ij, computed by the chosen engine
// with an all-symbolic covariance.
Polynomial marriage_polynomial(const MultiIndex& m,
                               Engine engine = Engine::kWick,
                               const PureOptions& options = {});

// Every cross vector with a nonzero count, in lexicographic order.
void for_each_feasible_cross(const MultiIndex& m,
                             const std::function<void(const std::vector<long>&)>& fn);

}  // namespace mvmom
