#include "mvmom/marriage.hpp"

#include <stdexcept>

#include "mvmom/wick.hpp"

namespace mvmom {

Integer count_marriages(const MultiIndex& m, const std::vector<long>& cross) {
  const int k = static_cast<int>(m.size());
  if (static_cast<int>(cross.size()) != pair_count(k)) {
    throw std::invalid_argument("expected " + std::to_string(pair_count(k)) +
                                " cross-pair counts");
  }
  if (!m.all_nonnegative()) throw std::invalid_argument("negative gender size");
  PairingType type;
  type.cross = cross;
  type.same.assign(static_cast<size_t>(k), 0);
  for (int i = 1; i <= k; ++i) {
    long crossed = 0;
    for (int j = 1; j <= k; ++j) {
      if (j == i) continue;
      const long a = cross[static_cast<size_t>(
          pair_index(std::min(i, j), std::max(i, j), k))];
      if (a < 0) return Integer(0);
      crossed += a;
    }
    const long rest = m[static_cast<size_t>(i - 1)] - crossed;
    if (rest < 0 || rest % 2 != 0) return Integer(0);
    type.same[static_cast<size_t>(i - 1)] = rest / 2;
  }
  return pairing_type_weight(m, type);
}

Polynomial marriage_polynomial(const MultiIndex& m, Engine engine,
                               const PureOptions& options) {
  const CovarianceSpec cov = CovarianceSpec::symbolic(static_cast<int>(m.size()));
  return compute_moment(cov, m, engine, options).value;
}

void for_each_feasible_cross(
    const MultiIndex& m,
    const std::function<void(const std::vector<long>&)>& fn) {
  for_each_pairing_type(m, [&](const PairingType& t) { fn(t.cross); });
}

}  // namespace mvmom
