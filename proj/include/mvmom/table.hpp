#pragma once

#include <ostream>
#include <vector>

#include "mvmom/engines.hpp"

namespace mvmom {

struct TableOptions {
  Engine engine = Engine::kWick;
  int threads = 1;
  PureOptions pure;
};

// Writes one line per multi-index: "m1,m2,...<TAB><polynomial>\n", in the
// order given.  Output bytes depend only on the inputs, not on thread count.
void write_table(std::ostream& os, const CovarianceSpec& cov,
                 const std::vector<MultiIndex>& targets,
                 const TableOptions& options = {});

// All multi-indices in {1..limit}^k, last coordinate fastest.
std::vector<MultiIndex> grid_targets(int k, long limit);
// (t, t, ..., t) for t = 1..limit.
std::vector<MultiIndex> diagonal_targets(int k, long limit);

}  // namespace mvmom
