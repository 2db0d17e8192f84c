#include "mvmom/table.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "mvmom/stein.hpp"

namespace mvmom {

std::vector<MultiIndex> grid_targets(int k, long limit) {
  if (k < 1 || limit < 1) throw std::invalid_argument("bad grid bounds");
  std::vector<MultiIndex> out;
  std::vector<long> cur(static_cast<size_t>(k), 1);
  while (true) {
    out.push_back(MultiIndex(cur));
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<size_t>(pos)] == limit) {
      cur[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++cur[static_cast<size_t>(pos)];
  }
  return out;
}

std::vector<MultiIndex> diagonal_targets(int k, long limit) {
  if (k < 1 || limit < 1) throw std::invalid_argument("bad diagonal bounds");
  std::vector<MultiIndex> out;
  for (long t = 1; t <= limit; ++t) {
    out.push_back(MultiIndex(std::vector<long>(static_cast<size_t>(k), t)));
  }
  return out;
}

void write_table(std::ostream& os, const CovarianceSpec& cov,
                 const std::vector<MultiIndex>& targets,
                 const TableOptions& options) {
  std::vector<std::string> cells(targets.size());

  if (options.engine == Engine::kStein) {
    // One shared evaluation: every target feeds the same level-by-level pass.
    auto values = moment_stein_batch(cov, targets, options.pure.stein);
    for (size_t i = 0; i < targets.size(); ++i) cells[i] = values[i].str();
  } else {
    const int threads =
        std::max(1, std::min<int>(options.threads,
                                  static_cast<int>(targets.size())));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < targets.size();
           i = next.fetch_add(1)) {
        cells[i] =
            compute_moment(cov, targets[i], options.engine, options.pure)
                .value.str();
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(threads));
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
  }

  for (size_t i = 0; i < targets.size(); ++i) {
    const auto& v = targets[i].values();
    for (size_t c = 0; c < v.size(); ++c) {
      if (c) os << ',';
      os << v[c];
    }
    os << '\t' << cells[i] << '\n';
  }
}

}  // namespace mvmom
