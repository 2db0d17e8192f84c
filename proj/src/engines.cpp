#include "mvmom/engines.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "mvmom/cache.hpp"

namespace mvmom {

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::kWick:
      return "wick";
    case Engine::kStein:
      return "stein";
    case Engine::kPure:
      return "pure";
  }
  return "?";
}

std::optional<Engine> engine_from_name(const std::string& name) {
  if (name == "wick") return Engine::kWick;
  if (name == "stein") return Engine::kStein;
  if (name == "pure") return Engine::kPure;
  return std::nullopt;
}

namespace {

// Recurrences already discovered in this process, shared across calls.
class ProcessCache {
 public:
  static ProcessCache& instance() {
    static ProcessCache c;
    return c;
  }
  std::optional<Recurrence> load(const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const Recurrence& rec) {
    std::lock_guard<std::mutex> lock(mu_);
    map_.insert_or_assign(key, rec);
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, Recurrence> map_;
};

int pick_direction(const MultiIndex& m) {
  int best = 0;
  for (size_t i = 1; i < m.size(); ++i) {
    if (m[i] > m[best]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

MomentResult moment_pure(const CovarianceSpec& cov, const MultiIndex& m,
                         const PureOptions& options) {
  const int k = cov.dimension();
  if (static_cast<int>(m.size()) != k) {
    throw std::invalid_argument("multi-index size does not match dimension");
  }
  if (!m.all_nonnegative()) throw std::invalid_argument("negative exponent");

  MomentResult result;
  result.engine_used = Engine::kPure;
  if (m.sum_is_odd()) return result;  // zero by symmetry, no machinery needed

  const int direction = pick_direction(m);
  std::vector<long> fixed;
  for (int i = 0; i < k; ++i) {
    if (i != direction) fixed.push_back(m[i]);
  }

  const bool heavy_symbolic = cov.symbolic_vars().size() >= 2;
  if (heavy_symbolic && !options.attempt_multivariate_symbolic) {
    if (!options.allow_fallback) {
      throw NotFoundError(options.limits.max_order, options.limits.max_degree);
    }
    result.value = moment_stein(cov, m, options.stein);
    result.engine_used = Engine::kStein;
    result.fallback_used = true;
    return result;
  }

  const std::string key = RecurrenceCache::key_for(cov, direction, fixed);
  RecurrenceCache disk(options.cache_dir);
  std::optional<Recurrence> rec = ProcessCache::instance().load(key);
  if (!rec) rec = disk.load(key);
  if (!rec) {
    DiscoverOptions dopt;
    dopt.limits = options.limits;
    dopt.stein = options.stein;
    try {
      rec = discover(cov, direction, fixed, dopt);
    } catch (const NotFoundError&) {
      if (!options.allow_fallback) throw;
      result.value = moment_stein(cov, m, options.stein);
      result.engine_used = Engine::kStein;
      result.fallback_used = true;
      return result;
    }
    ProcessCache::instance().store(key, *rec);
    disk.store(key, *rec);
  } else {
    ProcessCache::instance().store(key, *rec);
  }

  // Seeds come out of one shared batch; bridging (rare) falls back to the
  // one-off reduction.
  const long n_target = m[direction];
  std::map<long, Polynomial> seeds;
  {
    std::vector<MultiIndex> targets;
    std::vector<long> ns;
    for (int i = 0; i < rec->order; ++i) {
      const long n = rec->offset + i * rec->step;
      if (n > n_target) break;
      targets.push_back(rec->index_at(n));
      ns.push_back(n);
    }
    if (n_target < rec->first_application()) {
      targets.push_back(rec->index_at(n_target));
      ns.push_back(n_target);
    }
    auto vals = moment_stein_batch(cov, targets, options.stein);
    for (size_t i = 0; i < ns.size(); ++i) seeds[ns[i]] = std::move(vals[i]);
  }
  RaySupplier supplier = [&](long n) -> Polynomial {
    auto it = seeds.find(n);
    if (it != seeds.end()) return it->second;
    return moment_stein(cov, rec->index_at(n), options.stein);
  };

  EvalStats stats;
  result.value = evaluate(*rec, n_target, supplier, &stats);
  result.recurrence_order = rec->order;
  result.bridged_points = stats.bridged_points;
  return result;
}

MomentResult compute_moment(const CovarianceSpec& cov, const MultiIndex& m,
                            Engine engine, const PureOptions& options) {
  MomentResult result;
  switch (engine) {
    case Engine::kWick:
      result.value = moment_wick(cov, m);
      result.engine_used = Engine::kWick;
      return result;
    case Engine::kStein:
      result.value = moment_stein(cov, m, options.stein);
      result.engine_used = Engine::kStein;
      return result;
    case Engine::kPure:
      return moment_pure(cov, m, options);
  }
  throw std::logic_error("unknown engine");
}

}  // namespace mvmom
