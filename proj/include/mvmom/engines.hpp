#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "mvmom/discover.hpp"
#include "mvmom/recurrence.hpp"
#include "mvmom/stein.hpp"
#include "mvmom/wick.hpp"

namespace mvmom {

enum class Engine { kWick, kStein, kPure };

std::string engine_name(Engine e);
std::optional<Engine> engine_from_name(const std::string& name);

struct PureOptions {
  DiscoverLimits limits;
  bool allow_fallback = true;
  // Discovery over two or more symbolic entries multiplies both the unknown
  // count and the sample polynomial sizes; off by default, the reduction
  // engine answers instead (reported as a fallback).
  bool attempt_multivariate_symbolic = false;
  std::filesystem::path cache_dir;  // empty: in-process cache only
  SteinOptions stein;
};

struct MomentResult {
  Polynomial value;
  Engine engine_used = Engine::kWick;
  bool fallback_used = false;
  std::optional<int> recurrence_order;
  long bridged_points = 0;
};

// Mixed moment via the discovered-recurrence pipeline: pick the coordinate
// with the largest exponent, discover (or re-load) a recurrence along that
// ray, then roll it to the target with a constant-size window.  Falls back to
// the direct reduction when discovery is declined or fails (unless
// allow_fallback is off, in which case NotFoundError propagates).
MomentResult moment_pure(const CovarianceSpec& cov, const MultiIndex& m,
                         const PureOptions& options = {});

// Uniform entry point over all three engines.
MomentResult compute_moment(const CovarianceSpec& cov, const MultiIndex& m,
                            Engine engine, const PureOptions& options = {});

}  // namespace mvmom
