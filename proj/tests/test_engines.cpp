#include <doctest.h>

#include <stdexcept>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "mvmom/cache.hpp"
#include "mvmom/engines.hpp"
#include "mvmom/wick.hpp"

using mvmom::CovarianceSpec;
using mvmom::Engine;
using mvmom::MultiIndex;
using mvmom::PureOptions;
using mvmom::Rational;
using mvmom::RecurrenceCache;

namespace {

std::filesystem::path fresh_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("mvmom-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("engines") {

TEST_CASE("engine names round-trip") {
  CHECK(mvmom::engine_name(Engine::kWick) == "wick");
  CHECK(mvmom::engine_name(Engine::kStein) == "stein");
  CHECK(mvmom::engine_name(Engine::kPure) == "pure");
  CHECK(mvmom::engine_from_name("wick") == Engine::kWick);
  CHECK(mvmom::engine_from_name("pure") == Engine::kPure);
  CHECK_FALSE(mvmom::engine_from_name("fft").has_value());
}

TEST_CASE("all engines agree on a small grid") {
  const auto cov = CovarianceSpec::symbolic(2);
  PureOptions options;  // in-process cache only
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b) {
      const MultiIndex m{a, b};
      const auto w = mvmom::compute_moment(cov, m, Engine::kWick, options);
      const auto s = mvmom::compute_moment(cov, m, Engine::kStein, options);
      const auto p = mvmom::compute_moment(cov, m, Engine::kPure, options);
      CHECK(w.value == s.value);
      CHECK(w.value == p.value);
      CHECK(w.engine_used == Engine::kWick);
      CHECK(s.engine_used == Engine::kStein);
    }
}

TEST_CASE("pure-engine metadata on a single-variable ray") {
  const auto cov = CovarianceSpec::symbolic(2);
  PureOptions options;
  const auto r = mvmom::moment_pure(cov, MultiIndex{24, 4}, options);
  CHECK(r.engine_used == Engine::kPure);
  CHECK_FALSE(r.fallback_used);
  REQUIRE(r.recurrence_order.has_value());
  CHECK(*r.recurrence_order >= 1);
  CHECK(r.bridged_points >= 0);
  CHECK(r.value == mvmom::moment_wick(cov, MultiIndex{24, 4}));
}

TEST_CASE("odd totals answer zero without discovery") {
  const auto cov = CovarianceSpec::symbolic(3);
  const auto r = mvmom::moment_pure(cov, MultiIndex{3, 2, 2});
  CHECK(r.value.is_zero());
  CHECK_FALSE(r.fallback_used);
  CHECK_FALSE(r.recurrence_order.has_value());
}

TEST_CASE("two symbolic entries fall back to the reduction engine") {
  const auto cov = CovarianceSpec::symbolic(3);
  PureOptions options;
  const auto r = mvmom::moment_pure(cov, MultiIndex{4, 4, 2}, options);
  CHECK(r.fallback_used);
  CHECK(r.engine_used == Engine::kStein);
  CHECK(r.value == mvmom::moment_wick(cov, MultiIndex{4, 4, 2}));

  PureOptions strict;
  strict.allow_fallback = false;
  CHECK_THROWS_AS(mvmom::moment_pure(cov, MultiIndex{4, 4, 2}, strict),
                  mvmom::NotFoundError);
}

TEST_CASE("one symbolic entry among numeric ones is handled directly") {
  auto cov = CovarianceSpec::symbolic(3);
  cov.set_entry(1, 2, Rational(1, 2));
  cov.set_entry(1, 3, Rational(0));
  const auto r = mvmom::moment_pure(cov, MultiIndex{2, 2, 8});
  CHECK_FALSE(r.fallback_used);
  CHECK(r.value == mvmom::moment_wick(cov, MultiIndex{2, 2, 8}));
}

TEST_CASE("disk cache round-trip and reuse") {
  const auto dir = fresh_dir("cache");
  const auto cov = CovarianceSpec::numeric(2, {Rational(2, 5)});

  PureOptions options;
  options.cache_dir = dir;
  const auto first = mvmom::moment_pure(cov, MultiIndex{30, 2}, options);
  CHECK_FALSE(first.fallback_used);

  // exactly one recurrence file appears
  size_t files = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    CHECK(e.path().extension() == ".json");
  }
  CHECK(files == 1);

  // a second run (same ray, higher target) must agree
  const auto again = mvmom::moment_pure(cov, MultiIndex{60, 2}, options);
  CHECK(again.value == mvmom::moment_wick(cov, MultiIndex{60, 2}));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache store and load by key") {
  const auto dir = fresh_dir("kv");
  RecurrenceCache cache(dir);
  REQUIRE(cache.enabled());
  const auto cov = CovarianceSpec::symbolic(1);
  const auto rec = mvmom::discover(cov, 0, {});
  const std::string key = RecurrenceCache::key_for(cov, 0, {});
  CHECK_FALSE(cache.load(key).has_value());
  cache.store(key, rec);
  const auto back = cache.load(key);
  REQUIRE(back.has_value());
  CHECK(back->order == rec.order);
  CHECK(back->coeffs == rec.coeffs);

  // distinct rays get distinct keys
  CHECK(key != RecurrenceCache::key_for(cov, 0, {2}));
  const auto cov2 = CovarianceSpec::symbolic(2);
  CHECK(RecurrenceCache::key_for(cov2, 0, {1}) !=
        RecurrenceCache::key_for(cov2, 1, {1}));
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt cache files are treated as misses") {
  const auto dir = fresh_dir("corrupt");
  RecurrenceCache cache(dir);
  const auto cov = CovarianceSpec::symbolic(1);
  const auto rec = mvmom::discover(cov, 0, {});
  const std::string key = RecurrenceCache::key_for(cov, 0, {});
  cache.store(key, rec);
  // truncate every stored file
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream(e.path(), std::ios::trunc) << "{broken";
  }
  CHECK_FALSE(cache.load(key).has_value());

  // a file whose content belongs to a different ray is rejected: store the
  // k=1 recurrence under the key of another ray and ask for that ray
  const std::string other = RecurrenceCache::key_for(cov, 0, {4});
  cache.store(other, rec);
  CHECK_FALSE(cache.load(other).has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("disabled cache never touches the filesystem") {
  RecurrenceCache cache;  // empty path
  CHECK_FALSE(cache.enabled());
  const auto cov = CovarianceSpec::symbolic(1);
  CHECK_FALSE(cache.load(RecurrenceCache::key_for(cov, 0, {})).has_value());
}

TEST_CASE("validation") {
  const auto cov = CovarianceSpec::symbolic(2);
  CHECK_THROWS_AS(mvmom::moment_pure(cov, MultiIndex{1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(mvmom::moment_pure(cov, MultiIndex{-2, 2}),
                  std::invalid_argument);
}

}  // TEST_SUITE
