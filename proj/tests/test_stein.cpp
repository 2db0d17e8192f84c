#include <doctest.h>

#include <stdexcept>

#include "mvmom/stein.hpp"
#include "mvmom/wick.hpp"

using mvmom::CovarianceSpec;
using mvmom::moment_stein;
using mvmom::moment_stein_batch;
using mvmom::moment_stein_reference;
using mvmom::moment_wick;
using mvmom::MultiIndex;
using mvmom::PivotPolicy;
using mvmom::Polynomial;
using mvmom::Rational;
using mvmom::SteinOptions;

TEST_SUITE("stein") {

TEST_CASE("base cases") {
  const auto cov = CovarianceSpec::symbolic(2);
  CHECK(moment_stein(cov, MultiIndex{0, 0}).is_one());
  CHECK(moment_stein(cov, MultiIndex{1, 0}).is_zero());
  CHECK(moment_stein(cov, MultiIndex{1, 1}).str() == "c12");
  CHECK(moment_stein(cov, MultiIndex{2, 0}).is_one());
  CHECK(moment_stein(cov, MultiIndex{3, 3}).str() == "6*c12^3 + 9*c12");
}

TEST_CASE("agrees with the pairing expansion on symbolic grids") {
  const auto cov2 = CovarianceSpec::symbolic(2);
  for (long a = 0; a <= 7; ++a)
    for (long b = 0; b <= 7; ++b)
      CHECK(moment_stein(cov2, MultiIndex{a, b}) ==
            moment_wick(cov2, MultiIndex{a, b}));

  const auto cov3 = CovarianceSpec::symbolic(3);
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b)
      for (long c = 0; c <= 4; ++c)
        CHECK(moment_stein(cov3, MultiIndex{a, b, c}) ==
              moment_wick(cov3, MultiIndex{a, b, c}));
}

TEST_CASE("agrees on numeric and mixed covariances") {
  auto num = CovarianceSpec::numeric(
      3, {Rational(1, 2), Rational(-2, 7), Rational(0)});
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 5; ++b)
      for (long c = 0; c <= 3; ++c)
        CHECK(moment_stein(num, MultiIndex{a, b, c}) ==
              moment_wick(num, MultiIndex{a, b, c}));

  auto mixed = CovarianceSpec::symbolic(3);
  mixed.set_entry(2, 3, Rational(1, 3));
  for (long a = 0; a <= 4; ++a)
    CHECK(moment_stein(mixed, MultiIndex{a, 2, 2}) ==
          moment_wick(mixed, MultiIndex{a, 2, 2}));
}

TEST_CASE("pivot choice does not change the value") {
  const auto cov = CovarianceSpec::symbolic(3);
  const MultiIndex targets[] = {MultiIndex{4, 2, 6}, MultiIndex{3, 5, 2},
                                MultiIndex{6, 1, 1}};
  for (const auto& m : targets) {
    SteinOptions small, large, first;
    small.pivot = PivotPolicy::kSmallestPositive;
    large.pivot = PivotPolicy::kLargestPositive;
    first.pivot = PivotPolicy::kFirstPositive;
    const Polynomial a = moment_stein(cov, m, small);
    CHECK(a == moment_stein(cov, m, large));
    CHECK(a == moment_stein(cov, m, first));
  }
}

TEST_CASE("layered evaluator matches the plain recursive one") {
  const auto cov = CovarianceSpec::symbolic(3);
  for (long a = 0; a <= 3; ++a)
    for (long b = 0; b <= 3; ++b)
      for (long c = 0; c <= 3; ++c) {
        const MultiIndex m{a, b, c};
        CHECK(moment_stein(cov, m) == moment_stein_reference(cov, m));
      }
}

TEST_CASE("memoization is transparent in the reference evaluator") {
  const auto cov = CovarianceSpec::symbolic(2);
  SteinOptions memo, plain;
  memo.memoize = true;
  plain.memoize = false;
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 5; ++b)
      CHECK(moment_stein_reference(cov, MultiIndex{a, b}, memo) ==
            moment_stein_reference(cov, MultiIndex{a, b}, plain));
}

TEST_CASE("batch evaluation matches single targets and their order") {
  const auto cov = CovarianceSpec::symbolic(2);
  const std::vector<MultiIndex> targets = {
      MultiIndex{4, 4}, MultiIndex{1, 1}, MultiIndex{0, 0}, MultiIndex{3, 1},
      MultiIndex{5, 1}, MultiIndex{4, 4}};  // duplicate on purpose
  const auto batch = moment_stein_batch(cov, targets);
  REQUIRE(batch.size() == targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    CHECK(batch[i] == moment_stein(cov, targets[i]));
  }
  CHECK(batch[0] == batch[5]);
}

TEST_CASE("seed sequences walk a ray") {
  const auto cov = CovarianceSpec::symbolic(2);
  // direction 0 (m1), m2 pinned to 3: values at m1 = 1, 3, 5, 7
  const auto seq = mvmom::seed_sequence(cov, 0, {3}, 1, 4, 2);
  REQUIRE(seq.size() == 4);
  for (long i = 0; i < 4; ++i) {
    CHECK(seq[static_cast<size_t>(i)] ==
          moment_wick(cov, MultiIndex{1 + 2 * i, 3}));
  }
  // k = 1: no pinned coordinates at all
  const auto cov1 = CovarianceSpec::symbolic(1);
  const auto uni = mvmom::seed_sequence(cov1, 0, {}, 0, 5, 2);
  REQUIRE(uni.size() == 5);
  CHECK(uni[2].constant_value() == Rational(3));   // E[x^4]
  CHECK(uni[4].constant_value() == Rational(105)); // E[x^8]
}

TEST_CASE("odd totals vanish without building a corridor") {
  const auto cov = CovarianceSpec::symbolic(3);
  CHECK(moment_stein(cov, MultiIndex{501, 500, 500}).is_zero());
}

TEST_CASE("input validation") {
  const auto cov = CovarianceSpec::symbolic(2);
  CHECK_THROWS_AS(moment_stein(cov, MultiIndex{1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(moment_stein(cov, MultiIndex{-2, 0}), std::invalid_argument);
}

}  // TEST_SUITE
