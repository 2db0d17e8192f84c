#include <doctest.h>

#include <stdexcept>

#include "mvmom/marriage.hpp"
#include "mvmom/wick.hpp"

using mvmom::count_marriages;
using mvmom::Integer;
using mvmom::marriage_polynomial;
using mvmom::Monomial;
using mvmom::MultiIndex;
using mvmom::Rational;
using mvmom::Var;

TEST_SUITE("marriage") {

TEST_CASE("tiny cases by hand") {
  // one man, one woman, one mixed couple
  CHECK(count_marriages(MultiIndex{1, 1}, {1}).is_one());
  // two of each, no mixed couples: one way each side
  CHECK(count_marriages(MultiIndex{2, 2}, {0}).to_long() == 1);
  // two of each, two mixed couples: 2 ways
  CHECK(count_marriages(MultiIndex{2, 2}, {2}).to_long() == 2);
  // parity obstruction: one mixed couple leaves singletons
  CHECK(count_marriages(MultiIndex{2, 2}, {1}).is_zero());
  // infeasible: more mixed couples than people
  CHECK(count_marriages(MultiIndex{2, 2}, {4}).is_zero());
  // nobody at all: the empty arrangement
  CHECK(count_marriages(MultiIndex{0, 0}, {0}).is_one());
  // same-gender pairs only: (2b-1)!! arrangements for 2b people
  CHECK(count_marriages(MultiIndex{6, 0}, {0}).to_long() == 15);
}

TEST_CASE("matches the coefficient of the symbolic moment") {
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b) {
      const MultiIndex m{a, b};
      const auto poly = mvmom::moment_wick(mvmom::CovarianceSpec::symbolic(2), m);
      for (long x = 0; x <= a + b; ++x) {
        const Rational c = poly.coeff(
            x == 0 ? Monomial() : Monomial(Var(1, 2), static_cast<uint32_t>(x)));
        CHECK(Rational(count_marriages(m, {x})) == c);
      }
    }
}

TEST_CASE("three genders: the documented example value") {
  const Integer v = count_marriages(MultiIndex{20, 20, 20}, {9, 7, 5});
  CHECK(v.str() == "444975998773143505634352562176000000000");
}

TEST_CASE("closure: counts over all cross vectors sum to (sum-1)!!") {
  for (long a = 0; a <= 5; ++a)
    for (long b = 0; b <= 5; ++b)
      for (long c = 0; c <= 5; ++c) {
        const MultiIndex m{a, b, c};
        if (m.sum_is_odd()) continue;
        Integer total(0);
        mvmom::for_each_feasible_cross(m, [&](const std::vector<long>& cross) {
          const Integer w = count_marriages(m, cross);
          CHECK_FALSE(w.is_zero());  // feasible means nonzero
          total += w;
        });
        CHECK(total == Integer::double_factorial(m.sum() - 1));
      }
}

TEST_CASE("feasible cross vectors arrive in ascending lexicographic order") {
  std::vector<std::vector<long>> seen;
  mvmom::for_each_feasible_cross(MultiIndex{3, 3, 2},
                                 [&](const std::vector<long>& cross) {
                                   seen.push_back(cross);
                                 });
  REQUIRE(!seen.empty());
  for (size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("generating polynomial equals the symbolic moment") {
  const MultiIndex m{3, 3, 2};
  const auto poly = marriage_polynomial(m);
  CHECK(poly == mvmom::moment_wick(mvmom::CovarianceSpec::symbolic(3), m));
  // and its coefficients are the marriage counts
  mvmom::for_each_feasible_cross(m, [&](const std::vector<long>& cross) {
    const Monomial mono = Monomial::from_parts(
        {{Var(1, 2), static_cast<uint32_t>(cross[0])},
         {Var(1, 3), static_cast<uint32_t>(cross[1])},
         {Var(2, 3), static_cast<uint32_t>(cross[2])}});
    CHECK(poly.coeff(mono) == Rational(count_marriages(m, cross)));
  });
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(count_marriages(MultiIndex{1, 1}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_marriages(MultiIndex{-1, 1}, {1}),
                  std::invalid_argument);
  CHECK(count_marriages(MultiIndex{1, 1}, {-1}).is_zero());
}

}  // TEST_SUITE
