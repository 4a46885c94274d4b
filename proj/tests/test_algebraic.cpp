#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corder/algebraic.hpp"

using namespace corder;

namespace {
AlgebraicReal sqrt_of(unsigned long d) {
  return AlgebraicReal::sqrt_term(d, 1);
}
}  // namespace

TEST_CASE("sign determination") {
  AlgebraicReal x = sqrt_of(2) - AlgebraicReal(mpq_class(7, 5));
  CHECK(x.sign() == 1);  // sqrt(2) > 1.4
  CHECK(AlgebraicReal().sign() == 0);
  CHECK((AlgebraicReal(3) - sqrt_of(2) * mpq_class(2) + sqrt_of(2) -
         AlgebraicReal(1) - (AlgebraicReal(2) - sqrt_of(2)))
            .sign() == 0);
  CHECK((sqrt_of(2) - AlgebraicReal(mpq_class(3, 2))).sign() == -1);
  // Tight comparison forcing several precision doublings:
  // 665857/470832 > sqrt(2) (continued-fraction convergent).
  CHECK((sqrt_of(2) - AlgebraicReal(mpq_class(665857, 470832))).sign() == -1);
}

TEST_CASE("square factors are pulled out of radicands") {
  AlgebraicReal x = AlgebraicReal::sqrt_term(8, 1);  // = 2 sqrt(2)
  REQUIRE(x.terms().size() == 1);
  CHECK(x.terms().begin()->first == 2);
  CHECK(x.terms().begin()->second == 2);
  AlgebraicReal y = AlgebraicReal::sqrt_term(9, mpq_class(1, 3));  // = 1
  CHECK(y.is_rational());
  CHECK(y.rational_value() == 1);
  // Zero coefficients vanish.
  CHECK(AlgebraicReal::sqrt_term(7, 0).is_zero());
}

TEST_CASE("floor and frac") {
  CHECK(sqrt_of(2).floor() == 1);
  CHECK((-sqrt_of(2)).floor() == -2);
  CHECK(AlgebraicReal(mpq_class(7, 2)).floor() == 3);
  CHECK(AlgebraicReal(mpq_class(-7, 2)).floor() == -4);
  CHECK(AlgebraicReal(5).floor() == 5);

  AlgebraicReal f = sqrt_of(2).frac();
  CHECK(f == sqrt_of(2) - AlgebraicReal(1));
  CHECK(f.sign() == 1);
  CHECK((f - AlgebraicReal(1)).sign() == -1);
  CHECK(AlgebraicReal(3).frac().is_zero());
}

TEST_CASE("comparison and arithmetic") {
  CHECK(compare(sqrt_of(2), sqrt_of(3)) == -1);
  CHECK(compare(sqrt_of(3), sqrt_of(2)) == 1);
  CHECK(compare(sqrt_of(5), sqrt_of(5)) == 0);
  AlgebraicReal sum = sqrt_of(2) + sqrt_of(3);
  CHECK((sum - sqrt_of(3) - sqrt_of(2)).is_zero());
  CHECK((sqrt_of(2) * mpq_class(0)).is_zero());
  CHECK(sqrt_of(2).approx() == doctest::Approx(1.41421356).epsilon(1e-6));
}

TEST_CASE("rational ratio") {
  CHECK(rational_ratio(sqrt_of(2), sqrt_of(2) * mpq_class(3)));
  CHECK(!rational_ratio(sqrt_of(2), sqrt_of(3)));
  CHECK(rational_ratio(AlgebraicReal(4), AlgebraicReal(mpq_class(2, 3))));
  CHECK(!rational_ratio(sqrt_of(2) + AlgebraicReal(1), sqrt_of(2)));
  CHECK(rational_ratio(AlgebraicReal(), sqrt_of(2)));  // 0 / x
}

TEST_CASE("linear independence with one") {
  std::vector<mpq_class> dep;
  CHECK(independent_with_one(
      {sqrt_of(2) - AlgebraicReal(1), sqrt_of(3) - AlgebraicReal(1)}, &dep));

  // theta1 + theta2 = 1 is a dependency.
  std::vector<AlgebraicReal> bad = {sqrt_of(2) - AlgebraicReal(1),
                                    AlgebraicReal(2) - sqrt_of(2)};
  REQUIRE(!independent_with_one(bad, &dep));
  REQUIRE(dep.size() == 3);
  // The reported combination c0 * 1 + c1 v1 + c2 v2 really vanishes.
  AlgebraicReal check = AlgebraicReal(1) * dep[0];
  check += bad[0] * dep[1];
  check += bad[1] * dep[2];
  CHECK(check.is_zero());
  bool nonzero = dep[0] != 0 || dep[1] != 0 || dep[2] != 0;
  CHECK(nonzero);

  // A rational value is itself dependent with 1.
  CHECK(!independent_with_one({AlgebraicReal(mpq_class(1, 2))}, &dep));
  CHECK(independent_with_one({}, &dep));
}

TEST_CASE("string form is deterministic") {
  CHECK(sqrt_of(2).str() == (sqrt_of(2) + AlgebraicReal(0)).str());
  CHECK(AlgebraicReal().str() == "0");
}
