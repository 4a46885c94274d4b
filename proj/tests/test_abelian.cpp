#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corder/abelian.hpp"
#include "corder/error.hpp"

using namespace corder;

namespace {

AlgebraicReal rt(unsigned long d) { return AlgebraicReal::sqrt_term(d, 1); }
AlgebraicReal r2() { return rt(2) - AlgebraicReal(1); }
AlgebraicReal r3() { return rt(3) - AlgebraicReal(1); }

OrderPtr rot_z2() {
  return CircularOrderSpec::rotation(fg_abelian(2, 0),
                                     make_rotation_params(2, 0, {r2(), r3()}, 0));
}

// Z^2 with kernel Z x 2Z, translation kernel order, quotient Z/2.
OrderPtr blowdown_full_rank() {
  return intertwined_order(fg_abelian(2, 0), {{1, 0}, {0, 2}},
                           LinearOrderSpec::make_translation({rt(2), rt(3)}),
                           CircularOrderSpec::finite_rotation(2, 1));
}

// Z^2 with rank-1 kernel Z x 0, quotient Z with a rotation order.
OrderPtr blowdown_rank1() {
  return intertwined_order(
      fg_abelian(2, 0), {{1}, {0}},
      LinearOrderSpec::make_translation({rt(2)}),
      CircularOrderSpec::rotation(fg_abelian(1, 0),
                                  make_rotation_params(1, 0, {r3()}, 0)));
}

}  // namespace

TEST_CASE("rotation parameter validation") {
  CHECK_NOTHROW(make_rotation_params(2, 0, {r2(), r3()}, 0));
  CHECK_THROWS_AS(
      make_rotation_params(2, 0, {r2(), AlgebraicReal(2) - rt(2)}, 0), Error);
  CHECK_THROWS_AS(make_rotation_params(0, 6, {}, 4), Error);  // gcd(4,6)=2
  CHECK_NOTHROW(make_rotation_params(0, 6, {}, 5));
}

TEST_CASE("rotation evaluation on Z") {
  RotationParams p = make_rotation_params(1, 0, {r2()}, 0);
  CHECK(rotation_eval(p, abelian_elem({0}), abelian_elem({1}),
                      abelian_elem({2})) == 1);
  CHECK(rotation_eval(p, abelian_elem({0}), abelian_elem({2}),
                      abelian_elem({1})) == -1);
  CHECK(rotation_eval(p, abelian_elem({3}), abelian_elem({3}),
                      abelian_elem({1})) == 0);
}

TEST_CASE("rotation evaluation on Z/5 with k=2") {
  RotationParams p = make_rotation_params(0, 5, {}, 2);
  // Positions 0, 2/5, 1/5: clockwise.
  CHECK(rotation_eval(p, abelian_elem({}, 0), abelian_elem({}, 1),
                      abelian_elem({}, 3)) == -1);
}

TEST_CASE("blowdown construction and cases") {
  OrderPtr c = blowdown_full_rank();
  const auto& d = *c->get_if<CircularOrderSpec::IntertwinedO>()->data;
  CHECK(d.r == 2);
  CHECK(d.big_m == 2);

  Element a = abelian_elem({0, 0}), b = abelian_elem({0, 1}),
          cc = abelian_elem({1, 1});
  // sigma-images (0, 1, 1): worked case, value +1.
  CHECK(c->eval(a, b, cc) == 1);

  // All three in one fiber, kernel-order increasing: +1.
  CHECK(c->eval(abelian_elem({0, 0}), abelian_elem({1, 0}),
                abelian_elem({2, 0})) == 1);
  CHECK(c->eval(abelian_elem({2, 0}), abelian_elem({1, 0}),
                abelian_elem({0, 0})) == -1);

  // sigma-images all distinct: defers to the quotient order (Z/2 has only
  // degenerate triples, so use the rank-1 blowdown with quotient Z).
  OrderPtr c1 = blowdown_rank1();
  OrderPtr q = CircularOrderSpec::rotation(
      fg_abelian(1, 0), make_rotation_params(1, 0, {r3()}, 0));
  Element x = abelian_elem({0, 0}), y = abelian_elem({0, 1}),
          z = abelian_elem({0, 2});
  CHECK(c1->eval(x, y, z) ==
        q->eval(abelian_elem({0}), abelian_elem({1}), abelian_elem({2})));
}

TEST_CASE("blowdown rejects noncyclic quotient torsion") {
  // Kernel 2Z x 2Z gives quotient (Z/2)^2.
  CHECK_THROWS_AS(
      intertwined_order(fg_abelian(2, 0), {{2, 0}, {0, 2}},
                        LinearOrderSpec::make_translation({rt(2), rt(3)}),
                        CircularOrderSpec::finite_rotation(4, 1)),
      Error);
}

TEST_CASE("blowdown representative independence") {
  OrderPtr c = blowdown_full_rank();
  const auto& d = *c->get_if<CircularOrderSpec::IntertwinedO>()->data;
  // sigma depends only on the coset: shifting by kernel vectors fixes it.
  Element e1 = abelian_elem({3, 1});
  Element e2 = abelian_elem({3 + 1, 1 + 2});  // plus kernel basis columns
  CHECK(element_eq(blowdown_sigma(d, e1), blowdown_sigma(d, e2)));
}

TEST_CASE("intertwined orders validate") {
  for (OrderPtr c : {blowdown_full_rank(), blowdown_rank1()}) {
    ValidationReport r = validate(*c, c->group()->ball(2));
    CHECK(r.ok());
  }
}

TEST_CASE("enumerate cyclic orders") {
  std::vector<OrderPtr> m4 = enumerate_cyclic_orders(4);
  REQUIRE(m4.size() == 2);
  CHECK(m4[0]->get_if<CircularOrderSpec::FiniteRotationO>()->k == 1);
  CHECK(m4[1]->get_if<CircularOrderSpec::FiniteRotationO>()->k == 3);
  CHECK(enumerate_cyclic_orders(5).size() == 4);
  CHECK(enumerate_cyclic_orders(1).size() == 1);
  CHECK(enumerate_cyclic_orders(2).size() == 1);
}

TEST_CASE("density search returns the rotation itself") {
  OrderPtr c = rot_z2();
  std::vector<Element> sample = c->group()->ball(2);
  auto p = density_search(*c, sample, 64);
  REQUIRE(p.has_value());
  OrderPtr found = CircularOrderSpec::rotation(c->group(), *p);
  CHECK(!agreement(*c, *found, sample).has_value());
}

TEST_CASE("density search approximates intertwined orders") {
  for (OrderPtr c : {blowdown_full_rank(), blowdown_rank1()}) {
    std::vector<Element> sample = c->group()->ball(2);
    auto p = density_search(*c, sample, 64);
    REQUIRE(p.has_value());
    OrderPtr found = CircularOrderSpec::rotation(c->group(), *p);
    auto w = agreement(*c, *found, sample);
    if (w.has_value()) {
      CAPTURE(element_key((*w)[0]));
      CAPTURE(element_key((*w)[1]));
      CAPTURE(element_key((*w)[2]));
    }
    CHECK(!w.has_value());
  }
}

TEST_CASE("density search on Z x Z/2") {
  OrderPtr c = intertwined_order(
      fg_abelian(1, 2), {{3}},
      LinearOrderSpec::make_translation({rt(2)}),
      CircularOrderSpec::finite_rotation(6, 1));
  std::vector<Element> sample = c->group()->ball(2);
  auto p = density_search(*c, sample, 64);
  REQUIRE(p.has_value());
  OrderPtr found = CircularOrderSpec::rotation(c->group(), *p);
  CHECK(!agreement(*c, *found, sample).has_value());
}

TEST_CASE("no rotation order is isolated") {
  OrderPtr c = rot_z2();
  std::vector<Element> sample = c->group()->ball(2);
  const auto& p = c->get_if<CircularOrderSpec::RotationO>()->params;
  auto q = distinct_agreeing_rotation(p, c->group(), sample, 64);
  REQUIRE(q.has_value());
  bool same_theta = q->theta == p.theta && q->k == p.k;
  CHECK(!same_theta);
  OrderPtr other = CircularOrderSpec::rotation(c->group(), *q);
  CHECK(!agreement(*c, *other, sample).has_value());
}

TEST_CASE("archimedean witness") {
  OrderPtr c = rot_z2();
  Element g = abelian_elem({1, 0}), h = abelian_elem({0, 1});
  auto n = archimedean_witness(*c, g, h, 100);
  REQUIRE(n.has_value());
  CHECK(*n == 2);  // positions .414, .828 vs h at .732

  // Kernel elements of a finite-orbit blowdown never flip.
  OrderPtr b = blowdown_full_rank();
  auto none = archimedean_witness(*b, abelian_elem({0, 2}),
                                  abelian_elem({1, 1}), 1000);
  CHECK(!none.has_value());

  // Precondition: g and h powers of a common element.
  CHECK_THROWS_AS(archimedean_witness(*c, g, g, 100), Error);
  CHECK_THROWS_AS(
      archimedean_witness(*c, abelian_elem({1, 1}), abelian_elem({2, 2}), 100),
      Error);
}

TEST_CASE("classification") {
  CHECK(classify(*CircularOrderSpec::rotation(
                     fg_abelian(3, 0),
                     make_rotation_params(
                         3, 0, {r2(), r3(), rt(5) - AlgebraicReal(2)}, 0)))
            .kind == OrderClass::Min);
  Classification fin = classify(*blowdown_full_rank());
  CHECK(fin.kind == OrderClass::Fin);
  CHECK(fin.kernel_hnf == IntMat{{1, 0}, {0, 2}});
  CHECK(classify(*blowdown_rank1()).kind == OrderClass::Blowdown);
}
