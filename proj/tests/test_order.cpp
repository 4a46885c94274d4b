#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corder/abelian.hpp"
#include "corder/error.hpp"
#include "corder/order.hpp"

using namespace corder;

namespace {

Element zt(long long t) { return abelian_elem({}, t); }  // torsion-only
Element zv(long long v) { return abelian_elem({v}); }    // Z

AlgebraicReal rt(unsigned long d) { return AlgebraicReal::sqrt_term(d, 1); }

OrderPtr rotation_z(const AlgebraicReal& theta) {
  return CircularOrderSpec::rotation(
      fg_abelian(1, 0), make_rotation_params(1, 0, {theta}, 0));
}

}  // namespace

TEST_CASE("finite rotation evaluation") {
  OrderPtr c = CircularOrderSpec::finite_rotation(4, 1);
  CHECK(c->eval(zt(0), zt(1), zt(2)) == 1);
  CHECK(c->eval(zt(0), zt(2), zt(1)) == -1);
  CHECK(c->eval(zt(1), zt(1), zt(2)) == 0);
  CHECK(c->eval(zt(1), zt(2), zt(0)) == 1);  // cyclic invariance
  // k = 3 runs the circle the other way.
  OrderPtr c3 = CircularOrderSpec::finite_rotation(4, 3);
  CHECK(c3->eval(zt(0), zt(1), zt(2)) == -1);
  CHECK_THROWS_AS(CircularOrderSpec::finite_rotation(4, 2), Error);
}

TEST_CASE("linear wrap of the standard order on Z") {
  OrderPtr c = CircularOrderSpec::linear_wrap(
      fg_abelian(1, 0), LinearOrderSpec::make_lexicographic(1, {1}));
  CHECK(c->eval(zv(-1), zv(0), zv(1)) == 1);
  CHECK(c->eval(zv(1), zv(0), zv(-1)) == -1);
  CHECK(c->eval(zv(0), zv(2), zv(1)) == -1);
  CHECK(c->eval(zv(2), zv(0), zv(1)) == 1);  // cyclic rotation of 0<1<2
  CHECK(c->eval(zv(5), zv(5), zv(1)) == 0);
}

TEST_CASE("translation linear order validation") {
  // Proportional coordinates make the position functional non-injective.
  CHECK_THROWS_AS(
      LinearOrderSpec::make_translation({rt(2), rt(2) * mpq_class(2)}), Error);
  CHECK_THROWS_AS(LinearOrderSpec::make_translation({AlgebraicReal(0)}), Error);
  // Dependent only together with 1 is fine for translations: injective.
  CHECK_NOTHROW(LinearOrderSpec::make_translation(
      {rt(2) - AlgebraicReal(1), AlgebraicReal(2) - rt(2)}));
  LinearOrderSpec l = LinearOrderSpec::make_translation(
      {rt(2) - AlgebraicReal(1), rt(3) - AlgebraicReal(1)});
  CHECK(l.less({0, 0}, {1, 0}));
  CHECK(l.less({1, 0}, {0, 1}));  // .414 < .732
  CHECK(!l.less({0, 1}, {1, 0}));
}

TEST_CASE("induced cone validation") {
  GroupPtr z4 = cyclic_table(4);
  // {1,2,3} is not a cone for Z/4 (not closed: misses partition with inverses).
  CHECK_THROWS_AS(LinearOrderSpec::make_induced_cone(
                      z4, {table_elem(1), table_elem(2), table_elem(3)}),
                  Error);
}

TEST_CASE("validate accepts correct orders") {
  OrderPtr fr = CircularOrderSpec::finite_rotation(4, 1);
  ValidationReport r = validate(*fr, fr->group()->ball(4));
  CHECK(r.ok());
  CHECK(r.checked_triples > 0);
  CHECK(r.skipped_homogeneity == 0);  // whole group sampled

  OrderPtr rot = CircularOrderSpec::rotation(
      fg_abelian(2, 0),
      make_rotation_params(2, 0, {rt(2) - AlgebraicReal(1),
                                  rt(3) - AlgebraicReal(1)}, 0));
  ValidationReport r2 = validate(*rot, rot->group()->ball(2));
  CHECK(r2.ok());
  CHECK(r2.checked_quadruples == 715);  // C(13, 4)
}

TEST_CASE("validate flags a corrupted table") {
  GroupPtr z5 = cyclic_table(5);
  OrderPtr fr = CircularOrderSpec::finite_rotation_on(z5, 5, 1);
  std::vector<Element> all = z5->ball(5);
  CircularOrderSpec::ExplicitTableO t;
  for (int a = 1; a < 5; ++a)
    for (int b = 1; b < 5; ++b) {
      if (a == b) continue;
      t.pair_values[element_key(table_elem(a)) + "|" +
                    element_key(table_elem(b))] =
          fr->eval(z5->identity(), table_elem(a), table_elem(b));
    }
  // Flip one pair value (and its mirror, to dodge the antisymmetry check).
  std::string k12 = element_key(table_elem(1)) + "|" + element_key(table_elem(2));
  std::string k21 = element_key(table_elem(2)) + "|" + element_key(table_elem(1));
  t.pair_values[k12] = -t.pair_values[k12];
  t.pair_values[k21] = -t.pair_values[k21];
  OrderPtr bad = CircularOrderSpec::explicit_table(z5, t);
  ValidationReport r = validate(*bad, all);
  CHECK(!r.ok());
  bool has_c = false;
  for (const auto& v : r.violations)
    if (v.kind == AxiomKind::C) has_c = true;
  CHECK(has_c);
}

TEST_CASE("cuts") {
  OrderPtr fr = CircularOrderSpec::finite_rotation(4, 1);
  CutOrder cut = cut_order_at(fr, zt(0));
  CHECK(cut.less(zt(1), zt(2)));
  CHECK(cut.less(zt(2), zt(3)));
  CHECK(cut.less(zt(1), zt(3)));
  CHECK(!cut.less(zt(3), zt(1)));

  // Totality on distinct non-basepoint pairs.
  for (int x = 1; x < 4; ++x)
    for (int y = 1; y < 4; ++y) {
      if (x == y) continue;
      CHECK(cut.less(zt(x), zt(y)) != cut.less(zt(y), zt(x)));
    }

  // Cut of a wrapped linear order at a far-out basepoint agrees with the
  // linear order below the basepoint.
  OrderPtr lw = CircularOrderSpec::linear_wrap(
      fg_abelian(1, 0), LinearOrderSpec::make_lexicographic(1, {1}));
  CutOrder cl = cut_order_at(lw, zv(100));
  CHECK(cl.less(zv(-2), zv(1)));
  CHECK(cl.less(zv(0), zv(3)));
  CHECK(!cl.less(zv(3), zv(0)));
}

TEST_CASE("cocycle from cuts round trip") {
  OrderPtr fr = CircularOrderSpec::finite_rotation(4, 1);
  std::vector<Element> all = fr->group()->ball(4);
  auto less_at = [&](const Element& p, const Element& x, const Element& y) {
    return cut_order_at(fr, p).less(x, y);
  };
  auto result = cocycle_from_cuts(fr->group(), all, less_at);
  const OrderPtr* rebuilt = std::get_if<OrderPtr>(&result);
  REQUIRE(rebuilt);
  CHECK(!agreement(*fr, **rebuilt, all).has_value());

  // Single-point domain is vacuous.
  auto tiny = cocycle_from_cuts(fr->group(), {zt(0)}, less_at);
  CHECK(std::get_if<OrderPtr>(&tiny));
}

TEST_CASE("incompatible cuts are rejected with a witness") {
  GroupPtr z4 = fg_abelian(0, 4);
  // Comparator ignores the basepoint and uses a fixed cyclic "less" that is
  // not cut-compatible: x < y iff x+1 = y mod 4.
  auto less_at = [](const Element& p, const Element& x, const Element& y) {
    (void)p;
    long long xv = x.get_if<AbelianVec>()->t, yv = y.get_if<AbelianVec>()->t;
    return (xv + 1) % 4 == yv;
  };
  auto result = cocycle_from_cuts(z4, z4->ball(4), less_at);
  const auto* bad = std::get_if<CutIncompatibility>(&result);
  REQUIRE(bad);
  CHECK(bad->witness.size() == 4);
}

TEST_CASE("linearity detection") {
  OrderPtr lw = CircularOrderSpec::linear_wrap(
      fg_abelian(1, 0), LinearOrderSpec::make_lexicographic(1, {1}));
  std::vector<Element> sample = lw->group()->ball(3);
  LinearOnResult lr = is_linear_on(*lw, sample);
  CHECK(lr.linear);
  // Recovered cone = positives in the sample.
  REQUIRE(lr.cone.size() == 3);
  for (const auto& e : lr.cone) CHECK(e.get_if<AbelianVec>()->v[0] > 0);

  // Rotation by sqrt(2)-1 is genuine: witness g = h = 1.
  OrderPtr rot = rotation_z(rt(2) - AlgebraicReal(1));
  LinearOnResult gr = is_linear_on(*rot, rot->group()->ball(2));
  CHECK(!gr.linear);
  CHECK(element_eq(gr.g, zv(1)));
  CHECK(element_eq(gr.h, zv(1)));

  // Finite rotations are always genuine.
  OrderPtr fr = CircularOrderSpec::finite_rotation(4, 1);
  LinearOnResult fg = is_linear_on(*fr, fr->group()->ball(4));
  CHECK(!fg.linear);
}

TEST_CASE("automorphism action") {
  GroupPtr z5 = cyclic_table(5);
  OrderPtr c = CircularOrderSpec::finite_rotation_on(z5, 5, 1);
  std::vector<Element> all = z5->ball(5);

  AutDescriptor id = make_table_aut(z5, {0, 1, 2, 3, 4});
  CHECK(!agreement(*aut_act(id, c), *c, all).has_value());

  // rho(x) = 2x sends rotation-by-1/5 to rotation-by-3/5.
  AutDescriptor dbl = make_table_aut(z5, {0, 2, 4, 1, 3});
  OrderPtr moved = aut_act(dbl, c);
  OrderPtr fr3 = CircularOrderSpec::finite_rotation_on(z5, 5, 3);
  CHECK(!agreement(*moved, *fr3, all).has_value());
  CHECK(agreement(*moved, *c, all).has_value());

  // Negation on Z flips a rotation order.
  OrderPtr rot = rotation_z(rt(2) - AlgebraicReal(1));
  AutDescriptor neg = make_abelian_aut(rot->group(), {{-1}});
  OrderPtr nrot = aut_act(neg, rot);
  CHECK(nrot->eval(zv(0), zv(1), zv(2)) == -rot->eval(zv(0), zv(1), zv(2)));

  // Non-unimodular matrices are rejected.
  CHECK_THROWS_AS(make_abelian_aut(fg_abelian(2, 0), {{2, 0}, {0, 1}}), Error);
  // Non-homomorphic permutation is rejected.
  CHECK_THROWS_AS(make_table_aut(z5, {0, 1, 2, 4, 3}), Error);
}

TEST_CASE("automorphism action composes as a left action") {
  GroupPtr z2 = fg_abelian(2, 0);
  OrderPtr c = CircularOrderSpec::rotation(
      z2, make_rotation_params(2, 0, {rt(2) - AlgebraicReal(1),
                                      rt(3) - AlgebraicReal(1)}, 0));
  AutDescriptor rho = make_abelian_aut(z2, {{1, 1}, {0, 1}});
  AutDescriptor sigma = make_abelian_aut(z2, {{0, -1}, {1, 0}});
  std::vector<Element> sample = z2->ball(2);
  OrderPtr lhs = aut_act(aut_compose(rho, sigma), c);
  OrderPtr rhs = aut_act(rho, aut_act(sigma, c));
  CHECK(!agreement(*lhs, *rhs, sample).has_value());

  // Inverse really inverts.
  OrderPtr back = aut_act(aut_inverse(rho), aut_act(rho, c));
  CHECK(!agreement(*back, *c, sample).has_value());
}

TEST_CASE("bi-invariance") {
  OrderPtr rot = rotation_z(rt(2) - AlgebraicReal(1));
  CHECK(!bi_invariance_check(*rot, rot->group()->ball(3)).has_value());
  CHECK(!bi_invariance_check(*rot, {}).has_value());
}

TEST_CASE("agreement") {
  GroupPtr z5g = fg_abelian(0, 5);
  OrderPtr a = CircularOrderSpec::finite_rotation(5, 1);
  OrderPtr b = CircularOrderSpec::finite_rotation(5, 2);
  std::vector<Element> all = z5g->ball(5);
  CHECK(!agreement(*a, *a, all).has_value());
  auto w = agreement(*a, *b, all);
  REQUIRE(w.has_value());
  CHECK(a->eval((*w)[0], (*w)[1], (*w)[2]) !=
        b->eval((*w)[0], (*w)[1], (*w)[2]));
}
