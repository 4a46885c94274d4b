#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corder/abelian.hpp"
#include "corder/error.hpp"
#include "corder/freeprod.hpp"

using namespace corder;

namespace {

// Z * Z with each factor Z = FgAbelian(1, 0).
GroupPtr zz() { return free_product(fg_abelian(1, 0), fg_abelian(1, 0)); }
// Z/2 * Z/3.
GroupPtr mod_group() { return free_product(fg_abelian(0, 2), fg_abelian(0, 3)); }

Element lg(long long n) {  // left-factor letter
  return prod_word({{Side::Left, abelian_elem({n})}});
}
Element rh(long long n) {  // right-factor letter
  return prod_word({{Side::Right, abelian_elem({n})}});
}

OrderPtr wrap_z() {
  return CircularOrderSpec::linear_wrap(
      fg_abelian(1, 0), LinearOrderSpec::make_lexicographic(1, {1}));
}

OrderPtr lex_zz() {
  return CircularOrderSpec::lex_free_product(zz(), wrap_z(), wrap_z());
}

OrderPtr lex_mod() {
  return CircularOrderSpec::lex_free_product(
      mod_group(), CircularOrderSpec::finite_rotation(2, 1),
      CircularOrderSpec::finite_rotation(3, 1));
}

// Random reduced word in Z/2 * Z/3.
Element random_word(const Group& g, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> rv(1, 2), side(0, 1);
  int n = len(rng);
  Element w = g.identity();
  for (int i = 0; i < n; ++i) {
    Element letter = side(rng) ? prod_word({{Side::Left, abelian_elem({}, 1)}})
                               : prod_word({{Side::Right,
                                             abelian_elem({}, rv(rng))}});
    w = g.multiply(w, letter);
  }
  return w;
}

// Random reduced word in Z * Z.
Element random_zz_word(const Group& g, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> ex(1, 2), sgn(0, 1), side(0, 1);
  int n = len(rng);
  Element w = g.identity();
  for (int i = 0; i < n; ++i) {
    long long e = ex(rng) * (sgn(rng) ? 1 : -1);
    Element letter = side(rng) ? prod_word({{Side::Left, abelian_elem({e})}})
                               : prod_word({{Side::Right, abelian_elem({e})}});
    w = g.multiply(w, letter);
  }
  return w;
}

}  // namespace

TEST_CASE("reduction reaches single letters or identities") {
  GroupPtr g = zz();
  // (g, h, gh): two moves end at (e, g^-1, h).
  Element gh = g->multiply(lg(1), rh(1));
  TripleReductionTrace t = reduce_triple(*g, {lg(1), rh(1), gh});
  CHECK(t.steps.size() == 2);
  CHECK(element_eq(t.minimal[0], g->identity()));
  CHECK(element_eq(t.minimal[1], lg(-1)));
  CHECK(element_eq(t.minimal[2], rh(1)));

  // Already minimal with distinct leftmost letters: zero steps.
  TripleReductionTrace t2 = reduce_triple(*g, {lg(1), rh(1), lg(-1)});
  CHECK(t2.steps.empty());

  // Shared leftmost letter is stripped (rule 1).
  Element a = g->multiply(lg(1), rh(1));       // g h
  Element b = g->multiply(lg(1), rh(2));       // g h^2
  Element c = g->multiply(lg(1), rh(-1));      // g h^-1
  TripleReductionTrace t3 = reduce_triple(*g, {a, b, c});
  REQUIRE(!t3.steps.empty());
  CHECK(t3.steps[0].rule == 1);
  for (const auto& m : t3.minimal) {
    const auto* w = m.get_if<ProdWord>();
    REQUIRE(w);
    CHECK(w->letters.size() <= 1);
  }
}

TEST_CASE("confluence of randomized strategies") {
  GroupPtr g = mod_group();
  std::mt19937 seed_rng(987654321u);
  for (int trial = 0; trial < 300; ++trial) {
    std::array<Element, 3> t = {random_word(*g, seed_rng, 8),
                                random_word(*g, seed_rng, 8),
                                random_word(*g, seed_rng, 8)};
    TripleReductionTrace det = reduce_triple(*g, t);
    std::mt19937 rng(1000u + trial);
    TripleReductionTrace rnd = reduce_triple_randomized(*g, t, rng);
    for (int i = 0; i < 3; ++i)
      CHECK(element_eq(det.minimal[i], rnd.minimal[i]));

    size_t total_len = 0;
    for (const auto& w : t) total_len += w.get_if<ProdWord>()->letters.size();
    CHECK(det.steps.size() <= total_len + 3);
    CHECK(rnd.steps.size() <= total_len + 3);
  }
}

TEST_CASE("lexicographic order initial conditions") {
  GroupPtr g = zz();
  OrderPtr c = lex_zz();
  Element gh = g->multiply(lg(1), rh(1));
  // c(g, h, gh) = c(e, g^-1, h) = +1.
  CHECK(c->eval(lg(1), rh(1), gh) == 1);
  CHECK(c->eval(g->identity(), lg(-1), rh(1)) == 1);
  CHECK(c->eval(g->identity(), rh(1), lg(-1)) == -1);
}

TEST_CASE("restriction to a factor is the factor order") {
  GroupPtr g = mod_group();
  OrderPtr c = lex_mod();
  OrderPtr ch = CircularOrderSpec::finite_rotation(3, 1);
  // Right-factor triples: {e, b, b^2}.
  std::vector<long long> reps = {0, 1, 2};
  for (long long x : reps)
    for (long long y : reps)
      for (long long z : reps) {
        Element ex = x ? prod_word({{Side::Right, abelian_elem({}, x)}})
                       : g->identity();
        Element ey = y ? prod_word({{Side::Right, abelian_elem({}, y)}})
                       : g->identity();
        Element ez = z ? prod_word({{Side::Right, abelian_elem({}, z)}})
                       : g->identity();
        CHECK(c->eval(ex, ey, ez) == ch->eval(abelian_elem({}, x),
                                              abelian_elem({}, y),
                                              abelian_elem({}, z)));
      }
}

TEST_CASE("lexicographical condition spot check") {
  GroupPtr g = zz();
  OrderPtr c = lex_zz();
  std::mt19937 rng(424242u);
  std::uniform_int_distribution<int> exp(1, 2);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Element x = trial % 2 ? lg(exp(rng)) : rh(exp(rng));
    Element w1 = random_zz_word(*g, rng, 4);
    Element w2 = random_zz_word(*g, rng, 4);
    Element w3 = random_zz_word(*g, rng, 4);
    // xw1 must be reduced as written: w1 may not start in x's factor.
    {
      const auto* pw1 = w1.get_if<ProdWord>();
      if (!pw1->letters.empty() &&
          pw1->letters[0].side == x.get_if<ProdWord>()->letters[0].side)
        continue;
    }
    Element xw1 = g->multiply(x, w1);
    // Require x not the leftmost letter of w2, w3, and the evaluated triples
    // nondegenerate.
    auto leftmost_is_x = [&](const Element& w) {
      const auto* pw = w.get_if<ProdWord>();
      const auto* xl = x.get_if<ProdWord>();
      return !pw->letters.empty() &&
             pw->letters[0].side == xl->letters[0].side &&
             element_eq(pw->letters[0].elem, xl->letters[0].elem);
    };
    if (leftmost_is_x(w2) || leftmost_is_x(w3)) continue;
    if (element_eq(xw1, w2) || element_eq(xw1, w3) || element_eq(w2, w3))
      continue;
    if (element_eq(x, w2) || element_eq(x, w3)) continue;
    CHECK(c->eval(xw1, w2, w3) == c->eval(x, w2, w3));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("lexicographic order on Z/2 * Z/3 validates") {
  OrderPtr c = lex_mod();
  ValidationReport r = validate(*c, c->group()->ball(3));
  CHECK(r.ok());
  CHECK(r.checked_triples > 0);
}

TEST_CASE("random word generator exercises both factors") {
  // mt19937 usage above only makes sense if words really mix factors.
  GroupPtr g = mod_group();
  std::mt19937 rng(7u);
  bool saw_mixed = false;
  for (int i = 0; i < 50; ++i) {
    Element w = random_word(*g, rng, 8);
    if (w.get_if<ProdWord>()->letters.size() >= 2) saw_mixed = true;
  }
  CHECK(saw_mixed);
}

TEST_CASE("coset intertwining reproduces the blowdown order") {
  // G = Z^2, stabilizer K = Z x 2Z, orbit = Z/2, kernel order by (x, y/2)
  // translation coordinates.
  GroupPtr g = fg_abelian(2, 0);
  OrderPtr ref = intertwined_order(
      g, {{1, 0}, {0, 2}},
      LinearOrderSpec::make_translation({AlgebraicReal::sqrt_term(2, 1),
                                         AlgebraicReal::sqrt_term(3, 1)}),
      CircularOrderSpec::finite_rotation(2, 1));
  const auto& d = *ref->get_if<CircularOrderSpec::IntertwinedO>()->data;
  auto coset_of = [](const Element& e) {
    long long y = e.get_if<AbelianVec>()->v[1];
    return ((y % 2) + 2) % 2;
  };
  auto k_coord = [&d](const Element& e) { return blowdown_k_coord(d, e); };
  auto orbit_eval = [](long long a, long long b, long long c) {
    // Orientation of distinct residues on the 2-point circle never occurs;
    // distinct pairs only: FiniteRotation(2,1) semantics.
    if (a == b || b == c || a == c) return 0;
    return 0;  // all triples of Z/2 are degenerate
  };
  OrderPtr mine = coset_intertwine(
      g, coset_of, k_coord, orbit_eval,
      LinearOrderSpec::make_translation({AlgebraicReal::sqrt_term(2, 1),
                                         AlgebraicReal::sqrt_term(3, 1)}));
  std::vector<Element> sample = g->ball(3);
  CHECK(!agreement(*ref, *mine, sample).has_value());
}

TEST_CASE("single-coset orbit degenerates to the wrapped linear order") {
  GroupPtr g = fg_abelian(1, 0);
  LinearOrderSpec lin = LinearOrderSpec::make_lexicographic(1, {1});
  auto coset_of = [](const Element&) { return 0LL; };
  auto k_coord = [](const Element& e) {
    return IntVec{e.get_if<AbelianVec>()->v[0]};
  };
  auto orbit_eval = [](long long, long long, long long) { return 0; };
  OrderPtr mine = coset_intertwine(g, coset_of, k_coord, orbit_eval, lin);
  OrderPtr ref = CircularOrderSpec::linear_wrap(
      g, LinearOrderSpec::make_lexicographic(1, {1}));
  CHECK(!agreement(*ref, *mine, g->ball(4)).has_value());
}
