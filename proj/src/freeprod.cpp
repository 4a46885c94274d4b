#include "corder/freeprod.hpp"

#include <algorithm>

#include "corder/error.hpp"

namespace corder {

namespace {

const ProdWord& as_word(const Element& e) {
  const auto* w = e.get_if<ProdWord>();
  if (!w) fail(ErrorKind::Mismatch, "free-product word expected");
  return *w;
}

bool letter_eq(const ProdLetter& a, const ProdLetter& b) {
  return a.side == b.side && element_eq(a.elem, b.elem);
}

bool letter_less(const ProdLetter& a, const ProdLetter& b) {
  if (a.side != b.side) return a.side == Side::Left;
  return compare_elements(a.elem, b.elem) < 0;
}

Element drop_leftmost(const Element& e) {
  const auto& w = as_word(e);
  return prod_word({w.letters.begin() + 1, w.letters.end()});
}

struct Move {
  int rule = 0;        // 1, 2, 3
  ProdLetter letter;   // shared / doubled / kept letter
  int position = -1;   // word index for rule 3
};

std::vector<Move> applicable_moves(const std::array<Element, 3>& t) {
  std::array<const ProdWord*, 3> w = {&as_word(t[0]), &as_word(t[1]),
                                      &as_word(t[2])};
  // Count how many words each leftmost letter leads.
  std::vector<std::pair<ProdLetter, int>> heads;
  for (int i = 0; i < 3; ++i) {
    if (w[i]->letters.empty()) continue;
    const ProdLetter& x = w[i]->letters.front();
    bool found = false;
    for (auto& [l, cnt] : heads)
      if (letter_eq(l, x)) {
        ++cnt;
        found = true;
      }
    if (!found) heads.emplace_back(x, 1);
  }
  std::vector<Move> moves;
  for (const auto& [l, cnt] : heads)
    if (cnt == 3) moves.push_back(Move{1, l, -1});
  for (const auto& [l, cnt] : heads)
    if (cnt == 2) moves.push_back(Move{2, l, -1});
  for (int i = 0; i < 3; ++i) {
    if (w[i]->letters.size() < 2) continue;
    const ProdLetter& x = w[i]->letters.front();
    int cnt = 0;
    for (const auto& [l, c] : heads)
      if (letter_eq(l, x)) cnt = c;
    if (cnt == 1) moves.push_back(Move{3, x, i});
  }
  return moves;
}

std::array<Element, 3> apply_move(const Group& g,
                                  const std::array<Element, 3>& t,
                                  const Move& m) {
  std::array<Element, 3> out = t;
  if (m.rule == 1) {
    for (int i = 0; i < 3; ++i) out[i] = drop_leftmost(t[i]);
    return out;
  }
  if (m.rule == 2) {
    Element x_inv = g.inverse(prod_word({m.letter}));
    for (int i = 0; i < 3; ++i) out[i] = g.multiply(x_inv, t[i]);
    return out;
  }
  out[m.position] = prod_word({m.letter});
  return out;
}

TripleReductionTrace reduce_with(
    const Group& g, std::array<Element, 3> t,
    const std::function<Move(const std::vector<Move>&)>& pick) {
  TripleReductionTrace trace;
  for (;;) {
    std::vector<Move> moves = applicable_moves(t);
    if (moves.empty()) break;
    Move m = pick(moves);
    std::array<Element, 3> after = apply_move(g, t, m);
    trace.steps.push_back(ReductionStep{m.rule, m.letter, t, after});
    t = std::move(after);
  }
  trace.minimal = std::move(t);
  return trace;
}

}  // namespace

TripleReductionTrace reduce_triple(const Group& g,
                                   const std::array<Element, 3>& t) {
  for (const auto& e : t) g.check(e);
  return reduce_with(g, t, [](const std::vector<Move>& moves) {
    // Rule 1 first, then rule 2 with the least letter, then the first
    // rule-3 position; applicable_moves lists rules in that order.
    Move best = moves.front();
    for (const auto& m : moves) {
      if (m.rule < best.rule)
        best = m;
      else if (m.rule == best.rule && m.rule == 2 &&
               letter_less(m.letter, best.letter))
        best = m;
      else if (m.rule == best.rule && m.rule == 3 &&
               m.position < best.position)
        best = m;
    }
    return best;
  });
}

TripleReductionTrace reduce_triple_randomized(const Group& g,
                                              const std::array<Element, 3>& t,
                                              std::mt19937& rng) {
  for (const auto& e : t) g.check(e);
  return reduce_with(g, t, [&rng](const std::vector<Move>& moves) {
    std::uniform_int_distribution<size_t> dist(0, moves.size() - 1);
    return moves[dist(rng)];
  });
}

OrderValue lex_eval(const Group& g, const CircularOrderSpec& cg,
                    const CircularOrderSpec& ch, const Element& a,
                    const Element& b, const Element& c) {
  if (element_eq(a, b) || element_eq(b, c) || element_eq(a, c)) return 0;
  const auto* fp = g.get_if<FreeProduct>();
  if (!fp) fail(ErrorKind::Mismatch, "lexicographic evaluation needs a free product");
  TripleReductionTrace trace = reduce_triple(g, {a, b, c});

  // Classify the minimal components: factor letters or the identity.
  struct Slot {
    int kind;  // 0 = identity, 1 = left factor, 2 = right factor
    Element elem;
  };
  std::array<Slot, 3> slot;
  for (int i = 0; i < 3; ++i) {
    const auto& w = as_word(trace.minimal[i]);
    if (w.letters.empty()) {
      slot[i] = {0, Element{}};
    } else if (w.letters.size() == 1) {
      const auto& l = w.letters.front();
      slot[i] = {l.side == Side::Left ? 1 : 2, l.elem};
    } else {
      fail(ErrorKind::Internal, "triple reduction did not reach a minimal triple");
    }
  }
  int gcount = 0, hcount = 0;
  for (const auto& s : slot) {
    if (s.kind == 1) ++gcount;
    if (s.kind == 2) ++hcount;
  }
  auto left_of = [&](const Slot& s) {
    return s.kind == 0 ? fp->left->identity() : s.elem;
  };
  auto right_of = [&](const Slot& s) {
    return s.kind == 0 ? fp->right->identity() : s.elem;
  };
  if (hcount == 0)
    return cg.eval(left_of(slot[0]), left_of(slot[1]), left_of(slot[2]));
  if (gcount == 0)
    return ch.eval(right_of(slot[0]), right_of(slot[1]), right_of(slot[2]));
  if (gcount == 1 && hcount == 1) {
    // Pattern (e, g, h) and its cyclic images are positive.
    int pe = 0, pg = 0, ph = 0;
    for (int i = 0; i < 3; ++i) {
      if (slot[i].kind == 0) pe = i;
      if (slot[i].kind == 1) pg = i;
      if (slot[i].kind == 2) ph = i;
    }
    bool even = (pg - pe + 3) % 3 == 1 && (ph - pe + 3) % 3 == 2;
    return even ? 1 : -1;
  }
  if (gcount == 2) {
    int ph = 0;
    for (int i = 0; i < 3; ++i)
      if (slot[i].kind == 2) ph = i;
    const Slot& g1 = slot[(ph + 1) % 3];
    const Slot& g2 = slot[(ph + 2) % 3];
    return cg.eval(left_of(g1), left_of(g2), fp->left->identity());
  }
  int pg = 0;
  for (int i = 0; i < 3; ++i)
    if (slot[i].kind == 1) pg = i;
  const Slot& h1 = slot[(pg + 1) % 3];
  const Slot& h2 = slot[(pg + 2) % 3];
  return ch.eval(fp->right->identity(), right_of(h1), right_of(h2));
}

OrderPtr coset_intertwine(
    GroupPtr g, std::function<long long(const Element&)> coset_of,
    std::function<IntVec(const Element&)> k_coord,
    std::function<int(long long, long long, long long)> orbit_eval,
    LinearOrderSpec stab_lin) {
  CircularOrderSpec::CosetWrapO w{std::move(coset_of), std::move(k_coord),
                                  std::move(orbit_eval), std::move(stab_lin)};
  return CircularOrderSpec::coset_wrap(std::move(g), std::move(w));
}

}  // namespace corder
