#ifndef CORDER_FREEPROD_HPP
#define CORDER_FREEPROD_HPP

#include <array>
#include <random>
#include <vector>

#include "corder/order.hpp"

namespace corder {

struct ReductionStep {
  int rule = 0;  // 1, 2, 3
  ProdLetter letter;
  std::array<Element, 3> before, after;
};

struct TripleReductionTrace {
  std::vector<ReductionStep> steps;
  std::array<Element, 3> minimal;  // single letters or identities
};

// Deterministic strategy: strip a shared leftmost letter when all three
// words start with it; otherwise left-multiply by the inverse of the least
// letter leading exactly two words; otherwise truncate the first word of
// length >= 2 whose leftmost letter leads no other word.
TripleReductionTrace reduce_triple(const Group& g,
                                   const std::array<Element, 3>& t);

// Same rules, applicable move chosen uniformly at random (confluence tests).
TripleReductionTrace reduce_triple_randomized(const Group& g,
                                              const std::array<Element, 3>& t,
                                              std::mt19937& rng);

// The lexicographic order on the free product determined by the factor
// orders: reduce to the minimal triple, then read off the initial table.
OrderValue lex_eval(const Group& g, const CircularOrderSpec& cg,
                    const CircularOrderSpec& ch, const Element& a,
                    const Element& b, const Element& c);

// Intertwine a circular order on a coset list with a linear order on the
// stabilizer: distinct cosets defer to the orbit order, shared cosets fall
// back to the stabilizer coordinates.
OrderPtr coset_intertwine(
    GroupPtr g, std::function<long long(const Element&)> coset_of,
    std::function<IntVec(const Element&)> k_coord,
    std::function<int(long long, long long, long long)> orbit_eval,
    LinearOrderSpec stab_lin);

}  // namespace corder

#endif
