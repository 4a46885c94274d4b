#ifndef CORDER_REALIZATION_HPP
#define CORDER_REALIZATION_HPP

#include <string>
#include <vector>

#include "corder/order.hpp"

namespace corder {

// Insertion construction: the first element goes to 0, the second to 1/2,
// every later one to the exact dyadic midpoint of the unique arc between
// its circular neighbours among the already-placed points.
RealizationMap realize(const CircularOrderSpec& c,
                       const std::vector<Element>& elements);

// The order recovered from labeled circle points: orientation of positions.
OrderPtr order_from_points(GroupPtr g, RealizationMap m);

// CSV rows "element,position_numerator,position_denominator".
std::string export_csv(const RealizationMap& m);

// Deterministic unit-circle picture with labeled ticks.
std::string export_svg(const RealizationMap& m);

}  // namespace corder

#endif
