#include "corder/realization.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "corder/error.hpp"

namespace corder {

RealizationMap realize(const CircularOrderSpec& c,
                       const std::vector<Element>& elements) {
  const Group& g = *c.group();
  std::set<std::string> seen;
  for (const auto& e : elements) {
    g.check(e);
    if (!seen.insert(element_key(e)).second)
      fail(ErrorKind::BadInput, "duplicate element in realization input");
  }
  RealizationMap m;
  if (elements.empty()) return m;
  m.entries.emplace_back(elements[0], mpq_class(0));
  if (elements.size() == 1) return m;
  m.entries.emplace_back(elements[1], mpq_class(1, 2));

  // Placed points sorted by position.
  std::vector<size_t> sorted = {0, 1};  // indices into m.entries
  for (size_t idx = 2; idx < elements.size(); ++idx) {
    const Element& x = elements[idx];
    size_t k = sorted.size();
    long arc = -1;
    for (size_t i = 0; i < k; ++i) {
      const Element& lo = m.entries[sorted[i]].first;
      const Element& hi = m.entries[sorted[(i + 1) % k]].first;
      OrderValue v = c.eval(lo, x, hi);
      if (v == 0)
        fail(ErrorKind::BadInput, "order vanishes on a distinct triple");
      if (v == 1) {
        if (arc >= 0)
          fail(ErrorKind::BadInput, "element fits more than one arc");
        arc = static_cast<long>(i);
      }
    }
    if (arc < 0) fail(ErrorKind::BadInput, "element fits no arc");
    mpq_class lo = m.entries[sorted[arc]].second;
    mpq_class hi = arc + 1 == static_cast<long>(k)
                       ? m.entries[sorted[0]].second + 1
                       : m.entries[sorted[arc + 1]].second;
    mpq_class pos = (lo + hi) / 2;
    if (pos >= 1) pos -= 1;
    pos.canonicalize();
    m.entries.emplace_back(x, pos);
    sorted.push_back(m.entries.size() - 1);
    std::sort(sorted.begin(), sorted.end(), [&](size_t a, size_t b) {
      return m.entries[a].second < m.entries[b].second;
    });
  }
  return m;
}

OrderPtr order_from_points(GroupPtr g, RealizationMap m) {
  return CircularOrderSpec::point_recovered(std::move(g), std::move(m));
}

std::string export_csv(const RealizationMap& m) {
  std::ostringstream os;
  os << "element,position_numerator,position_denominator\n";
  for (const auto& [e, p] : m.entries)
    os << '"' << element_key(e) << "\"," << p.get_num().get_str() << ","
       << p.get_den().get_str() << "\n";
  return os.str();
}

std::string export_svg(const RealizationMap& m) {
  const double cx = 200, cy = 200, r = 150, tick = 12;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" "
        "height=\"400\" viewBox=\"0 0 400 400\">\n";
  os << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& [e, p] : m.entries) {
    double angle = 2.0 * 3.14159265358979323846 * p.get_d();
    double dx = std::cos(angle), dy = -std::sin(angle);
    os << "  <line x1=\"" << cx + (r - tick) * dx << "\" y1=\""
       << cy + (r - tick) * dy << "\" x2=\"" << cx + (r + tick) * dx
       << "\" y2=\"" << cy + (r + tick) * dy << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << cx + (r + 2.5 * tick) * dx << "\" y=\""
       << cy + (r + 2.5 * tick) * dy
       << "\" font-size=\"10\" text-anchor=\"middle\">" << element_key(e)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace corder
