#ifndef CORDER_JSON_IO_HPP
#define CORDER_JSON_IO_HPP

#include <json.hpp>

#include "corder/freeprod.hpp"
#include "corder/obstruction.hpp"
#include "corder/order.hpp"

namespace corder {

using Json = nlohmann::json;

// Parsers throw Error(InvalidDescriptor) with the offending JSON path in the
// message; writers are total except for orders holding callbacks.

Json group_to_json(const Group& g);
GroupPtr group_from_json(const Json& j);

Json element_to_json(const Element& e);
Element element_from_json(const Json& j);

Json algebraic_to_json(const AlgebraicReal& x);
AlgebraicReal algebraic_from_json(const Json& j);

Json linear_to_json(const LinearOrderSpec& l);
LinearOrderSpec linear_from_json(const Json& j);

Json order_to_json(const CircularOrderSpec& c);
OrderPtr order_from_json(const Json& j);

Json aut_to_json(const AutDescriptor& a);
AutDescriptor aut_from_json(const Json& j);

Json report_to_json(const ValidationReport& r);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json trace_to_json(const TripleReductionTrace& t);

Json realization_to_json(const RealizationMap& m);
RealizationMap realization_from_json(const Json& j);

Json rotation_params_to_json(const RotationParams& p);

}  // namespace corder

#endif
