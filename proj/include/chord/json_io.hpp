#pragma once

#include <string>

#include "json.hpp"

#include "chord/abstract_cubic.hpp"
#include "chord/equivalence.hpp"
#include "chord/generation.hpp"
#include "chord/geometry.hpp"
#include "chord/words.hpp"

namespace chord {

using Json = nlohmann::json;

// Field specs serialize as {"p":..,"e":..} and elements as coefficient
// arrays [c0,...]; forms carry the canonical monomial-order coefficients.
Json field_to_json(const Field& k);
const Field& field_from_json(const Json& j);

Json elem_to_json(const Field& k, uint32_t a);
uint32_t elem_from_json(const Field& k, const Json& j);

Json point_to_json(const ProjPoint& x);
ProjPoint point_from_json(const Field& k, int dim, const Json& j);

Json form_to_json(const CubicForm& F);
CubicForm form_from_json(const Json& j);

Json cubic_to_json(const AbstractCubic& P);
AbstractCubic cubic_from_json(const Json& j);

Json partition_to_json(const Partition& R);
Json trace_to_json(const SaturationTrace& t);
Json table_to_json(const QuasigroupTable& Q);
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);
Json closure_to_json(const ClosureResult& r);

Json load_json_file(const std::string& path);

}  // namespace chord
