#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "boolecc/cube.hpp"
#include "boolecc/group.hpp"
#include "boolecc/oracle.hpp"
#include "boolecc/poly.hpp"

namespace boolecc {

using json = nlohmann::ordered_json;

// GroupSpec: {"kind":"cyclic","m":12} | {"kind":"integers"} | {"kind":"rationals"}
//          | {"kind":"product","parts":[...]}
json group_to_json(const GroupSpecPtr& g);
GroupSpecPtr group_from_json(const json& j);

// GroupValue: decimal string (cyclic/integers), "p/q" (rationals), array (product).
// Plain JSON integers are accepted on input.
json value_to_json(const GroupValue& v);
GroupValue value_from_json(const GroupSpecPtr& g, const json& j);

// Exact rational: integer, "p/q", or decimal string; JSON floats go through
// their shortest decimal form.
Rat rat_from_json(const json& j);
json rat_to_json(const Rat& r);

// Polynomial: {"n":..,"d":..,"terms":[{"vars":[i,..],"coeff":..}]}; 0-based vars.
json poly_to_json(const MultilinearPoly& p);
MultilinearPoly poly_from_json(const GroupSpecPtr& g, const json& j);

// Embedding: {"n":..,"k":..,"a":"bitstring","h":[..]}; 0-based buckets.
json embedding_to_json(const SubcubeEmbedding& e);
SubcubeEmbedding embedding_from_json(const json& j);

// Table: {"group":..,"n":..,"values":[..]} with values indexed by point bitmask.
json table_to_json(const DenseTable& t);
DenseTable table_from_json(const json& j);

// Oracle spec:
// {"group":..,"n":..,"truth":<poly>,"error":{"kind":..,...},"seed":..}
std::unique_ptr<PolyOracle> make_oracle(const json& spec);

}  // namespace boolecc
