#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "upkit/classify.hpp"
#include "upkit/harness.hpp"

namespace upkit {

using nlohmann::json;

json field_spec_json(const FieldSpec& s);
FieldPtr field_from_json(const json& j);  // BadParams unless the modulus is the library's own

json elem_json(const Field& F, Field::V v);  // k coefficients, ascending degree
Field::V elem_from_json(const Field& F, const json& j);

json root_json(const Root& r);
RootId root_from_json(const RootSystem& R, const json& j);

json structure_table_json(const UpGroup& g);
json matrix_json(const UpMatrix& a);
UpMatrix matrix_from_json(const GroupPtr& g, const json& j);
json word_json(const RootWord& w);
RootWord word_from_json(const GroupPtr& g, const json& j);

// Central tables list only the nonzero (tuple, value) pairs.
json descriptor_json(const MapDescriptor& d);
MapDescriptor descriptor_from_json(const GroupPtr& g, const json& j);
json composition_json(const std::vector<MapDescriptor>& ds);

// {"n", "field", "maps": [...]}; maps are applied right to left.
json composition_file(const GroupPtr& g, const std::vector<MapDescriptor>& ds);

// A composition file, a bare composition array (group taken from `fallback`),
// or a lookup table {"n", "field", "lookup": [{"in": coords, "out": coords}]}.
struct LoadedOracle {
  GroupPtr g;
  MapFn phi;
  std::string source;  // "composition" or "lookup"
  std::vector<MapDescriptor> maps;
};
LoadedOracle load_oracle(const json& j, const GroupPtr& fallback);

// Every element of the group with its image; only feasible for tiny groups.
json lookup_table_json(const GroupPtr& g, const MapFn& phi);

json check_report_json(const CheckReport& r);
json factorization_json(const Factorization& f);
json report_json(const VerificationReport& r, bool timing = false);
json suite_json(const SuiteReport& s, bool timing = false);

}  // namespace upkit
