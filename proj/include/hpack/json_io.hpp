#pragma once

#include <string>

#include "hpack/model.hpp"
#include "hpack/objects.hpp"
#include "json.hpp"

namespace hpack {

using Json = nlohmann::ordered_json;

// Instance: {"top": "B1", "blocks": {"B1": {"rects": [{"id": "r1", "variants": [[w, h], ...]}],
//                                           "occs": [{"id": "o1", "child": "B2"}]}}}
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& json);

// Solution: {"layouts": {"B1": {"w": W, "h": H, "placements": [{"id": .., "x": .., "y": ..,
//                                                               "w": .., "h": .., "variant": t}]}}}
// The variant key is written only when present.
Json layout_to_json(const BlockLayout& layout);
BlockLayout layout_from_json(const Json& json);
Json solution_to_json(const Solution& solution);
Solution solution_from_json(const Json& json);

// Single-block task: {"objects": [{"id": "a", "options": [[w, h], ...], "group": "g"}]}
std::vector<ObjectSpec> objects_from_json(const Json& json);
Json objects_to_json(const std::vector<ObjectSpec>& objects);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& json);

}  // namespace hpack
