#pragma once

#include <string>

#include <json.hpp>

#include "deloc/pairings.hpp"
#include "deloc/polygrowth.hpp"

namespace deloc {

using Json = nlohmann::ordered_json;

// Deterministic serialization: insertion-ordered keys, floats at 17
// significant digits, two-space indentation, trailing newline.
std::string dump_json(const Json& j);

Json complex_json(CD z);
Json rational_json(const QC& q);  // {"re": "p/q", "im": "p/q"}

Json group_summary(const Group& G);
Json class_summary(const ConjugacyClass& cl);
Json pairing_json(const PairingReport& r);
Json growth_json(const Group& G, const GrowthBound& b);

}  // namespace deloc
