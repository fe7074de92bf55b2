#pragma once

// JSON documents: fans, certificates, rejections, property and self-test
// reports. Emitters are canonical (sorted keys, rays in lexicographic order)
// so that outputs can be diffed against golden files.

#include "homtoric/core/fan.hpp"
#include "homtoric/core/homogeneity.hpp"
#include "homtoric/core/properties.hpp"
#include "homtoric/core/roundtrip.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace homtoric {

using Json = nlohmann::json;

// Malformed document; the message names the offending line/column or field.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json_text(std::string_view text);

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j, const std::string& field);

// {"maximal_cones": [...], "rank": r, "rays": [...]}, canonical ray order.
Json fan_to_json(const Fan& fan);
// Throws DocumentError on shape errors and FanError on invalid fans.
Fan fan_from_json(const Json& j);

Json fan_validation_report(const Fan& fan);
Json fan_error_report(const FanError& error);

// {"group_sizes", "identification", "ray_assignment", "subgroup_relations"}.
Json certificate_to_json(const HomogeneityCertificate& certificate);
// ray_assignment/identification are optional; when both are absent the
// certificate refers to its own quotient fan.
HomogeneityCertificate certificate_from_json(const Json& j);

Json rejection_to_json(const Rejection& rejection);

Json report_to_json(const PropertyReport& report);
PropertyReport report_from_json(const Json& j);

Json roundtrip_to_json(const RoundtripReport& report);

}  // namespace homtoric
