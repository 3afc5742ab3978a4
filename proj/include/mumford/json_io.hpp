#pragma once

#include <json.hpp>

#include "mumford/cover.hpp"
#include "mumford/schottky.hpp"

namespace mumford {

using ordered_json = nlohmann::ordered_json;

ordered_json field_to_json(const FieldDescriptor& k);
FieldPtr field_from_json(const ordered_json& j);

std::string point_to_string(const ProjectivePoint& pt);
// accepts "inf", rationals "a/b" and the element text form
ProjectivePoint point_from_string(const FieldPtr& k, const std::string& s);

ordered_json matrix_to_json(const MoebiusMap& m);
MoebiusMap matrix_from_json(const FieldPtr& k, const ordered_json& j);

ordered_json disk_to_json(const UltrametricDisk& d);

// CLI payload {"p":..,"precision":..,"degree":..,"terms":[{"point":..,"exp":..}]}
KummerEquation kummer_from_json(const ordered_json& j, uint32_t default_p,
                                uint32_t default_precision);
ordered_json verdict_to_json(const MumfordVerdict& v);

ordered_json tree_to_json(const QuotientTreeDescriptor& q);

ordered_json presentation_to_json(const SchottkyPresentation& pres);
SchottkyPresentation presentation_from_json(const ordered_json& j);

ordered_json report_to_json(const VerificationReport& rep);

}  // namespace mumford
