#pragma once

#include <string>

#include <json.hpp>

#include "loopmot/coaction.hpp"
#include "loopmot/graphs.hpp"
#include "loopmot/integrate.hpp"
#include "loopmot/kinematics.hpp"
#include "loopmot/motive.hpp"

namespace loopmot {

// Key order is fixed so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// {"n": int, "s": [["a/b",...]], "m2": [...]}; rationals as decimal strings,
// denominator omitted when 1. Bit-exact round-trip.
Json kinematics_to_json(const KinematicPoint& k);
KinematicPoint kinematics_from_json(const Json& j);

// {"n": int, "pinch": [...], "cut": [...]}
Json graph_to_json(const CutQuotientGraph& g);
CutQuotientGraph graph_from_json(const Json& j);

Json motive_to_json(const MotiveDescription& m);

Json genericity_to_json(const GenericityReport& r);

Json coaction_to_json(const CoactionExpression& e);

Json integral_result_to_json(const IntegralResult& r, const Json& spec_echo);

Json gram_subset_to_json(const GramSubset& subset);

}  // namespace loopmot
