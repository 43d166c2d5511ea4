#pragma once

#include <json.hpp>

#include "pathrank/asymptotics.hpp"
#include "pathrank/structure.hpp"

namespace pathrank {

// {"case":"finite","count":3}
// {"case":"polynomial","c":2,"s":12.0}
// {"case":"logarithmic","s":0.7,"loglog_slope":-0.7}
//
// loglog_slope is the slope of log exp(-p_r) against log r; when the
// weights came from -log of transition probabilities this is the decay
// exponent of the r-th largest path probability.
nlohmann::json class_json(const AsymptoticClass& c);

// Everything classify_detail knows, with vertices under their names:
// the class_json keys at the top level, plus query echo, graph size,
// relevant vertices and one record per assessed component ("w0" for
// cycles, "s" for the rest).  Logarithmic reports keep the invariant
// s == min over the non-cycle components' s.
nlohmann::json analysis_json(const WeightedDigraph& g, VertexId v1,
                             VertexId v2, const ClassificationDetail& detail);

// One itinerary variant: its vertex itinerary plus the transition list
// ({"dwell": {...}} or {"edge": {...}} per step).
nlohmann::json variant_json(const WeightedDigraph& g,
                            const ItineraryVariant& v);

}  // namespace pathrank
