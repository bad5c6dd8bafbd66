#pragma once

#include <json.hpp>

#include "trisect4/coloring.hpp"
#include "trisect4/construction.hpp"
#include "trisect4/trisection.hpp"
#include "trisect4/validation.hpp"

namespace trisect4 {

using Json = nlohmann::ordered_json;

Json validationJson(const ValidationReport& r);
Json infoJson(const Triangulation& tri, const ValidationReport& r);
Json monochromeJson(const MonochromeGraph& g);
Json coloringJson(const Skeleton& skel, const Tricoloring& c);
Json quadraJson(const QuadraDecomposition& q);
QuadraDecomposition quadraFromJson(const Json& j);
Json summaryJson(const TrisectionSummary& s);

}  // namespace trisect4
