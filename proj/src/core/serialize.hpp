#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "metrics.hpp"
#include "scheme.hpp"

namespace accompany {

using nlohmann::json;

json to_json(const FiniteLaw& law);
FiniteLaw finite_law_from_json(const json& j, std::size_t expect_dim = 0);

json to_json(const Scheme& s);
Scheme scheme_from_json(const json& j);
Scheme scheme_from_string(const std::string& text);

json to_json(const ConvolutionLaw& law);
ConvolutionLaw law_from_json(const json& j);

json to_json(const Polyhedron& p);  // "inf" sentinel for infinite offsets
Polyhedron polyhedron_from_json(const json& j);

json to_json(const DiscrepancyReport& r);
std::string csv_row(const DiscrepancyReport& r);

json to_json(const ProjectionMap& map);
ProjectionMap projection_map_from_json(const json& j);

// stable float formatting used by all CSV output
std::string format_double(double x);

}  // namespace accompany
