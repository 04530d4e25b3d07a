#pragma once

// JSON formats: polytope input, GKM graphs, fixed-point classes and reports.
// Facet indices are 1-based in every document; rationals are "p/q" strings.

#include "ktoric/gkm.hpp"
#include "ktoric/kirwan.hpp"
#include "ktoric/polytope.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace ktoric::io {

using Json = nlohmann::ordered_json;

/// {"dim": n, "facets": [{"normal": [..], "offset": int | "p/q"}]}. Throws ParseError.
DelzantPolytope parse_polytope(const Json& doc);
DelzantPolytope load_polytope(const std::filesystem::path& path);
Json to_json(const DelzantPolytope& p);

Json rational_json(const Rational& r);
Json vector_json(std::span<const Rational> v);
Json vector_json(std::span<const Integer> v);
Json facet_set_json(FacetSet s);

Json to_json(const ValidationReport& report);
Json vertices_json(const std::vector<Vertex>& vertices);
Json nonfaces_json(const std::vector<FacetSet>& nonfaces);

/// {"generators": N, "I": [{"element", "S"}], "J": [{"element", "m"}], "nonfaces": [[..]]}
Json to_json(const Presentation& pres);
Json to_json(const ReducedPresentation& reduced);

/// {"vertices": [{"id", "point"}], "edges": [{"from", "to", "weight"}]}
Json to_json(const GKMGraph& graph);
GKMGraph parse_gkm_graph(const Json& doc);

/// Object keyed by vertex id with rendered elements as values.
Json to_json(const FixedPointClass& h, const GKMGraph& graph, const std::string& prefix = "t");
FixedPointClass parse_fixed_point_class(const Json& doc, const GKMGraph& graph, const std::string& prefix = "t");

/// Inverse of GroupRingElem::render on the free lattice of the given rank.
GroupRingElem parse_element(const std::string& text, std::size_t rank, const std::string& prefix = "x");

Json to_json(const DelzantData& d);
Json to_json(const CriticalDatum& c);
Json to_json(const RankCertificate& cert, const GKMGraph& graph);
Json to_json(const PresentationReport& report);
Json to_json(const FlowReport& report);

}  // namespace ktoric::io
