#pragma once

// Delzant polytopes in H-representation {x : <x, a_i> <= eta_i}.
// Facet indices are 0-based here; user-facing output adds 1.

#include "ktoric/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ktoric {

/// Bitmask over facet indices; N is limited to kMaxFacets.
using FacetSet = std::uint32_t;
inline constexpr std::size_t kMaxFacets = 24;

std::vector<std::size_t> facet_indices(FacetSet s);
FacetSet facet_set(const std::vector<std::size_t>& indices);
inline bool contains(FacetSet outer, FacetSet inner) { return (outer & inner) == inner; }

struct Facet {
  IntVector normal;
  Rational offset;
};

class DelzantPolytope {
public:
  DelzantPolytope(std::size_t dim, std::vector<Facet> facets);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t facet_count() const noexcept { return facets_.size(); }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const Facet& facet(std::size_t i) const { return facets_.at(i); }

private:
  std::size_t dim_;
  std::vector<Facet> facets_;
};

struct Vertex {
  RatVector point;
  FacetSet incident = 0;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  IntVector direction;  // primitive, pointing from `from` toward `to`
};

/// Vertices sorted lexicographically by point. Throws UnboundedPolytope / EmptyPolytope.
std::vector<Vertex> enumerate_vertices(const DelzantPolytope& p);

/// A nonzero d with <a_i, d> <= 0 for every facet, if the polyhedron is unbounded.
std::optional<RatVector> recession_direction(const DelzantPolytope& p);

struct ValidationCheck {
  explicit ValidationCheck(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::string message;
  std::vector<std::size_t> facets;    // offending facet indices (0-based)
  std::vector<std::size_t> vertices;  // offending vertex indices (0-based)
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool valid() const;
  const ValidationCheck* find(const std::string& name) const;
};

ValidationReport validate_delzant(const DelzantPolytope& p);

/// Throws InvalidPolytope carrying the report summary when validation fails.
void require_delzant(const DelzantPolytope& p);

/// Inclusion-minimal facet subsets with empty intersection, sorted by size then lexicographically.
std::vector<FacetSet> minimal_nonfaces(const DelzantPolytope& p);
std::vector<FacetSet> minimal_nonfaces(const std::vector<Vertex>& vertices, std::size_t facet_count);

/// True iff the facets in `s` meet (the empty set always meets).
bool facets_intersect(const std::vector<Vertex>& vertices, FacetSet s);

std::vector<Edge> edges(const DelzantPolytope& p);
std::vector<Edge> edges(const std::vector<Vertex>& vertices, std::size_t dim);

/// Integer direction separating all vertices and not orthogonal to any edge.
IntVector generic_direction(const DelzantPolytope& p);
bool is_generic_direction(std::span<const Integer> xi, const std::vector<Vertex>& vertices,
                          const std::vector<Edge>& edges);

}  // namespace ktoric
