#pragma once

// GKM graphs, fixed-point restriction of classes in Z[x_1^±, ..., x_N^±],
// Morse-basis rank certificates and the cross-check harness for the toric
// presentation.

#include "ktoric/kirwan.hpp"
#include "ktoric/polytope.hpp"
#include "ktoric/ring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ktoric {

struct GKMVertex {
  std::string id;
  std::optional<RatVector> point;
};

struct GKMEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  IntVector weight;
};

/// Labelled graph (V, E, alpha) with lattice weights in Z^rank.
class GKMGraph {
public:
  GKMGraph(std::size_t rank, std::vector<GKMVertex> vertices, std::vector<GKMEdge> edges);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<GKMVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<GKMEdge>& edges() const noexcept { return edges_; }
  std::size_t vertex_index(const std::string& id) const;

private:
  std::size_t rank_;
  std::vector<GKMVertex> vertices_;
  std::vector<GKMEdge> edges_;
};

/// One element of R(T) per fixed point, aligned with the graph's vertex order.
struct FixedPointClass {
  std::vector<GroupRingElem> values;

  bool is_zero() const;
  bool is_constant() const;
};

bool linearly_independent(std::span<const Integer> a, std::span<const Integer> b);

/// Edges (p, q) with h(p) - h(q) not divisible by 1 - e^{-alpha(p,q)}.
std::vector<std::size_t> congruence_failures(const GKMGraph& graph, const FixedPointClass& h);
bool gamma_subring_contains(const GKMGraph& graph, const FixedPointClass& h);

/// Fixed-point data of the toric manifold of a Delzant polytope.
class ToricModel {
public:
  explicit ToricModel(const DelzantPolytope& p);

  const DelzantPolytope& polytope() const noexcept { return polytope_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const GKMGraph& graph() const noexcept { return graph_; }

  /// d_{v,i}: primitive direction of the edge at v leaving facet i (i incident to v).
  const IntVector& leaving_direction(std::size_t vertex, std::size_t facet) const;

  /// x_i -> e^{-d_{v,i}} for i incident to v, x_i -> 1 otherwise.
  FixedPointClass restrict_class(const GroupRingElem& f) const;
  GroupRingElem restrict_at(const GroupRingElem& f, std::size_t vertex) const;

private:
  DelzantPolytope polytope_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  GKMGraph graph_;
  std::vector<std::vector<std::optional<IntVector>>> leaving_;  // [vertex][facet]
  std::vector<IntMatrix> substitution_;                          // n×N exponent map per vertex
};

GKMGraph build_gkm_graph(const DelzantPolytope& p);

/// A vertex/facet pair violating <a_i, d_{v,i}> = -1, <a_j, d_{v,i}> = 0 (j != i in I_v).
struct DualityViolation {
  std::size_t vertex;
  std::size_t facet;
};
std::vector<DualityViolation> check_direction_duality(const ToricModel& model);

struct MorseBasis {
  IntVector xi;
  std::vector<std::size_t> order;              // vertices by increasing <xi, v>
  std::vector<FacetSet> descending;            // B_v, indexed by vertex
  std::vector<FixedPointClass> classes;        // tau_v, indexed by vertex
};

/// Throws NonGenericDirection if xi separates neither vertices nor edges.
MorseBasis morse_basis(const ToricModel& model, const IntVector& xi);

struct RankCertificate {
  std::size_t rank = 0;
  IntVector xi;
  std::vector<std::size_t> order;
  /// matrix[r][c] = tau_{order[r]} restricted to vertex order[c].
  std::vector<std::vector<GroupRingElem>> matrix;
  bool triangular = false;
  bool diagonal_nonzero = false;
  bool diagonal_is_euler = false;  // tau_v|_v = prod over descending edges of Euler factors
  bool certified() const { return triangular && diagonal_nonzero && diagonal_is_euler; }
};

RankCertificate equivariant_rank_certificate(const ToricModel& model, const IntVector& xi);

/// Rank of K^0 of the toric manifold (K^1 vanishes), certified by the Morse basis.
std::size_t ordinary_k_rank(const DelzantPolytope& p);

struct PresentationReport {
  struct Failure {
    std::string check;
    std::size_t generator = 0;
    std::optional<std::size_t> vertex;
    std::string detail;
  };
  std::size_t i_checked = 0;
  std::size_t j_checked = 0;
  std::size_t monomials_checked = 0;
  std::vector<GroupRingElem> j_restrictions;  // constant value of each J generator's monomial
  std::vector<Failure> failures;
  bool passed() const { return failures.empty(); }
};

/// Exponents of `count` seeded random monomials in N variables, entries in [-bound, bound].
std::vector<IntVector> random_exponents(std::size_t variables, std::size_t count, std::uint64_t seed,
                                        long bound = 3);

PresentationReport verify_presentation(const DelzantPolytope& p, std::uint64_t seed = 0,
                                       std::size_t monomials = 200);

}  // namespace ktoric
