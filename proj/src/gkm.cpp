#include "ktoric/gkm.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ktoric {

GKMGraph::GKMGraph(std::size_t rank, std::vector<GKMVertex> vertices, std::vector<GKMEdge> edges)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!ids.emplace(vertices_[i].id, i).second)
      throw Error("GKMViolation", "duplicate vertex id '" + vertices_[i].id + "'");
  std::vector<std::vector<const IntVector*>> incident(vertices_.size());
  for (const auto& e : edges_) {
    if (e.from >= vertices_.size() || e.to >= vertices_.size() || e.from == e.to)
      throw Error("GKMViolation", "edge endpoints must be two distinct vertices");
    if (e.weight.size() != rank_) throw Error("GKMViolation", "edge weight has wrong rank");
    if (is_zero(e.weight)) throw Error("GKMViolation", "edge weight is zero");
    incident[e.from].push_back(&e.weight);
    incident[e.to].push_back(&e.weight);
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (std::size_t a = 0; a < incident[v].size(); ++a)
      for (std::size_t b = a + 1; b < incident[v].size(); ++b)
        if (!linearly_independent(*incident[v][a], *incident[v][b]))
          throw Error("GKMViolation", "weights at vertex '" + vertices_[v].id + "' are linearly dependent");
}

std::size_t GKMGraph::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  throw Error("UnknownVertex", "no vertex with id '" + id + "'");
}

bool FixedPointClass::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const GroupRingElem& v) { return v.is_zero(); });
}

bool FixedPointClass::is_constant() const {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

bool linearly_independent(std::span<const Integer> a, std::span<const Integer> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] - a[j] * b[i] != 0) return true;
  return false;
}

std::vector<std::size_t> congruence_failures(const GKMGraph& graph, const FixedPointClass& h) {
  if (h.values.size() != graph.vertices().size())
    throw Error("DimensionMismatch", "class must assign a value to every vertex");
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const auto& edge = graph.edges()[e];
    if (!divisible_by_one_minus(h.values[edge.from] - h.values[edge.to], edge.weight)) out.push_back(e);
  }
  return out;
}

bool gamma_subring_contains(const GKMGraph& graph, const FixedPointClass& h) {
  return congruence_failures(graph, h).empty();
}

namespace {

GKMGraph toric_graph(const DelzantPolytope& p, const std::vector<Vertex>& vertices, const std::vector<Edge>& es) {
  std::vector<GKMVertex> gv;
  for (std::size_t i = 0; i < vertices.size(); ++i) gv.push_back({"v" + std::to_string(i + 1), vertices[i].point});
  std::vector<GKMEdge> ge;
  // Vertices are sorted lexicographically, so from < to orients each weight
  // from the smaller endpoint to the larger one.
  for (const auto& e : es) ge.push_back({e.from, e.to, e.direction});
  return GKMGraph(p.dim(), std::move(gv), std::move(ge));
}

}  // namespace

ToricModel::ToricModel(const DelzantPolytope& p)
    : polytope_((require_delzant(p), p)), vertices_(enumerate_vertices(p)), edges_(ktoric::edges(vertices_, p.dim())),
      graph_(toric_graph(p, vertices_, edges_)) {
  const std::size_t N = p.facet_count();
  leaving_.assign(vertices_.size(), std::vector<std::optional<IntVector>>(N));
  for (const auto& e : edges_) {
    const FacetSet common = vertices_[e.from].incident & vertices_[e.to].incident;
    const FacetSet from_only = vertices_[e.from].incident & ~common;
    const FacetSet to_only = vertices_[e.to].incident & ~common;
    IntVector back = e.direction;
    for (auto& x : back) x = -x;
    for (auto i : facet_indices(from_only)) leaving_[e.from][i] = e.direction;
    for (auto i : facet_indices(to_only)) leaving_[e.to][i] = back;
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    IntMatrix h(p.dim(), N);
    for (auto i : facet_indices(vertices_[v].incident)) {
      if (!leaving_[v][i]) throw Error("InternalCheck", "vertex is missing an edge leaving one of its facets");
      for (std::size_t r = 0; r < p.dim(); ++r) h(r, i) = -(*leaving_[v][i])[r];
    }
    substitution_.push_back(std::move(h));
  }
}

const IntVector& ToricModel::leaving_direction(std::size_t vertex, std::size_t facet) const {
  const auto& d = leaving_.at(vertex).at(facet);
  if (!d) throw Error("NotIncident", "facet " + std::to_string(facet + 1) + " does not contain the vertex");
  return *d;
}

GroupRingElem ToricModel::restrict_at(const GroupRingElem& f, std::size_t vertex) const {
  if (f.carrier().rank() != polytope_.facet_count())
    throw Error("DimensionMismatch", "class must live on the rank-N lattice");
  return apply_lattice_map(f, substitution_.at(vertex));
}

FixedPointClass ToricModel::restrict_class(const GroupRingElem& f) const {
  FixedPointClass out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) out.values.push_back(restrict_at(f, v));
  return out;
}

GKMGraph build_gkm_graph(const DelzantPolytope& p) {
  require_delzant(p);
  auto vertices = enumerate_vertices(p);
  return toric_graph(p, vertices, edges(vertices, p.dim()));
}

std::vector<DualityViolation> check_direction_duality(const ToricModel& model) {
  std::vector<DualityViolation> out;
  const auto& p = model.polytope();
  for (std::size_t v = 0; v < model.vertices().size(); ++v) {
    auto incident = facet_indices(model.vertices()[v].incident);
    for (auto i : incident) {
      const auto& d = model.leaving_direction(v, i);
      bool ok = true;
      for (auto j : incident) {
        Integer pairing = dot(p.facet(j).normal, d);
        if ((j == i && pairing != -1) || (j != i && pairing != 0)) ok = false;
      }
      if (!ok) out.push_back({v, i});
    }
  }
  return out;
}

MorseBasis morse_basis(const ToricModel& model, const IntVector& xi) {
  if (xi.size() != model.polytope().dim()) throw Error("DimensionMismatch", "xi must have the polytope dimension");
  if (!is_generic_direction(xi, model.vertices(), model.edges()))
    throw Error("NonGenericDirection", "direction does not separate vertices or is orthogonal to an edge");
  const auto& vertices = model.vertices();
  const std::size_t N = model.polytope().facet_count();
  MorseBasis basis;
  basis.xi = xi;
  basis.order.resize(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) basis.order[v] = v;
  std::vector<Rational> height;
  for (const auto& v : vertices) height.push_back(dot(xi, v.point));
  std::sort(basis.order.begin(), basis.order.end(), [&](std::size_t a, std::size_t b) { return height[a] < height[b]; });
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    FacetSet down = 0;
    for (auto i : facet_indices(vertices[v].incident))
      if (dot(xi, model.leaving_direction(v, i)) < 0) down |= FacetSet{1} << i;
    basis.descending.push_back(down);
    basis.classes.push_back(model.restrict_class(nonface_product(N, down)));
  }
  return basis;
}

RankCertificate equivariant_rank_certificate(const ToricModel& model, const IntVector& xi) {
  MorseBasis basis = morse_basis(model, xi);
  const std::size_t count = basis.order.size();
  const std::size_t n = model.polytope().dim();
  RankCertificate cert;
  cert.rank = count;
  cert.xi = xi;
  cert.order = basis.order;
  cert.triangular = true;
  cert.diagonal_nonzero = true;
  cert.diagonal_is_euler = true;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t v = basis.order[r];
    std::vector<GroupRingElem> row;
    for (std::size_t c = 0; c < count; ++c) row.push_back(basis.classes[v].values[basis.order[c]]);
    for (std::size_t c = 0; c < r; ++c)
      if (!row[c].is_zero()) cert.triangular = false;
    if (row[r].is_zero()) cert.diagonal_nonzero = false;
    std::vector<IntVector> weights;
    for (auto i : facet_indices(basis.descending[v])) {
      IntVector w = model.leaving_direction(v, i);
      for (auto& x : w) x = -x;
      weights.push_back(std::move(w));
    }
    if (!(row[r] == euler_class(n, weights))) cert.diagonal_is_euler = false;
    cert.matrix.push_back(std::move(row));
  }
  return cert;
}

std::size_t ordinary_k_rank(const DelzantPolytope& p) {
  ToricModel model(p);
  auto cert = equivariant_rank_certificate(model, generic_direction(p));
  if (!cert.certified()) throw Error("InternalCheck", "Morse basis restriction matrix failed certification");
  return cert.rank;
}

std::vector<IntVector> random_exponents(std::size_t variables, std::size_t count, std::uint64_t seed, long bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<IntVector> out;
  for (std::size_t s = 0; s < count; ++s) {
    IntVector e(variables);
    for (auto& x : e) x = dist(rng);
    out.push_back(std::move(e));
  }
  return out;
}

PresentationReport verify_presentation(const DelzantPolytope& p, std::uint64_t seed, std::size_t monomials) {
  ToricModel model(p);
  Presentation pres = presentation(p);
  const std::size_t n = p.dim();
  const std::size_t N = p.facet_count();
  PresentationReport report;

  for (const auto& violation : check_direction_duality(model))
    report.failures.push_back({"direction_duality", violation.facet, violation.vertex,
                               "<a_j, d_{v,i}> differs from -delta_ij"});

  for (std::size_t g = 0; g < pres.i_generators.size(); ++g) {
    auto restricted = model.restrict_class(pres.i_generators[g]);
    for (std::size_t v = 0; v < restricted.values.size(); ++v)
      if (!restricted.values[v].is_zero())
        report.failures.push_back({"I_vanishes", g, v, restricted.values[v].render("t")});
    ++report.i_checked;
  }

  Carrier free_n(n);
  for (std::size_t g = 0; g < pres.j_exponents.size(); ++g) {
    auto restricted = model.restrict_class(GroupRingElem::monomial(Carrier(N), pres.j_exponents[g]));
    ++report.j_checked;
    if (!restricted.is_constant()) {
      report.failures.push_back({"J_constant", g, std::nullopt, "monomial restricts to a non-constant class"});
      report.j_restrictions.push_back(restricted.values.front());
      continue;
    }
    const GroupRingElem& value = restricted.values.front();
    report.j_restrictions.push_back(value);
    IntVector m(n), minus_m(n);
    m[g] = 1;
    minus_m[g] = -1;
    if (!(value == GroupRingElem::monomial(free_n, m) || value == GroupRingElem::monomial(free_n, minus_m)))
      report.failures.push_back({"J_constant", g, std::nullopt, "constant value is " + value.render("t")});
    if (augmentation(value - GroupRingElem::constant(free_n, 1)) != 0)
      report.failures.push_back({"J_augmentation", g, std::nullopt, "x^{beta*(m)} - 1 survives augmentation"});
  }

  auto exps = random_exponents(N, monomials, seed);
  for (std::size_t s = 0; s < exps.size(); ++s) {
    auto restricted = model.restrict_class(GroupRingElem::monomial(Carrier(N), exps[s]));
    for (auto e : congruence_failures(model.graph(), restricted))
      report.failures.push_back({"gkm_congruence", s, model.graph().edges()[e].from, "edge " + std::to_string(e)});
    ++report.monomials_checked;
  }
  return report;
}

}  // namespace ktoric
