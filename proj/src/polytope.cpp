#include "ktoric/polytope.hpp"

#include "ktoric/lattice.hpp"
#include "rational_linalg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace ktoric {

std::vector<std::size_t> facet_indices(FacetSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

FacetSet facet_set(const std::vector<std::size_t>& indices) {
  FacetSet s = 0;
  for (auto i : indices) s |= FacetSet{1} << i;
  return s;
}

DelzantPolytope::DelzantPolytope(std::size_t dim, std::vector<Facet> facets)
    : dim_(dim), facets_(std::move(facets)) {
  if (dim_ == 0) throw Error("MalformedPolytope", "dimension must be positive");
  if (facets_.size() > kMaxFacets)
    throw Error("MalformedPolytope", "at most " + std::to_string(kMaxFacets) + " facets are supported");
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (facets_[i].normal.size() != dim_)
      throw Error("MalformedPolytope", "facet " + std::to_string(i + 1) + " normal has wrong length");
    if (is_zero(facets_[i].normal))
      throw Error("MalformedPolytope", "facet " + std::to_string(i + 1) + " has a zero normal");
  }
}

namespace {

using detail::RatMatrix;
using detail::row_reduce;

std::optional<RatVector> solve_square(const std::vector<const Facet*>& rows, std::size_t n) {
  RatMatrix a;
  for (const auto* f : rows) {
    RatVector row(f->normal.begin(), f->normal.end());
    row.push_back(f->offset);
    a.push_back(std::move(row));
  }
  auto pivots = row_reduce(a, n);
  if (pivots.size() != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

// Basis of the rational null space of the given rows.
std::vector<RatVector> null_space(const std::vector<const Facet*>& rows, std::size_t n) {
  RatMatrix a;
  for (const auto* f : rows) a.emplace_back(f->normal.begin(), f->normal.end());
  auto pivots = row_reduce(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    RatVector v(n);
    v[freec] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool all_nonpositive(const DelzantPolytope& p, const RatVector& d) {
  return std::all_of(p.facets().begin(), p.facets().end(),
                     [&](const Facet& f) { return dot(f.normal, d) <= 0; });
}

std::size_t affine_rank(const std::vector<RatVector>& points) {
  if (points.size() <= 1) return 0;
  RatMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVector d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return row_reduce(diffs, points[0].size()).size();
}

}  // namespace

std::optional<RatVector> recession_direction(const DelzantPolytope& p) {
  const std::size_t n = p.dim();
  std::vector<const Facet*> all;
  for (const auto& f : p.facets()) all.push_back(&f);
  auto lineality = null_space(all, n);
  if (!lineality.empty()) return lineality.front();
  // The recession cone is pointed; it is nonzero iff it has an extreme ray,
  // which is cut out by n-1 independent tight constraints.
  std::optional<RatVector> found;
  for_each_subset(p.facet_count(), n - 1, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    std::vector<const Facet*> rows;
    for (auto i : idx) rows.push_back(&p.facet(i));
    auto ns = null_space(rows, n);
    if (ns.size() != 1) return;
    RatVector d = ns.front();
    if (all_nonpositive(p, d)) {
      found = d;
      return;
    }
    for (auto& x : d) x = -x;
    if (all_nonpositive(p, d)) found = d;
  });
  return found;
}

std::vector<Vertex> enumerate_vertices(const DelzantPolytope& p) {
  if (auto d = recession_direction(p)) {
    std::ostringstream msg;
    msg << "polytope is unbounded along (";
    for (std::size_t i = 0; i < d->size(); ++i) msg << (i ? ", " : "") << to_string((*d)[i]);
    msg << ")";
    throw Error("UnboundedPolytope", msg.str());
  }
  const std::size_t n = p.dim();
  std::vector<Vertex> out;
  for_each_subset(p.facet_count(), n, [&](const std::vector<std::size_t>& idx) {
    std::vector<const Facet*> rows;
    for (auto i : idx) rows.push_back(&p.facet(i));
    auto x = solve_square(rows, n);
    if (!x) return;
    FacetSet incident = 0;
    for (std::size_t i = 0; i < p.facet_count(); ++i) {
      Rational v = dot(p.facet(i).normal, *x);
      if (v > p.facet(i).offset) return;
      if (v == p.facet(i).offset) incident |= FacetSet{1} << i;
    }
    auto same = [&](const Vertex& v) { return v.point == *x; };
    if (std::none_of(out.begin(), out.end(), same)) out.push_back(Vertex{*x, incident});
  });
  if (out.empty()) throw Error("EmptyPolytope", "the inequalities have no common solution");
  std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) { return a.point < b.point; });
  return out;
}

bool ValidationReport::valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ValidationReport validate_delzant(const DelzantPolytope& p) {
  ValidationReport report;
  const std::size_t n = p.dim();

  ValidationCheck primitive{"primitive_normals"};
  for (std::size_t i = 0; i < p.facet_count(); ++i)
    if (!is_primitive(p.facet(i).normal)) primitive.facets.push_back(i);
  primitive.passed = primitive.facets.empty();
  if (!primitive.passed) primitive.message = "normals are not primitive integer vectors";
  report.checks.push_back(primitive);

  ValidationCheck bounded{"bounded"};
  ValidationCheck nonempty{"nonempty"};
  std::vector<Vertex> vertices;
  if (recession_direction(p)) {
    bounded.passed = false;
    bounded.message = "polyhedron has a recession direction";
  } else {
    try {
      vertices = enumerate_vertices(p);
    } catch (const Error& e) {
      nonempty.passed = false;
      nonempty.message = e.what();
    }
  }
  report.checks.push_back(bounded);
  report.checks.push_back(nonempty);

  ValidationCheck facets{"facets"};
  ValidationCheck simple{"simple"};
  ValidationCheck smooth{"smooth"};
  if (vertices.empty()) {
    for (auto* c : {&facets, &simple, &smooth}) {
      c->passed = false;
      c->message = "not evaluated: no vertices";
    }
  } else {
    for (std::size_t i = 0; i < p.facet_count(); ++i) {
      std::vector<RatVector> on_facet;
      for (const auto& v : vertices)
        if (v.incident & (FacetSet{1} << i)) on_facet.push_back(v.point);
      if (on_facet.size() < n || affine_rank(on_facet) != n - 1) facets.facets.push_back(i);
    }
    facets.passed = facets.facets.empty();
    if (!facets.passed) facets.message = "inequalities that do not cut out a facet";

    for (std::size_t v = 0; v < vertices.size(); ++v) {
      auto idx = facet_indices(vertices[v].incident);
      if (idx.size() != n) {
        simple.vertices.push_back(v);
        continue;
      }
      std::vector<IntVector> normals;
      for (auto i : idx) normals.push_back(p.facet(i).normal);
      Integer det = determinant(IntMatrix::from_rows(normals, n));
      if (abs(det) != 1) {
        smooth.vertices.push_back(v);
        for (auto i : idx) smooth.facets.push_back(i);
        if (smooth.message.empty()) smooth.message = "normal determinant " + to_string(det) + " at vertex";
      }
    }
    simple.passed = simple.vertices.empty();
    if (!simple.passed) simple.message = "vertices lying on more than n facets";
    smooth.passed = smooth.vertices.empty() && simple.passed;
    if (!simple.passed && smooth.vertices.empty()) smooth.message = "not evaluated at non-simple vertices";
  }
  report.checks.push_back(facets);
  report.checks.push_back(simple);
  report.checks.push_back(smooth);
  return report;
}

void require_delzant(const DelzantPolytope& p) {
  auto report = validate_delzant(p);
  if (report.valid()) return;
  std::string failed;
  for (const auto& c : report.checks)
    if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
  throw Error("InvalidPolytope", "not a Delzant polytope (failed: " + failed + ")");
}

bool facets_intersect(const std::vector<Vertex>& vertices, FacetSet s) {
  return std::any_of(vertices.begin(), vertices.end(), [&](const Vertex& v) { return contains(v.incident, s); });
}

std::vector<FacetSet> minimal_nonfaces(const std::vector<Vertex>& vertices, std::size_t facet_count) {
  if (facet_count > 20) throw Error("TooManyFacets", "non-face enumeration is limited to 20 facets");
  std::vector<FacetSet> out;
  const FacetSet limit = FacetSet{1} << facet_count;
  for (FacetSet s = 1; s < limit; ++s) {
    if (facets_intersect(vertices, s)) continue;
    bool minimal = true;
    for (auto i : facet_indices(s))
      if (!facets_intersect(vertices, s & ~(FacetSet{1} << i))) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](FacetSet a, FacetSet b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return facet_indices(a) < facet_indices(b);
  });
  return out;
}

std::vector<FacetSet> minimal_nonfaces(const DelzantPolytope& p) {
  require_delzant(p);
  return minimal_nonfaces(enumerate_vertices(p), p.facet_count());
}

std::vector<Edge> edges(const std::vector<Vertex>& vertices, std::size_t dim) {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (std::size_t w = v + 1; w < vertices.size(); ++w) {
      if (static_cast<std::size_t>(std::popcount(vertices[v].incident & vertices[w].incident)) + 1 != dim)
        continue;
      RatVector diff(vertices[v].point.size());
      for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = vertices[w].point[j] - vertices[v].point[j];
      out.push_back(Edge{v, w, primitive_on_ray(diff)});
    }
  return out;
}

std::vector<Edge> edges(const DelzantPolytope& p) {
  require_delzant(p);
  return edges(enumerate_vertices(p), p.dim());
}

bool is_generic_direction(std::span<const Integer> xi, const std::vector<Vertex>& vertices,
                          const std::vector<Edge>& edges) {
  for (const auto& e : edges)
    if (dot(xi, e.direction) == 0) return false;
  std::vector<Rational> values;
  for (const auto& v : vertices) values.push_back(dot(xi, v.point));
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

IntVector generic_direction(const DelzantPolytope& p) {
  require_delzant(p);
  auto vertices = enumerate_vertices(p);
  auto es = edges(vertices, p.dim());
  for (Integer m = 1;; ++m) {
    IntVector xi(p.dim());
    Integer power = 1;
    for (auto& x : xi) {
      x = power;
      power *= m;
    }
    if (is_generic_direction(xi, vertices, es)) return xi;
  }
}

}  // namespace ktoric
