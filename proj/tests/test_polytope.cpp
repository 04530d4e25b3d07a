#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "ktoric/polytope.hpp"

#include <bit>

using namespace ktoric;
using ktoric::testing::fixture;
using ktoric::testing::make_polytope;
using ktoric::testing::rats;

namespace {

std::vector<RatVector> points(const std::vector<Vertex>& vs) {
  std::vector<RatVector> out;
  for (const auto& v : vs) out.push_back(v.point);
  return out;
}

}  // namespace

TEST_CASE("vertices of the interval") {
  auto vs = enumerate_vertices(fixture("cp1"));
  CHECK(points(vs) == std::vector<RatVector>{rats({0}), rats({1})});
  CHECK(vs[0].incident == facet_set({0}));
  CHECK(vs[1].incident == facet_set({1}));
}

TEST_CASE("vertices of the unit square") {
  auto vs = enumerate_vertices(fixture("square"));
  CHECK(points(vs) == std::vector<RatVector>{rats({0, 0}), rats({0, 1}), rats({1, 0}), rats({1, 1})});
  for (const auto& v : vs) CHECK(std::popcount(v.incident) == 2);
}

TEST_CASE("vertices of the standard simplex") {
  auto vs = enumerate_vertices(fixture("cp2"));
  CHECK(points(vs) == std::vector<RatVector>{rats({0, 0}), rats({0, 1}), rats({1, 0})});
}

TEST_CASE("vertices satisfy their defining equalities exactly") {
  for (const auto& name : ktoric::testing::valid_fixtures()) {
    auto p = fixture(name);
    for (const auto& v : enumerate_vertices(p))
      for (std::size_t i = 0; i < p.facet_count(); ++i) {
        Rational value = dot(p.facet(i).normal, v.point);
        if (v.incident & (FacetSet{1} << i)) CHECK(value == p.facet(i).offset);
        else CHECK(value < p.facet(i).offset);
      }
  }
}

TEST_CASE("rational offsets are handled exactly") {
  std::vector<Facet> facets{{IntVector{-1}, Rational(0)}, {IntVector{1}, Rational(1, 3)}};
  DelzantPolytope p(1, facets);
  auto vs = enumerate_vertices(p);
  REQUIRE(vs.size() == 2);
  CHECK(vs[1].point[0] == Rational(1, 3));
}

TEST_CASE("unbounded and empty inputs are rejected") {
  auto quadrant = make_polytope(2, {{{-1, 0}, 0}, {{0, -1}, 0}});
  CHECK(recession_direction(quadrant).has_value());
  try {
    enumerate_vertices(quadrant);
    FAIL("expected UnboundedPolytope");
  } catch (const Error& e) {
    CHECK(e.kind() == "UnboundedPolytope");
  }
  auto strip = make_polytope(2, {{{-1, 0}, 0}, {{1, 0}, 1}});
  CHECK(recession_direction(strip).has_value());

  auto empty = make_polytope(1, {{{1}, 0}, {{-1}, -1}});
  try {
    enumerate_vertices(empty);
    FAIL("expected EmptyPolytope");
  } catch (const Error& e) {
    CHECK(e.kind() == "EmptyPolytope");
  }
  auto report = validate_delzant(empty);
  CHECK_FALSE(report.valid());
  CHECK_FALSE(report.find("nonempty")->passed);
}

TEST_CASE("validation of the valid fixtures") {
  for (const auto& name : ktoric::testing::valid_fixtures()) {
    CAPTURE(name);
    CHECK(validate_delzant(fixture(name)).valid());
  }
}

TEST_CASE("non-smooth triangle fails at the determinant-2 vertex") {
  auto p = fixture("nonsmooth");
  auto report = validate_delzant(p);
  CHECK_FALSE(report.valid());
  const auto* smooth = report.find("smooth");
  REQUIRE(smooth != nullptr);
  CHECK_FALSE(smooth->passed);
  // Vertices: (0,0), (0,1), (2,0); normals (-1,0),(0,-1),(1,2).
  // det((-1,0),(1,2)) = -2 at (0,1); det((0,-1),(1,2)) = 1 at (2,0).
  REQUIRE(smooth->vertices.size() == 1);
  auto vs = enumerate_vertices(p);
  CHECK(vs[smooth->vertices[0]].point == rats({0, 1}));
  CHECK(report.find("simple")->passed);
  CHECK(report.find("primitive_normals")->passed);
  CHECK_THROWS_AS(require_delzant(p), Error);
}

TEST_CASE("non-primitive normals and redundant inequalities are reported") {
  auto scaled = make_polytope(1, {{{-2}, 0}, {{1}, 1}});
  auto report = validate_delzant(scaled);
  CHECK_FALSE(report.find("primitive_normals")->passed);
  CHECK(report.find("primitive_normals")->facets == std::vector<std::size_t>{0});

  auto redundant = make_polytope(1, {{{-1}, 0}, {{1}, 1}, {{1}, 2}});
  auto r2 = validate_delzant(redundant);
  CHECK_FALSE(r2.find("facets")->passed);
  CHECK(r2.find("facets")->facets == std::vector<std::size_t>{2});
}

TEST_CASE("non-simple vertex is reported") {
  // Square pyramid apex lies on four facets.
  auto pyramid = make_polytope(3, {{{0, 0, -1}, 0}, {{1, 0, 1}, 1}, {{-1, 0, 1}, 1}, {{0, 1, 1}, 1}, {{0, -1, 1}, 1}});
  auto report = validate_delzant(pyramid);
  CHECK_FALSE(report.find("simple")->passed);
  CHECK_FALSE(report.valid());
}

TEST_CASE("minimal non-faces") {
  CHECK(minimal_nonfaces(fixture("cp1")) == std::vector<FacetSet>{facet_set({0, 1})});
  CHECK(minimal_nonfaces(fixture("square")) == std::vector<FacetSet>{facet_set({0, 1}), facet_set({2, 3})});
  CHECK(minimal_nonfaces(fixture("cp2")) == std::vector<FacetSet>{facet_set({0, 1, 2})});
}

TEST_CASE("minimal non-faces are an antichain generating all non-faces") {
  for (const auto& name : ktoric::testing::valid_fixtures()) {
    auto p = fixture(name);
    auto vs = enumerate_vertices(p);
    auto mins = minimal_nonfaces(p);
    for (std::size_t a = 0; a < mins.size(); ++a)
      for (std::size_t b = 0; b < mins.size(); ++b)
        if (a != b) CHECK_FALSE(contains(mins[a], mins[b]));
    const FacetSet limit = FacetSet{1} << p.facet_count();
    for (FacetSet s = 0; s < limit; ++s) {
      if (facets_intersect(vs, s)) continue;
      bool covered = false;
      for (auto m : mins) covered = covered || contains(s, m);
      CHECK(covered);
    }
  }
}

TEST_CASE("edges of the examples") {
  auto interval = edges(fixture("cp1"));
  REQUIRE(interval.size() == 1);
  CHECK(interval[0].direction == IntVector{1});

  CHECK(edges(fixture("square")).size() == 4);

  auto simplex = edges(fixture("cp2"));
  REQUIRE(simplex.size() == 3);
  std::vector<IntVector> dirs;
  for (const auto& e : simplex) dirs.push_back(e.direction);
  // (0,0)->(0,1), (0,0)->(1,0), (0,1)->(1,0)
  CHECK(dirs == std::vector<IntVector>{{0, 1}, {1, 0}, {1, -1}});
}

TEST_CASE("edge directions pair with incident normals as a dual basis") {
  for (const auto& name : ktoric::testing::valid_fixtures()) {
    auto p = fixture(name);
    auto vs = enumerate_vertices(p);
    auto es = edges(vs, p.dim());
    for (std::size_t v = 0; v < vs.size(); ++v) {
      std::vector<IntVector> dirs;
      for (const auto& e : es) {
        if (e.from == v) dirs.push_back(e.direction);
        if (e.to == v) {
          IntVector d = e.direction;
          for (auto& x : d) x = -x;
          dirs.push_back(d);
        }
      }
      CHECK(dirs.size() == p.dim());
      for (const auto& d : dirs) {
        CHECK(is_primitive(d));
        int minus_ones = 0;
        for (auto i : facet_indices(vs[v].incident)) {
          Integer pairing = dot(p.facet(i).normal, d);
          CHECK((pairing == 0 || pairing == -1));
          if (pairing == -1) ++minus_ones;
        }
        CHECK(minus_ones == 1);
      }
    }
  }
}

TEST_CASE("generic directions") {
  CHECK(generic_direction(fixture("cp1")) == IntVector{1});
  CHECK(generic_direction(fixture("square")) == IntVector{1, 2});
  CHECK(generic_direction(fixture("cp2")) == IntVector{1, 2});
  for (const auto& name : ktoric::testing::valid_fixtures()) {
    auto p = fixture(name);
    auto vs = enumerate_vertices(p);
    CHECK(is_generic_direction(generic_direction(p), vs, edges(vs, p.dim())));
  }
  auto vs = enumerate_vertices(fixture("square"));
  CHECK_FALSE(is_generic_direction(IntVector{1, 1}, vs, edges(vs, 2)));
  CHECK_FALSE(is_generic_direction(IntVector{1, 0}, vs, edges(vs, 2)));
}

TEST_CASE("malformed polytopes are rejected at construction") {
  CHECK_THROWS_AS(make_polytope(2, {{{1}, 0}}), Error);
  CHECK_THROWS_AS(make_polytope(1, {{{0}, 0}}), Error);
  CHECK_THROWS_AS(DelzantPolytope(0, {}), Error);
}
