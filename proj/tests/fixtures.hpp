#pragma once

#include "ktoric/io.hpp"

#include <string>
#include <vector>

namespace ktoric::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(KTORIC_FIXTURE_DIR) + "/" + name + ".json";
}

inline DelzantPolytope fixture(const std::string& name) { return io::load_polytope(fixture_path(name)); }

inline const std::vector<std::string>& valid_fixtures() {
  static const std::vector<std::string> names{"cp1", "cp2", "cp3", "cp4", "square", "hirzebruch_a1", "hirzebruch_a2"};
  return names;
}

inline DelzantPolytope make_polytope(std::size_t dim, const std::vector<std::pair<std::vector<long>, long>>& facets) {
  std::vector<Facet> out;
  for (const auto& [normal, offset] : facets) {
    IntVector n;
    for (long x : normal) n.emplace_back(x);
    out.push_back({n, Rational(offset)});
  }
  return DelzantPolytope(dim, std::move(out));
}

inline RatVector rats(std::initializer_list<long> values) {
  RatVector out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace ktoric::testing
