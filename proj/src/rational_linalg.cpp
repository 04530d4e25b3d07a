#include "rational_linalg.hpp"

#include <utility>

namespace ktoric::detail {

std::vector<std::size_t> row_reduce(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<RatVector> solve(RatMatrix a, const RatVector& b) {
  const std::size_t n = b.size();
  if (a.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  if (row_reduce(a, n).size() != n) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace ktoric::detail
