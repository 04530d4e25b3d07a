#pragma once

#include "ktoric/numeric.hpp"

#include <optional>
#include <vector>

namespace ktoric::detail {

using RatMatrix = std::vector<RatVector>;

/// Reduced row echelon form over Q in place (an augmented column may follow
/// the first `cols` columns); returns the pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& a, std::size_t cols);

/// Unique solution of the square system a·x = b, or nullopt when singular.
std::optional<RatVector> solve(RatMatrix a, const RatVector& b);

}  // namespace ktoric::detail
