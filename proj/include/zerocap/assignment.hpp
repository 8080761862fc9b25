#pragma once

#include <vector>

namespace zerocap {

/// Square min-cost assignment (Hungarian method, O(n^3)).
/// cost[i][j] is the cost of giving row i column j. Returns col[i].
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace zerocap
