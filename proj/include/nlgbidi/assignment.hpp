#pragma once

#include <cstdint>
#include <vector>

namespace nlgbidi {

// Minimum-cost perfect assignment on a square cost matrix (Hungarian method
// with potentials, O(n^3)). Returns col_of_row.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<std::int64_t>>& cost);

}  // namespace nlgbidi
