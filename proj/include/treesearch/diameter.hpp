#pragma once

#include <cstdint>

#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

struct DiameterResult {
  Weight cost;
  DecisionTree tree;
  std::uint64_t steps = 0;  // DP cells evaluated plus preprocessing
};

/// Diameter ≤ 2: ask about the leaves one after another in decreasing
/// weight (ties by id). Works for any choice of root. Throws ValidationError
/// on larger diameter.
DiameterResult solve_star(const InputTree& tree);

/// Diameter ≤ 3: two adjacent centers a < b, every other node a leaf on one
/// of them. cost(i, j) over the i lightest leaves of a and the j lightest of
/// b chooses among the middle edge and the heaviest remaining leaf on either
/// side. Throws ValidationError on larger diameter.
DiameterResult solve_diam3(const InputTree& tree);

}  // namespace treesearch
