#pragma once

#include "treesearch/bounded_dp.hpp"
#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

/// w'(u) = ⌈w(u) / K⌉ with K = ε·W/n² and W the largest weight, in exact
/// arithmetic. Returns T unchanged when every weight is zero.
InputTree scale_weights(const InputTree& tree, const Rational& eps);

/// K = ε·W/n² (zero when W = 0).
Rational scaling_factor(const InputTree& tree, const Rational& eps);

struct FptasResult {
  DecisionTree tree;
  Weight cost;         // under the original weights
  Weight scaled_cost;  // under the scaled weights
  InputTree scaled;
  int height = 0;
};

/// Optimal tree for the scaled instance, costed under the original weights.
/// Within a factor 1+ε of the optimum.
FptasResult fptas(const InputTree& tree, const Rational& eps, const BoundedOptions& options = {});

}  // namespace treesearch
