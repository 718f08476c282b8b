#pragma once

#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch::testing {

// a(0) -> b(1) -> c(2), unit weights.
inline InputTree path3() { return InputTree({kNoNode, 0, 1}, {1, 1, 1}); }

// query b; NO -> leaf a; YES -> (query c; NO -> leaf b; YES -> leaf c). Cost 5.
inline DecisionTree path3_tree() {
  return DecisionTree::query(1, DecisionTree::leaf(0),
                             DecisionTree::query(2, DecisionTree::leaf(1), DecisionTree::leaf(2)));
}

// r(0) with leaves l1(1):3, l2(2):2, l3(3):1.
inline InputTree star3() { return InputTree({kNoNode, 0, 0, 0}, {0, 3, 2, 1}); }

// Sequential l1, l2, l3. Cost 10.
inline DecisionTree star3_tree() {
  using D = DecisionTree;
  return D::query(1, D::query(2, D::query(3, D::leaf(0), D::leaf(3)), D::leaf(2)), D::leaf(1));
}

}  // namespace treesearch::testing
