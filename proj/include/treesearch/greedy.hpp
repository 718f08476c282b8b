#pragma once

#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

/// Node x of the piece (x ≠ top) minimizing |w(S ∩ T_x) − w(S \ T_x)|,
/// smallest id on ties. kNoNode for a single-node piece.
NodeId greedy_first_query(const InputTree& tree, const NodePiece& piece);

/// Splits every piece as evenly as possible by weight. Within a factor 2 of
/// the optimum.
DecisionTree greedy(const InputTree& tree);

}  // namespace treesearch
