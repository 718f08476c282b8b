#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

inline constexpr int kDefaultExactLimit = 20;

struct SolveResult {
  Weight cost;
  DecisionTree tree;
};

/// Memoized search over candidate sets. A state is the set S of nodes still
/// possible, kept as a bitmask; states are generated lazily from the full set.
///
///   OPT({v}) = 0
///   OPT(S)   = w(S) + min_{x ∈ S, x ≠ top(S)} OPT(S ∩ T_x) + OPT(S \ T_x)
///
/// Ties go to the smallest x. Throws ResourceError when n exceeds the limit.
class ExactSolver {
 public:
  using Mask = std::uint64_t;

  explicit ExactSolver(const InputTree& tree, int max_nodes = kDefaultExactLimit);

  Mask full() const { return full_; }
  Mask mask_of(const NodePiece& piece) const;
  Mask subtree_mask(NodeId v) const { return sub_[v]; }

  const Weight& opt(Mask s);
  NodeId best_query(Mask s);  // kNoNode for singletons
  DecisionTree tree(Mask s);
  /// Every x attaining the minimum for S.
  std::vector<NodeId> optimal_first_queries(Mask s);
  /// Smallest height over all optimal trees for S.
  int min_optimal_height(Mask s);

  /// Optimal cost over trees of height ≤ h, or nullopt if none exists.
  std::optional<Weight> opt_height(Mask s, int h);
  DecisionTree tree_height(Mask s, int h);

  std::size_t states() const { return memo_.size(); }

 private:
  struct Entry {
    Weight cost;
    NodeId best = kNoNode;
    int min_height = -1;
  };
  struct HeightEntry {
    bool feasible = false;
    Weight cost;
    NodeId best = kNoNode;
  };

  NodeId top(Mask s) const;
  Weight weight(Mask s) const;
  Entry& solve(Mask s);
  HeightEntry& solve_height(Mask s, int h);

  const InputTree& tree_;
  int n_;
  Mask full_ = 0;
  std::vector<Mask> sub_;
  std::unordered_map<Mask, Entry> memo_;
  std::unordered_map<Mask, std::unordered_map<int, HeightEntry>> height_memo_;
};

/// Optimal search tree by exhaustive memoized search.
SolveResult opt_cost(const InputTree& tree, int max_nodes = kDefaultExactLimit);

/// Optimal search tree among those of height ≤ h; nullopt if infeasible.
std::optional<SolveResult> opt_cost_restricted_height(const InputTree& tree, int h,
                                                      int max_nodes = kDefaultExactLimit);

}  // namespace treesearch
