#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

/// Largest height the DP can address (PLPs are packed into 64-bit keys).
inline constexpr int kMaxDpHeight = 57;
inline constexpr int kDefaultDpCap = 24;

/// Partial left path: `length` cells, cell k (1-based) blocked iff bit k-1 of
/// `blocked` is set; every other cell is unassigned.
struct Plp {
  int length = 0;
  std::uint64_t blocked = 0;

  static Plp unassigned(int length) { return {length, 0}; }
  /// From a string over {'U','B'}, cell 1 first.
  static Plp parse(const std::string& cells);
  bool is_blocked(int k) const { return (blocked >> (k - 1)) & 1; }
  std::uint64_t unassigned_mask() const;
  std::string str() const;
  friend bool operator==(const Plp&, const Plp&) = default;
};

/// T_v (f == 0), or the first f subtrees hanging below u (1 ≤ f ≤ δ(u)).
struct SubforestId {
  NodeId u = kNoNode;
  int f = 0;

  static SubforestId tree(NodeId v) { return {v, 0}; }
  static SubforestId forest(NodeId u, int f) { return {u, f}; }
  bool is_tree() const { return f == 0; }
  friend bool operator==(const SubforestId&, const SubforestId&) = default;
};

/// Nodes of the subforest in preorder.
std::vector<NodeId> forest_nodes(const InputTree& tree, SubforestId forest);

/// Extended search tree: a search tree whose nodes may also be BLOCKED or
/// UNASSIGNED placeholders. Every forest node appears once as a leaf and once
/// as an internal node.
struct Est {
  enum class Kind : std::uint8_t { Leaf, Query, Blocked, Unassigned };
  struct Node {
    Kind kind;
    NodeId label = kNoNode;  // for Leaf / Query
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  int root = -1;

  int add(Kind kind, NodeId label = kNoNode, int left = -1, int right = -1) {
    nodes.push_back({kind, label, left, right});
    return static_cast<int>(nodes.size()) - 1;
  }
  /// Node indices along the left spine, root first.
  std::vector<int> left_path() const;
  int height() const;
  /// Σ depth·w over leaves.
  Weight cost(const InputTree& tree) const;
  Est compact() const;
};

/// Structural check of EST properties (a)–(c) for the given subforest.
Diagnostics check_est(const Est& est, const InputTree& tree, SubforestId forest);
/// Same left-path length, and blocked cells of P are blocked in the EST.
bool compatible(const Est& est, const Plp& plp);

/// Left-deletes the node querying the root and splices out every blocked or
/// unassigned node. Throws ValidationError on a malformed EST.
DecisionTree est_to_search_tree(const Est& est, const InputTree& tree);
/// Puts a query of the root on top of D and pads its left path with blocked
/// cells up to `length` (at least 1).
Est search_tree_to_est(const DecisionTree& d, const InputTree& tree, int length = 1);

struct PbChoice {
  enum class Kind : std::uint8_t { Infeasible, Base, Split, Root } kind = Kind::Infeasible;
  std::uint64_t cells_for_last = 0;  // Split: unassigned cells handed to the last tree
  int i = 0, t = 0;                  // Root: cell of v, level of v's leaf
};

/// Memoized solver for P^B(F, P): the cheapest EST for F that is compatible
/// with P and has height at most B.
class PbSolver {
 public:
  PbSolver(const InputTree& tree, int height);
  ~PbSolver();
  PbSolver(const PbSolver&) = delete;
  PbSolver& operator=(const PbSolver&) = delete;

  int height() const { return height_; }
  /// nullopt when infeasible.
  std::optional<Weight> cost(SubforestId forest, const Plp& plp);
  std::optional<Est> solve(SubforestId forest, const Plp& plp);
  PbChoice choice(SubforestId forest, const Plp& plp);
  std::size_t states() const;
  /// True when costs are tracked in 64-bit integers.
  bool narrow() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  const InputTree* tree_;
  int height_;
};

/// One-shot P^B(F, P).
std::optional<std::pair<Weight, Est>> solve_pb(const InputTree& tree, SubforestId forest, const Plp& plp,
                                               int height);

/// (6(Δ+1)+1)·⌈log2(w(T)+1)⌉ + (Δ+1)·⌈log2(n+1)⌉ + 2. Some optimal search
/// tree has height below this.
int height_bound(const InputTree& tree);

/// Height the DP needs: min(height_bound, n), since every search tree has
/// height ≤ n−1 and its EST one more.
int dp_height(const InputTree& tree);

struct BoundedOptions {
  std::optional<int> height;  // overrides dp_height
  int cap = kDefaultDpCap;
};

struct BoundedResult {
  Weight cost;
  DecisionTree tree;
  Weight est_cost;
  int height = 0;  // B actually used
};

/// Optimal EST with the all-unassigned PLP of length B, converted to a search
/// tree. Exact once B ≥ dp_height(T). Throws ResourceError when B > cap.
BoundedResult optimal_bounded(const InputTree& tree, const BoundedOptions& options = {});

}  // namespace treesearch
