#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "treesearch/instance.hpp"

namespace treesearch {

/// A binary search strategy over edge queries.
///
/// Internal nodes query a tree node v ("is the marked node in T_v?"); the left
/// child is the NO branch and the right child the YES branch. Leaves name the
/// identified node. Nodes live in an arena; indices are only meaningful within
/// one tree. The tree may be empty, and deletions can leave a query with a
/// missing child, which validate() reports.
class DecisionTree {
 public:
  enum class Kind : std::uint8_t { Leaf, Query };
  struct Node {
    Kind kind;
    NodeId label;
    int no = -1;
    int yes = -1;
    bool is_leaf() const { return kind == Kind::Leaf; }
  };

  DecisionTree() = default;

  static DecisionTree leaf(NodeId v);
  static DecisionTree query(NodeId v, const DecisionTree& no, const DecisionTree& yes);

  int add_leaf(NodeId v);
  /// `no` / `yes` are indices already in this arena, or -1.
  int add_query(NodeId v, int no, int yes);
  /// Copies `other` into this arena and returns the index of its root (-1 if empty).
  int graft(const DecisionTree& other);
  void set_root(int index) { root_ = index; }

  bool empty() const { return root_ < 0; }
  int root() const { return root_; }
  const Node& node(int index) const { return nodes_[index]; }
  Node& node(int index) { return nodes_[index]; }
  int arena_size() const { return static_cast<int>(nodes_.size()); }

  /// Reachable node indices in preorder (NO subtree before YES subtree).
  std::vector<int> preorder() const;
  /// Copy holding only reachable nodes, renumbered in preorder.
  DecisionTree compact() const;
  /// Copy of the subtree rooted at `index`.
  DecisionTree subtree(int index) const;

  /// Number of reachable nodes.
  int node_count() const;
  /// Edges on the longest root-to-node path; -1 when empty.
  int height() const;

  /// Index of the leaf / query labelled v, or -1.
  int find_leaf(NodeId v) const;
  int find_query(NodeId v) const;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks that D is a search tree for T: every query has both children, leaf
/// labels are a bijection onto the node set, and every leaf lies on the side
/// of each ancestor query that its position asserts.
Diagnostics validate(const DecisionTree& d, const InputTree& tree);
/// Same, but leaves must be a bijection onto `piece`.
Diagnostics validate(const DecisionTree& d, const InputTree& tree, const NodePiece& piece);

/// Weighted external path length. Throws InvalidTreeError if D is not valid.
Weight cost(const DecisionTree& d, const InputTree& tree);
/// Same for a tree over a piece of T.
Weight cost(const DecisionTree& d, const InputTree& tree, const NodePiece& piece);
/// Σ depth(leaf)·w(label) with no validity check.
Weight cost_unchecked(const DecisionTree& d, const InputTree& tree);

/// depth of the leaf for each node id, -1 where absent.
std::vector<int> leaf_depths(const DecisionTree& d, int n);
/// depth of the query for each node id, -1 where absent (first occurrence).
std::vector<int> query_depths(const DecisionTree& d, int n);

/// Removes node `index` together with its NO (left) subtree and splices its
/// YES subtree into its place. Throws ValidationError for a bad index.
DecisionTree left_delete(const DecisionTree& d, int index);
/// Removes node `index` together with its YES subtree, keeping the NO subtree.
DecisionTree right_delete(const DecisionTree& d, int index);

/// Prunes D to the leaves labelled in S: leaves outside S disappear and a
/// query left with one child is replaced by that child. Requires D valid for T.
DecisionTree restrict(const DecisionTree& d, const InputTree& tree, const NodePiece& piece);

/// {"query": v, "no": ..., "yes": ...} / {"leaf": v}; null for the empty tree.
nlohmann::json to_json(const DecisionTree& d);
/// Throws ValidationError on a malformed document.
DecisionTree tree_from_json(const nlohmann::json& j);

std::string format_tree(const DecisionTree& d);
DecisionTree parse_tree_string(const std::string& text);
DecisionTree read_tree_file(const std::string& path);

}  // namespace treesearch
