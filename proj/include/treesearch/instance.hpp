#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "treesearch/weight.hpp"

namespace treesearch {

/// A rooted, node-weighted tree (T, w). Nodes are dense ids 0..n-1.
///
/// Edge queries are named by their child endpoint: querying v asks whether
/// the marked node lies in T_v. Children keep the order they were given in,
/// which fixes c_i(u) for the bounded-height dynamic program.
class InputTree {
 public:
  /// Children of each node are taken in increasing id order.
  InputTree(std::vector<NodeId> parent, std::vector<Weight> weight);

  /// Explicit children order; `children[u]` must list exactly the nodes whose
  /// parent is u.
  InputTree(std::vector<NodeId> parent, std::vector<std::vector<NodeId>> children,
            std::vector<Weight> weight);

  int size() const { return static_cast<int>(parent_.size()); }
  NodeId root() const { return root_; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  const std::vector<NodeId>& children(NodeId v) const { return children_[v]; }
  int child_count(NodeId v) const { return static_cast<int>(children_[v].size()); }
  const Weight& weight(NodeId v) const { return weight_[v]; }
  const std::vector<Weight>& weights() const { return weight_; }
  const std::vector<NodeId>& parents() const { return parent_; }
  const Weight& total_weight() const { return total_; }

  /// Nodes in preorder (children in their stored order).
  const std::vector<NodeId>& preorder() const { return preorder_; }

  /// x ∈ T_v.
  bool in_subtree(NodeId x, NodeId v) const {
    return tin_[v] <= tin_[x] && tin_[x] < tout_[v];
  }
  int subtree_size(NodeId v) const { return tout_[v] - tin_[v]; }
  int depth(NodeId v) const { return depth_[v]; }

  /// Δ(T): maximum number of children of any node.
  int max_children() const;
  /// Maximum degree of the underlying unrooted tree.
  int max_degree() const;
  /// Diameter (in edges) of the underlying unrooted tree.
  int diameter() const;
  /// Neighbors (parent and children) in the unrooted tree.
  std::vector<NodeId> neighbors(NodeId v) const;

  bool valid_id(NodeId v) const { return v >= 0 && v < size(); }

  /// Same shape, new weights.
  InputTree with_weights(std::vector<Weight> weight) const;

  friend bool operator==(const InputTree& a, const InputTree& b) {
    return a.parent_ == b.parent_ && a.children_ == b.children_ && a.weight_ == b.weight_;
  }

 private:
  void build();

  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<Weight> weight_;
  NodeId root_ = kNoNode;
  Weight total_;
  std::vector<NodeId> preorder_;
  std::vector<int> tin_, tout_, depth_;
};

/// A connected set of nodes with a unique topmost node: the remaining search
/// space at some point of a strategy.
class NodePiece {
 public:
  /// Throws ValidationError if `nodes` is empty, has out-of-range ids or
  /// duplicates, or is not connected in `tree`.
  NodePiece(const InputTree& tree, std::vector<NodeId> nodes);

  static NodePiece whole(const InputTree& tree);
  /// T_v.
  static NodePiece subtree(const InputTree& tree, NodeId v);

  NodeId top() const { return top_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  bool contains(NodeId v) const {
    return v >= 0 && v < static_cast<int>(member_.size()) && member_[v];
  }
  Weight weight(const InputTree& tree) const;

  /// True if querying v splits the piece into two nonempty parts.
  bool splits(NodeId v) const { return contains(v) && v != top_; }

 private:
  std::vector<NodeId> nodes_;  // sorted
  std::vector<char> member_;
  NodeId top_ = kNoNode;
};

// Instance text format:
//   n root_id
//   id parent_id weight      (n lines; parent_id = -1 for the root)
// Children order follows line order.
InputTree parse_instance(std::istream& in);
InputTree parse_instance_string(const std::string& text);
InputTree read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const InputTree& tree);
std::string format_instance(const InputTree& tree);

}  // namespace treesearch
