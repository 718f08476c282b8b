#include "treesearch/greedy.hpp"

#include <vector>

namespace treesearch {

namespace {

// `nodes` lists a piece in preorder of T, so its first entry is the top.
// Returns the balancing query, or kNoNode for singletons. `scratch` holds
// per-node subtree weights within the piece and must be sized n.
NodeId pick(const InputTree& tree, const std::vector<NodeId>& nodes, std::vector<Weight>& scratch,
            std::vector<int>& stamp, int round) {
  if (nodes.size() <= 1) return kNoNode;
  for (NodeId v : nodes) {
    stamp[v] = round;
    scratch[v] = tree.weight(v);
  }
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    const NodeId p = tree.parent(*it);
    if (p != kNoNode && stamp[p] == round) scratch[p] += scratch[*it];
  }
  const NodeId top = nodes.front();
  const Weight& total = scratch[top];
  NodeId best = kNoNode;
  Weight best_gap;
  for (NodeId x : nodes) {
    if (x == top) continue;
    Weight gap = 2 * scratch[x] - total;
    if (gap < 0) gap = -gap;
    if (best == kNoNode || gap < best_gap || (gap == best_gap && x < best)) {
      best = x;
      best_gap = std::move(gap);
    }
  }
  return best;
}

}  // namespace

NodeId greedy_first_query(const InputTree& tree, const NodePiece& piece) {
  std::vector<NodeId> nodes;
  nodes.reserve(piece.size());
  for (NodeId v : tree.preorder())
    if (piece.contains(v)) nodes.push_back(v);
  std::vector<Weight> scratch(tree.size());
  std::vector<int> stamp(tree.size(), -1);
  return pick(tree, nodes, scratch, stamp, 0);
}

DecisionTree greedy(const InputTree& tree) {
  const int n = tree.size();
  std::vector<Weight> scratch(n);
  std::vector<int> stamp(n, -1);
  int round = 0;

  DecisionTree out;
  // Each task fills one child slot (or the root) with a strategy for its piece.
  struct Task {
    std::vector<NodeId> nodes;
    int parent;  // arena index, -1 for root
    bool yes;
  };
  std::vector<Task> tasks;
  tasks.push_back({tree.preorder(), -1, false});
  while (!tasks.empty()) {
    Task task = std::move(tasks.back());
    tasks.pop_back();
    const NodeId x = pick(tree, task.nodes, scratch, stamp, round++);
    int index;
    if (x == kNoNode) {
      index = out.add_leaf(task.nodes.front());
    } else {
      index = out.add_query(x, -1, -1);
      std::vector<NodeId> in, rest;
      for (NodeId v : task.nodes) (tree.in_subtree(v, x) ? in : rest).push_back(v);
      tasks.push_back({std::move(in), index, true});
      tasks.push_back({std::move(rest), index, false});
    }
    if (task.parent < 0) out.set_root(index);
    else if (task.yes) out.node(task.parent).yes = index;
    else out.node(task.parent).no = index;
  }
  return out.compact();
}

}  // namespace treesearch
