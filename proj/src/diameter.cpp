#include "treesearch/diameter.hpp"

#include <algorithm>
#include <vector>

#include "treesearch/errors.hpp"

namespace treesearch {

namespace {

// Query on the unrooted edge {x, y}; the subtrees are arena indices for the
// x side and the y side.
int edge_query(const InputTree& t, DecisionTree& out, NodeId x, NodeId y, int x_side, int y_side) {
  if (t.parent(x) == y) return out.add_query(x, y_side, x_side);
  return out.add_query(y, x_side, y_side);
}

// Leaf neighbors of c other than `skip`, heaviest first, ties by id.
std::vector<NodeId> leaves_desc(const InputTree& t, NodeId c, NodeId skip) {
  std::vector<NodeId> out;
  for (NodeId x : t.neighbors(c))
    if (x != skip && t.neighbors(x).size() == 1) out.push_back(x);
  std::sort(out.begin(), out.end(), [&](NodeId x, NodeId y) {
    if (t.weight(x) != t.weight(y)) return t.weight(x) > t.weight(y);
    return x < y;
  });
  return out;
}

// Sequential strategy for center c and the given leaves (heaviest first).
int sequential(const InputTree& t, DecisionTree& out, NodeId c, const NodeId* first, const NodeId* last) {
  int cur = out.add_leaf(c);
  for (const NodeId* it = last; it != first;) {
    --it;
    cur = edge_query(t, out, *it, c, out.add_leaf(*it), cur);
  }
  return cur;
}

}  // namespace

DiameterResult solve_star(const InputTree& tree) {
  if (tree.diameter() > 2) throw ValidationError("solve_star needs a tree of diameter at most 2");
  DiameterResult res;
  const int n = tree.size();
  if (n == 1) {
    res.cost = 0;
    res.tree = DecisionTree::leaf(tree.root());
    return res;
  }
  NodeId center = kNoNode;
  for (NodeId v = 0; v < n && center == kNoNode; ++v)
    if (static_cast<int>(tree.neighbors(v).size()) == n - 1) center = v;
  const auto leaves = leaves_desc(tree, center, kNoNode);
  res.tree.set_root(sequential(tree, res.tree, center, leaves.data(), leaves.data() + leaves.size()));
  res.cost = 0;
  for (std::size_t k = 0; k < leaves.size(); ++k) res.cost += tree.weight(leaves[k]) * static_cast<long long>(k + 1);
  res.cost += tree.weight(center) * static_cast<long long>(leaves.size());
  res.steps = n;
  return res;
}

DiameterResult solve_diam3(const InputTree& tree) {
  if (tree.diameter() > 3) throw ValidationError("solve_diam3 needs a tree of diameter at most 3");
  const int n = tree.size();
  DiameterResult res;
  if (n == 1) {
    res.cost = 0;
    res.tree = DecisionTree::leaf(tree.root());
    return res;
  }
  // Centers: the non-leaf nodes; for a star, its center and its smallest neighbor.
  std::vector<NodeId> inner;
  for (NodeId v = 0; v < n; ++v)
    if (tree.neighbors(v).size() >= 2) inner.push_back(v);
  NodeId a, b;
  if (inner.size() == 2) {
    a = inner[0];
    b = inner[1];
  } else {
    a = inner.empty() ? std::min(tree.root(), tree.neighbors(tree.root())[0]) : inner[0];
    const auto nb = tree.neighbors(a);
    b = *std::min_element(nb.begin(), nb.end());
    if (b < a) std::swap(a, b);
  }
  const auto la = leaves_desc(tree, a, b), lb = leaves_desc(tree, b, a);
  const int p = static_cast<int>(la.size()), q = static_cast<int>(lb.size());

  // Over the i lightest leaves: their total weight and the optimal star cost.
  auto prefix = [&](const std::vector<NodeId>& leaves, NodeId c, std::vector<Weight>& sum, std::vector<Weight>& star) {
    const int m = static_cast<int>(leaves.size());
    sum.assign(m + 1, 0);
    star.assign(m + 1, 0);
    for (int i = 1; i <= m; ++i) {
      const Weight& w = tree.weight(leaves[m - i]);
      star[i] = w + star[i - 1] + sum[i - 1] + tree.weight(c);
      sum[i] = sum[i - 1] + w;
    }
  };
  std::vector<Weight> sum_a, star_a, sum_b, star_b;
  prefix(la, a, sum_a, star_a);
  prefix(lb, b, sum_b, star_b);
  res.steps = n;

  enum : char { kSplit, kLeafA, kLeafB };
  std::vector<Weight> cost((p + 1) * (q + 1));
  std::vector<char> choice((p + 1) * (q + 1));
  auto at = [&](int i, int j) { return i * (q + 1) + j; };
  const Weight centers = tree.weight(a) + tree.weight(b);
  for (int i = 0; i <= p; ++i) {
    for (int j = 0; j <= q; ++j) {
      ++res.steps;
      Weight best = star_a[i] + star_b[j];
      char pick = kSplit;
      if (i > 0 && cost[at(i - 1, j)] < best) {
        best = cost[at(i - 1, j)];
        pick = kLeafA;
      }
      if (j > 0 && cost[at(i, j - 1)] < best) {
        best = cost[at(i, j - 1)];
        pick = kLeafB;
      }
      cost[at(i, j)] = best + centers + sum_a[i] + sum_b[j];
      choice[at(i, j)] = pick;
    }
  }
  res.cost = cost[at(p, q)];

  // Peel leaves until the middle edge is queried, then assemble bottom-up.
  std::vector<NodeId> peeled;  // (leaf) in query order
  std::vector<NodeId> centre_of;
  int i = p, j = q;
  while (choice[at(i, j)] != kSplit) {
    if (choice[at(i, j)] == kLeafA) {
      peeled.push_back(la[p - i]);
      centre_of.push_back(a);
      --i;
    } else {
      peeled.push_back(lb[q - j]);
      centre_of.push_back(b);
      --j;
    }
  }
  DecisionTree& out = res.tree;
  const int side_a = sequential(tree, out, a, la.data() + (p - i), la.data() + p);
  const int side_b = sequential(tree, out, b, lb.data() + (q - j), lb.data() + q);
  int cur = edge_query(tree, out, a, b, side_a, side_b);
  for (std::size_t k = peeled.size(); k-- > 0;)
    cur = edge_query(tree, out, peeled[k], centre_of[k], out.add_leaf(peeled[k]), cur);
  out.set_root(cur);
  res.tree = out.compact();
  return res;
}

}  // namespace treesearch
