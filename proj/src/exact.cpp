#include "treesearch/exact.hpp"

#include <algorithm>
#include <bit>

#include "treesearch/errors.hpp"

namespace treesearch {

ExactSolver::ExactSolver(const InputTree& tree, int max_nodes) : tree_(tree), n_(tree.size()) {
  if (n_ > std::min(max_nodes, 63))
    throw ResourceError("exact solver is limited to " + std::to_string(std::min(max_nodes, 63)) +
                        " nodes, instance has " + std::to_string(n_));
  full_ = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
  sub_.assign(n_, 0);
  const auto& pre = tree.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    sub_[v] |= Mask{1} << v;
    if (tree.parent(v) != kNoNode) sub_[tree.parent(v)] |= sub_[v];
  }
}

ExactSolver::Mask ExactSolver::mask_of(const NodePiece& piece) const {
  Mask m = 0;
  for (NodeId v : piece.nodes()) m |= Mask{1} << v;
  return m;
}

NodeId ExactSolver::top(Mask s) const {
  for (Mask rest = s; rest; rest &= rest - 1) {
    const NodeId v = std::countr_zero(rest);
    const NodeId p = tree_.parent(v);
    if (p == kNoNode || !(s >> p & 1)) return v;
  }
  return kNoNode;
}

Weight ExactSolver::weight(Mask s) const {
  Weight w = 0;
  for (Mask rest = s; rest; rest &= rest - 1) w += tree_.weight(std::countr_zero(rest));
  return w;
}

ExactSolver::Entry& ExactSolver::solve(Mask s) {
  if (auto it = memo_.find(s); it != memo_.end()) return it->second;
  Entry e;
  if (std::popcount(s) == 1) {
    e.cost = 0;
    return memo_.emplace(s, std::move(e)).first->second;
  }
  const NodeId t = top(s);
  bool have = false;
  for (Mask rest = s; rest; rest &= rest - 1) {
    const NodeId x = std::countr_zero(rest);
    if (x == t) continue;
    const Mask in = s & sub_[x];
    Weight c = solve(in).cost;
    c += solve(s & ~in).cost;
    if (!have || c < e.cost) {
      e.cost = std::move(c);
      e.best = x;
      have = true;
    }
  }
  e.cost += weight(s);
  return memo_.emplace(s, std::move(e)).first->second;
}

const Weight& ExactSolver::opt(Mask s) { return solve(s).cost; }

NodeId ExactSolver::best_query(Mask s) { return solve(s).best; }

DecisionTree ExactSolver::tree(Mask s) {
  const NodeId x = best_query(s);
  if (x == kNoNode) return DecisionTree::leaf(std::countr_zero(s));
  const Mask in = s & sub_[x];
  return DecisionTree::query(x, tree(s & ~in), tree(in));
}

std::vector<NodeId> ExactSolver::optimal_first_queries(Mask s) {
  std::vector<NodeId> out;
  if (std::popcount(s) == 1) return out;
  const Weight target = opt(s) - weight(s);
  const NodeId t = top(s);
  for (Mask rest = s; rest; rest &= rest - 1) {
    const NodeId x = std::countr_zero(rest);
    if (x == t) continue;
    const Mask in = s & sub_[x];
    if (opt(in) + opt(s & ~in) == target) out.push_back(x);
  }
  return out;
}

int ExactSolver::min_optimal_height(Mask s) {
  Entry& e = solve(s);
  if (e.min_height >= 0) return e.min_height;
  int best = 0;
  if (std::popcount(s) > 1) {
    best = -1;
    for (NodeId x : optimal_first_queries(s)) {
      const Mask in = s & sub_[x];
      const int h = 1 + std::max(min_optimal_height(in), min_optimal_height(s & ~in));
      if (best < 0 || h < best) best = h;
    }
  }
  e.min_height = best;
  return best;
}

ExactSolver::HeightEntry& ExactSolver::solve_height(Mask s, int h) {
  auto& row = height_memo_[s];
  if (auto it = row.find(h); it != row.end()) return it->second;
  HeightEntry e;
  const int size = std::popcount(s);
  if (size == 1) {
    e.feasible = h >= 0;
    e.cost = 0;
  } else if (h >= 1 && (h >= 63 || (Mask{1} << h) >= static_cast<Mask>(size))) {
    const NodeId t = top(s);
    for (Mask rest = s; rest; rest &= rest - 1) {
      const NodeId x = std::countr_zero(rest);
      if (x == t) continue;
      const Mask in = s & sub_[x];
      const HeightEntry& a = solve_height(in, h - 1);
      if (!a.feasible) continue;
      Weight c = a.cost;
      const HeightEntry& b = solve_height(s & ~in, h - 1);
      if (!b.feasible) continue;
      c += b.cost;
      if (!e.feasible || c < e.cost) {
        e.cost = std::move(c);
        e.best = x;
        e.feasible = true;
      }
    }
    if (e.feasible) e.cost += weight(s);
  }
  return row.emplace(h, std::move(e)).first->second;
}

std::optional<Weight> ExactSolver::opt_height(Mask s, int h) {
  const HeightEntry& e = solve_height(s, h);
  if (!e.feasible) return std::nullopt;
  return e.cost;
}

DecisionTree ExactSolver::tree_height(Mask s, int h) {
  const HeightEntry e = solve_height(s, h);
  if (!e.feasible) throw ValidationError("no search tree of height " + std::to_string(h));
  if (e.best == kNoNode) return DecisionTree::leaf(std::countr_zero(s));
  const Mask in = s & sub_[e.best];
  return DecisionTree::query(e.best, tree_height(s & ~in, h - 1), tree_height(in, h - 1));
}

SolveResult opt_cost(const InputTree& tree, int max_nodes) {
  ExactSolver solver(tree, max_nodes);
  return {solver.opt(solver.full()), solver.tree(solver.full())};
}

std::optional<SolveResult> opt_cost_restricted_height(const InputTree& tree, int h, int max_nodes) {
  ExactSolver solver(tree, max_nodes);
  auto c = solver.opt_height(solver.full(), h);
  if (!c) return std::nullopt;
  return SolveResult{*c, solver.tree_height(solver.full(), h)};
}

}  // namespace treesearch
