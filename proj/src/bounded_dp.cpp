#include "treesearch/bounded_dp.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>
#include <variant>

#include "treesearch/errors.hpp"

namespace treesearch {

std::uint64_t Plp::unassigned_mask() const {
  const std::uint64_t all = length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
  return all & ~blocked;
}

Plp Plp::parse(const std::string& cells) {
  if (cells.size() > static_cast<std::size_t>(kMaxDpHeight)) throw ValidationError("PLP longer than the maximum height");
  Plp p{static_cast<int>(cells.size()), 0};
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k] == 'B') p.blocked |= std::uint64_t{1} << k;
    else if (cells[k] != 'U') throw ValidationError("PLP cells must be 'U' or 'B'");
  }
  return p;
}

std::string Plp::str() const {
  std::string s;
  for (int k = 1; k <= length; ++k) s += is_blocked(k) ? 'B' : 'U';
  return s;
}

std::vector<NodeId> forest_nodes(const InputTree& tree, SubforestId forest) {
  std::vector<NodeId> out;
  for (NodeId v : tree.preorder()) {
    if (forest.is_tree()) {
      if (tree.in_subtree(v, forest.u)) out.push_back(v);
    } else {
      for (int k = 0; k < forest.f; ++k)
        if (tree.in_subtree(v, tree.children(forest.u)[k])) out.push_back(v);
    }
  }
  return out;
}

std::vector<int> Est::left_path() const {
  std::vector<int> path;
  for (int u = root; u >= 0; u = nodes[u].left) path.push_back(u);
  return path;
}

int Est::height() const {
  if (root < 0) return -1;
  int best = 0;
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [u, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (nodes[u].left >= 0) stack.emplace_back(nodes[u].left, d + 1);
    if (nodes[u].right >= 0) stack.emplace_back(nodes[u].right, d + 1);
  }
  return best;
}

Weight Est::cost(const InputTree& tree) const {
  Weight total = 0;
  if (root < 0) return total;
  std::vector<std::pair<int, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [u, d] = stack.back();
    stack.pop_back();
    const Node& x = nodes[u];
    if (x.kind == Kind::Leaf && tree.valid_id(x.label)) total += tree.weight(x.label) * d;
    if (x.left >= 0) stack.emplace_back(x.left, d + 1);
    if (x.right >= 0) stack.emplace_back(x.right, d + 1);
  }
  return total;
}

Est Est::compact() const {
  Est out;
  if (root < 0) return out;
  std::function<int(int)> copy = [&](int u) -> int {
    if (u < 0) return -1;
    const Node& x = nodes[u];
    const int l = copy(x.left);
    const int r = copy(x.right);
    return out.add(x.kind, x.label, l, r);
  };
  out.root = copy(root);
  return out;
}

Diagnostics check_est(const Est& est, const InputTree& tree, SubforestId forest) {
  Diagnostics diag;
  auto& out = diag.violations;
  const int n = tree.size();
  std::vector<char> member(n, 0);
  for (NodeId v : forest_nodes(tree, forest)) member[v] = 1;
  std::vector<int> leaves(n, 0), queries(n, 0);
  if (est.root < 0) {
    out.push_back("EST is empty");
    return diag;
  }
  // (query label, side: 0 left, 1 right) for assigned ancestors.
  std::vector<std::pair<NodeId, int>> path;
  std::function<void(int)> walk = [&](int u) {
    const Est::Node& x = est.nodes[u];
    const bool assigned = x.kind == Est::Kind::Leaf || x.kind == Est::Kind::Query;
    if (assigned) {
      if (!tree.valid_id(x.label) || !member[x.label]) {
        out.push_back("node assigned to " + std::to_string(x.label) + " outside the forest");
        return;
      }
      (x.kind == Est::Kind::Leaf ? leaves : queries)[x.label]++;
      for (const auto& [q, side] : path) {
        const bool inside = tree.in_subtree(x.label, q);
        if (side == 1 && !inside)
          out.push_back("search property: " + std::to_string(x.label) + " in right subtree of " + std::to_string(q));
        if (side == 0 && inside)
          out.push_back("search property: " + std::to_string(x.label) + " in left subtree of " + std::to_string(q));
      }
    } else if (x.right >= 0) {
      out.push_back(std::string(x.kind == Est::Kind::Blocked ? "blocked" : "unassigned") + " node has a right child");
    }
    if (x.kind == Est::Kind::Leaf) {
      if (x.left >= 0 || x.right >= 0) out.push_back("leaf " + std::to_string(x.label) + " has children");
      return;
    }
    if (x.kind == Est::Kind::Query) path.emplace_back(x.label, 0);
    if (x.left >= 0) walk(x.left);
    if (x.kind == Est::Kind::Query) path.back().second = 1;
    if (x.right >= 0) walk(x.right);
    if (x.kind == Est::Kind::Query) path.pop_back();
  };
  walk(est.root);
  for (NodeId v = 0; v < n; ++v) {
    if (!member[v]) continue;
    if (leaves[v] != 1) out.push_back("node " + std::to_string(v) + " has " + std::to_string(leaves[v]) + " leaves");
    if (queries[v] != 1) out.push_back("node " + std::to_string(v) + " has " + std::to_string(queries[v]) + " internal nodes");
  }
  return diag;
}

bool compatible(const Est& est, const Plp& plp) {
  const auto path = est.left_path();
  if (static_cast<int>(path.size()) != plp.length) return false;
  for (int k = 1; k <= plp.length; ++k)
    if (plp.is_blocked(k) && est.nodes[path[k - 1]].kind != Est::Kind::Blocked) return false;
  return true;
}

DecisionTree est_to_search_tree(const Est& est, const InputTree& tree) {
  DecisionTree out;
  bool saw_root = false;
  std::function<int(int)> convert = [&](int u) -> int {
    if (u < 0) return -1;
    const Est::Node& x = est.nodes[u];
    switch (x.kind) {
      case Est::Kind::Leaf:
        return out.add_leaf(x.label);
      case Est::Kind::Blocked:
      case Est::Kind::Unassigned:
        if (x.right >= 0) throw ValidationError("malformed EST: placeholder node with a right child");
        return convert(x.left);
      case Est::Kind::Query:
        break;
    }
    if (x.label == tree.root()) {
      if (saw_root) throw ValidationError("malformed EST: root queried twice");
      saw_root = true;
      return convert(x.right);
    }
    const int no = convert(x.left);
    const int yes = convert(x.right);
    if (no < 0 || yes < 0)
      throw ValidationError("malformed EST: query " + std::to_string(x.label) + " loses a branch");
    return out.add_query(x.label, no, yes);
  };
  out.set_root(convert(est.root));
  if (!saw_root) throw ValidationError("malformed EST: no node queries the root");
  return out.compact();
}

Est search_tree_to_est(const DecisionTree& d, const InputTree& tree, int length) {
  Est est;
  std::function<int(int)> convert = [&](int u) -> int {
    if (u < 0) return -1;
    const auto& x = d.node(u);
    if (x.is_leaf()) return est.add(Est::Kind::Leaf, x.label);
    const int l = convert(x.no);
    const int r = convert(x.yes);
    return est.add(Est::Kind::Query, x.label, l, r);
  };
  const int body = convert(d.root());
  int tail = -1;
  for (int k = std::max(length, 1); k > 1; --k) tail = est.add(Est::Kind::Blocked, kNoNode, tail, -1);
  est.root = est.add(Est::Kind::Query, tree.root(), tail, body);
  return est;
}

namespace {

// Subforest numbering: T_v is v; (u, f) with f ≥ 2 is n + offset[u] + f − 2.
struct ForestIndex {
  const InputTree& tree;
  std::vector<int> offset;
  int count;
  std::vector<int> trees;  // number of trees in each subforest
  std::vector<int> nodes;  // number of nodes in each subforest

  explicit ForestIndex(const InputTree& t) : tree(t), offset(t.size(), 0) {
    const int n = t.size();
    int next = n;
    for (NodeId u = 0; u < n; ++u) {
      offset[u] = next - n;
      next += std::max(0, t.child_count(u) - 1);
    }
    count = next;
    trees.assign(count, 1);
    nodes.assign(count, 0);
    for (NodeId v = 0; v < n; ++v) nodes[v] = t.subtree_size(v);
    for (NodeId u = 0; u < n; ++u) {
      int acc = 0;
      for (int f = 1; f <= t.child_count(u); ++f) {
        acc += t.subtree_size(t.children(u)[f - 1]);
        if (f >= 2) {
          trees[id(SubforestId::forest(u, f))] = f;
          nodes[id(SubforestId::forest(u, f))] = acc;
        }
      }
    }
  }

  int id(SubforestId s) const {
    if (s.is_tree()) return s.u;
    if (s.f == 1) return tree.children(s.u)[0];
    return tree.size() + offset[s.u] + s.f - 2;
  }
  int children_of(NodeId v) const { return id(SubforestId::forest(v, tree.child_count(v))); }
};

std::uint64_t key_of(int length, std::uint64_t blocked) { return (blocked << 6) | static_cast<std::uint64_t>(length); }

std::uint64_t low_bits(int k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

template <class C>
class Engine {
 public:
  struct Entry {
    C cost{};
    PbChoice choice;
    bool feasible() const { return choice.kind != PbChoice::Kind::Infeasible; }
  };

  Engine(const InputTree& tree, int height) : tree_(tree), index_(tree), height_(height), memo_(index_.count) {
    weight_.reserve(tree.size());
    for (const auto& w : tree.weights()) weight_.push_back(static_cast<C>(w));
    // Forest (u, f) ↦ last tree and the rest, precomputed by id.
    split_.assign(index_.count, {-1, -1});
    for (NodeId u = 0; u < tree.size(); ++u)
      for (int f = 2; f <= tree.child_count(u); ++f)
        split_[index_.id(SubforestId::forest(u, f))] = {tree.children(u)[f - 1], index_.id(SubforestId::forest(u, f - 1))};
  }

  const ForestIndex& index() const { return index_; }

  const Entry& solve(int fid, int length, std::uint64_t blocked) {
    auto& table = memo_[fid];
    const std::uint64_t key = key_of(length, blocked);
    if (auto it = table.find(key); it != table.end()) return it->second;
    Entry e;
    const std::uint64_t free = low_bits(length) & ~blocked;
    if (std::popcount(free) >= index_.trees[fid]) {
      if (fid >= tree_.size()) split(fid, length, blocked, free, e);
      else if (tree_.child_count(fid) == 0) base(fid, free, e);
      else root(fid, blocked, free, e);
    }
    return table.emplace(key, std::move(e)).first->second;
  }

  std::size_t states() const {
    std::size_t s = 0;
    for (const auto& t : memo_) s += t.size();
    return s;
  }

  // Appends the optimal EST for (fid, P) to `est` and returns its left path.
  std::vector<int> build(Est& est, int fid, int length, std::uint64_t blocked) {
    const Entry e = solve(fid, length, blocked);
    std::vector<int> path(length);
    auto placeholder = [&](int k) {
      return est.add((blocked >> (k - 1) & 1) ? Est::Kind::Blocked : Est::Kind::Unassigned);
    };
    switch (e.choice.kind) {
      case PbChoice::Kind::Infeasible:
        throw ValidationError("subproblem is infeasible");
      case PbChoice::Kind::Base: {
        const int i = e.choice.i;
        for (int k = 1; k <= length; ++k) {
          if (k == i) path[k - 1] = est.add(Est::Kind::Query, fid, -1, est.add(Est::Kind::Leaf, fid));
          else path[k - 1] = placeholder(k);
        }
        break;
      }
      case PbChoice::Kind::Split: {
        const auto [last, rest] = split_[fid];
        const std::uint64_t free = low_bits(length) & ~blocked;
        const std::uint64_t uf = e.choice.cells_for_last, uo = free & ~uf;
        const auto pf = build(est, last, length, blocked | uo);
        const auto po = build(est, rest, length, blocked | uf);
        for (int k = 1; k <= length; ++k) {
          const std::uint64_t bit = std::uint64_t{1} << (k - 1);
          path[k - 1] = (uf & bit) ? pf[k - 1] : (uo & bit) ? po[k - 1] : placeholder(k);
        }
        break;
      }
      case PbChoice::Kind::Root: {
        const int i = e.choice.i, t = e.choice.t;
        const NodeId v = fid;
        const auto child = build(est, index_.children_of(v), t, child_plp(blocked, i));
        const int cell = child[i - 1];
        const int leaf = est.add(Est::Kind::Leaf, v);
        est.nodes[cell].kind = Est::Kind::Query;
        est.nodes[cell].label = v;
        if (t == i) {
          est.nodes[cell].right = leaf;
        } else {
          est.nodes[cell].right = child[i];
          est.nodes[child[t - 1]].left = leaf;
        }
        for (int k = 1; k < i; ++k) path[k - 1] = child[k - 1];
        path[i - 1] = cell;
        for (int k = i + 1; k <= length; ++k) path[k - 1] = est.add(Est::Kind::Blocked);
        break;
      }
    }
    for (int k = 1; k < length; ++k) est.nodes[path[k - 1]].left = path[k];
    est.nodes[path[length - 1]].left = -1;
    return path;
  }

 private:
  static std::uint64_t child_plp(std::uint64_t blocked, int i) {
    return (blocked & low_bits(i)) | (std::uint64_t{1} << (i - 1));
  }

  void base(int v, std::uint64_t free, Entry& e) {
    const int i = std::countr_zero(free) + 1;
    e.cost = static_cast<C>(i) * weight_[v];
    e.choice = {PbChoice::Kind::Base, 0, i, 0};
  }

  void split(int fid, int length, std::uint64_t blocked, std::uint64_t free, Entry& e) {
    const auto [last, rest] = split_[fid];
    const int need_rest = index_.trees[rest];
    const int max_last = index_.nodes[last];
    // Nonempty submasks of the free cells, handed to the last tree.
    for (std::uint64_t uf = free; uf; uf = (uf - 1) & free) {
      const int cf = std::popcount(uf);
      if (cf > max_last) continue;
      const std::uint64_t uo = free & ~uf;
      if (std::popcount(uo) < need_rest) continue;
      const Entry& a = solve(last, length, blocked | uo);
      if (!a.feasible()) continue;
      C c = a.cost;
      const Entry& b = solve(rest, length, blocked | uf);
      if (!b.feasible()) continue;
      c += b.cost;
      if (!e.feasible() || c < e.cost || (c == e.cost && uf < e.choice.cells_for_last)) {
        e.cost = std::move(c);
        e.choice = {PbChoice::Kind::Split, uf, 0, 0};
      }
    }
  }

  void root(NodeId v, std::uint64_t blocked, std::uint64_t free, Entry& e) {
    const int children = index_.children_of(v);
    const int below = index_.nodes[children];
    for (std::uint64_t rest = free; rest; rest &= rest - 1) {
      const int i = std::countr_zero(rest) + 1;
      const std::uint64_t pmask = child_plp(blocked, i);
      const int t_max = std::min(height_, i + below);
      for (int t = i; t <= t_max; ++t) {
        const Entry& a = solve(children, t, pmask);
        if (!a.feasible()) continue;
        C c = a.cost + static_cast<C>(t) * weight_[v];
        if (!e.feasible() || c < e.cost) {
          e.cost = std::move(c);
          e.choice = {PbChoice::Kind::Root, 0, i, t};
        }
      }
    }
  }

  const InputTree& tree_;
  ForestIndex index_;
  int height_;
  std::vector<C> weight_;
  std::vector<std::pair<int, int>> split_;
  std::vector<std::unordered_map<std::uint64_t, Entry>> memo_;
};

}  // namespace

struct PbSolver::Impl {
  std::variant<Engine<long long>, Engine<Weight>> engine;
  Impl(const InputTree& tree, int height, bool narrow)
      : engine(narrow ? decltype(engine){std::in_place_index<0>, tree, height}
                      : decltype(engine){std::in_place_index<1>, tree, height}) {}
};

PbSolver::PbSolver(const InputTree& tree, int height) : height_(height) {
  if (height < 1 || height > kMaxDpHeight)
    throw ValidationError("DP height must lie in [1, " + std::to_string(kMaxDpHeight) + "]");
  // Every leaf sits at depth ≤ B, so costs stay below B·w(T).
  const bool narrow = fits_int64(Weight(height) * tree.total_weight() * 4);
  impl_ = std::make_unique<Impl>(tree, height, narrow);
  tree_ = &tree;
}

PbSolver::~PbSolver() = default;

namespace {

void check_plp(const Plp& plp, int height) {
  if (plp.length < 1 || plp.length > height)
    throw ValidationError("PLP length " + std::to_string(plp.length) + " outside [1, " + std::to_string(height) + "]");
  if (plp.blocked & ~low_bits(plp.length)) throw ValidationError("PLP marks cells beyond its length");
}

void check_forest(const InputTree& tree, SubforestId s) {
  if (!tree.valid_id(s.u)) throw ValidationError("subforest names an unknown node");
  if (!s.is_tree() && (s.f < 1 || s.f > tree.child_count(s.u)))
    throw ValidationError("subforest child count out of range");
}

}  // namespace

std::optional<Weight> PbSolver::cost(SubforestId forest, const Plp& plp) {
  check_forest(*tree_, forest);
  check_plp(plp, height_);
  return std::visit(
      [&](auto& eng) -> std::optional<Weight> {
        const auto& e = eng.solve(eng.index().id(forest), plp.length, plp.blocked);
        if (!e.feasible()) return std::nullopt;
        return Weight(e.cost);
      },
      impl_->engine);
}

PbChoice PbSolver::choice(SubforestId forest, const Plp& plp) {
  check_forest(*tree_, forest);
  check_plp(plp, height_);
  return std::visit([&](auto& eng) { return eng.solve(eng.index().id(forest), plp.length, plp.blocked).choice; },
                    impl_->engine);
}

std::optional<Est> PbSolver::solve(SubforestId forest, const Plp& plp) {
  if (!cost(forest, plp)) return std::nullopt;
  Est est;
  std::visit(
      [&](auto& eng) {
        const auto path = eng.build(est, eng.index().id(forest), plp.length, plp.blocked);
        est.root = path.front();
      },
      impl_->engine);
  return est.compact();
}

std::size_t PbSolver::states() const {
  return std::visit([](const auto& eng) { return eng.states(); }, impl_->engine);
}

bool PbSolver::narrow() const { return impl_->engine.index() == 0; }

std::optional<std::pair<Weight, Est>> solve_pb(const InputTree& tree, SubforestId forest, const Plp& plp,
                                               int height) {
  PbSolver solver(tree, height);
  auto est = solver.solve(forest, plp);
  if (!est) return std::nullopt;
  return std::pair{*solver.cost(forest, plp), std::move(*est)};
}

int height_bound(const InputTree& tree) {
  const long long delta = tree.max_children();
  const long long weight_bits = bit_length(tree.total_weight());
  const long long node_bits = bit_length(Weight(tree.size()));
  const long long b = (6 * (delta + 1) + 1) * weight_bits + (delta + 1) * node_bits + 2;
  return static_cast<int>(std::min<long long>(b, 1'000'000'000));
}

int dp_height(const InputTree& tree) { return std::min(height_bound(tree), tree.size()); }

BoundedResult optimal_bounded(const InputTree& tree, const BoundedOptions& options) {
  const int b = options.height ? *options.height : dp_height(tree);
  if (b < 1) throw ValidationError("DP height must be positive");
  if (b > options.cap || b > kMaxDpHeight)
    throw ResourceError("DP height " + std::to_string(b) + " exceeds the cap of " +
                        std::to_string(std::min(options.cap, kMaxDpHeight)) + "; use greedy or a smaller --height");
  PbSolver solver(tree, b);
  const auto top = SubforestId::tree(tree.root());
  const Plp plp = Plp::unassigned(b);
  auto est = solver.solve(top, plp);
  if (!est) throw ValidationError("no EST of height " + std::to_string(b) + " exists");
  BoundedResult out;
  out.est_cost = *solver.cost(top, plp);
  out.tree = est_to_search_tree(*est, tree);
  out.cost = cost(out.tree, tree);
  out.height = b;
  return out;
}

}  // namespace treesearch
