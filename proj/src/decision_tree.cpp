#include "treesearch/decision_tree.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "treesearch/errors.hpp"

namespace treesearch {

DecisionTree DecisionTree::leaf(NodeId v) {
  DecisionTree d;
  d.root_ = d.add_leaf(v);
  return d;
}

DecisionTree DecisionTree::query(NodeId v, const DecisionTree& no, const DecisionTree& yes) {
  DecisionTree d;
  const int n = d.graft(no);
  const int y = d.graft(yes);
  d.root_ = d.add_query(v, n, y);
  return d;
}

int DecisionTree::add_leaf(NodeId v) {
  nodes_.push_back(Node{Kind::Leaf, v, -1, -1});
  return arena_size() - 1;
}

int DecisionTree::add_query(NodeId v, int no, int yes) {
  nodes_.push_back(Node{Kind::Query, v, no, yes});
  return arena_size() - 1;
}

int DecisionTree::graft(const DecisionTree& other) {
  if (other.empty()) return -1;
  const int offset = arena_size();
  for (const auto& x : other.nodes_) {
    Node copy = x;
    if (copy.no >= 0) copy.no += offset;
    if (copy.yes >= 0) copy.yes += offset;
    nodes_.push_back(copy);
  }
  return other.root_ + offset;
}

std::vector<int> DecisionTree::preorder() const {
  std::vector<int> order;
  if (empty()) return order;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    const Node& x = nodes_[u];
    if (x.yes >= 0) stack.push_back(x.yes);
    if (x.no >= 0) stack.push_back(x.no);
  }
  return order;
}

DecisionTree DecisionTree::subtree(int index) const {
  DecisionTree out;
  if (index < 0) return out;
  DecisionTree view = *this;
  view.root_ = index;
  const auto order = view.preorder();
  std::vector<int> remap(nodes_.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = static_cast<int>(k);
  out.nodes_.reserve(order.size());
  for (int u : order) {
    Node x = nodes_[u];
    if (x.no >= 0) x.no = remap[x.no];
    if (x.yes >= 0) x.yes = remap[x.yes];
    out.nodes_.push_back(x);
  }
  out.root_ = 0;
  return out;
}

DecisionTree DecisionTree::compact() const { return subtree(root_); }

int DecisionTree::node_count() const { return static_cast<int>(preorder().size()); }

int DecisionTree::height() const {
  if (empty()) return -1;
  int best = 0;
  std::vector<std::pair<int, int>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [u, dep] = stack.back();
    stack.pop_back();
    best = std::max(best, dep);
    if (nodes_[u].no >= 0) stack.emplace_back(nodes_[u].no, dep + 1);
    if (nodes_[u].yes >= 0) stack.emplace_back(nodes_[u].yes, dep + 1);
  }
  return best;
}

int DecisionTree::find_leaf(NodeId v) const {
  for (int u : preorder())
    if (nodes_[u].is_leaf() && nodes_[u].label == v) return u;
  return -1;
}

int DecisionTree::find_query(NodeId v) const {
  for (int u : preorder())
    if (!nodes_[u].is_leaf() && nodes_[u].label == v) return u;
  return -1;
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  std::vector<std::pair<int, int>> stack{{a.root_, b.root_}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if ((x < 0) != (y < 0)) return false;
    if (x < 0) continue;
    const auto &nx = a.nodes_[x], &ny = b.nodes_[y];
    if (nx.kind != ny.kind || nx.label != ny.label) return false;
    stack.emplace_back(nx.no, ny.no);
    stack.emplace_back(nx.yes, ny.yes);
  }
  return true;
}

namespace {

std::string describe(const DecisionTree::Node& x) {
  return (x.is_leaf() ? "leaf " : "query ") + std::to_string(x.label);
}

// Shared walk for both validate overloads. `member` marks the node ids the
// leaves must biject onto.
Diagnostics validate_impl(const DecisionTree& d, const InputTree& tree, const std::vector<char>& member) {
  Diagnostics diag;
  auto& out = diag.violations;
  const int n = tree.size();
  if (d.empty()) {
    out.push_back("decision tree is empty");
    return diag;
  }

  std::vector<int> leaf_count(n, 0);
  std::vector<std::pair<NodeId, int>> path;  // (query label, side taken: 0 NO, 1 YES)
  std::vector<std::pair<int, std::size_t>> stack{{d.root(), 0}};
  std::vector<int> side_of(d.arena_size(), -1);
  std::vector<int> visits(d.arena_size(), 0);
  while (!stack.empty()) {
    auto [u, depth] = stack.back();
    stack.pop_back();
    if (u < 0 || u >= d.arena_size()) {
      out.push_back("dangling child index " + std::to_string(u));
      continue;
    }
    if (++visits[u] > 1) {
      out.push_back("node index " + std::to_string(u) + " is shared by two parents");
      continue;
    }
    path.resize(depth);
    const auto& x = d.node(u);
    if (depth > 0) path.back().second = side_of[u];
    if (!tree.valid_id(x.label)) {
      out.push_back(describe(x) + ": id out of range");
      continue;
    }
    if (x.is_leaf()) {
      if (!member[x.label]) {
        out.push_back("leaf " + std::to_string(x.label) + " is not a node of the instance being searched");
      } else if (++leaf_count[x.label] == 2) {
        out.push_back("node " + std::to_string(x.label) + " has more than one leaf");
      }
      for (const auto& [q, side] : path) {
        const bool inside = tree.in_subtree(x.label, q);
        if (side == 1 && !inside) {
          out.push_back("search property: leaf " + std::to_string(x.label) + " is on the YES side of query " +
                        std::to_string(q) + " but not in T_" + std::to_string(q));
          break;
        }
        if (side == 0 && inside) {
          out.push_back("search property: leaf " + std::to_string(x.label) + " is on the NO side of query " +
                        std::to_string(q) + " but lies in T_" + std::to_string(q));
          break;
        }
      }
      continue;
    }
    if (x.no < 0 || x.yes < 0) {
      out.push_back(describe(x) + " is missing its " + (x.no < 0 && x.yes < 0 ? "NO and YES children" : x.no < 0 ? "NO child" : "YES child"));
    }
    path.emplace_back(x.label, -1);
    if (x.yes >= 0 && x.yes < d.arena_size()) side_of[x.yes] = 1;
    if (x.no >= 0 && x.no < d.arena_size()) side_of[x.no] = 0;
    if (x.yes >= 0) stack.emplace_back(x.yes, depth + 1);
    if (x.no >= 0) stack.emplace_back(x.no, depth + 1);
  }
  int missing = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (member[v] && leaf_count[v] == 0) {
      if (++missing <= 20) out.push_back("node " + std::to_string(v) + " has no leaf");
    }
  }
  if (missing > 20) out.push_back(std::to_string(missing - 20) + " further nodes have no leaf");
  return diag;
}

void require_valid(const Diagnostics& diag) {
  if (!diag.ok()) throw InvalidTreeError(diag.violations);
}

}  // namespace

Diagnostics validate(const DecisionTree& d, const InputTree& tree) {
  return validate_impl(d, tree, std::vector<char>(tree.size(), 1));
}

Diagnostics validate(const DecisionTree& d, const InputTree& tree, const NodePiece& piece) {
  std::vector<char> member(tree.size(), 0);
  for (NodeId v : piece.nodes()) member[v] = 1;
  return validate_impl(d, tree, member);
}

Weight cost_unchecked(const DecisionTree& d, const InputTree& tree) {
  Weight total = 0;
  if (d.empty()) return total;
  std::vector<std::pair<int, int>> stack{{d.root(), 0}};
  while (!stack.empty()) {
    auto [u, dep] = stack.back();
    stack.pop_back();
    const auto& x = d.node(u);
    if (x.is_leaf()) {
      if (dep > 0) total += tree.weight(x.label) * dep;
      continue;
    }
    if (x.no >= 0) stack.emplace_back(x.no, dep + 1);
    if (x.yes >= 0) stack.emplace_back(x.yes, dep + 1);
  }
  return total;
}

Weight cost(const DecisionTree& d, const InputTree& tree) {
  require_valid(validate(d, tree));
  return cost_unchecked(d, tree);
}

Weight cost(const DecisionTree& d, const InputTree& tree, const NodePiece& piece) {
  require_valid(validate(d, tree, piece));
  return cost_unchecked(d, tree);
}

namespace {

std::vector<int> depths_of(const DecisionTree& d, int n, bool leaves) {
  std::vector<int> out(n, -1);
  if (d.empty()) return out;
  std::vector<std::pair<int, int>> stack{{d.root(), 0}};
  while (!stack.empty()) {
    auto [u, dep] = stack.back();
    stack.pop_back();
    const auto& x = d.node(u);
    if (x.is_leaf() == leaves && x.label >= 0 && x.label < n && out[x.label] < 0) out[x.label] = dep;
    if (x.yes >= 0) stack.emplace_back(x.yes, dep + 1);
    if (x.no >= 0) stack.emplace_back(x.no, dep + 1);
  }
  return out;
}

DecisionTree delete_side(const DecisionTree& d, int index, bool drop_no) {
  if (index < 0 || index >= d.arena_size()) throw ValidationError("node index " + std::to_string(index) + " is not in the decision tree");
  const auto order = d.preorder();
  if (std::find(order.begin(), order.end(), index) == order.end())
    throw ValidationError("node index " + std::to_string(index) + " is not reachable in the decision tree");
  DecisionTree out = d;
  const auto& x = d.node(index);
  const int survivor = drop_no ? x.yes : x.no;
  if (index == d.root()) {
    out.set_root(survivor);
  } else {
    for (int u : order) {
      auto& p = out.node(u);
      if (p.no == index) p.no = survivor;
      if (p.yes == index) p.yes = survivor;
    }
  }
  return out.compact();
}

}  // namespace

std::vector<int> leaf_depths(const DecisionTree& d, int n) { return depths_of(d, n, true); }
std::vector<int> query_depths(const DecisionTree& d, int n) { return depths_of(d, n, false); }

DecisionTree left_delete(const DecisionTree& d, int index) { return delete_side(d, index, true); }
DecisionTree right_delete(const DecisionTree& d, int index) { return delete_side(d, index, false); }

DecisionTree restrict(const DecisionTree& d, const InputTree& tree, const NodePiece& piece) {
  require_valid(validate(d, tree));
  // Postorder: kept[u] is the index of u's pruned image in `out`, or -1.
  DecisionTree out;
  std::vector<int> kept(d.arena_size(), -1);
  const auto order = d.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    const auto& x = d.node(u);
    if (x.is_leaf()) {
      if (piece.contains(x.label)) kept[u] = out.add_leaf(x.label);
      continue;
    }
    const int no = kept[x.no], yes = kept[x.yes];
    if (no >= 0 && yes >= 0) kept[u] = out.add_query(x.label, no, yes);
    else kept[u] = no >= 0 ? no : yes;
  }
  out.set_root(kept[d.root()]);
  return out.compact();
}

nlohmann::json to_json(const DecisionTree& d) {
  if (d.empty()) return nullptr;
  const auto order = d.preorder();
  std::vector<nlohmann::json> built(d.arena_size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& x = d.node(*it);
    if (x.is_leaf()) {
      built[*it] = {{"leaf", x.label}};
    } else {
      nlohmann::json q;
      q["query"] = x.label;
      q["no"] = x.no >= 0 ? std::move(built[x.no]) : nlohmann::json(nullptr);
      q["yes"] = x.yes >= 0 ? std::move(built[x.yes]) : nlohmann::json(nullptr);
      built[*it] = std::move(q);
    }
  }
  return std::move(built[d.root()]);
}

namespace {

int read_json_node(const nlohmann::json& j, DecisionTree& out) {
  if (j.is_null()) return -1;
  if (!j.is_object()) throw ValidationError("decision tree node must be an object");
  auto id_of = [](const nlohmann::json& v, const char* key) {
    if (!v.is_number_integer()) throw ValidationError(std::string("\"") + key + "\" must be an integer node id");
    return v.get<NodeId>();
  };
  if (j.contains("leaf")) {
    if (j.size() != 1) throw ValidationError("leaf record must contain only \"leaf\"");
    return out.add_leaf(id_of(j.at("leaf"), "leaf"));
  }
  if (!j.contains("query") || !j.contains("no") || !j.contains("yes") || j.size() != 3)
    throw ValidationError("query record must contain exactly \"query\", \"no\" and \"yes\"");
  const NodeId label = id_of(j.at("query"), "query");
  const int no = read_json_node(j.at("no"), out);
  const int yes = read_json_node(j.at("yes"), out);
  return out.add_query(label, no, yes);
}

}  // namespace

DecisionTree tree_from_json(const nlohmann::json& j) {
  DecisionTree out;
  out.set_root(read_json_node(j, out));
  return out.compact();
}

std::string format_tree(const DecisionTree& d) { return to_json(d).dump(); }

DecisionTree parse_tree_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("decision tree is not valid JSON: ") + e.what());
  }
  return tree_from_json(j);
}

DecisionTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open decision tree file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tree_string(buf.str());
}

}  // namespace treesearch
