#include "treesearch/instance.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "treesearch/errors.hpp"

namespace treesearch {

InputTree::InputTree(std::vector<NodeId> parent, std::vector<Weight> weight)
    : parent_(std::move(parent)), weight_(std::move(weight)) {
  const int n = size();
  children_.assign(n, {});
  for (NodeId v = 0; v < n; ++v) {
    const NodeId p = parent_[v];
    if (p != kNoNode) {
      if (p < 0 || p >= n) throw ValidationError("node " + std::to_string(v) + " has out-of-range parent " + std::to_string(p));
      children_[p].push_back(v);
    }
  }
  build();
}

InputTree::InputTree(std::vector<NodeId> parent, std::vector<std::vector<NodeId>> children,
                     std::vector<Weight> weight)
    : parent_(std::move(parent)), children_(std::move(children)), weight_(std::move(weight)) {
  build();
}

void InputTree::build() {
  const int n = size();
  if (n == 0) throw ValidationError("instance must have at least one node");
  if (static_cast<int>(weight_.size()) != n) throw ValidationError("weight count does not match node count");
  if (static_cast<int>(children_.size()) != n) throw ValidationError("children table does not match node count");

  root_ = kNoNode;
  for (NodeId v = 0; v < n; ++v) {
    if (parent_[v] == kNoNode) {
      if (root_ != kNoNode) throw ValidationError("more than one root: " + std::to_string(root_) + " and " + std::to_string(v));
      root_ = v;
    } else if (parent_[v] < 0 || parent_[v] >= n) {
      throw ValidationError("node " + std::to_string(v) + " has out-of-range parent " + std::to_string(parent_[v]));
    }
    if (weight_[v] < 0) throw ValidationError("node " + std::to_string(v) + " has negative weight");
  }
  if (root_ == kNoNode) throw ValidationError("no root (every node has a parent)");

  std::vector<int> seen_as_child(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId c : children_[u]) {
      if (c < 0 || c >= n || parent_[c] != u)
        throw ValidationError("children order of node " + std::to_string(u) + " lists " + std::to_string(c) + " which is not its child");
      ++seen_as_child[c];
    }
  }
  for (NodeId v = 0; v < n; ++v)
    if (v != root_ && seen_as_child[v] != 1)
      throw ValidationError("node " + std::to_string(v) + " must appear exactly once in its parent's children order");

  tin_.assign(n, -1);
  tout_.assign(n, -1);
  depth_.assign(n, 0);
  preorder_.clear();
  preorder_.reserve(n);
  // Iterative DFS; a cycle leaves nodes unreached.
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  tin_[root_] = 0;
  preorder_.push_back(root_);
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    if (next < children_[u].size()) {
      const NodeId c = children_[u][next++];
      if (tin_[c] != -1) throw ValidationError("parent links contain a cycle");
      tin_[c] = static_cast<int>(preorder_.size());
      depth_[c] = depth_[u] + 1;
      preorder_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      tout_[u] = static_cast<int>(preorder_.size());
      stack.pop_back();
    }
  }
  if (static_cast<int>(preorder_.size()) != n) throw ValidationError("parent links do not form a tree (disconnected or cyclic)");

  total_ = 0;
  for (const auto& w : weight_) total_ += w;
}

int InputTree::max_children() const {
  int best = 0;
  for (const auto& c : children_) best = std::max(best, static_cast<int>(c.size()));
  return best;
}

int InputTree::max_degree() const {
  int best = 0;
  for (NodeId v = 0; v < size(); ++v)
    best = std::max(best, child_count(v) + (v == root_ ? 0 : 1));
  return best;
}

std::vector<NodeId> InputTree::neighbors(NodeId v) const {
  std::vector<NodeId> out;
  if (parent_[v] != kNoNode) out.push_back(parent_[v]);
  out.insert(out.end(), children_[v].begin(), children_[v].end());
  return out;
}

int InputTree::diameter() const {
  const int n = size();
  auto farthest = [&](NodeId from) {
    std::vector<int> dist(n, -1);
    std::vector<NodeId> queue{from};
    dist[from] = 0;
    NodeId last = from;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      last = u;
      for (NodeId x : neighbors(u)) {
        if (dist[x] < 0) {
          dist[x] = dist[u] + 1;
          queue.push_back(x);
        }
      }
    }
    return std::pair{last, dist[last]};
  };
  return farthest(farthest(root_).first).second;
}

InputTree InputTree::with_weights(std::vector<Weight> weight) const {
  return InputTree(parent_, children_, std::move(weight));
}

NodePiece::NodePiece(const InputTree& tree, std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ValidationError("node piece must be nonempty");
  std::sort(nodes_.begin(), nodes_.end());
  member_.assign(tree.size(), 0);
  for (NodeId v : nodes_) {
    if (!tree.valid_id(v)) throw ValidationError("node piece contains out-of-range id " + std::to_string(v));
    if (member_[v]) throw ValidationError("node piece lists node " + std::to_string(v) + " twice");
    member_[v] = 1;
  }
  int tops = 0;
  for (NodeId v : nodes_) {
    const NodeId p = tree.parent(v);
    if (p == kNoNode || !member_[p]) {
      top_ = v;
      ++tops;
    }
  }
  if (tops != 1) throw ValidationError("node piece is not connected");
}

NodePiece NodePiece::whole(const InputTree& tree) {
  std::vector<NodeId> all(tree.size());
  for (NodeId v = 0; v < tree.size(); ++v) all[v] = v;
  return NodePiece(tree, std::move(all));
}

NodePiece NodePiece::subtree(const InputTree& tree, NodeId v) {
  std::vector<NodeId> nodes;
  for (NodeId x = 0; x < tree.size(); ++x)
    if (tree.in_subtree(x, v)) nodes.push_back(x);
  return NodePiece(tree, std::move(nodes));
}

Weight NodePiece::weight(const InputTree& tree) const {
  Weight sum = 0;
  for (NodeId v : nodes_) sum += tree.weight(v);
  return sum;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

long long parse_int_token(const std::string& tok, int lineno, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(lineno, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
}

}  // namespace

InputTree parse_instance(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(0, "empty instance");
  std::istringstream header(line);
  std::string ntok, rtok, extra;
  if (!(header >> ntok >> rtok) || (header >> extra)) throw ParseError(lineno, "header must be 'n root_id'");
  const long long n = parse_int_token(ntok, lineno, "n");
  const long long root = parse_int_token(rtok, lineno, "root_id");
  if (n <= 0) throw ParseError(lineno, "n must be positive");
  if (n > 50'000'000) throw ParseError(lineno, "n is too large");
  if (root < 0 || root >= n) throw ParseError(lineno, "root_id out of range");

  std::vector<NodeId> parent(n, kNoNode);
  std::vector<Weight> weight(n);
  std::vector<char> seen(n, 0);
  std::vector<std::vector<NodeId>> children(n);
  for (long long k = 0; k < n; ++k) {
    if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(n) + " node lines, got " + std::to_string(k));
    std::istringstream row(line);
    std::string itok, ptok, wtok;
    if (!(row >> itok >> ptok >> wtok) || (row >> extra)) throw ParseError(lineno, "node line must be 'id parent_id weight'");
    const long long id = parse_int_token(itok, lineno, "id");
    const long long p = parse_int_token(ptok, lineno, "parent_id");
    if (id < 0 || id >= n) throw ParseError(lineno, "node id " + itok + " out of range");
    if (seen[id]) throw ParseError(lineno, "node id " + itok + " repeated");
    seen[id] = 1;
    if (p == -1) {
      if (id != root) throw ParseError(lineno, "node " + itok + " has parent -1 but the root is " + std::to_string(root));
    } else {
      if (p < 0 || p >= n) throw ParseError(lineno, "parent id " + ptok + " out of range");
      if (p == id) throw ParseError(lineno, "node " + itok + " is its own parent");
      if (id == root) throw ParseError(lineno, "root " + itok + " must have parent -1");
      children[p].push_back(static_cast<NodeId>(id));
    }
    parent[id] = static_cast<NodeId>(p);
    try {
      weight[id] = parse_weight(wtok);
    } catch (const std::invalid_argument&) {
      throw ParseError(lineno, "weight must be a nonnegative integer, got '" + wtok + "'");
    }
  }
  if (next_content_line(in, line, lineno)) throw ParseError(lineno, "unexpected trailing content");
  try {
    return InputTree(std::move(parent), std::move(children), std::move(weight));
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
}

InputTree parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

InputTree read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const InputTree& tree) {
  out << tree.size() << ' ' << tree.root() << '\n';
  for (NodeId v : tree.preorder()) out << v << ' ' << tree.parent(v) << ' ' << tree.weight(v) << '\n';
}

std::string format_instance(const InputTree& tree) {
  std::ostringstream out;
  write_instance(out, tree);
  return out.str();
}

}  // namespace treesearch
