#include "treesearch/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"

namespace treesearch {

void validate_x3c(const X3CInstance& x) {
  if (x.n < 0) throw ValidationError("universe size must be nonnegative");
  if (x.n % 3 != 0) throw ValidationError("universe size " + std::to_string(x.n) + " is not divisible by 3");
  std::vector<int> count(x.n, 0);
  for (std::size_t i = 0; i < x.sets.size(); ++i) {
    const auto& s = x.sets[i];
    for (int k = 0; k < 3; ++k) {
      if (s[k] < 0 || s[k] >= x.n)
        throw ValidationError("set " + std::to_string(i + 1) + ": element " + std::to_string(s[k]) + " out of range");
      for (int l = 0; l < k; ++l)
        if (s[l] == s[k])
          throw ValidationError("set " + std::to_string(i + 1) + " repeats element " + std::to_string(s[k]));
    }
    for (int e : s)
      if (++count[e] > 3)
        throw ValidationError("element " + std::to_string(e) + " appears in more than three sets");
  }
}

X3CInstance parse_x3c(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&](std::istringstream& ss) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss.clear();
      ss.str(line);
      return true;
    }
    return false;
  };
  auto finish = [&](std::istringstream& ss) {
    std::string rest;
    if (ss >> rest) throw ParseError(lineno, "trailing content '" + rest + "'");
  };
  std::istringstream ss;
  if (!next(ss)) throw ParseError(0, "empty X3C input");
  X3CInstance x;
  int m = 0;
  if (!(ss >> x.n >> m) || x.n < 0 || m < 0) throw ParseError(lineno, "expected header 'n m'");
  finish(ss);
  x.sets.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!next(ss)) throw ParseError(lineno, "expected " + std::to_string(m) + " sets, got " + std::to_string(i));
    std::array<int, 3> s{};
    if (!(ss >> s[0] >> s[1] >> s[2])) throw ParseError(lineno, "expected three element indices");
    finish(ss);
    x.sets.push_back(s);
  }
  std::istringstream extra;
  if (next(extra)) throw ParseError(lineno, "unexpected content after the last set");
  try {
    validate_x3c(x);
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return x;
}

X3CInstance parse_x3c_string(const std::string& text) {
  std::istringstream in(text);
  return parse_x3c(in);
}

X3CInstance read_x3c_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open X3C file '" + path + "'");
  return parse_x3c(in);
}

std::string format_x3c(const X3CInstance& x) {
  std::ostringstream out;
  out << x.n << ' ' << x.sets.size() << '\n';
  for (const auto& s : x.sets) out << s[0] << ' ' << s[1] << ' ' << s[2] << '\n';
  return out.str();
}

std::string PiSequence::element_name(int u) const {
  if (n <= 26) return std::string(1, static_cast<char>('a' + u));
  return "u" + std::to_string(u + 1);
}

std::string PiSequence::str() const {
  std::string out;
  for (const auto& e : order) {
    if (!out.empty()) out += ' ';
    out += e.is_set ? "X" + std::to_string(e.index + 1) : element_name(e.index);
  }
  return out;
}

PiSequence pi_sequence(const X3CInstance& x) {
  validate_x3c(x);
  PiSequence pi;
  pi.n = x.n;
  const int m = static_cast<int>(x.sets.size());
  std::vector<std::array<int, 3>> sorted(x.sets);
  for (auto& s : sorted) std::sort(s.begin(), s.end());
  pi.original.resize(m);
  std::iota(pi.original.begin(), pi.original.end(), 0);
  std::stable_sort(pi.original.begin(), pi.original.end(), [&](int a, int b) {
    const auto& p = sorted[a];
    const auto& q = sorted[b];
    return std::tie(p[2], p[1], p[0]) < std::tie(q[2], q[1], q[0]);
  });
  for (int k : pi.original) pi.sets.push_back(sorted[k]);

  pi.element_pos.resize(x.n);
  pi.set_pos.resize(m);
  int next_set = 0;
  for (int u = 0; u < x.n; ++u) {
    pi.element_pos[u] = static_cast<int>(pi.order.size());
    pi.order.push_back({false, u});
    while (next_set < m && pi.sets[next_set][2] == u) {
      pi.set_pos[next_set] = static_cast<int>(pi.order.size());
      pi.order.push_back({true, next_set++});
    }
  }
  return pi;
}

int gamma(const PiSequence& pi, int i, int j) {
  const int m = static_cast<int>(pi.sets.size());
  if (i < 1 || i > m || j < 1 || j > 3) throw ValidationError("gamma index out of range");
  const int from = pi.element_pos[pi.sets[i - 1][j - 1]];
  const int to = pi.set_pos[i - 1];
  int elements = 0, sets = 0;
  for (int p = from + 1; p <= to; ++p) {
    if (pi.order[p].is_set)
      ++sets;
    else
      ++elements;  // never reaches `to`, which is a set
  }
  return j - 5 + elements + 5 * sets;
}

Weight ReductionOutput::cover_gap() const {
  Weight sum = 0;
  for (const auto& w : element_weight) sum += w;
  return sum / 2;
}

namespace {

// Shared part of both variants: Π, γ, the set gadgets (ids 1..9m) and weights.
ReductionOutput skeleton(const X3CInstance& x, Variant variant) {
  ReductionOutput out;
  out.variant = variant;
  out.input = x;
  out.pi = pi_sequence(x);
  const int m = static_cast<int>(x.sets.size());
  const int n = x.n;
  out.base_size = 1 + 9 * m;
  out.roles.resize(m);
  out.gammas.resize(m);
  out.element_leaves.assign(n, {});
  for (int i = 0; i < m; ++i) {
    const NodeId base = 1 + 9 * i;
    auto& role = out.roles[i];
    role.r = base;
    role.t = base + 1;
    for (int j = 0; j < 3; ++j) {
      role.s[j] = base + 2 + j;
      out.element_leaves[out.pi.sets[i][j]].push_back(role.s[j]);
      out.gammas[i][j] = gamma(out.pi, i + 1, j + 1);
    }
    for (int k = 0; k < 4; ++k) role.a[k] = base + 5 + k;
  }

  // Groups of Π-adjacent sets.
  bool prev_set = false;
  for (const auto& e : out.pi.order) {
    if (e.is_set) {
      if (!prev_set) out.groups.emplace_back();
      out.groups.back().push_back(e.index);
    }
    prev_set = e.is_set;
  }

  // Weights in Π order, doubled throughout.
  const Weight cube = Weight(out.base_size) * out.base_size * out.base_size;
  out.element_weight.assign(n, 0);
  out.W.assign(n, 0);
  std::vector<Weight> set_leaf(m, 0), t_weight(m), a_weight(m);
  Weight running = 0;
  for (const auto& e : out.pi.order) {
    if (!e.is_set) {
      const int u = e.index;
      out.W[u] = running;
      out.element_weight[u] = u == 0 ? Weight(2) : 2 + 6 * std::max<Weight>(cube * out.element_weight[u - 1], running);
      continue;
    }
    const int i = e.index;
    Weight a = 0, us = 0;
    for (int j = 0; j < 3; ++j) {
      const int u = out.pi.sets[i][j];
      a += out.W[u] + out.gammas[i][j] * out.element_weight[u];
      us += out.element_weight[u];
    }
    a_weight[i] = a;
    t_weight[i] = a + us / 2;
    set_leaf[i] = t_weight[i] + 4 * a + us;
    running += set_leaf[i];
  }
  out.doubled = true;

  // Weight vector for ids 0..9m; the caller appends its spine nodes.
  std::vector<Weight> w(out.base_size, 0);
  for (int i = 0; i < m; ++i) {
    const auto& role = out.roles[i];
    w[role.t] = t_weight[i];
    for (int j = 0; j < 3; ++j) w[role.s[j]] = out.element_weight[out.pi.sets[i][j]];
    for (NodeId a : role.a) w[a] = a_weight[i];
  }
  std::vector<NodeId> parent(out.base_size, 0);
  parent[0] = kNoNode;
  for (const auto& role : out.roles) {
    parent[role.t] = role.r;
    for (NodeId s : role.s) parent[s] = role.r;
  }
  out.tree = InputTree(std::move(parent), std::move(w));
  return out;
}

}  // namespace

ReductionOutput build_T(const X3CInstance& x) { return skeleton(x, Variant::Diameter4); }

ReductionOutput build_Tb(const X3CInstance& x) {
  ReductionOutput out = skeleton(x, Variant::Degree16);
  const int p = static_cast<int>(out.groups.size());
  if (p == 0) return out;
  const int m = out.m();
  const int size = 1 + 9 * m + p + (p - 1);
  std::vector<NodeId> parent(size, kNoNode);
  std::vector<Weight> w(size, 0);
  for (NodeId v = 1; v <= 9 * m; ++v) {
    parent[v] = out.tree.parent(v);
    w[v] = out.tree.weight(v);
  }
  out.h.resize(p);
  out.z.resize(p);
  for (int i = 0; i < p; ++i) out.h[i] = 9 * m + 1 + i;
  for (int i = 0; i + 1 < p; ++i) out.z[i] = 9 * m + 1 + p + i;
  out.z[p - 1] = 0;
  for (int g = 0; g < p; ++g) {
    for (int i : out.groups[g]) {
      parent[out.roles[i].r] = out.h[g];
      for (NodeId a : out.roles[i].a) parent[a] = out.h[g];
    }
    parent[out.h[g]] = out.z[g];
    if (g > 0) parent[out.z[g - 1]] = out.z[g];
  }
  std::vector<std::vector<NodeId>> children(size);
  for (int g = 0; g < p; ++g) {
    if (g > 0) children[out.z[g]].push_back(out.z[g - 1]);
    children[out.z[g]].push_back(out.h[g]);
  }
  for (NodeId v = 1; v <= 9 * m; ++v) children[parent[v]].push_back(v);
  out.tree = InputTree(std::move(parent), std::move(children), std::move(w));
  return out;
}

ReductionOutput build_reduction(const X3CInstance& x, Variant variant) {
  return variant == Variant::Diameter4 ? build_T(x) : build_Tb(x);
}

DecisionTree realization(const ReductionOutput& r, const RealizationSpec& y) {
  const int m = r.m();
  if (static_cast<int>(y.size()) != m) throw ValidationError("realization needs one flag per set");
  const InputTree& tree = r.tree;
  DecisionTree out;
  std::vector<char> identified(tree.size(), 0);
  std::vector<char> asked(tree.size(), 0);

  // Left-path queries from the top down, each with the index of its YES subtree.
  std::vector<std::pair<NodeId, int>> path;
  auto leaf_query = [&](NodeId v) {
    path.emplace_back(v, out.add_leaf(v));
    identified[v] = 1;
    asked[v] = 1;
  };
  for (auto it = r.pi.order.rbegin(); it != r.pi.order.rend(); ++it) {
    if (it->is_set) {
      const int i = it->index;
      const auto& role = r.roles[i];
      if (y[i]) {
        leaf_query(role.t);
      } else {
        // Sequential tree for t, s3, s2, s1 ending in the leaf r_i.
        int cur = out.add_leaf(role.r);
        for (int j = 0; j < 3; ++j) cur = out.add_query(role.s[j], cur, out.add_leaf(role.s[j]));
        cur = out.add_query(role.t, cur, out.add_leaf(role.t));
        path.emplace_back(role.r, cur);
        for (NodeId v : tree.preorder())
          if (tree.in_subtree(v, role.r)) identified[v] = asked[v] = 1;
      }
      for (NodeId a : role.a) leaf_query(a);
    } else {
      for (NodeId s : r.element_leaves[it->index])
        if (!asked[s]) leaf_query(s);
    }
  }

  // Remaining zero-weight nodes: split off the smallest non-top node each time.
  std::vector<NodeId> rest;
  for (NodeId v = 0; v < tree.size(); ++v)
    if (!identified[v]) rest.push_back(v);
  std::function<int(const std::vector<NodeId>&)> complete = [&](const std::vector<NodeId>& nodes) {
    NodeId top = nodes.front();
    for (NodeId v : nodes)
      if (tree.depth(v) < tree.depth(top)) top = v;
    if (nodes.size() == 1) return out.add_leaf(top);
    NodeId x = kNoNode;
    for (NodeId v : nodes)
      if (v != top) {
        x = v;
        break;
      }
    std::vector<NodeId> in, outside;
    for (NodeId v : nodes) (tree.in_subtree(v, x) ? in : outside).push_back(v);
    const int no = complete(outside);
    const int yes = complete(in);
    return out.add_query(x, no, yes);
  };
  int cur = complete(rest);
  for (auto it = path.rbegin(); it != path.rend(); ++it) cur = out.add_query(it->first, cur, it->second);
  out.set_root(cur);
  return out.compact();
}

GapReport cost_gap(const ReductionOutput& r, const RealizationSpec& y) {
  const int m = r.m();
  if (static_cast<int>(y.size()) != m) throw ValidationError("realization needs one flag per set");
  const InputTree& tree = r.tree;
  const DecisionTree dy = realization(r, y);
  GapReport rep;
  rep.direct = cost(realization(r, RealizationSpec(m, false)), tree) - cost(dy, tree);
  rep.analytic = 0;
  rep.shift.assign(m, {0, 0, 0});
  const auto depth_y = query_depths(dy, tree.size());
  for (int i = 0; i < m; ++i) {
    if (!y[i]) continue;
    RealizationSpec without = y;
    without[i] = false;
    const auto depth_without = query_depths(realization(r, without), tree.size());
    Weight us = 0;
    for (int j = 0; j < 3; ++j) {
      const NodeId s = r.roles[i].s[j];
      const Weight& wu = r.element_weight[r.pi.sets[i][j]];
      rep.shift[i][j] = depth_y[s] - depth_without[s];
      rep.analytic += (r.gammas[i][j] - rep.shift[i][j]) * wu;
      us += wu;
    }
    rep.analytic += us / 2;
  }
  if (rep.direct != rep.analytic)
    throw std::logic_error("cost gap mismatch: direct " + to_string(rep.direct) + ", analytic " +
                           to_string(rep.analytic));
  return rep;
}

CoverDecision decide_cover(const ReductionOutput& r, int max_sets, int oracle_limit) {
  const int m = r.m();
  if (m > max_sets || m > 30)
    throw ResourceError("decide_cover enumerates 2^m realizations; m = " + std::to_string(m) +
                        " exceeds the limit " + std::to_string(std::min(max_sets, 30)));
  CoverDecision d;
  d.base_cost = cost(realization(r, RealizationSpec(m, false)), r.tree);
  d.best_cost = d.base_cost;
  d.best.assign(m, false);
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    RealizationSpec y(m);
    for (int i = 0; i < m; ++i) y[i] = (mask >> i) & 1u;
    const Weight c = cost(realization(r, y), r.tree);
    if (c < d.best_cost) {
      d.best_cost = c;
      d.best = y;
    }
  }
  d.cover = d.best_cost <= d.base_cost - r.cover_gap();
  if (r.tree.size() <= oracle_limit) {
    d.oracle_checked = true;
    d.oracle_cost = opt_cost(r.tree, oracle_limit).cost;
  }
  return d;
}

bool x3c_brute(const X3CInstance& x, int max_sets) {
  validate_x3c(x);
  const int m = static_cast<int>(x.sets.size());
  if (m > max_sets) throw ResourceError("x3c_brute limited to " + std::to_string(max_sets) + " sets");
  std::vector<std::vector<int>> containing(x.n);
  for (int i = 0; i < m; ++i)
    for (int e : x.sets[i]) containing[e].push_back(i);
  std::vector<char> covered(x.n, 0);
  std::function<bool()> search = [&]() {
    int u = 0;
    while (u < x.n && covered[u]) ++u;
    if (u == x.n) return true;
    for (int i : containing[u]) {
      const auto& s = x.sets[i];
      if (covered[s[0]] || covered[s[1]] || covered[s[2]]) continue;
      for (int e : s) covered[e] = 1;
      if (search()) return true;
      for (int e : s) covered[e] = 0;
    }
    return false;
  };
  return search();
}

}  // namespace treesearch
