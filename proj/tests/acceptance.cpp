// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/suite.hpp"
#include "treesearch/bounded_dp.hpp"
#include "treesearch/diameter.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/fptas.hpp"
#include "treesearch/greedy.hpp"
#include "treesearch/reduction.hpp"
#include "x3c_corpus.hpp"

using namespace treesearch;
using namespace treesearch::testing;

namespace {

// Pinned tolerances and sizes.
constexpr int kExhaustiveN = 9;
constexpr int kFptasN = 8;
constexpr int kGreedyRandom = 1000;
constexpr int kGreedyRandomMaxN = 16;
constexpr int kBaseCaseMaxCell = 6;
constexpr int kBaseCaseMaxLength = 9;
constexpr int kReductionMaxSets = 4;
constexpr int kCoverMaxSets = 8;
constexpr int kCoverMinEach = 20;
constexpr int kDiameterOracleN = 10;
constexpr double kDiam3StepConstant = 1.0;  // steps ≤ c·n² for n in 10..200
constexpr int kRestrictPairs = 500;
constexpr int kMaxDegreeTb = 16;

struct Outcome {
  bool pass = true;
  long checked = 0;
  long violations = 0;
  std::string detail;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    ++violations;
    pass = false;
    if (first_failure.empty()) first_failure = what;
  }
};

std::string describe(const InputTree& t) {
  std::ostringstream s;
  s << "parents=[";
  for (NodeId v = 0; v < t.size(); ++v) s << (v ? "," : "") << t.parent(v);
  s << "] weights=[";
  for (NodeId v = 0; v < t.size(); ++v) s << (v ? "," : "") << t.weight(v);
  s << "]";
  return s.str();
}

struct Suite {
  std::vector<InputTree> trees;
};

Suite exhaustive(int max_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Suite s;
  for (const auto& shape : shapes_up_to(max_n))
    for (Profile p : kProfiles) s.trees.push_back(with_profile(shape, p, rng));
  return s;
}

Outcome c1_dp_matches_oracle() {
  Outcome o;
  const auto suite = exhaustive(kExhaustiveN, 101);
  for (const auto& t : suite.trees) {
    const auto dp = optimal_bounded(t);
    const Weight opt = opt_cost(t).cost;
    o.check(dp.cost == opt && cost(dp.tree, t) == opt, "dp != opt on " + describe(t));
  }
  o.detail = std::to_string(suite.trees.size()) + " instances (" +
             std::to_string(shapes_up_to(kExhaustiveN).size()) + " shapes x 3 profiles)";
  return o;
}

Outcome c2_greedy_factor_two() {
  Outcome o;
  auto suite = exhaustive(kExhaustiveN, 102);
  std::mt19937_64 rng(202);
  for (int k = 0; k < kGreedyRandom; ++k) suite.trees.push_back(random_instance(1 + k % kGreedyRandomMaxN, rng));
  double worst = 1.0;
  for (const auto& t : suite.trees) {
    const Weight g = cost(greedy(t), t);
    const Weight opt = opt_cost(t).cost;
    o.check(g <= 2 * opt, "greedy > 2 opt on " + describe(t));
    if (opt > 0) worst = std::max(worst, static_cast<double>(g) / static_cast<double>(opt));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst ratio %.4f", worst);
  o.detail = std::to_string(suite.trees.size()) + " instances, " + buf;
  return o;
}

Outcome c3_fptas_guarantee() {
  Outcome o;
  const auto suite = exhaustive(kFptasN, 103);
  const Rational eps_values[] = {Rational(1), Rational(1, 2), Rational(1, 10)};
  for (const auto& t : suite.trees) {
    const Weight opt = opt_cost(t).cost;
    for (const auto& eps : eps_values) {
      const auto r = fptas(t, eps);
      // cost ≤ (1+ε)·OPT, compared exactly as cost·den ≤ (den+num)·OPT.
      const Weight num = boost::multiprecision::numerator(eps);
      const Weight den = boost::multiprecision::denominator(eps);
      o.check(r.cost * den <= (den + num) * opt && cost(r.tree, t) == r.cost,
              "fptas eps=" + eps.str() + " on " + describe(t));
    }
  }
  o.detail = std::to_string(suite.trees.size()) + " instances x 3 eps";
  return o;
}

// Leaf weight below every node of D, by index.
std::vector<Weight> subtree_weights(const DecisionTree& d, const InputTree& t) {
  std::vector<Weight> w(d.arena_size(), 0);
  std::function<Weight(int)> go = [&](int u) -> Weight {
    if (u < 0) return 0;
    const auto& x = d.node(u);
    w[u] = x.is_leaf() ? t.weight(x.label) : go(x.no) + go(x.yes);
    return w[u];
  };
  go(d.root());
  return w;
}

void check_geodec(const DecisionTree& d, const InputTree& t, Outcome& o, long& deep_nodes) {
  const int threshold = 6 * (t.max_children() + 1) + 1;
  const auto w = subtree_weights(d, t);
  std::function<void(int, int)> go = [&](int u, int depth) {
    if (u < 0) return;
    if (depth >= threshold) {
      ++deep_nodes;
      o.check(2 * w[u] <= t.total_weight(), "heavy deep node on " + describe(t));
    }
    const auto& x = d.node(u);
    if (!x.is_leaf()) {
      go(x.no, depth + 1);
      go(x.yes, depth + 1);
    }
  };
  go(d.root(), 0);
}

Outcome c4_height_bound() {
  Outcome o;
  const auto suite = exhaustive(kExhaustiveN, 104);
  long deep = 0;
  int slack = 1 << 30;
  for (const auto& t : suite.trees) {
    ExactSolver s(t);
    const int h = s.min_optimal_height(s.full());
    o.check(h < height_bound(t), "height bound on " + describe(t));
    slack = std::min(slack, height_bound(t) - h);
    check_geodec(s.tree(s.full()), t, o, deep);
  }
  // Depth 6(Δ+1)+1 is out of reach for n ≤ 9; long paths with geometric
  // weights give optimal trees deep enough to exercise the weight condition.
  std::mt19937_64 rng(204);
  for (int n = 14; n <= 20; ++n) {
    for (int k = 0; k < 3; ++k) {
      std::vector<NodeId> parent(n);
      std::vector<Weight> w(n);
      for (int v = 0; v < n; ++v) {
        parent[v] = v - 1;
        w[v] = Weight(1) << (k == 0 ? v : std::uniform_int_distribution<int>(0, 2 * n)(rng));
      }
      const InputTree t(parent, w);
      ExactSolver s(t);
      check_geodec(s.tree(s.full()), t, o, deep);
    }
  }
  o.detail = std::to_string(suite.trees.size()) + " instances, min slack " + std::to_string(slack) +
             ", deep nodes checked " + std::to_string(deep);
  if (deep == 0) o.check(false, "geoDec check never reached a deep node");
  return o;
}

Outcome c5_base_case() {
  Outcome o;
  long plps = 0;
  for (const Weight w : {Weight(0), Weight(1), Weight(7), Weight(1) << 70}) {
    const InputTree one({kNoNode}, {w});
    for (int len = 1; len <= kBaseCaseMaxLength; ++len) {
      for (std::uint64_t blocked = 0; blocked < (std::uint64_t{1} << len); ++blocked) {
        const Plp p{len, blocked};
        const std::uint64_t free = p.unassigned_mask();
        if (free == 0) {
          o.check(!solve_pb(one, SubforestId::tree(0), p, len).has_value(), "all-blocked PLP accepted");
          continue;
        }
        const int i = std::countr_zero(free) + 1;
        if (i > kBaseCaseMaxCell) continue;
        ++plps;
        const auto r = solve_pb(one, SubforestId::tree(0), p, len);
        o.check(r.has_value() && r->first == i * w, "base case " + p.str() + " w=" + w.str());
      }
    }
  }
  o.detail = std::to_string(plps) + " (PLP, weight) pairs";
  return o;
}

RealizationSpec spec_of(int m, unsigned mask) {
  RealizationSpec y(m);
  for (int i = 0; i < m; ++i) y[i] = (mask >> i) & 1u;
  return y;
}

Outcome c6_reduction_identities(std::string& note) {
  Outcome o;
  std::vector<X3CInstance> corpus = {single_set(), example1(), overlap_no_cover(), two_disjoint()};
  std::mt19937_64 rng(106);
  for (int k = 0; k < 60; ++k) {
    const auto x = random_x3c(3 * (1 + k % 4), 1 + k % kReductionMaxSets, rng);
    if (!x.sets.empty()) corpus.push_back(x);
  }
  long realizations = 0;
  int m1 = 0;
  for (const auto& x : corpus) {
    const auto pi = pi_sequence(x);
    const int m = static_cast<int>(x.sets.size());
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= 3; ++j) o.check(gamma(pi, i, j) >= 3, "gamma < 3 on " + format_x3c(x));

    const auto r = build_T(x);
    // A single set yields root - r - leaves, which has diameter 3.
    if (m == 1) {
      ++m1;
      o.check(r.tree.diameter() == 3, "m=1 diameter");
    } else {
      o.check(r.tree.diameter() == 4, "diameter != 4 on " + format_x3c(x));
    }
    o.check(build_Tb(x).tree.max_degree() <= kMaxDegreeTb, "max degree of T^b on " + format_x3c(x));

    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      ++realizations;
      try {
        const auto g = cost_gap(r, spec_of(m, mask));
        o.check(g.direct == g.analytic, "gap mismatch on " + format_x3c(x));
      } catch (const std::logic_error&) {
        o.check(false, "gap mismatch on " + format_x3c(x));
      }
    }
  }
  o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(realizations) + " realizations";
  note = std::to_string(m1) + " instances with m=1 have diameter 3 rather than 4";
  return o;
}

Outcome c7_cover_equivalence() {
  Outcome o;
  std::vector<X3CInstance> yes = {single_set(), two_disjoint(), example1()};
  std::vector<X3CInstance> no = {overlap_no_cover()};
  std::mt19937_64 rng(107);
  for (int k = 0; static_cast<int>(yes.size()) < kCoverMinEach + 5 && k < 10000; ++k) {
    const int n = 3 * (1 + k % 3);
    const auto x = planted_x3c(n, std::uniform_int_distribution<int>(0, kCoverMaxSets - n / 3)(rng), rng);
    if (static_cast<int>(x.sets.size()) <= kCoverMaxSets) yes.push_back(x);
  }
  for (int k = 0; static_cast<int>(no.size()) < kCoverMinEach + 5 && k < 10000; ++k) {
    const auto x = random_x3c(3 * (2 + k % 3), 2 + k % (kCoverMaxSets - 1), rng);
    if (!x.sets.empty() && !x3c_brute(x)) no.push_back(x);
  }
  int n_yes = 0, n_no = 0;
  for (const auto* group : {&yes, &no}) {
    for (const auto& x : *group) {
      const bool brute = x3c_brute(x);
      (brute ? n_yes : n_no)++;
      for (auto variant : {Variant::Diameter4, Variant::Degree16}) {
        const auto d = decide_cover(build_reduction(x, variant), kCoverMaxSets);
        o.check(d.cover == brute, "disagreement on " + format_x3c(x));
        if (d.oracle_checked) o.check(d.oracle_cost == d.best_cost, "oracle below realizations");
      }
    }
  }
  o.check(n_yes >= kCoverMinEach && n_no >= kCoverMinEach, "corpus too small");
  o.detail = std::to_string(n_yes) + " yes / " + std::to_string(n_no) + " no instances, both variants";
  return o;
}

Outcome c8_single_set_optimum() {
  Outcome o;
  std::vector<X3CInstance> xs = {single_set(), {3, {{2, 0, 1}}}};
  for (const auto& x : xs) {
    for (auto variant : {Variant::Diameter4, Variant::Degree16}) {
      const auto r = build_reduction(x, variant);
      if (variant == Variant::Diameter4) o.check(r.tree.size() == 10, "|T| != 10");
      const Weight a = cost(realization(r, {false}), r.tree);
      const Weight b = cost(realization(r, {true}), r.tree);
      o.check(opt_cost(r.tree).cost == std::min(a, b), "m=1 optimum differs from realizations");
    }
  }
  o.detail = "T and T^b for two labelings";
  return o;
}

InputTree diam3_instance(int n, std::mt19937_64& rng) {
  // Two centers 0 and 1, the other n-2 nodes split between them.
  std::vector<NodeId> parent(n, 0);
  parent[0] = kNoNode;
  std::vector<Weight> w(n);
  std::uniform_int_distribution<int> coin(0, 1), weight(1, 1000);
  for (NodeId v = 2; v < n; ++v) parent[v] = coin(rng);
  for (auto& x : w) x = weight(rng);
  return InputTree(parent, w);
}

Outcome c9_diameter_dichotomy() {
  Outcome o;
  std::mt19937_64 rng(109);
  long cases = 0;
  for (const auto& shape : small_diameter_shapes(kDiameterOracleN)) {
    for (Profile p : kProfiles) {
      const auto t = with_profile(shape, p, rng);
      const Weight opt = opt_cost(t).cost;
      const auto d3 = solve_diam3(t);
      o.check(d3.cost == opt && cost(d3.tree, t) == opt, "diam3 != opt on " + describe(t));
      if (t.diameter() <= 2) {
        const auto st = solve_star(t);
        o.check(st.cost == opt && cost(st.tree, t) == opt, "star != opt on " + describe(t));
      }
      ++cases;
    }
  }
  double worst = 0;
  for (int n = 10; n <= 200; n += 10) {
    const auto t = diam3_instance(n, rng);
    const auto r = solve_diam3(t);
    const double c = static_cast<double>(r.steps) / (static_cast<double>(n) * n);
    worst = std::max(worst, c);
    o.check(c <= kDiam3StepConstant, "diam3 steps above c*n^2 at n=" + std::to_string(n));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, ", max steps/n^2 = %.3f (c = %.1f)", worst, kDiam3StepConstant);
  o.detail = std::to_string(cases) + " oracle cases" + buf;
  return o;
}

// A random valid search tree: every piece is split by a uniformly chosen query.
DecisionTree random_search_tree(const InputTree& t, std::mt19937_64& rng) {
  DecisionTree d;
  std::function<int(std::vector<NodeId>)> build = [&](std::vector<NodeId> s) -> int {
    if (s.size() == 1) return d.add_leaf(s[0]);
    const NodePiece piece(t, s);
    std::vector<NodeId> options;
    for (NodeId v : s)
      if (piece.splits(v)) options.push_back(v);
    const NodeId q = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    std::vector<NodeId> in, out;
    for (NodeId v : s) (t.in_subtree(v, q) ? in : out).push_back(v);
    const int no = build(out);
    const int yes = build(in);
    return d.add_query(q, no, yes);
  };
  std::vector<NodeId> all(t.size());
  for (NodeId v = 0; v < t.size(); ++v) all[v] = v;
  d.set_root(build(all));
  return d;
}

Outcome c10_restriction() {
  Outcome o;
  std::mt19937_64 rng(110);
  for (int k = 0; k < kRestrictPairs; ++k) {
    const auto t = random_instance(2 + k % 15, rng);
    const auto d = k % 2 ? random_search_tree(t, rng) : greedy(t);
    const NodeId v = std::uniform_int_distribution<int>(0, t.size() - 1)(rng);
    const auto piece = NodePiece::subtree(t, v);
    const auto r = restrict(d, t, piece);
    if (!validate(r, t, piece).ok()) {
      o.check(false, "restricted tree invalid on " + describe(t));
      continue;
    }
    const auto before = leaf_depths(d, t.size()), after = leaf_depths(r, t.size());
    for (NodeId x : piece.nodes()) {
      // n_x: ancestors of l_x whose query does not split the piece.
      int n_x = 0;
      for (int u = d.root(); !d.node(u).is_leaf();) {
        const auto& q = d.node(u);
        if (!piece.splits(q.label)) ++n_x;
        u = t.in_subtree(x, q.label) ? q.yes : q.no;
      }
      o.check(after[x] == before[x] - n_x, "depth identity on " + describe(t));
    }
  }
  o.detail = std::to_string(kRestrictPairs) + " pairs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::string diameter_note;
  const std::vector<Criterion> criteria = {
      {"dp equals oracle, all shapes n<=9", c1_dp_matches_oracle},
      {"greedy within factor 2", c2_greedy_factor_two},
      {"fptas within 1+eps", c3_fptas_guarantee},
      {"optimal height below height_bound, deep nodes light", c4_height_bound},
      {"dp base case costs i*w", c5_base_case},
      {"reduction gap, gamma, diameter, degree", [&] { return c6_reduction_identities(diameter_note); }},
      {"decide_cover equals brute force", c7_cover_equivalence},
      {"m=1 optimum is a realization", c8_single_set_optimum},
      {"star and diameter-3 solvers", c9_diameter_dichotomy},
      {"restriction depth identity", c10_restriction},
  };

  int failed = 0;
  double total = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total += secs;
    std::printf("[%s] %2zu. %s: %ld checks, %ld violations; %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.checked, o.violations, o.detail.c_str(), secs);
    if (!o.pass) {
      ++failed;
      std::printf("       first failure: %s\n", o.first_failure.c_str());
    }
    if (i == 5 && !diameter_note.empty()) std::printf("       note: %s\n", diameter_note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
