#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "support/suite.hpp"
#include "treesearch/bounded_dp.hpp"
#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"

using namespace treesearch;
using namespace treesearch::testing;

TEST_CASE("PLP encoding") {
  const auto p = Plp::parse("UBU");
  CHECK(p.length == 3);
  CHECK(p.is_blocked(2));
  CHECK_FALSE(p.is_blocked(1));
  CHECK(p.str() == "UBU");
  CHECK(p.unassigned_mask() == 0b101);
}

TEST_CASE("base case costs i times the weight") {
  const InputTree one({kNoNode}, {5});
  const auto r = solve_pb(one, SubforestId::tree(0), Plp::parse("UBU"), 3);
  REQUIRE(r.has_value());
  CHECK(r->first == 5);
  CHECK(solve_pb(one, SubforestId::tree(0), Plp::parse("BBU"), 3)->first == 15);
  CHECK_FALSE(solve_pb(one, SubforestId::tree(0), Plp::parse("BBB"), 3).has_value());
}

TEST_CASE("path instance through the EST") {
  const auto t = path3();
  const auto r = solve_pb(t, SubforestId::tree(0), Plp::unassigned(4), 4);
  REQUIRE(r.has_value());
  CHECK(r->first == 6);  // 5 plus w(a) for the root query
  CHECK(check_est(r->second, t, SubforestId::tree(0)).ok());
  CHECK(compatible(r->second, Plp::unassigned(4)));
  const auto d = est_to_search_tree(r->second, t);
  CHECK(validate(d, t).ok());
  CHECK(cost(d, t) == 5);
  CHECK_FALSE(solve_pb(t, SubforestId::tree(0), Plp::parse("BBBB"), 4).has_value());
}

TEST_CASE("height bound formula") {
  CHECK(height_bound(path3()) == 32);
  CHECK(height_bound(InputTree({kNoNode}, {1})) >= 1);
  CHECK(dp_height(path3()) == 3);
}

TEST_CASE("optimal_bounded on the fixtures") {
  CHECK(optimal_bounded(path3()).cost == 5);
  CHECK(optimal_bounded(star3()).cost == 10);
  CHECK(optimal_bounded(InputTree({kNoNode}, {9})).cost == 0);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(optimal_bounded(random_instance(30, rng), BoundedOptions{30, 24}), ResourceError);
}

TEST_CASE("search tree to EST and back") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const auto t = random_instance(1 + k % 10, rng);
    const auto d = opt_cost(t).tree;
    const auto est = search_tree_to_est(d, t, 3);
    CHECK(check_est(est, t, SubforestId::tree(t.root())).ok());
    CHECK(est.height() == std::max(d.height() + 1, 3 - 1));  // three cells on the left path
    CHECK(est.cost(t) == cost(d, t) + t.total_weight());
    CHECK(est_to_search_tree(est, t) == d);
  }
}

TEST_CASE("DP results are compatible, bounded, and additive in Case 1") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 60; ++k) {
    const auto t = random_instance(2 + k % 8, rng);
    const int b = dp_height(t);
    PbSolver solver(t, b);
    for (NodeId u = 0; u < t.size(); ++u) {
      for (const Plp& p : {Plp::unassigned(b), Plp{b, 0b10}, Plp{b, 0b1}}) {
        const auto tree_id = SubforestId::tree(u);
        if (auto est = solver.solve(tree_id, p)) {
          CHECK(compatible(*est, p));
          CHECK(est->height() <= b);
          CHECK(check_est(*est, t, tree_id).ok());
          CHECK(est->cost(t) == *solver.cost(tree_id, p));
        }
        for (int f = 2; f <= t.child_count(u); ++f) {
          const auto forest = SubforestId::forest(u, f);
          const auto c = solver.choice(forest, p);
          if (c.kind != PbChoice::Kind::Split) continue;
          const std::uint64_t free = p.unassigned_mask();
          const Plp last{p.length, p.blocked | (free & ~c.cells_for_last)};
          const Plp rest{p.length, p.blocked | c.cells_for_last};
          const auto prev = f == 2 ? SubforestId::tree(t.children(u)[0]) : SubforestId::forest(u, f - 1);
          CHECK(*solver.cost(forest, p) ==
                *solver.cost(SubforestId::tree(t.children(u)[f - 1]), last) + *solver.cost(prev, rest));
        }
      }
    }
  }
}

TEST_CASE("cost is non-increasing in the height and settles at the optimum") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 40; ++k) {
    const auto t = random_instance(2 + k % 8, rng);
    const Weight opt = opt_cost(t).cost;
    std::optional<Weight> prev;
    for (int b = 1; b <= t.size() + 2; ++b) {
      const auto c = PbSolver(t, b).cost(SubforestId::tree(t.root()), Plp::unassigned(b));
      if (prev) {
        REQUIRE(c.has_value());
        CHECK(*c <= *prev);
      }
      if (c) prev = c;
      if (b >= dp_height(t)) CHECK(*c - t.weight(t.root()) == opt);
    }
  }
}

TEST_CASE("DP matches the oracle on random instances") {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 150; ++k) {
    const auto t = random_instance(1 + k % 10, rng, 0, 12);
    const auto r = optimal_bounded(t);
    REQUIRE(validate(r.tree, t).ok());
    CHECK(r.cost == opt_cost(t).cost);
    CHECK(cost(r.tree, t) == r.cost);
  }
}
