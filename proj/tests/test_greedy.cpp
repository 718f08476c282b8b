#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "support/suite.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/greedy.hpp"

using namespace treesearch;
using namespace treesearch::testing;

TEST_CASE("greedy on the star splits l1 off first") {
  const auto t = star3();
  CHECK(greedy_first_query(t, NodePiece::whole(t)) == 1);
  const auto d = greedy(t);
  CHECK(d == star3_tree());
  CHECK(cost(d, t) == 10);
}

TEST_CASE("greedy edge cases") {
  const InputTree one({kNoNode}, {3});
  CHECK(greedy(one) == DecisionTree::leaf(0));
  CHECK(greedy_first_query(one, NodePiece::whole(one)) == kNoNode);

  std::vector<NodeId> parent{kNoNode, 0, 1, 2, 3, 4, 5};
  const InputTree path7(parent, std::vector<Weight>(7, 1));
  CHECK(cost(greedy(path7), path7) == 20);
  CHECK(opt_cost(path7).cost == 20);
}

TEST_CASE("greedy stays within twice the optimum") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const auto t = random_instance(1 + k % 13, rng);
    const auto d = greedy(t);
    REQUIRE(validate(d, t).ok());
    CHECK(cost(d, t) <= 2 * opt_cost(t).cost);
  }
}

TEST_CASE("rerooting an optimal tree at the greedy query costs at most w(T)/2 more") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 300; ++k) {
    const auto t = random_instance(2 + k % 12, rng);
    const auto best = opt_cost(t);
    const NodeId x = greedy_first_query(t, NodePiece::whole(t));
    std::vector<NodeId> in, out;
    for (NodeId v = 0; v < t.size(); ++v) (t.in_subtree(v, x) ? in : out).push_back(v);
    const auto yes = restrict(best.tree, t, NodePiece(t, in));
    const auto no = restrict(best.tree, t, NodePiece(t, out));
    const auto rerooted = DecisionTree::query(x, no, yes);
    REQUIRE(validate(rerooted, t).ok());
    CHECK(2 * cost(rerooted, t) <= 2 * best.cost + t.total_weight());
  }
}

TEST_CASE("zero weights can push smallest-id greedy past twice the optimum") {
  // Ties between zero-weight splits pick the shallow edge every time.
  const auto t = parse_instance_string("4 0\n0 -1 0\n1 0 0\n2 1 0\n3 2 6\n");
  CHECK(cost(greedy(t), t) == 18);
  CHECK(opt_cost(t).cost == 6);
}
