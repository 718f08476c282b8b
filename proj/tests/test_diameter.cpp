#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "support/suite.hpp"
#include "treesearch/diameter.hpp"
#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"

using namespace treesearch;
using namespace treesearch::testing;

TEST_CASE("star solver") {
  const auto r = solve_star(star3());
  CHECK(r.cost == 10);
  CHECK(r.tree == star3_tree());

  const InputTree even({kNoNode, 0, 0, 0}, {1, 4, 4, 4});
  const auto e = solve_star(even);
  CHECK(e.tree.node(e.tree.root()).label == 1);
  CHECK(e.cost == opt_cost(even).cost);

  CHECK(solve_star(InputTree({kNoNode}, {3})).cost == 0);
  // Rooted at a leaf instead of the center.
  const InputTree leaf_root({kNoNode, 0, 1, 1}, {5, 1, 2, 3});
  CHECK(solve_star(leaf_root).cost == opt_cost(leaf_root).cost);
}

TEST_CASE("diameter-3 solver") {
  // r(2) - r'(4); x(5) on r; y(3), z(1) on r'.
  const InputTree t({kNoNode, 0, 0, 1, 1}, {2, 4, 5, 3, 1});
  const auto r = solve_diam3(t);
  CHECK(r.cost == 35);
  CHECK(r.cost == opt_cost(t).cost);
  CHECK(validate(r.tree, t).ok());
  CHECK(cost(r.tree, t) == r.cost);

  // r' without leaves is a star.
  const InputTree s({kNoNode, 0, 0, 0}, {2, 4, 5, 3});
  CHECK(solve_diam3(s).cost == solve_star(s).cost);

  const InputTree p4({kNoNode, 0, 1, 2, 3}, {1, 1, 1, 1, 1});
  CHECK_THROWS_AS(solve_diam3(p4), ValidationError);
  CHECK_THROWS_AS(solve_star(InputTree({kNoNode, 0, 1, 2}, {1, 1, 1, 1})), ValidationError);
}

TEST_CASE("diameter solvers match the oracle on small shapes") {
  std::mt19937_64 rng(51);
  for (const auto& shape : small_diameter_shapes(8)) {
    for (Profile p : kProfiles) {
      const auto t = with_profile(shape, p, rng);
      const Weight opt = opt_cost(t).cost;
      const auto d3 = solve_diam3(t);
      CHECK(d3.cost == opt);
      CHECK(cost(d3.tree, t) == opt);
      if (t.diameter() <= 2) CHECK(solve_star(t).cost == opt);
    }
  }
}
