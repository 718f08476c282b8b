#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "support/suite.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/fptas.hpp"

using namespace treesearch;
using namespace treesearch::testing;

TEST_CASE("scaling arithmetic") {
  const InputTree t({kNoNode, 0, 0, 0}, {100, 0, 50, 1});
  const Rational half(1, 2);
  CHECK(scaling_factor(t, half) == Rational(25, 8));
  const auto s = scale_weights(t, half);
  CHECK(s.weight(0) == 32);
  CHECK(s.weight(1) == 0);
  CHECK(s.weight(2) == 16);
  CHECK(s.weight(3) == 1);

  const InputTree flat({kNoNode, 0, 1}, {7, 7, 7});
  for (NodeId v = 0; v < 3; ++v) CHECK(scale_weights(flat, Rational(1, 10)).weight(v) == 90);

  const InputTree zero({kNoNode, 0}, {0, 0});
  CHECK(scale_weights(zero, half) == zero);
}

TEST_CASE("scaled weights bracket the originals") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const auto t = random_instance(1 + k % 12, rng, 0, 1000);
    for (const Rational& eps : {Rational(1), Rational(1, 2), Rational(1, 10), Rational(3, 7)}) {
      const Rational K = scaling_factor(t, eps);
      const auto s = scale_weights(t, eps);
      for (NodeId v = 0; v < t.size(); ++v) {
        const Rational w(t.weight(v)), kw = K * Rational(s.weight(v));
        CHECK(w <= kw);
        CHECK(kw <= w + K);
      }
    }
  }
}

TEST_CASE("fptas on the star") {
  const auto r = fptas(star3(), Rational(1, 2));
  CHECK(r.cost == 10);
  CHECK(validate(r.tree, star3()).ok());
  const auto loose = fptas(star3(), Rational(1000000));
  CHECK(validate(loose.tree, star3()).ok());
  CHECK(loose.cost <= 1000001 * 10);
}

TEST_CASE("fptas tree is optimal for the scaled weights and within 1+eps") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 80; ++k) {
    const auto t = random_instance(1 + k % 9, rng, 0, 500);
    const Rational eps(1, 1 + k % 5);
    const auto r = fptas(t, eps);
    REQUIRE(validate(r.tree, t).ok());
    CHECK(r.scaled_cost == opt_cost(r.scaled).cost);
    CHECK(cost(r.tree, r.scaled) == r.scaled_cost);
    CHECK(Rational(r.cost) <= (1 + eps) * Rational(opt_cost(t).cost));
  }
}
