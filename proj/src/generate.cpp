#include "treesearch/generate.hpp"

#include <algorithm>
#include <numeric>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "treesearch/errors.hpp"

namespace treesearch {

WeightRange parse_weight_range(const std::string& text) {
  const auto dots = text.find("..");
  WeightRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = parse_weight(text);
  } else {
    r.lo = parse_weight(text.substr(0, dots));
    r.hi = parse_weight(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw ValidationError("empty weight range " + text);
  return r;
}

Shape parse_shape(const std::string& text) {
  if (text == "random") return Shape::Random;
  if (text == "path") return Shape::Path;
  if (text == "star") return Shape::Star;
  if (text == "complete-d-ary") return Shape::CompleteDary;
  throw ValidationError("unknown shape '" + text + "'");
}

std::string shape_name(Shape shape) {
  switch (shape) {
    case Shape::Random: return "random";
    case Shape::Path: return "path";
    case Shape::Star: return "star";
    case Shape::CompleteDary: return "complete-d-ary";
  }
  return "?";
}

InputTree generate(Shape shape, int n, std::uint64_t seed, const WeightRange& weights, int arity) {
  if (n < 1) throw ValidationError("a tree needs at least one node");
  if (arity < 1) throw ValidationError("arity must be positive");
  if (weights.lo > weights.hi || weights.lo < 0) throw ValidationError("bad weight range");
  boost::random::mt19937_64 rng(seed);
  std::vector<NodeId> parent(n, kNoNode);
  switch (shape) {
    case Shape::Path:
      for (int v = 1; v < n; ++v) parent[v] = v - 1;
      break;
    case Shape::Star:
      for (int v = 1; v < n; ++v) parent[v] = 0;
      break;
    case Shape::CompleteDary:
      for (int v = 1; v < n; ++v) parent[v] = (v - 1) / arity;
      break;
    case Shape::Random: {
      std::vector<NodeId> attach(n, kNoNode);
      for (int v = 1; v < n; ++v) attach[v] = boost::random::uniform_int_distribution<int>(0, v - 1)(rng);
      std::vector<NodeId> label(n);
      std::iota(label.begin(), label.end(), 0);
      for (int i = n - 1; i > 0; --i)
        std::swap(label[i], label[boost::random::uniform_int_distribution<int>(0, i)(rng)]);
      for (int v = 1; v < n; ++v) parent[label[v]] = label[attach[v]];
      break;
    }
  }
  std::vector<Weight> w(n);
  boost::random::uniform_int_distribution<Weight> dist(weights.lo, weights.hi);
  for (auto& x : w) x = weights.lo == weights.hi ? weights.lo : dist(rng);
  return InputTree(std::move(parent), std::move(w));
}

}  // namespace treesearch
