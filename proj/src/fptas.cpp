#include "treesearch/fptas.hpp"

#include <algorithm>

#include "treesearch/errors.hpp"

namespace treesearch {

namespace {

Weight max_weight(const InputTree& tree) {
  Weight w = 0;
  for (const auto& x : tree.weights()) w = std::max(w, x);
  return w;
}

}  // namespace

Rational scaling_factor(const InputTree& tree, const Rational& eps) {
  if (eps <= 0) throw ValidationError("epsilon must be positive");
  const Weight n = tree.size();
  return eps * Rational(max_weight(tree)) / Rational(n * n);
}

InputTree scale_weights(const InputTree& tree, const Rational& eps) {
  if (eps <= 0) throw ValidationError("epsilon must be positive");
  const Weight big = max_weight(tree);
  if (big == 0) return tree;
  // ⌈w·n²·q / (p·W)⌉ for ε = p/q.
  const Weight n = tree.size();
  const Weight p = boost::multiprecision::numerator(eps);
  const Weight q = boost::multiprecision::denominator(eps);
  const Weight den = p * big;
  std::vector<Weight> scaled;
  scaled.reserve(tree.size());
  for (const auto& w : tree.weights()) {
    const Weight num = w * n * n * q;
    scaled.push_back((num + den - 1) / den);
  }
  return tree.with_weights(std::move(scaled));
}

FptasResult fptas(const InputTree& tree, const Rational& eps, const BoundedOptions& options) {
  InputTree scaled = scale_weights(tree, eps);
  auto solved = optimal_bounded(scaled, options);
  FptasResult out{std::move(solved.tree), 0, std::move(solved.cost), std::move(scaled), solved.height};
  out.cost = cost(out.tree, tree);
  return out;
}

}  // namespace treesearch
