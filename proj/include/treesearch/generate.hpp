#pragma once

#include <cstdint>
#include <string>

#include "treesearch/instance.hpp"

namespace treesearch {

enum class Shape { Random, Path, Star, CompleteDary };

/// Inclusive range written "lo..hi" (a single value means lo = hi).
struct WeightRange {
  Weight lo = 1;
  Weight hi = 1;
};

WeightRange parse_weight_range(const std::string& text);
Shape parse_shape(const std::string& text);
std::string shape_name(Shape shape);

/// Deterministic for a fixed seed. Random trees are random recursive trees
/// (each node attaches to a uniform earlier node) under a uniform relabelling;
/// the other shapes are rooted at 0 and numbered breadth-first.
/// Throws ValidationError for n < 1, arity < 1 or an empty range.
InputTree generate(Shape shape, int n, std::uint64_t seed, const WeightRange& weights, int arity = 2);

}  // namespace treesearch
