#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "treesearch/reduction.hpp"

namespace treesearch::testing {

inline X3CInstance example1() { return {6, {{0, 1, 2}, {1, 2, 3}, {3, 4, 5}, {1, 4, 5}}}; }
inline X3CInstance single_set() { return {3, {{0, 1, 2}}}; }
inline X3CInstance overlap_no_cover() { return {6, {{0, 1, 2}, {2, 3, 4}, {1, 3, 5}}}; }
inline X3CInstance two_disjoint() { return {6, {{0, 1, 2}, {3, 4, 5}}}; }

/// Random instance with m sets over n elements; each element in at most three sets.
inline X3CInstance random_x3c(int n, int m, std::mt19937_64& rng) {
  X3CInstance x{n, {}};
  std::vector<int> count(n, 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int tries = 0; tries < 200 * (m + 1) && static_cast<int>(x.sets.size()) < m; ++tries) {
    std::array<int, 3> s{pick(rng), pick(rng), pick(rng)};
    if (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]) continue;
    if (count[s[0]] > 2 || count[s[1]] > 2 || count[s[2]] > 2) continue;
    for (int e : s) ++count[e];
    x.sets.push_back(s);
  }
  return x;
}

/// Random instance with a planted exact cover, padded with extra sets.
inline X3CInstance planted_x3c(int n, int extra, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  X3CInstance x{n, {}};
  std::vector<int> count(n, 0);
  for (int i = 0; i < n; i += 3) {
    x.sets.push_back({perm[i], perm[i + 1], perm[i + 2]});
    for (int k = 0; k < 3; ++k) ++count[perm[i + k]];
  }
  const auto more = random_x3c(n, extra, rng);
  for (const auto& s : more.sets) {
    if (count[s[0]] > 2 || count[s[1]] > 2 || count[s[2]] > 2) continue;
    for (int e : s) ++count[e];
    x.sets.push_back(s);
  }
  std::shuffle(x.sets.begin(), x.sets.end(), rng);
  return x;
}

}  // namespace treesearch::testing
