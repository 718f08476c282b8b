#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesearch/decision_tree.hpp"
#include "treesearch/instance.hpp"

namespace treesearch {

/// Exact cover by 3-sets: universe {0..n-1}, every set has three distinct
/// elements, every element lies in at most three sets, 3 | n.
struct X3CInstance {
  int n = 0;
  std::vector<std::array<int, 3>> sets;
};

/// Throws ValidationError describing the first violated condition.
void validate_x3c(const X3CInstance& x);

// File format: "n m", then m lines of three 0-based element indices.
X3CInstance parse_x3c(std::istream& in);
X3CInstance parse_x3c_string(const std::string& text);
X3CInstance read_x3c_file(const std::string& path);
std::string format_x3c(const X3CInstance& x);

/// Sets sorted by (x3, x2, x1), input order on ties, merged with the elements:
/// element u precedes set X iff u ≤ max(X).
struct PiSequence {
  struct Entry {
    bool is_set;
    int index;  // element id, or rank of the set in sorted order
  };
  int n = 0;
  std::vector<Entry> order;
  std::vector<std::array<int, 3>> sets;  // by rank, elements ascending
  std::vector<int> original;             // rank -> input position
  std::vector<int> element_pos, set_pos;  // positions in `order`

  /// Elements as letters when n ≤ 26 (else u1..un), sets as X1..Xm.
  std::string str() const;
  std::string element_name(int u) const;
};

PiSequence pi_sequence(const X3CInstance& x);

/// γ(i, j) for 1-based set rank i and j ∈ {1,2,3}: j − 5, plus the elements
/// strictly between u_ij and X_i, plus 5 per set in (u_ij, X_i].
int gamma(const PiSequence& pi, int i, int j);

enum class Variant { Diameter4, Degree16 };

struct SetRoles {
  NodeId r = kNoNode, t = kNoNode;
  std::array<NodeId, 3> s{};
  std::array<NodeId, 4> a{};
};

/// Generated tree-search instance plus bookkeeping. All weights are twice the
/// textbook values so that w(t_j) = w(a_j1) + w(X_j)/2 stays integral; costs
/// and thresholds scale by the same factor.
struct ReductionOutput {
  Variant variant = Variant::Diameter4;
  X3CInstance input;
  PiSequence pi;
  InputTree tree{{kNoNode}, {Weight(0)}};
  std::vector<SetRoles> roles;                    // by set rank
  std::vector<std::vector<NodeId>> element_leaves;  // s-leaves of each element, by set rank
  std::vector<Weight> element_weight;             // w(u_j)
  std::vector<Weight> W;                          // W_{u_j}
  std::vector<std::array<int, 3>> gammas;         // by set rank
  std::vector<std::vector<int>> groups;           // Π-adjacent runs of set ranks
  std::vector<NodeId> h, z;                       // Degree16 spine
  int base_size = 0;                              // |T| used in the weights
  bool doubled = true;

  int m() const { return static_cast<int>(roles.size()); }
  /// ½·Σ_u w(u).
  Weight cover_gap() const;
};

ReductionOutput build_T(const X3CInstance& x);
ReductionOutput build_Tb(const X3CInstance& x);
ReductionOutput build_reduction(const X3CInstance& x, Variant variant);

/// Set ranks realized in B-configuration (size m).
using RealizationSpec = std::vector<bool>;

/// Canonical search tree: walking Π from the back, each set contributes its
/// A- or B-configuration and each element a sequential tree over its
/// not-yet-asked leaves, each piece hung off the NO end of the previous.
/// Zero-weight leftovers are resolved at the bottom.
DecisionTree realization(const ReductionOutput& r, const RealizationSpec& y);

struct GapReport {
  Weight direct;    // cost(D^∅) − cost(D^Y)
  Weight analytic;  // Σ_{i∈Y} w(X_i)/2 + Σ_j (γ − d)·w(u_ij)
  std::vector<std::array<int, 3>> shift;  // d for each set rank in Y
};

/// Both sides of the cost-gap identity. Throws std::logic_error if they differ.
GapReport cost_gap(const ReductionOutput& r, const RealizationSpec& y);

struct CoverDecision {
  bool cover = false;
  Weight base_cost;  // cost(D^∅)
  Weight best_cost;  // min over all realizations
  RealizationSpec best;
  bool oracle_checked = false;
  Weight oracle_cost;
};

/// Whether the cheapest realization beats cost(D^∅) by at least ½Σ w(u).
/// Cross-checks the exact optimum when |T| ≤ oracle_limit.
CoverDecision decide_cover(const ReductionOutput& r, int max_sets = 20, int oracle_limit = 12);

/// Exhaustive exact-cover search.
bool x3c_brute(const X3CInstance& x, int max_sets = 25);

}  // namespace treesearch
