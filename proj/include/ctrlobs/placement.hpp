#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/errors.hpp"
#include "ctrlobs/matching.hpp"
#include "ctrlobs/structure.hpp"

namespace ctrlobs {

/// States that receive a dedicated input and states that feed a dedicated
/// output. 1-based state indices, each list sorted and duplicate-free.
struct Placement {
  int n = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;

  /// Number of distinct states touched by an input, an output, or both.
  /// Placing both on the same state counts once.
  int cost() const {
    std::vector<int> u;
    u.reserve(inputs.size() + outputs.size());
    std::set_union(inputs.begin(), inputs.end(), outputs.begin(),
                   outputs.end(), std::back_inserter(u));
    return static_cast<int>(u.size());
  }
};

namespace detail {

inline void check_state_set(const std::vector<int>& states, int n,
                            const char* what) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] < 1 || states[i] > n) {
      throw input_error(std::string(what) + " state " +
                        std::to_string(states[i]) + " out of range for n=" +
                        std::to_string(n));
    }
    if (i > 0 && states[i] <= states[i - 1]) {
      throw input_error(std::string(what) +
                        " states must be sorted and duplicate-free");
    }
  }
}

inline void check_square_dynamics(const StructuralMatrix& a) {
  if (!a.square() || a.n() < 1) {
    throw input_error("dynamics pattern must be square with n >= 1, got " +
                      std::to_string(a.n_rows) + "x" +
                      std::to_string(a.n_cols));
  }
}

inline void require_strongly_connected(const StructuralMatrix& a,
                                       bool allow_not_strongly_connected) {
  if (allow_not_strongly_connected) return;
  if (!is_strongly_connected(digraph_of(a))) {
    throw precondition_error(
        "dynamics digraph is not strongly connected; placement results are "
        "only guaranteed for strongly connected networks");
  }
}

}  // namespace detail

/// Result of the joint solver: the placement, the matching it was read off
/// from, and whether the fallback for fully self-sufficient dynamics fired.
struct JointSolution {
  Placement placement;
  Matching matching;  // perfect on the doubled pattern, 2n pairs
  bool fallback = false;
};

/// Weighted bipartite graph steering the joint input/output selection for an
/// n-state dynamics pattern. Nodes 1..n stand for the states (columns on the
/// left, rows on the right) and nodes n+1..2n for a candidate input/output
/// per state. Edges:
///   (i, j)     weight 3  for every dynamics star at (j, i),
///   (n+k, k)   weight 1  candidate input feeding state k,
///   (k, n+k)   weight 1  state k feeding its candidate output,
///   (n+k, n+k) weight 2  candidate input and output of state k pair up,
///                        i.e. neither is placed.
/// Any perfect matching with a dynamics edges has total weight 2n + 3a, so
/// a maximum-weight perfect matching uses as much of the dynamics as
/// possible and places hardware only where the dynamics falls short.
inline WeightedBipartiteGraph build_placement_graph(const StructuralMatrix& a) {
  detail::check_square_dynamics(a);
  const int n = a.n();
  WeightedBipartiteGraph g;
  g.n_left = 2 * n;
  g.n_right = 2 * n;
  g.edges.reserve(a.stars.size() + 3 * static_cast<std::size_t>(n));
  for (const auto& [r, c] : a.stars) g.edges.push_back({c, r, 3});
  for (int k = 1; k <= n; ++k) {
    g.edges.push_back({n + k, k, 1});
    g.edges.push_back({k, n + k, 1});
    g.edges.push_back({n + k, n + k, 2});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const BipartiteEdge& x, const BipartiteEdge& y) {
              return std::make_pair(x.left, x.right) <
                     std::make_pair(y.left, y.right);
            });
  return g;
}

/// Minimum joint placement: a smallest set of states to equip such that a
/// strongly connected network becomes structurally controllable from the
/// dedicated inputs and structurally observable from the dedicated outputs.
/// Inputs and outputs land on the same states; placing both on one state is
/// what makes the joint selection beat placing them independently.
///
/// Runs one maximum-weight maximum-cardinality matching on the doubled
/// pattern (O(n^3)) and reads the selection off the matched dedicated edges.
/// When the dynamics pattern itself admits a perfect matching, no dedicated
/// edge is selected and one input/output pair is still required; it is
/// placed on state 1.
///
/// Equally good selections are disambiguated deterministically toward
/// low-numbered states: every dedicated edge for state k carries a secondary
/// bonus of 2n - k, scaled so that no bonus sum can outweigh a real weight
/// difference. Among optimal matchings this minimizes the index sum of the
/// equipped states, which in particular pins the reported optimum when the
/// true optimum is not unique.
///
/// Throws precondition_error when the digraph is not strongly connected,
/// unless `allow_not_strongly_connected` is set; results are then not
/// guaranteed to be minimal or even sufficient.
inline JointSolution solve_joint_placement(
    const StructuralMatrix& a, bool allow_not_strongly_connected = false) {
  detail::check_square_dynamics(a);
  detail::require_strongly_connected(a, allow_not_strongly_connected);
  const int n = a.n();

  const WeightedBipartiteGraph graph = build_placement_graph(a);
  // Composite weight w * scale + bonus: at most 2n dedicated edges with a
  // bonus below 2n each keeps every bonus sum under the scale, so the
  // primary (cardinality, weight) comparison is never flipped.
  const long long bonus_scale = 4LL * n * n + 1;
  WeightedBipartiteGraph biased = graph;
  for (BipartiteEdge& e : biased.edges) {
    long long bonus = 0;
    if (e.left > n && e.right <= n) bonus = 2LL * n - e.right;
    if (e.left <= n && e.right > n) bonus = 2LL * n - e.left;
    e.weight = e.weight * bonus_scale + bonus;
  }

  JointSolution sol;
  sol.matching = mwmm(biased);
  if (sol.matching.size() != 2 * n) {
    throw error("internal invariant violated: the doubled pattern always "
                "admits a perfect matching");
  }
  sol.matching.total_weight = 0;
  for (const auto& [l, r] : sol.matching.pairs) {
    auto it = std::lower_bound(
        graph.edges.begin(), graph.edges.end(), std::make_pair(l, r),
        [](const BipartiteEdge& e, const std::pair<int, int>& key) {
          return std::make_pair(e.left, e.right) < key;
        });
    sol.matching.total_weight += it->weight;
  }

  std::vector<int> inputs, outputs;
  for (const auto& [l, r] : sol.matching.pairs) {
    if (l > n && r <= n) inputs.push_back(r);   // candidate input used
    if (l <= n && r > n) outputs.push_back(l);  // candidate output used
  }
  std::sort(inputs.begin(), inputs.end());
  std::sort(outputs.begin(), outputs.end());
  if (inputs != outputs) {
    throw error("internal invariant violated: selected input and output "
                "states must coincide");
  }
  if (inputs.empty()) {
    sol.fallback = true;
    inputs.push_back(1);
    outputs.push_back(1);
  }
  sol.placement = Placement{n, std::move(inputs), std::move(outputs)};
  return sol;
}

/// Reads a placement off an explicit matching of the dynamics' bipartite
/// view: inputs go to rows (right nodes) the matching leaves uncovered,
/// outputs to uncovered columns (left nodes). A perfect matching yields
/// inputs = outputs = {1}. The matching must be valid for the pattern but
/// is otherwise taken as given; a non-maximum matching simply yields a
/// placement with more hardware.
inline Placement placement_from_matching(const StructuralMatrix& a,
                                         const Matching& m) {
  detail::check_square_dynamics(a);
  const int n = a.n();
  std::vector<char> col_covered(n + 1, 0), row_covered(n + 1, 0);
  for (const auto& [l, r] : m.pairs) {
    if (!a.has_star(r, l)) {
      throw input_error("matching pair (" + std::to_string(l) + ", " +
                        std::to_string(r) +
                        ") is not an edge of the dynamics pattern");
    }
    if (col_covered[l] || row_covered[r]) {
      throw input_error("matching reuses node " + std::to_string(l) + "/" +
                        std::to_string(r));
    }
    col_covered[l] = 1;
    row_covered[r] = 1;
  }
  Placement p;
  p.n = n;
  for (int i = 1; i <= n; ++i) {
    if (!row_covered[i]) p.inputs.push_back(i);
    if (!col_covered[i]) p.outputs.push_back(i);
  }
  if (p.inputs.empty() && p.outputs.empty()) {
    p.inputs.push_back(1);
    p.outputs.push_back(1);
  }
  return p;
}

/// Baseline that treats inputs and outputs independently: one maximum
/// matching of the dynamics' bipartite view, inputs on unmatched rows,
/// outputs on unmatched columns. Minimizes |inputs| and |outputs| separately
/// but not the number of touched states, so its cost is an upper bound for
/// the joint solver's.
inline Placement baseline_decoupled_placement(
    const StructuralMatrix& a, bool allow_not_strongly_connected = false) {
  detail::check_square_dynamics(a);
  detail::require_strongly_connected(a, allow_not_strongly_connected);
  return placement_from_matching(a, maximum_matching(bipartite_of(a)));
}

}  // namespace ctrlobs
