#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/errors.hpp"
#include "ctrlobs/matching.hpp"
#include "ctrlobs/structure.hpp"
#include "ctrlobs/verify.hpp"

namespace ctrlobs {

/// Witness returned by the exhaustive searches: the minimum cost and the
/// first (lexicographically smallest) optimal selection found.
struct OracleResult {
  int cost = 0;
  std::vector<int> inputs;
  std::vector<int> outputs;
};

namespace detail {

inline void check_oracle_size(int n, int size_limit) {
  if (n > size_limit) {
    throw size_limit_error("exhaustive search refused: n=" +
                           std::to_string(n) + " exceeds the limit of " +
                           std::to_string(size_limit));
  }
}

inline std::vector<int> bitmask_to_states(std::uint32_t mask, int n) {
  std::vector<int> states;
  for (int i = 1; i <= n; ++i) {
    if (mask & (1u << (i - 1))) states.push_back(i);
  }
  return states;
}

}  // namespace detail

/// Ground truth by exhaustion over a single state set used for both inputs
/// and outputs. Sound for the joint minimum because feasibility is monotone
/// in both sets: if (I, J) works then (I u J, I u J) works at the same cost,
/// so some optimal solution uses identical sets. Cost levels are searched in
/// ascending order, subsets of a level in lexicographic order; the first hit
/// is returned. 2^n matching tests, so n is capped by `size_limit`.
inline OracleResult brute_force_min_joint(const StructuralMatrix& a,
                                          int size_limit = 12) {
  detail::check_square_dynamics(a);
  const int n = a.n();
  detail::check_oracle_size(n, size_limit);
  detail::require_strongly_connected(a, false);

  for (int c = 1; c <= n; ++c) {
    // Lexicographic subsets of size c over states 1..n.
    std::vector<int> idx(c);
    for (int i = 0; i < c; ++i) idx[i] = i + 1;
    for (;;) {
      if (is_structurally_controllable(a, idx) &&
          is_structurally_observable(a, idx)) {
        return OracleResult{c, idx, idx};
      }
      int i = c - 1;
      while (i >= 0 && idx[i] == n - (c - 1 - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  throw error("internal invariant violated: equipping every state is always "
              "sufficient");
}

/// Ground truth by exhaustion over all (input set, output set) pairs,
/// minimizing the number of touched states. Exponentially more work than
/// brute_force_min_joint (4^n pairs); exists to validate that search's
/// identical-sets restriction. Keep n tiny.
inline OracleResult brute_force_min_joint_pairs(const StructuralMatrix& a,
                                                int size_limit = 5) {
  detail::check_square_dynamics(a);
  const int n = a.n();
  detail::check_oracle_size(n, size_limit);
  detail::require_strongly_connected(a, false);

  // Controllability depends on the input set alone (and dually), so the
  // 2^n matching tests are precomputed and the 4^n loop is table lookups.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<char> ctrl(full + 1, 0), obs(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const auto states = detail::bitmask_to_states(mask, n);
    ctrl[mask] = is_structurally_controllable(a, states);
    obs[mask] = is_structurally_observable(a, states);
  }

  OracleResult best;
  best.cost = n + 1;
  for (std::uint32_t i = 1; i <= full; ++i) {
    if (!ctrl[i]) continue;
    for (std::uint32_t j = 1; j <= full; ++j) {
      if (!obs[j]) continue;
      const int cost = __builtin_popcount(i | j);
      if (cost < best.cost) {
        best.cost = cost;
        best.inputs = detail::bitmask_to_states(i, n);
        best.outputs = detail::bitmask_to_states(j, n);
      }
    }
  }
  if (best.cost > n) {
    throw error("internal invariant violated: equipping every state is "
                "always sufficient");
  }
  return best;
}

/// All maximum-cardinality matchings of a bipartite graph, up to `cap`.
struct MatchingEnumeration {
  std::vector<Matching> matchings;
  bool truncated = false;  // cap hit; the list is a prefix, not the total
};

/// Enumerates every maximum matching by depth-first choice per left node
/// (each of its edges, or leaving it unmatched), pruned against the known
/// maximum cardinality. Each matching is produced exactly once, in
/// lexicographic order of the per-node choices. Exponential; meant for
/// desk-size graphs and tests.
inline MatchingEnumeration enumerate_maximum_matchings(
    const WeightedBipartiteGraph& g, std::size_t cap = 1000000) {
  const auto edges = detail::checked_edges(g);
  const int target = maximum_matching(g).size();

  std::vector<std::vector<BipartiteEdge>> adj(g.n_left + 1);
  for (const auto& e : edges) adj[e.left].push_back(e);

  MatchingEnumeration out;
  std::vector<char> right_used(g.n_right + 1, 0);
  std::vector<std::pair<int, int>> current;
  long long current_weight = 0;

  std::function<bool(int)> walk = [&](int l) -> bool {
    if (static_cast<int>(current.size()) +
            (g.n_left - l + 1) < target) {
      return true;  // too few nodes left to reach the maximum; prune
    }
    if (l > g.n_left) {
      if (static_cast<int>(current.size()) == target) {
        if (out.matchings.size() == cap) {
          out.truncated = true;
          return false;
        }
        out.matchings.push_back(Matching{current, current_weight});
      }
      return true;
    }
    for (const auto& e : adj[l]) {
      if (right_used[e.right]) continue;
      right_used[e.right] = 1;
      current.emplace_back(e.left, e.right);
      current_weight += e.weight;
      const bool keep_going = walk(l + 1);
      current_weight -= e.weight;
      current.pop_back();
      right_used[e.right] = 0;
      if (!keep_going) return false;
    }
    return walk(l + 1);  // leave l unmatched
  };
  walk(1);
  return out;
}

}  // namespace ctrlobs
