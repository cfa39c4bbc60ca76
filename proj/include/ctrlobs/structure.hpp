#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/errors.hpp"

namespace ctrlobs {

/// Sparsity pattern of a real matrix. Only the positions of structurally
/// nonzero entries ("stars") are stored. Indices are 1-based; `stars` is
/// sorted lexicographically and duplicate-free.
struct StructuralMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::pair<int, int>> stars;  // (row, col)

  bool square() const { return n_rows == n_cols; }

  /// State count for square dynamics patterns.
  int n() const { return n_rows; }

  bool has_star(int row, int col) const {
    return std::binary_search(stars.begin(), stars.end(),
                              std::make_pair(row, col));
  }
};

/// Directed graph on nodes 1..n. `edges` is sorted and duplicate-free.
struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to)
};

struct BipartiteEdge {
  int left = 0;
  int right = 0;
  long long weight = 0;

  bool operator==(const BipartiteEdge&) const = default;
};

/// Bipartite graph with integer edge weights. Left nodes are 1..n_left,
/// right nodes are 1..n_right; `edges` is sorted by (left, right) and holds
/// at most one edge per node pair.
struct WeightedBipartiteGraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<BipartiteEdge> edges;
};

namespace detail {

inline void sort_and_dedupe(std::vector<std::pair<int, int>>& v,
                            bool reject_duplicates, const char* what) {
  std::sort(v.begin(), v.end());
  auto dup = std::adjacent_find(v.begin(), v.end());
  if (dup != v.end()) {
    if (reject_duplicates) {
      throw input_error(std::string("duplicate ") + what + " (" +
                        std::to_string(dup->first) + ", " +
                        std::to_string(dup->second) + ")");
    }
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
}

}  // namespace detail

/// Validates, sorts and deduplicates star positions. Duplicates are collapsed
/// silently unless `reject_duplicates` is set, in which case they raise
/// input_error.
inline StructuralMatrix make_structural_matrix(
    int n_rows, int n_cols, std::vector<std::pair<int, int>> stars,
    bool reject_duplicates = false) {
  if (n_rows < 0 || n_cols < 0) {
    throw input_error("matrix dimensions must be nonnegative");
  }
  for (const auto& [r, c] : stars) {
    if (r < 1 || r > n_rows || c < 1 || c > n_cols) {
      throw input_error("star (" + std::to_string(r) + ", " +
                        std::to_string(c) + ") out of range for a " +
                        std::to_string(n_rows) + "x" + std::to_string(n_cols) +
                        " pattern");
    }
  }
  detail::sort_and_dedupe(stars, reject_duplicates, "star");
  return StructuralMatrix{n_rows, n_cols, std::move(stars)};
}

/// Builds the square dynamics pattern of a digraph on nodes 1..n: edge
/// (i, j) means state i drives state j, i.e. a star at position (j, i).
inline StructuralMatrix structural_from_edge_list(
    int n, const std::vector<std::pair<int, int>>& edges,
    bool reject_duplicates = false) {
  if (n < 1) throw input_error("node count must be at least 1");
  std::vector<std::pair<int, int>> stars;
  stars.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    if (i < 1 || i > n || j < 1 || j > n) {
      throw input_error("edge " + std::to_string(i) + " -> " +
                        std::to_string(j) + " out of range for n=" +
                        std::to_string(n));
    }
    stars.emplace_back(j, i);
  }
  detail::sort_and_dedupe(stars, reject_duplicates, "edge");
  return StructuralMatrix{n, n, std::move(stars)};
}

/// Inverse of structural_from_edge_list: star (j, i) becomes edge (i, j).
/// Requires a square pattern.
inline Digraph digraph_of(const StructuralMatrix& a) {
  if (!a.square()) {
    throw input_error("dynamics pattern must be square, got " +
                      std::to_string(a.n_rows) + "x" +
                      std::to_string(a.n_cols));
  }
  Digraph g;
  g.n = a.n_rows;
  g.edges.reserve(a.stars.size());
  for (const auto& [r, c] : a.stars) g.edges.emplace_back(c, r);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// Bipartite view of a pattern: left nodes index columns, right nodes index
/// rows, and a star at (r, c) becomes edge (c, r) with weight 1.
inline WeightedBipartiteGraph bipartite_of(const StructuralMatrix& m) {
  WeightedBipartiteGraph g;
  g.n_left = m.n_cols;
  g.n_right = m.n_rows;
  g.edges.reserve(m.stars.size());
  for (const auto& [r, c] : m.stars) g.edges.push_back({c, r, 1});
  std::sort(g.edges.begin(), g.edges.end(),
            [](const BipartiteEdge& a, const BipartiteEdge& b) {
              return std::make_pair(a.left, a.right) <
                     std::make_pair(b.left, b.right);
            });
  return g;
}

inline StructuralMatrix transpose(const StructuralMatrix& m) {
  std::vector<std::pair<int, int>> stars;
  stars.reserve(m.stars.size());
  for (const auto& [r, c] : m.stars) stars.emplace_back(c, r);
  std::sort(stars.begin(), stars.end());
  return StructuralMatrix{m.n_cols, m.n_rows, std::move(stars)};
}

/// True iff every node reaches every other node. A single node is strongly
/// connected even without a self-loop. Runs two breadth-first sweeps from
/// node 1 (forward and reverse), O(V + E).
inline bool is_strongly_connected(const Digraph& g) {
  if (g.n <= 1) return true;
  std::vector<std::vector<int>> fwd(g.n + 1), rev(g.n + 1);
  for (const auto& [u, v] : g.edges) {
    fwd[u].push_back(v);
    rev[v].push_back(u);
  }
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(g.n + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == g.n;
  };
  return reaches_all(fwd) && reaches_all(rev);
}

}  // namespace ctrlobs
