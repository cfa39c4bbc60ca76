#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/errors.hpp"
#include "ctrlobs/structure.hpp"

namespace ctrlobs {

/// A matching in a bipartite graph: disjoint (left, right) pairs, sorted by
/// left node. `total_weight` sums the weights of the matched edges.
struct Matching {
  std::vector<std::pair<int, int>> pairs;
  long long total_weight = 0;

  int size() const { return static_cast<int>(pairs.size()); }

  bool contains(int left, int right) const {
    return std::binary_search(pairs.begin(), pairs.end(),
                              std::make_pair(left, right));
  }
};

namespace detail {

/// Bounds-checks a bipartite graph and returns its edges sorted by
/// (left, right). Parallel edges are rejected: every downstream algorithm
/// assumes at most one edge per node pair.
inline std::vector<BipartiteEdge> checked_edges(
    const WeightedBipartiteGraph& g) {
  std::vector<BipartiteEdge> edges = g.edges;
  for (const auto& e : edges) {
    if (e.left < 1 || e.left > g.n_left || e.right < 1 || e.right > g.n_right) {
      throw input_error("bipartite edge (" + std::to_string(e.left) + ", " +
                        std::to_string(e.right) + ") out of range for " +
                        std::to_string(g.n_left) + "+" +
                        std::to_string(g.n_right) + " nodes");
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const BipartiteEdge& a, const BipartiteEdge& b) {
              return std::make_pair(a.left, a.right) <
                     std::make_pair(b.left, b.right);
            });
  auto dup = std::adjacent_find(edges.begin(), edges.end(),
                                [](const BipartiteEdge& a,
                                   const BipartiteEdge& b) {
                                  return a.left == b.left &&
                                         a.right == b.right;
                                });
  if (dup != edges.end()) {
    throw input_error("parallel bipartite edge (" + std::to_string(dup->left) +
                      ", " + std::to_string(dup->right) + ")");
  }
  return edges;
}

/// Hopcroft-Karp on adjacency lists. `match_l`/`match_r` use 0 for
/// "unmatched". Adjacency lists must be sorted ascending; together with the
/// ascending outer scan this makes the result deterministic.
inline int hopcroft_karp(const std::vector<std::vector<int>>& adj, int n_left,
                         int n_right, std::vector<int>& match_l,
                         std::vector<int>& match_r) {
  constexpr int kInf = INT_MAX;
  match_l.assign(n_left + 1, 0);
  match_r.assign(n_right + 1, 0);
  std::vector<int> dist(n_left + 1, 0);

  auto bfs = [&]() {
    std::queue<int> q;
    for (int l = 1; l <= n_left; ++l) {
      if (match_l[l] == 0) {
        dist[l] = 0;
        q.push(l);
      } else {
        dist[l] = kInf;
      }
    }
    bool found_free = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = match_r[r];
        if (l2 == 0) {
          found_free = true;
        } else if (dist[l2] == kInf) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found_free;
  };

  std::function<bool(int)> dfs = [&](int l) {
    for (int r : adj[l]) {
      int l2 = match_r[r];
      if (l2 == 0 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  };

  int size = 0;
  while (bfs()) {
    for (int l = 1; l <= n_left; ++l) {
      if (match_l[l] == 0 && dfs(l)) ++size;
    }
  }
  return size;
}

}  // namespace detail

/// Maximum-cardinality matching, Hopcroft-Karp, O(E * sqrt(V)).
/// Deterministic: nodes and adjacencies are scanned in ascending order, so
/// equal inputs always produce the identical matching.
inline Matching maximum_matching(const WeightedBipartiteGraph& g) {
  const auto edges = detail::checked_edges(g);
  std::vector<std::vector<int>> adj(g.n_left + 1);
  for (const auto& e : edges) adj[e.left].push_back(e.right);

  std::vector<int> match_l, match_r;
  detail::hopcroft_karp(adj, g.n_left, g.n_right, match_l, match_r);

  Matching m;
  for (const auto& e : edges) {
    if (match_l[e.left] == e.right) {
      m.pairs.emplace_back(e.left, e.right);
      m.total_weight += e.weight;
    }
  }
  return m;
}

/// Square table of assignment weights with forbidden cells. 1-based indices.
/// The default-constructed table forbids every cell; the fill constructor
/// allows every cell at the given weight.
class WeightTable {
 public:
  explicit WeightTable(int size)
      : size_(size),
        weight_(static_cast<std::size_t>(size) * size, 0),
        allowed_(static_cast<std::size_t>(size) * size, 0) {
    if (size < 0) throw input_error("weight table size must be nonnegative");
  }

  WeightTable(int size, long long fill) : WeightTable(size) {
    std::fill(weight_.begin(), weight_.end(), fill);
    std::fill(allowed_.begin(), allowed_.end(), 1);
  }

  int size() const { return size_; }

  void set(int row, int col, long long weight) {
    weight_[index(row, col)] = weight;
    allowed_[index(row, col)] = 1;
  }

  void forbid(int row, int col) { allowed_[index(row, col)] = 0; }

  bool allowed(int row, int col) const { return allowed_[index(row, col)]; }

  long long weight(int row, int col) const { return weight_[index(row, col)]; }

 private:
  std::size_t index(int row, int col) const {
    if (row < 1 || row > size_ || col < 1 || col > size_) {
      throw input_error("weight table cell (" + std::to_string(row) + ", " +
                        std::to_string(col) + ") out of range for size " +
                        std::to_string(size_));
    }
    return static_cast<std::size_t>(row - 1) * size_ + (col - 1);
  }

  int size_;
  std::vector<long long> weight_;
  std::vector<unsigned char> allowed_;
};

/// Maximum-weight perfect assignment of table rows to columns (Hungarian
/// algorithm with row/column potentials, O(size^3)). Forbidden cells are
/// never selected. Throws infeasible_error, naming a node that cannot be
/// matched, when no perfect assignment over allowed cells exists.
///
/// Deterministic: rows are inserted in ascending order and column scans
/// break ties toward the smallest column index.
inline Matching max_weight_perfect_matching(const WeightTable& table) {
  const int k = table.size();
  Matching result;
  if (k == 0) return result;

  // Feasibility first, so infeasibility is reported with a witness instead
  // of surfacing as an arbitrary forbidden-cell assignment.
  std::vector<std::vector<int>> adj(k + 1);
  long long max_abs = 0;
  for (int r = 1; r <= k; ++r) {
    for (int c = 1; c <= k; ++c) {
      if (table.allowed(r, c)) {
        adj[r].push_back(c);
        max_abs = std::max(max_abs, std::llabs(table.weight(r, c)));
      }
    }
  }
  std::vector<int> match_l, match_r;
  if (detail::hopcroft_karp(adj, k, k, match_l, match_r) < k) {
    for (int r = 1; r <= k; ++r) {
      if (match_l[r] == 0) {
        throw infeasible_error(
            "no perfect assignment exists: left node " + std::to_string(r) +
            " cannot be matched over the allowed cells");
      }
    }
  }

  // Forbidden cells get a finite cost that strictly dominates every
  // assignment using allowed cells only, keeping the potential arithmetic
  // overflow-free. Cells cost the negated weight; the solver minimizes.
  if (max_abs > LLONG_MAX / (4LL * (2 * k + 1) * k)) {
    throw input_error("weight magnitudes too large for a table of size " +
                      std::to_string(k));
  }
  const long long forbidden_cost = (2LL * k + 1) * (max_abs + 1);
  const long long inf = LLONG_MAX / 4;
  auto cost = [&](int r, int c) {
    return table.allowed(r, c) ? -table.weight(r, c) : forbidden_cost;
  };

  std::vector<long long> u(k + 1, 0), v(k + 1, 0), minv(k + 1, 0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  std::vector<char> used(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      long long delta = inf;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const long long cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.pairs.resize(k);
  for (int j = 1; j <= k; ++j) result.pairs[p[j] - 1] = {p[j], j};
  for (const auto& [r, c] : result.pairs) {
    if (!table.allowed(r, c)) {
      throw error("internal invariant violated: forbidden cell selected "
                  "despite a feasible perfect assignment");
    }
    result.total_weight += table.weight(r, c);
  }
  return result;
}

/// Maximum-weight maximum-cardinality matching: among all matchings of
/// maximum cardinality, one of maximum total weight. Reduced to a perfect
/// assignment on a square table: weights are normalized to be nonnegative,
/// then shifted by a constant large enough that every real edge beats any
/// combination of slack cells, so cardinality dominates weight.
inline Matching mwmm(const WeightedBipartiteGraph& g) {
  const auto edges = detail::checked_edges(g);
  const int k = std::max(g.n_left, g.n_right);
  if (k == 0 || edges.empty()) return Matching{};

  long long min_w = edges.front().weight, max_w = edges.front().weight;
  for (const auto& e : edges) {
    min_w = std::min(min_w, e.weight);
    max_w = std::max(max_w, e.weight);
  }
  const long long base = std::min(0LL, min_w);
  const long long shift =
      1 + (max_w - base) * std::min(g.n_left, g.n_right);

  WeightTable table(k, 0);
  for (const auto& e : edges) table.set(e.left, e.right, e.weight - base + shift);

  const Matching assignment = max_weight_perfect_matching(table);

  auto edge_weight = [&](int l, int r) -> const BipartiteEdge* {
    auto it = std::lower_bound(
        edges.begin(), edges.end(), std::make_pair(l, r),
        [](const BipartiteEdge& e, const std::pair<int, int>& key) {
          return std::make_pair(e.left, e.right) < key;
        });
    if (it != edges.end() && it->left == l && it->right == r) return &*it;
    return nullptr;
  };

  Matching m;
  for (const auto& [l, r] : assignment.pairs) {
    if (l > g.n_left || r > g.n_right) continue;
    if (const BipartiteEdge* e = edge_weight(l, r)) {
      m.pairs.emplace_back(l, r);
      m.total_weight += e->weight;
    }
  }
  return m;
}

}  // namespace ctrlobs
