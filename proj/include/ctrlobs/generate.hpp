#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/errors.hpp"
#include "ctrlobs/structure.hpp"

namespace ctrlobs {

/// How random strongly connected instances are wired up.
enum class GenModel {
  /// A random directed Hamiltonian cycle plus extra ordered pairs (self-loops
  /// included) each drawn independently with the given density.
  cycle_plus_random,
  /// A random spanning tree with every tree edge doubled in both directions,
  /// plus extra node pairs (again doubled) drawn with the given density.
  bidirectional_spanning,
};

namespace detail {

/// Uniform draw from [0, bound) by rejection, so the result depends only on
/// the mt19937_64 bit stream and not on any library's distribution choices.
inline std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Random n-state dynamics pattern whose digraph is strongly connected by
/// construction. Identical (n, extra_density, seed, model) always produce
/// the identical pattern, across platforms.
inline StructuralMatrix random_strongly_connected(
    int n, double extra_density, std::uint64_t seed,
    GenModel model = GenModel::cycle_plus_random) {
  if (n < 1) throw input_error("node count must be at least 1");
  if (!(extra_density >= 0.0 && extra_density <= 1.0)) {
    throw input_error("extra_density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(detail::next_below(rng, i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<std::pair<int, int>> edges;
  if (model == GenModel::cycle_plus_random) {
    if (n >= 2) {
      for (int i = 0; i < n; ++i) {
        edges.emplace_back(order[i], order[(i + 1) % n]);
      }
    }
    std::vector<char> taken(static_cast<std::size_t>(n) * n + 1, 0);
    for (const auto& [u, v] : edges) taken[(u - 1) * n + v] = 1;
    for (int u = 1; u <= n; ++u) {
      for (int v = 1; v <= n; ++v) {
        if (taken[(u - 1) * n + v]) continue;
        if (detail::next_unit(rng) < extra_density) edges.emplace_back(u, v);
      }
    }
  } else {
    std::vector<char> linked(static_cast<std::size_t>(n) * n + 1, 0);
    for (int i = 1; i < n; ++i) {
      const int parent = order[detail::next_below(rng, i)];
      edges.emplace_back(order[i], parent);
      edges.emplace_back(parent, order[i]);
      const int a = std::min(order[i], parent), b = std::max(order[i], parent);
      linked[(a - 1) * n + b] = 1;
    }
    for (int u = 1; u <= n; ++u) {
      for (int v = u + 1; v <= n; ++v) {
        if (linked[(u - 1) * n + v]) continue;
        if (detail::next_unit(rng) < extra_density) {
          edges.emplace_back(u, v);
          edges.emplace_back(v, u);
        }
      }
    }
  }

  StructuralMatrix a = structural_from_edge_list(n, edges);
  if (!is_strongly_connected(digraph_of(a))) {
    throw error("internal invariant violated: generated digraph must be "
                "strongly connected");
  }
  return a;
}

}  // namespace ctrlobs
