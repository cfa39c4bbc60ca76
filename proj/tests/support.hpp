#pragma once

// Shared helpers for the test suites: subprocess execution, temp files,
// deterministic random test data, and independent brute-force reference
// implementations (kept deliberately naive; they are the ground truth the
// fast algorithms are checked against).

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ctrlobs/ctrlobs.hpp"

namespace testsupport {

struct ProcessResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  q += "'";
  return q;
}

inline ProcessResult run_process(const std::string& command) {
  ProcessResult result;
  const std::string cmd = command + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    result.output.append(buf, got);
  }
  const int status = ::pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

/// Self-deleting file seeded with the given content.
class TempFile {
 public:
  explicit TempFile(const std::string& content,
                    const std::string& suffix = ".json") {
    static std::atomic<int> counter{0};
    const std::string name = "ctrlobs-test-" + std::to_string(::getpid()) +
                             "-" + std::to_string(counter++) + suffix;
    path_ = (std::filesystem::temp_directory_path() / name).string();
    ctrlobs::write_text_file(path_, content);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// ---------------------------------------------------------------------------
// Deterministic random test data

/// Random bipartite graph with n_left, n_right <= 7-ish and weights 1..9.
inline ctrlobs::WeightedBipartiteGraph random_bipartite(int n_left,
                                                        int n_right,
                                                        double edge_prob,
                                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ctrlobs::WeightedBipartiteGraph g;
  g.n_left = n_left;
  g.n_right = n_right;
  for (int l = 1; l <= n_left; ++l) {
    for (int r = 1; r <= n_right; ++r) {
      if (ctrlobs::detail::next_unit(rng) < edge_prob) {
        const long long w =
            1 + static_cast<long long>(ctrlobs::detail::next_below(rng, 9));
        g.edges.push_back({l, r, w});
      }
    }
  }
  return g;
}

/// Random square weight table with weights in [-20, 20]. A random planted
/// permutation is always allowed, so a perfect assignment exists; other
/// cells are forbidden with probability `forbid_prob`.
inline ctrlobs::WeightTable random_feasible_table(int size, double forbid_prob,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ctrlobs::WeightTable t(size);
  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i + 1;
  for (int i = size - 1; i > 0; --i) {
    const int j = static_cast<int>(ctrlobs::detail::next_below(rng, i + 1));
    std::swap(perm[i], perm[j]);
  }
  for (int r = 1; r <= size; ++r) {
    for (int c = 1; c <= size; ++c) {
      const long long w =
          static_cast<long long>(ctrlobs::detail::next_below(rng, 41)) - 20;
      if (perm[r - 1] == c || ctrlobs::detail::next_unit(rng) >= forbid_prob) {
        t.set(r, c, w);
      }
    }
  }
  return t;
}

/// Mixed stream of small random strongly connected instances: n in 2..8,
/// both wiring models, a spread of densities. Deterministic per index.
inline ctrlobs::StructuralMatrix random_instance(int index) {
  const int n = 2 + index % 7;
  static const double densities[] = {0.0, 0.05, 0.1, 0.2, 0.35};
  const ctrlobs::GenModel model =
      (index % 2 == 0) ? ctrlobs::GenModel::cycle_plus_random
                       : ctrlobs::GenModel::bidirectional_spanning;
  return ctrlobs::random_strongly_connected(
      n, densities[index % 5], 1000 + static_cast<std::uint64_t>(index),
      model);
}

// ---------------------------------------------------------------------------
// Independent reference implementations

/// Maximum matching cardinality by bitmask dynamic programming over right
/// nodes. O(n_left * 2^n_right * deg); fine for the test sizes.
inline int dp_max_matching_size(const ctrlobs::WeightedBipartiteGraph& g) {
  std::vector<std::vector<int>> adj(g.n_left + 1);
  for (const auto& e : g.edges) adj[e.left].push_back(e.right);
  const int masks = 1 << g.n_right;
  std::vector<int> next(masks, 0), cur(masks, 0);
  for (int l = g.n_left; l >= 1; --l) {
    for (int mask = 0; mask < masks; ++mask) {
      int best = next[mask];
      for (int r : adj[l]) {
        const int bit = 1 << (r - 1);
        if (!(mask & bit)) best = std::max(best, 1 + next[mask | bit]);
      }
      cur[mask] = best;
    }
    std::swap(cur, next);
  }
  return next[0];
}

/// Number of distinct maximum matchings, same DP with completion counts.
inline long long dp_count_maximum_matchings(
    const ctrlobs::WeightedBipartiteGraph& g) {
  std::vector<std::vector<int>> adj(g.n_left + 1);
  for (const auto& e : g.edges) adj[e.left].push_back(e.right);
  const int masks = 1 << g.n_right;
  std::vector<int> next_best(masks, 0), cur_best(masks, 0);
  std::vector<long long> next_cnt(masks, 1), cur_cnt(masks, 0);
  for (int l = g.n_left; l >= 1; --l) {
    for (int mask = 0; mask < masks; ++mask) {
      int best = next_best[mask];
      long long cnt = next_cnt[mask];
      for (int r : adj[l]) {
        const int bit = 1 << (r - 1);
        if (mask & bit) continue;
        const int cand = 1 + next_best[mask | bit];
        if (cand > best) {
          best = cand;
          cnt = next_cnt[mask | bit];
        } else if (cand == best) {
          cnt += next_cnt[mask | bit];
        }
      }
      cur_best[mask] = best;
      cur_cnt[mask] = cnt;
    }
    std::swap(cur_best, next_best);
    std::swap(cur_cnt, next_cnt);
  }
  return next_cnt[0];
}

/// Best perfect assignment weight by trying every permutation. Empty when
/// each permutation crosses a forbidden cell.
inline std::optional<long long> brute_best_assignment(
    const ctrlobs::WeightTable& t) {
  const int k = t.size();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i + 1;
  std::optional<long long> best;
  do {
    long long sum = 0;
    bool ok = true;
    for (int r = 1; r <= k && ok; ++r) {
      if (!t.allowed(r, perm[r - 1])) {
        ok = false;
      } else {
        sum += t.weight(r, perm[r - 1]);
      }
    }
    if (ok && (!best || sum > *best)) best = sum;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Structural validity of a matching against its graph: every pair is an
/// edge, no node is reused, the weight is the sum of the matched edges.
inline bool is_valid_matching(const ctrlobs::WeightedBipartiteGraph& g,
                              const ctrlobs::Matching& m) {
  std::vector<char> left_used(g.n_left + 1, 0), right_used(g.n_right + 1, 0);
  long long weight = 0;
  for (const auto& [l, r] : m.pairs) {
    if (l < 1 || l > g.n_left || r < 1 || r > g.n_right) return false;
    if (left_used[l] || right_used[r]) return false;
    left_used[l] = 1;
    right_used[r] = 1;
    bool found = false;
    for (const auto& e : g.edges) {
      if (e.left == l && e.right == r) {
        weight += e.weight;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return weight == m.total_weight;
}

}  // namespace testsupport
