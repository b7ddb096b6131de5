#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "denseknap/instances.hpp"
#include "denseknap/trace.hpp"

namespace denseknap {

// Pluggable densest-k-subgraph (order-2) approximator anchoring the
// recursion. claimed_exponent is the alpha its ratio O(n^{alpha+eps}) claims;
// the bundled stand-ins claim 1/4, the exponent of the literature base they
// replace.
struct BaseOracleSpec {
  std::string name;
  std::function<Solution(const Hypergraph&, int)> solve;
  Rational claimed_exponent{1, 4};
};

struct DkshConfig {
  Rational epsilon{1, 2};  // carried through the recursion; diagnostic only here
  int exact_cutoff_n = 12;
  long long enum_budget = 10'000'000;  // C(n,k) guard for the exact branches
  BaseOracleSpec base;
  std::uint64_t seed = 0;
};

// Brute force over all k-subsets; refuses beyond enum_budget.
Solution exact_base_oracle(const Hypergraph& g, int k, long long enum_budget);
// Better of min-degree peeling (ties: remove the lowest id) and top-k by
// degree. Never refuses.
Solution greedy_base_oracle(const Hypergraph& g, int k);
// name is "exact" or "greedy".
BaseOracleSpec make_base_oracle(const std::string& name, long long enum_budget = 10'000'000);
DkshConfig default_dksh_config(const std::string& base_name = "exact");

// Order-m trivial approximation. When fewer than k/m edges exist, selecting
// every incident vertex is optimal (padded with the lowest unused ids up to
// k vertices); otherwise the union of floor(k/m) edges picked greedily by
// overlap has at least floor(k/m) induced edges on at most k vertices.
Solution solve_trivial(const Hypergraph& g, int k, int m);

struct RoundedWeighted {
  WeightedHypergraph graph;      // weights rounded down to powers of two; zeroed edges dropped
  std::vector<Rational> levels;  // descending level values 2^L .. 2^{L-l}
  int level_count_bound = 2;     // l + 2, the denominator in the quality bound
};

// Rounds weights down to the nearest level among 2^L, 2^{L-1}, ..., 2^{L-l}, 0
// where 2^L is the largest power of two at most the maximum weight and
// l = ceil(log2 C(n, m_cap)). The rounded optimum keeps at least 1/4 of the
// original optimum.
RoundedWeighted round_weights(const WeightedHypergraph& g);

using UnweightedSolver = std::function<Solution(const Hypergraph&, int)>;

// Weighted-to-unweighted reduction: runs `solver` on each per-level subgraph
// of the rounded graph and keeps the candidate with the best original-weight
// induced value. With an exact per-level solver the result is within
// 1/(4(l+2)) of the weighted optimum.
Solution solve_weighted(const WeightedHypergraph& g, int k, const UnweightedSolver& solver);

// Main approximation: runs every applicable branch (exact solve for tiny n or
// k < 4m, the trivial solver, the order-2 base oracle, and for each edge size
// r >= 3 the partition/link/recurse construction) and returns the best
// feasible solution, evaluated against the full input graph.
Solution approx_dksh(const Hypergraph& g, int k, int m, const DkshConfig& cfg,
                     TraceSink* trace = nullptr);

}  // namespace denseknap
