#pragma once

#include "denseknap/instances.hpp"

namespace denseknap {

// Enumeration guards for the brute-force oracles. Exceeding a budget raises
// OracleRefusal; there is no silent fallback to approximation.
inline constexpr long long kDefaultSubsetBudget = 10'000'000;  // C(n,k) cap
inline constexpr int kDefaultExactSukpMaxN = 24;               // 2^n cap

// Globally optimal k-subset by exhaustive enumeration. The witness is the
// lexicographically least vertex list among optima.
Solution exact_dksh(const Hypergraph& g, int k, long long subset_budget = kDefaultSubsetBudget);
Solution exact_weighted_dksh(const WeightedHypergraph& g, int k,
                             long long subset_budget = kDefaultSubsetBudget);

// Globally optimal feasible subset by exhaustive enumeration over all 2^n
// selections, with cost-based pruning. Lexicographically least witness.
Solution exact_sukp(const SukpInstance& inst, int max_n = kDefaultExactSukpMaxN);

// 0/1 knapsack on (costs, profits, budget); exact_sukp on an edge-free
// instance, provided separately as the oracle for the FPTAS tests.
Solution exact_knapsack(const std::vector<Rational>& costs, const std::vector<Rational>& profits,
                        const Rational& budget, int max_n = kDefaultExactSukpMaxN);

}  // namespace denseknap
