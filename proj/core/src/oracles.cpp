#include "denseknap/oracles.hpp"

#include <stdexcept>
#include <string>

#include "denseknap/errors.hpp"

namespace denseknap {

namespace {

// Exhaustive k-subset search shared by the unweighted and weighted oracles.
// Include-first DFS over vertex ids visits the k-subsets in lexicographic
// order of their sorted sequences, so keeping the first strict improvement
// (with an explicit compare on ties) yields the lexicographically least
// witness. An edge is alive while none of its vertices has been excluded;
// the total alive weight is an upper bound used for pruning.
class KSubsetSearch {
 public:
  KSubsetSearch(const Hypergraph& g, const std::vector<Rational>& weights, int k)
      : g_(g), weights_(weights), k_(k) {
    edges_with_.resize(g.n());
    for (std::size_t e = 0; e < g.edges().size(); ++e)
      for (int v : g.edges()[e]) edges_with_[v].push_back(e);
    included_of_.assign(g.edges().size(), 0);
    excluded_of_.assign(g.edges().size(), 0);
    for (const auto& w : weights_) alive_ += w;
    chosen_.reserve(k);
  }

  Solution run() {
    best_value_ = Rational(-1);
    dfs(0);
    Solution s;
    s.vertices = best_set_;
    s.total_cost = Rational(static_cast<long long>(best_set_.size()));
    s.value = best_value_;
    s.method = "exact";
    return s;
  }

 private:
  void dfs(int pos) {
    if (static_cast<int>(chosen_.size()) == k_) {
      if (contained_ > best_value_ ||
          (contained_ == best_value_ && chosen_ < best_set_)) {
        best_value_ = contained_;
        best_set_ = chosen_;
      }
      return;
    }
    if (pos >= g_.n()) return;
    if (static_cast<int>(chosen_.size()) + (g_.n() - pos) < k_) return;
    // Nothing in this subtree can strictly beat the incumbent, and every
    // leaf below comes later in lexicographic order.
    if (best_value_ >= Rational(0) && alive_ <= best_value_) return;

    // include pos
    chosen_.push_back(pos);
    for (std::size_t e : edges_with_[pos])
      if (++included_of_[e] == g_.edges()[e].size() && excluded_of_[e] == 0) contained_ += weights_[e];
    dfs(pos + 1);
    for (std::size_t e : edges_with_[pos]) {
      if (included_of_[e] == g_.edges()[e].size() && excluded_of_[e] == 0) contained_ -= weights_[e];
      --included_of_[e];
    }
    chosen_.pop_back();

    // exclude pos
    for (std::size_t e : edges_with_[pos])
      if (excluded_of_[e]++ == 0) alive_ -= weights_[e];
    dfs(pos + 1);
    for (std::size_t e : edges_with_[pos])
      if (--excluded_of_[e] == 0) alive_ += weights_[e];
  }

  const Hypergraph& g_;
  const std::vector<Rational>& weights_;
  int k_;
  std::vector<std::vector<std::size_t>> edges_with_;
  std::vector<std::size_t> included_of_;
  std::vector<std::size_t> excluded_of_;
  Rational contained_{0};
  Rational alive_{0};
  std::vector<int> chosen_;
  Rational best_value_{-1};
  std::vector<int> best_set_;
};

void check_subset_budget(int n, int k, long long budget) {
  mpz_class count = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  if (count > budget)
    throw OracleRefusal("exact k-subset oracle refused: C(" + std::to_string(n) + "," +
                        std::to_string(k) + ") = " + count.get_str() + " exceeds budget " +
                        std::to_string(budget) + "; lower n/k or raise the budget");
}

}  // namespace

Solution exact_dksh(const Hypergraph& g, int k, long long subset_budget) {
  if (k < 1 || k > g.n()) throw std::domain_error("exact_dksh requires 1 <= k <= n");
  check_subset_budget(g.n(), k, subset_budget);
  std::vector<Rational> unit(g.edge_count(), Rational(1));
  Solution s = KSubsetSearch(g, unit, k).run();
  s.method = "exact_dksh";
  return s;
}

Solution exact_weighted_dksh(const WeightedHypergraph& g, int k, long long subset_budget) {
  if (k < 1 || k > g.n()) throw std::domain_error("exact_weighted_dksh requires 1 <= k <= n");
  check_subset_budget(g.n(), k, subset_budget);
  Solution s = KSubsetSearch(g.base(), g.weights(), k).run();
  s.method = "exact_weighted_dksh";
  return s;
}

namespace {

// Exhaustive feasible-subset search with cost feasibility on the include
// branch and an optimistic-value prune. The prune is strict (<, not <=):
// an equal-potential subtree can still hold an equal-value witness that is
// lexicographically smaller (a prefix of an already-visited selection).
class SukpSearch {
 public:
  explicit SukpSearch(const SukpInstance& inst) : inst_(inst) {
    edges_with_.resize(inst.n());
    for (std::size_t e = 0; e < inst.edges().size(); ++e)
      for (int v : inst.edges()[e]) edges_with_[v].push_back(e);
    included_of_.assign(inst.edges().size(), 0);
    dead_.assign(inst.edges().size(), 0);
    for (const auto& p : inst.edge_profits()) potential_ += p;
    for (const auto& p : inst.vertex_profits()) potential_ += p;
  }

  Solution run() {
    dfs(0);
    Solution s;
    s.vertices = best_set_;
    s.total_cost = inst_.cost_of(best_set_);
    s.value = best_value_;
    s.method = "exact_sukp";
    return s;
  }

 private:
  void dfs(int pos) {
    if (pos == inst_.n()) {
      if (value_ > best_value_ || (value_ == best_value_ && chosen_ < best_set_)) {
        best_value_ = value_;
        best_set_ = chosen_;
      }
      return;
    }
    if (potential_ < best_value_) return;

    const Rational& c = inst_.costs()[pos];
    const Rational& vp = inst_.vertex_profits()[pos];
    if (cost_ + c <= inst_.budget()) {
      chosen_.push_back(pos);
      cost_ += c;
      value_ += vp;
      for (std::size_t e : edges_with_[pos])
        if (++included_of_[e] == inst_.edges()[e].size() && dead_[e] == 0)
          value_ += inst_.edge_profits()[e];
      dfs(pos + 1);
      for (std::size_t e : edges_with_[pos]) {
        if (included_of_[e] == inst_.edges()[e].size() && dead_[e] == 0)
          value_ -= inst_.edge_profits()[e];
        --included_of_[e];
      }
      value_ -= vp;
      cost_ -= c;
      chosen_.pop_back();
    }

    potential_ -= vp;
    for (std::size_t e : edges_with_[pos])
      if (dead_[e]++ == 0) potential_ -= inst_.edge_profits()[e];
    dfs(pos + 1);
    for (std::size_t e : edges_with_[pos])
      if (--dead_[e] == 0) potential_ += inst_.edge_profits()[e];
    potential_ += vp;
  }

  const SukpInstance& inst_;
  std::vector<std::vector<std::size_t>> edges_with_;
  std::vector<std::size_t> included_of_;
  std::vector<std::size_t> dead_;
  Rational cost_{0};
  Rational value_{0};
  Rational potential_{0};
  std::vector<int> chosen_;
  Rational best_value_{-1};
  std::vector<int> best_set_;
};

}  // namespace

Solution exact_sukp(const SukpInstance& inst, int max_n) {
  if (inst.n() > max_n)
    throw OracleRefusal("exact_sukp refused: n = " + std::to_string(inst.n()) +
                        " exceeds the 2^n enumeration bound n <= " + std::to_string(max_n));
  return SukpSearch(inst).run();
}

Solution exact_knapsack(const std::vector<Rational>& costs, const std::vector<Rational>& profits,
                        const Rational& budget, int max_n) {
  if (costs.size() != profits.size())
    throw std::invalid_argument("cost/profit count mismatch");
  SukpInstance inst(costs, budget, {}, {}, profits, 1);
  Solution s = exact_sukp(inst, max_n);
  s.method = "exact_knapsack";
  return s;
}

}  // namespace denseknap
