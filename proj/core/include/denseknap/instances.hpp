#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "denseknap/rational.hpp"

namespace denseknap {

// Vertices are ids 0..n-1. Edges are sorted, duplicate-free id lists of size
// 1..m_cap, stored in lexicographic order. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph(int n, std::vector<std::vector<int>> edges, int m_cap);

  int n() const { return n_; }
  int m_cap() const { return m_cap_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  int max_edge_size() const;
  bool is_uniform(int r) const;  // every edge has exactly r vertices
  // Edges of size exactly r, same vertex set.
  Hypergraph size_class(int r) const;

 private:
  int n_ = 0;
  int m_cap_ = 1;
  std::vector<std::vector<int>> edges_;
};

// Hypergraph with a positive weight per edge. Multi-hypergraphs are stored
// here with integer multiplicities as weights. Zero-weight edges are dropped
// at construction; negative weights are rejected.
class WeightedHypergraph {
 public:
  WeightedHypergraph(int n, std::vector<std::vector<int>> edges, std::vector<Rational> weights,
                     int m_cap);

  const Hypergraph& base() const { return base_; }
  int n() const { return base_.n(); }
  int m_cap() const { return base_.m_cap(); }
  const std::vector<std::vector<int>>& edges() const { return base_.edges(); }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational max_weight() const;
  Rational total_weight() const;

 private:
  Hypergraph base_;
  std::vector<Rational> weights_;
};

// Set-union knapsack instance: per-item nonnegative costs, a budget, edges
// (item subsets) with nonnegative profits, and optional per-item profits.
// All quantities are exact rationals.
class SukpInstance {
 public:
  SukpInstance(std::vector<Rational> costs, Rational budget, std::vector<std::vector<int>> edges,
               std::vector<Rational> edge_profits, std::vector<Rational> vertex_profits, int m_cap);

  int n() const { return static_cast<int>(costs_.size()); }
  int m_cap() const { return m_cap_; }
  const std::vector<Rational>& costs() const { return costs_; }
  const Rational& budget() const { return budget_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }
  const std::vector<Rational>& edge_profits() const { return edge_profits_; }
  const std::vector<Rational>& vertex_profits() const { return vertex_profits_; }
  int max_edge_size() const;

  Rational cost_of(const std::vector<int>& verts) const;

 private:
  std::vector<Rational> costs_;
  Rational budget_;
  std::vector<std::vector<int>> edges_;
  std::vector<Rational> edge_profits_;
  std::vector<Rational> vertex_profits_;  // always size n
  int m_cap_ = 1;
};

// A selected vertex set with its recomputable cost and objective value.
// For unweighted hypergraph problems total_cost is the vertex count.
struct Solution {
  std::vector<int> vertices;  // sorted ids
  Rational total_cost;
  Rational value;
  std::string method;  // winning branch, informational only
};

// Deterministic preference: larger value, then lexicographically smaller
// vertex list. Used for every reduction over candidate solutions so that
// concurrent evaluation can never change the result.
bool better_solution(const Solution& a, const Solution& b);

long long induced_edge_count(const Hypergraph& g, const std::vector<int>& verts);
Rational induced_weight(const WeightedHypergraph& g, const std::vector<int>& verts);
// Vertex profits of the selection plus profits of fully contained edges.
Rational induced_profit(const SukpInstance& inst, const std::vector<int>& verts);

Solution make_hypergraph_solution(const Hypergraph& g, std::vector<int> verts, std::string method);
Solution make_weighted_solution(const WeightedHypergraph& g, std::vector<int> verts,
                                std::string method);
Solution make_sukp_solution(const SukpInstance& inst, std::vector<int> verts, std::string method);

// For each r-edge e of `g` and each v in (e intersect block), contributes the
// (r-1)-set e\{v}; multiplicities accumulate as integer weights. Requires a
// uniform graph of order r >= 2 and a nonempty block.
WeightedHypergraph link_multihypergraph(const Hypergraph& g, const std::vector<int>& block);

}  // namespace denseknap
