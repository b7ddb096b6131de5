#include "denseknap/instances.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace denseknap {

namespace {

void check_edge_list(int n, std::vector<std::vector<int>>& edges, int m_cap) {
  if (m_cap < 1) throw std::invalid_argument("m_cap must be >= 1");
  for (auto& e : edges) {
    if (e.empty()) throw std::invalid_argument("edge of size 0");
    if (static_cast<int>(e.size()) > m_cap)
      throw std::invalid_argument("edge larger than m_cap");
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("edge vertex id out of range");
      if (i > 0 && e[i] == e[i - 1]) throw std::invalid_argument("repeated vertex inside edge");
    }
  }
}

}  // namespace

Hypergraph::Hypergraph(int n, std::vector<std::vector<int>> edges, int m_cap)
    : n_(n), m_cap_(m_cap), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  check_edge_list(n_, edges_, m_cap_);
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1]) throw std::invalid_argument("duplicate edge");
}

int Hypergraph::max_edge_size() const {
  std::size_t m = 0;
  for (const auto& e : edges_) m = std::max(m, e.size());
  return static_cast<int>(m);
}

bool Hypergraph::is_uniform(int r) const {
  for (const auto& e : edges_)
    if (static_cast<int>(e.size()) != r) return false;
  return true;
}

Hypergraph Hypergraph::size_class(int r) const {
  std::vector<std::vector<int>> kept;
  for (const auto& e : edges_)
    if (static_cast<int>(e.size()) == r) kept.push_back(e);
  return Hypergraph(n_, std::move(kept), m_cap_);
}

WeightedHypergraph::WeightedHypergraph(int n, std::vector<std::vector<int>> edges,
                                       std::vector<Rational> weights, int m_cap)
    : base_(n, {}, m_cap) {
  if (edges.size() != weights.size())
    throw std::invalid_argument("edge/weight count mismatch");
  std::vector<std::vector<int>> kept_edges;
  std::vector<Rational> kept_weights;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (weights[i].sign() < 0) throw std::invalid_argument("negative edge weight");
    if (weights[i].is_zero()) continue;  // zero-weight edges are removed
    kept_edges.push_back(std::move(edges[i]));
    kept_weights.push_back(std::move(weights[i]));
  }
  // Canonical order: sort edges lexicographically, weights alongside.
  std::vector<std::size_t> perm(kept_edges.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  for (auto& e : kept_edges) std::sort(e.begin(), e.end());
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return kept_edges[a] < kept_edges[b]; });
  std::vector<std::vector<int>> ordered_edges;
  std::vector<Rational> ordered_weights;
  ordered_edges.reserve(perm.size());
  for (std::size_t i : perm) {
    ordered_edges.push_back(std::move(kept_edges[i]));
    ordered_weights.push_back(std::move(kept_weights[i]));
  }
  base_ = Hypergraph(n, std::move(ordered_edges), m_cap);
  weights_ = std::move(ordered_weights);
}

Rational WeightedHypergraph::max_weight() const {
  Rational m(0);
  for (const auto& w : weights_) m = denseknap::max(m, w);
  return m;
}

Rational WeightedHypergraph::total_weight() const {
  Rational t(0);
  for (const auto& w : weights_) t += w;
  return t;
}

SukpInstance::SukpInstance(std::vector<Rational> costs, Rational budget,
                           std::vector<std::vector<int>> edges, std::vector<Rational> edge_profits,
                           std::vector<Rational> vertex_profits, int m_cap)
    : costs_(std::move(costs)),
      budget_(std::move(budget)),
      edges_(std::move(edges)),
      edge_profits_(std::move(edge_profits)),
      vertex_profits_(std::move(vertex_profits)),
      m_cap_(m_cap) {
  int n = static_cast<int>(costs_.size());
  for (const auto& c : costs_)
    if (c.sign() < 0) throw std::invalid_argument("negative item cost");
  if (budget_.sign() < 0) throw std::invalid_argument("negative budget");
  if (edges_.size() != edge_profits_.size())
    throw std::invalid_argument("edge/profit count mismatch");
  for (const auto& p : edge_profits_)
    if (p.sign() < 0) throw std::invalid_argument("negative edge profit");
  if (vertex_profits_.empty()) vertex_profits_.assign(n, Rational(0));
  if (static_cast<int>(vertex_profits_.size()) != n)
    throw std::invalid_argument("vertex profit count mismatch");
  for (const auto& p : vertex_profits_)
    if (p.sign() < 0) throw std::invalid_argument("negative vertex profit");
  check_edge_list(n, edges_, m_cap_);

  std::vector<std::size_t> perm(edges_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return edges_[a] < edges_[b]; });
  std::vector<std::vector<int>> oe;
  std::vector<Rational> op;
  oe.reserve(perm.size());
  for (std::size_t i : perm) {
    oe.push_back(std::move(edges_[i]));
    op.push_back(std::move(edge_profits_[i]));
  }
  for (std::size_t i = 1; i < oe.size(); ++i)
    if (oe[i] == oe[i - 1]) throw std::invalid_argument("duplicate edge");
  edges_ = std::move(oe);
  edge_profits_ = std::move(op);
}

int SukpInstance::max_edge_size() const {
  std::size_t m = 0;
  for (const auto& e : edges_) m = std::max(m, e.size());
  return static_cast<int>(m);
}

Rational SukpInstance::cost_of(const std::vector<int>& verts) const {
  Rational c(0);
  for (int v : verts) c += costs_.at(v);
  return c;
}

bool better_solution(const Solution& a, const Solution& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.vertices < b.vertices;
}

namespace {

std::vector<char> membership(int n, const std::vector<int>& verts) {
  std::vector<char> in(n, 0);
  for (int v : verts) {
    if (v < 0 || v >= n) throw std::invalid_argument("vertex id out of range");
    in[v] = 1;
  }
  return in;
}

bool contained(const std::vector<int>& edge, const std::vector<char>& in) {
  for (int v : edge)
    if (!in[v]) return false;
  return true;
}

}  // namespace

long long induced_edge_count(const Hypergraph& g, const std::vector<int>& verts) {
  auto in = membership(g.n(), verts);
  long long c = 0;
  for (const auto& e : g.edges())
    if (contained(e, in)) ++c;
  return c;
}

Rational induced_weight(const WeightedHypergraph& g, const std::vector<int>& verts) {
  auto in = membership(g.n(), verts);
  Rational total(0);
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    if (contained(g.edges()[i], in)) total += g.weights()[i];
  return total;
}

Rational induced_profit(const SukpInstance& inst, const std::vector<int>& verts) {
  auto in = membership(inst.n(), verts);
  Rational total(0);
  for (int v : verts) total += inst.vertex_profits()[v];
  for (std::size_t i = 0; i < inst.edges().size(); ++i)
    if (contained(inst.edges()[i], in)) total += inst.edge_profits()[i];
  return total;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace

Solution make_hypergraph_solution(const Hypergraph& g, std::vector<int> verts, std::string method) {
  Solution s;
  s.vertices = sorted_unique(std::move(verts));
  s.total_cost = Rational(static_cast<long long>(s.vertices.size()));
  s.value = Rational(induced_edge_count(g, s.vertices));
  s.method = std::move(method);
  return s;
}

Solution make_weighted_solution(const WeightedHypergraph& g, std::vector<int> verts,
                                std::string method) {
  Solution s;
  s.vertices = sorted_unique(std::move(verts));
  s.total_cost = Rational(static_cast<long long>(s.vertices.size()));
  s.value = induced_weight(g, s.vertices);
  s.method = std::move(method);
  return s;
}

Solution make_sukp_solution(const SukpInstance& inst, std::vector<int> verts, std::string method) {
  Solution s;
  s.vertices = sorted_unique(std::move(verts));
  s.total_cost = inst.cost_of(s.vertices);
  s.value = induced_profit(inst, s.vertices);
  s.method = std::move(method);
  return s;
}

WeightedHypergraph link_multihypergraph(const Hypergraph& g, const std::vector<int>& block) {
  int r = g.max_edge_size();
  if (r < 2) throw std::invalid_argument("link requires edges of order >= 2");
  if (!g.is_uniform(r)) throw std::invalid_argument("link requires a uniform hypergraph");
  if (block.empty()) throw std::invalid_argument("link requires a nonempty block");
  auto in_block = membership(g.n(), block);

  std::map<std::vector<int>, long long> mult;
  std::vector<int> reduced;
  for (const auto& e : g.edges()) {
    for (int v : e) {
      if (!in_block[v]) continue;
      reduced.clear();
      for (int u : e)
        if (u != v) reduced.push_back(u);
      ++mult[reduced];
    }
  }
  std::vector<std::vector<int>> edges;
  std::vector<Rational> weights;
  edges.reserve(mult.size());
  for (const auto& [e, w] : mult) {
    edges.push_back(e);
    weights.push_back(Rational(w));
  }
  return WeightedHypergraph(g.n(), std::move(edges), std::move(weights), r - 1);
}

}  // namespace denseknap
