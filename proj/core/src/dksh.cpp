#include "denseknap/dksh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "denseknap/errors.hpp"
#include "denseknap/exponents.hpp"
#include "denseknap/oracles.hpp"

namespace denseknap {

namespace {

void trace_line(TraceSink* trace, const std::string& line) {
  if (trace) trace->emit(line);
}

void keep_better(Solution& best, Solution cand) {
  if (better_solution(cand, best)) best = std::move(cand);
}

std::vector<int> pad_with_unused(std::vector<int> verts, int n, int target) {
  std::vector<char> used(n, 0);
  for (int v : verts) used[v] = 1;
  for (int v = 0; v < n && static_cast<int>(verts.size()) < target; ++v)
    if (!used[v]) verts.push_back(v);
  std::sort(verts.begin(), verts.end());
  return verts;
}

}  // namespace

Solution exact_base_oracle(const Hypergraph& g, int k, long long enum_budget) {
  Solution s = exact_dksh(g, k, enum_budget);
  s.method = "base_exact";
  return s;
}

Solution greedy_base_oracle(const Hypergraph& g, int k) {
  if (k < 1 || k > g.n()) throw std::domain_error("greedy_base_oracle requires 1 <= k <= n");

  // Candidate 1: peel the minimum-degree vertex (lowest id on ties) until k remain.
  std::vector<std::vector<std::size_t>> edges_with(g.n());
  for (std::size_t e = 0; e < g.edges().size(); ++e)
    for (int v : g.edges()[e]) edges_with[v].push_back(e);

  std::vector<long long> degree(g.n(), 0);
  std::vector<char> removed(g.n(), 0);
  std::vector<char> edge_dead(g.edge_count(), 0);
  for (int v = 0; v < g.n(); ++v) degree[v] = static_cast<long long>(edges_with[v].size());

  std::set<std::pair<long long, int>> queue;
  for (int v = 0; v < g.n(); ++v) queue.insert({degree[v], v});
  int remaining = g.n();
  while (remaining > k) {
    int victim = queue.begin()->second;
    queue.erase(queue.begin());
    removed[victim] = 1;
    --remaining;
    for (std::size_t e : edges_with[victim]) {
      if (edge_dead[e]) continue;
      edge_dead[e] = 1;
      for (int u : g.edges()[e])
        if (!removed[u]) {
          queue.erase({degree[u], u});
          --degree[u];
          queue.insert({degree[u], u});
        }
    }
  }
  std::vector<int> peeled;
  for (int v = 0; v < g.n(); ++v)
    if (!removed[v]) peeled.push_back(v);
  Solution best = make_hypergraph_solution(g, std::move(peeled), "base_greedy_peel");

  // Candidate 2: the k highest original degrees, ties to the lowest id.
  std::vector<int> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  std::vector<long long> orig_degree(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) orig_degree[v] = static_cast<long long>(edges_with[v].size());
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return orig_degree[a] > orig_degree[b]; });
  std::vector<int> top(order.begin(), order.begin() + k);
  keep_better(best, make_hypergraph_solution(g, std::move(top), "base_greedy_topk"));
  return best;
}

BaseOracleSpec make_base_oracle(const std::string& name, long long enum_budget) {
  BaseOracleSpec spec;
  spec.claimed_exponent = Rational(1, 4);
  if (name == "exact") {
    spec.name = "exact";
    spec.solve = [enum_budget](const Hypergraph& g, int k) {
      return exact_base_oracle(g, k, enum_budget);
    };
  } else if (name == "greedy") {
    spec.name = "greedy";
    spec.solve = [](const Hypergraph& g, int k) { return greedy_base_oracle(g, k); };
  } else {
    throw std::invalid_argument("unknown base oracle: " + name);
  }
  return spec;
}

DkshConfig default_dksh_config(const std::string& base_name) {
  DkshConfig cfg;
  cfg.base = make_base_oracle(base_name, cfg.enum_budget);
  return cfg;
}

Solution solve_trivial(const Hypergraph& g, int k, int m) {
  if (k < 1 || k > g.n()) throw std::domain_error("solve_trivial requires 1 <= k <= n");
  if (m < 1 || g.max_edge_size() > m)
    throw std::invalid_argument("solve_trivial given edges larger than m");

  long long edge_count = static_cast<long long>(g.edge_count());
  if (static_cast<long long>(m) * edge_count < k) {
    // Few edges: every incident vertex fits inside the budget, so taking all
    // of them is optimal.
    std::vector<int> verts;
    for (const auto& e : g.edges()) verts.insert(verts.end(), e.begin(), e.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return make_hypergraph_solution(g, pad_with_unused(std::move(verts), g.n(), k),
                                    "trivial_all_edges");
  }

  // floor(k/m) edges chosen greedily to maximize overlap with what is already
  // selected; ties go to the lowest edge index.
  long long take = k / m;
  std::vector<char> in_union(g.n(), 0);
  std::vector<char> used_edge(g.edge_count(), 0);
  std::vector<int> verts;
  for (long long step = 0; step < take; ++step) {
    int best_edge = -1;
    int best_overlap = -1;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (used_edge[e]) continue;
      int overlap = 0;
      for (int v : g.edges()[e]) overlap += in_union[v];
      if (overlap > best_overlap) {
        best_overlap = overlap;
        best_edge = static_cast<int>(e);
      }
    }
    if (best_edge < 0) break;
    used_edge[best_edge] = 1;
    for (int v : g.edges()[best_edge])
      if (!in_union[v]) {
        in_union[v] = 1;
        verts.push_back(v);
      }
  }
  return make_hypergraph_solution(g, std::move(verts), "trivial_greedy_union");
}

RoundedWeighted round_weights(const WeightedHypergraph& g) {
  RoundedWeighted out{WeightedHypergraph(g.n(), {}, {}, g.m_cap()), {}, 2};
  if (g.edges().empty()) return out;
  for (const auto& w : g.weights())
    if (w.sign() <= 0) throw std::invalid_argument("round_weights requires positive weights");

  long top = g.max_weight().floor_log2();  // 2^top <= max weight
  mpz_class subsets = binomial(g.n(), g.m_cap());
  long l = subsets <= 1 ? 0 : ceil_log2(subsets);
  out.level_count_bound = static_cast<int>(l) + 2;

  for (long i = 0; i <= l; ++i) out.levels.push_back(Rational::pow2(top - i));

  std::vector<std::vector<int>> edges;
  std::vector<Rational> weights;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    long le = g.weights()[e].floor_log2();
    if (le < top - l) continue;  // below the last level: rounds to zero
    edges.push_back(g.edges()[e]);
    weights.push_back(Rational::pow2(le));
  }
  out.graph = WeightedHypergraph(g.n(), std::move(edges), std::move(weights), g.m_cap());
  return out;
}

Solution solve_weighted(const WeightedHypergraph& g, int k, const UnweightedSolver& solver) {
  if (k < 1 || k > g.n()) throw std::domain_error("solve_weighted requires 1 <= k <= n");
  Solution best = make_weighted_solution(g, {}, "weighted_empty");
  if (g.edges().empty()) return best;

  RoundedWeighted rounded = round_weights(g);
  for (const Rational& level : rounded.levels) {
    std::vector<std::vector<int>> level_edges;
    for (std::size_t e = 0; e < rounded.graph.edges().size(); ++e)
      if (rounded.graph.weights()[e] == level) level_edges.push_back(rounded.graph.edges()[e]);
    if (level_edges.empty()) continue;
    Hypergraph level_graph(g.n(), std::move(level_edges), g.m_cap());
    Solution sub = solver(level_graph, k);
    // Rank candidates by what they are worth under the original weights.
    keep_better(best, make_weighted_solution(g, sub.vertices, "weighted_level"));
  }
  return best;
}

namespace {

Solution approx_dksh_impl(const Hypergraph& g, int k, int m, const DkshConfig& cfg,
                          TraceSink* trace) {
  if (k < 1 || k > g.n()) throw std::domain_error("approx_dksh requires 1 <= k <= n");
  if (m < 1 || g.max_edge_size() > m)
    throw std::invalid_argument("approx_dksh given edges larger than m");

  Solution best = make_hypergraph_solution(g, {}, "empty");

  // (a) exact when the instance is tiny or the budget is below the 4m floor
  // the halving lemma needs.
  if (g.n() <= cfg.exact_cutoff_n || k < 4 * m) {
    try {
      keep_better(best, exact_dksh(g, k, cfg.enum_budget));
    } catch (const OracleRefusal& e) {
      trace_line(trace, std::string("{\"event\":\"exact_branch_refused\",\"reason\":\"") +
                            e.what() + "\"}");
    }
  }

  // (b) always: the trivial edge-union bound.
  keep_better(best, solve_trivial(g, k, m));

  int top_size = g.max_edge_size();

  // (c) order <= 2: the pluggable base oracle.
  if (top_size >= 1 && top_size <= 2) {
    try {
      Solution base = cfg.base.solve(g, k);
      keep_better(best, make_hypergraph_solution(g, base.vertices, "base_" + cfg.base.name));
    } catch (const OracleRefusal& e) {
      trace_line(trace, std::string("{\"event\":\"base_refused\",\"reason\":\"") + e.what() +
                            "\"}");
    }
  }

  // (d) per edge-size class r >= 3: partition the vertices into blocks of
  // floor(k/2), link each block down to order r-1, solve the weighted
  // (r-1)-instance with budget floor(k/2), and lift by uniting with the block.
  int half = k / 2;
  if (half >= 1) {
    for (int r = 3; r <= top_size; ++r) {
      Hypergraph gr = g.size_class(r);
      if (gr.edges().empty()) continue;
      if (trace) {
        double threshold =
            std::pow(static_cast<double>(g.n()),
                     exponents::theta(r).to_double() / static_cast<double>(r - 1));
        std::ostringstream os;
        os << "{\"event\":\"recursion_threshold\",\"r\":" << r << ",\"n\":" << g.n()
           << ",\"k\":" << k << ",\"n_pow_theta_over_r1\":" << threshold << "}";
        trace_line(trace, os.str());
      }
      for (int lo = 0; lo < g.n(); lo += half) {
        int hi = std::min(g.n(), lo + half);
        std::vector<int> block(hi - lo);
        std::iota(block.begin(), block.end(), lo);
        WeightedHypergraph link = link_multihypergraph(gr, block);
        if (link.edges().empty()) continue;
        Solution sub = solve_weighted(link, half, [&](const Hypergraph& level, int kk) {
          return approx_dksh_impl(level, kk, r - 1, cfg, trace);
        });
        std::vector<int> lifted = sub.vertices;
        lifted.insert(lifted.end(), block.begin(), block.end());
        keep_better(best, make_hypergraph_solution(g, std::move(lifted), "link_recursion"));
      }
    }
  }
  return best;
}

}  // namespace

Solution approx_dksh(const Hypergraph& g, int k, int m, const DkshConfig& cfg, TraceSink* trace) {
  if (!cfg.base.solve) throw std::invalid_argument("approx_dksh requires a base oracle");
  return approx_dksh_impl(g, k, m, cfg, trace);
}

}  // namespace denseknap
