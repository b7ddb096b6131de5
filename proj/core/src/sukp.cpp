#include "denseknap/sukp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "denseknap/errors.hpp"
#include "denseknap/oracles.hpp"

namespace denseknap {

namespace {

void trace_line(TraceSink* trace, const std::string& line) {
  if (trace) trace->emit(line);
}

void keep_better(Solution& best, Solution cand) {
  if (better_solution(cand, best)) best = std::move(cand);
}

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Solution approx_sukp_impl(const SukpInstance& inst, const SukpConfig& cfg, TraceSink* trace,
                          int depth);

}  // namespace

SukpConfig default_sukp_config() {
  SukpConfig cfg;
  cfg.dksh = default_dksh_config("greedy");
  cfg.dksh.exact_cutoff_n = 10;
  return cfg;
}

PrunedSukp prune(const SukpInstance& inst) {
  std::vector<int> keep;
  std::vector<int> new_id(inst.n(), -1);
  for (int v = 0; v < inst.n(); ++v)
    if (inst.costs()[v] <= inst.budget()) {
      new_id[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }

  std::vector<Rational> costs, vertex_profits;
  costs.reserve(keep.size());
  vertex_profits.reserve(keep.size());
  for (int v : keep) {
    costs.push_back(inst.costs()[v]);
    vertex_profits.push_back(inst.vertex_profits()[v]);
  }

  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (inst.edge_profits()[e].is_zero()) continue;
    Rational member_cost(0);
    bool alive = true;
    std::vector<int> mapped;
    for (int v : inst.edges()[e]) {
      if (new_id[v] < 0) {
        alive = false;
        break;
      }
      mapped.push_back(new_id[v]);
      member_cost += inst.costs()[v];
    }
    if (!alive || member_cost > inst.budget()) continue;
    edges.push_back(std::move(mapped));
    profits.push_back(inst.edge_profits()[e]);
  }

  return PrunedSukp{SukpInstance(std::move(costs), inst.budget(), std::move(edges),
                                 std::move(profits), std::move(vertex_profits), inst.m_cap()),
                    std::move(keep)};
}

SukpInstance fold_unit_edges(const SukpInstance& inst) {
  std::vector<Rational> vertex_profits = inst.vertex_profits();
  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    if (inst.edges()[e].size() == 1) {
      vertex_profits[inst.edges()[e][0]] += inst.edge_profits()[e];
    } else {
      edges.push_back(inst.edges()[e]);
      profits.push_back(inst.edge_profits()[e]);
    }
  }
  return SukpInstance(inst.costs(), inst.budget(), std::move(edges), std::move(profits),
                      std::move(vertex_profits), inst.m_cap());
}

SukpInstance round_profits(const SukpInstance& inst) {
  Rational top(0);
  for (const auto& p : inst.edge_profits()) top = max(top, p);
  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  if (top.sign() > 0) {
    long l = top.floor_log2();  // 2^l <= top profit
    mpz_class n_pow_r;
    mpz_ui_pow_ui(n_pow_r.get_mpz_t(), static_cast<unsigned long>(std::max(inst.n(), 1)),
                  static_cast<unsigned long>(inst.m_cap()));
    long q = int_above_log2(n_pow_r);
    for (std::size_t e = 0; e < inst.edges().size(); ++e) {
      if (inst.edge_profits()[e].sign() <= 0) continue;
      long le = inst.edge_profits()[e].floor_log2();
      if (le < l - q) continue;  // below the last level: rounds to zero
      edges.push_back(inst.edges()[e]);
      profits.push_back(Rational::pow2(le));
    }
  }
  return SukpInstance(inst.costs(), inst.budget(), std::move(edges), std::move(profits),
                      inst.vertex_profits(), inst.m_cap());
}

BucketedInstance bucket_costs(const SukpInstance& inst) {
  BucketedInstance out;
  out.base = std::make_shared<SukpInstance>(inst);
  out.s = static_cast<int>(int_above_log2(mpz_class(std::max(inst.n(), 1))));

  Rational top(0);
  for (const auto& c : inst.costs()) top = max(top, c);
  if (top.sign() > 0) {
    long fl = top.floor_log2();
    out.k_pow = Rational::pow2(fl) == top ? fl : fl + 1;  // smallest 2^k >= max cost
  }

  out.bucket_of.assign(inst.n(), out.tiny_bucket());
  for (int v = 0; v < inst.n(); ++v) {
    const Rational& c = inst.costs()[v];
    if (c.is_zero()) continue;  // zero-cost vertices live in the tiny bucket
    long fl = c.floor_log2();
    long cl = Rational::pow2(fl) == c ? fl : fl + 1;  // smallest 2^cl >= c
    long b = out.k_pow + 1 - cl;                      // then 2^{k-b} < c <= 2^{k+1-b}
    out.bucket_of[v] = b <= out.s + 2 ? static_cast<int>(b) : out.tiny_bucket();
  }
  return out;
}

Rational ClassInstance::cost_of(const std::vector<int>& verts) const {
  Rational c(0);
  for (int v : verts) c += base->costs().at(v);
  return c;
}

Rational ClassInstance::class_value(const std::vector<int>& verts) const {
  std::vector<char> in(base->n(), 0);
  for (int v : verts) in[v] = 1;
  long long contained = 0;
  for (const auto& e : edges) {
    bool all = true;
    for (int v : e.sorted)
      if (!in[v]) {
        all = false;
        break;
      }
    if (all) ++contained;
  }
  return profit_level * Rational(contained);
}

std::vector<ClassInstance> decompose(const BucketedInstance& b) {
  const SukpInstance& inst = *b.base;
  std::vector<ClassInstance> out;

  ClassInstance class1;
  class1.tag = 1;
  class1.budget = inst.budget();
  class1.base = b.base;
  class1.tiny_bucket = b.tiny_bucket();
  class1.k_pow = b.k_pow;
  out.push_back(std::move(class1));

  // Group edges by (profit level, bucket signature). Within an edge, slots
  // are ordered cheapest bucket first (bucket index descending, id ascending
  // inside a bucket); that fixed order is the layer assignment.
  std::map<std::pair<long, std::vector<int>>, std::vector<std::size_t>> groups;
  std::vector<std::vector<int>> slot_order(inst.edges().size());
  for (std::size_t e = 0; e < inst.edges().size(); ++e) {
    const auto& edge = inst.edges()[e];
    if (edge.size() < 2)
      throw std::invalid_argument("decompose requires unit edges folded into vertex profits");
    const Rational& p = inst.edge_profits()[e];
    if (p.sign() <= 0) throw std::invalid_argument("decompose requires positive edge profits");
    long level = p.floor_log2();
    if (Rational::pow2(level) != p)
      throw std::invalid_argument("decompose requires power-of-two edge profits");
    std::vector<int> order(edge);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (b.bucket_of[x] != b.bucket_of[y]) return b.bucket_of[x] > b.bucket_of[y];
      return x < y;
    });
    std::vector<int> sig;
    sig.reserve(order.size());
    for (int v : order) sig.push_back(b.bucket_of[v]);
    slot_order[e] = std::move(order);
    groups[{level, std::move(sig)}].push_back(e);
  }

  for (const auto& [key, edge_ids] : groups) {
    const auto& sig = key.second;
    ClassInstance ci;
    ci.profit_level = Rational::pow2(key.first);
    ci.budget = inst.budget();
    ci.base = b.base;
    ci.tiny_bucket = b.tiny_bucket();
    ci.k_pow = b.k_pow;
    ci.tag = sig.front() == b.tiny_bucket() ? 2 : 3;
    int r = static_cast<int>(sig.size());
    ci.layers.resize(r);
    for (int j = 0; j < r; ++j) ci.layers[j].bucket = sig[j];
    for (std::size_t e : edge_ids) {
      ClassEdge ce;
      ce.by_layer = slot_order[e];
      ce.sorted = inst.edges()[e];
      ci.edges.push_back(std::move(ce));
      for (int j = 0; j < r; ++j) ci.layers[j].verts.push_back(slot_order[e][j]);
    }
    for (auto& layer : ci.layers) {
      std::sort(layer.verts.begin(), layer.verts.end());
      layer.verts.erase(std::unique(layer.verts.begin(), layer.verts.end()), layer.verts.end());
    }
    out.push_back(std::move(ci));
  }
  return out;
}

namespace {

struct KnapsackItems {
  std::vector<int> ids;  // positions in the caller's arrays
  std::vector<long long> scaled_profit;
  long long total_scaled = 0;
};

// 0/1 DP over exact scaled-profit sums; dp[q] = min cost reaching q. The
// take matrix records, per item pass, whether the item produced dp[q], so
// walking items backwards reconstructs one optimal selection.
template <typename Cost>
std::vector<int> knapsack_dp(const KnapsackItems& items, const std::vector<Cost>& cost,
                             const Cost& budget) {
  long long q_max = items.total_scaled;
  std::vector<Cost> dp(static_cast<std::size_t>(q_max) + 1, Cost(0));
  std::vector<char> reach(static_cast<std::size_t>(q_max) + 1, 0);
  reach[0] = 1;
  int n = static_cast<int>(items.ids.size());
  std::vector<std::vector<char>> take(n, std::vector<char>(static_cast<std::size_t>(q_max) + 1, 0));
  for (int i = 0; i < n; ++i) {
    long long qi = items.scaled_profit[i];
    if (qi == 0) continue;
    for (long long q = q_max; q >= qi; --q) {
      if (!reach[q - qi]) continue;
      Cost cand = dp[q - qi] + cost[i];
      if (!reach[q] || cand < dp[q]) {
        dp[q] = cand;
        reach[q] = 1;
        take[i][q] = 1;
      }
    }
  }
  long long best_q = 0;
  for (long long q = q_max; q >= 0; --q)
    if (reach[q] && dp[q] <= budget) {
      best_q = q;
      break;
    }
  std::vector<int> chosen;
  long long q = best_q;
  for (int i = n - 1; i >= 0 && q > 0; --i)
    if (q >= items.scaled_profit[i] && take[i][q]) {
      chosen.push_back(items.ids[i]);
      q -= items.scaled_profit[i];
    }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Solution knapsack_fptas(const std::vector<Rational>& costs, const std::vector<Rational>& profits,
                        const Rational& budget, const Rational& epsilon) {
  if (costs.size() != profits.size()) throw std::invalid_argument("cost/profit count mismatch");
  if (epsilon.sign() <= 0) throw std::domain_error("knapsack_fptas requires epsilon > 0");

  int n = static_cast<int>(costs.size());
  std::vector<int> eligible;
  Rational top(0);
  for (int i = 0; i < n; ++i) {
    if (profits[i].sign() < 0 || costs[i].sign() < 0)
      throw std::invalid_argument("knapsack_fptas requires nonnegative inputs");
    if (costs[i] <= budget && profits[i].sign() > 0) {
      eligible.push_back(i);
      top = max(top, profits[i]);
    }
  }

  std::vector<int> chosen;
  if (!eligible.empty()) {
    // Internal loss eps' = eps/(1+eps) turns the usual (1 - eps') bound into
    // value >= OPT/(1+eps).
    Rational eps_prime = epsilon / (Rational(1) + epsilon);
    Rational scale = eps_prime * top / Rational(static_cast<long long>(eligible.size()));
    bool all_integral = true;
    for (int i : eligible)
      if (!profits[i].is_integer()) all_integral = false;
    if (all_integral && scale <= Rational(1)) scale = Rational(1);  // lossless: DP is exact

    KnapsackItems items;
    for (int i : eligible) {
      items.ids.push_back(i);
      long long q = (profits[i] / scale).floor_ll();
      items.scaled_profit.push_back(q);
      items.total_scaled += q;
    }
    if (items.total_scaled > 200'000)
      throw OracleRefusal("knapsack_fptas: scaled profit table too large; raise epsilon");

    // Integer-cost fast path: scale by the least common denominator when the
    // numbers stay in machine range. cost <= B iff lcm*cost <= floor(lcm*B)
    // because scaled costs are integers.
    mpz_class lcm(1);
    for (int i : items.ids)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), costs[i].raw().get_den().get_mpz_t());
    bool int_path = lcm.fits_slong_p();
    std::vector<long long> int_costs;
    long long int_budget = 0;
    if (int_path) {
      Rational lcm_q{mpz_class(lcm)};
      Rational scaled_total(0);
      for (int i : items.ids) scaled_total += costs[i] * lcm_q;
      if (scaled_total < Rational(std::numeric_limits<long long>::max() / 4)) {
        for (int i : items.ids) int_costs.push_back((costs[i] * lcm_q).floor_ll());
        int_budget = (budget * lcm_q).floor_ll();
      } else {
        int_path = false;
      }
    }
    if (int_path) {
      chosen = knapsack_dp<long long>(items, int_costs, int_budget);
    } else {
      std::vector<Rational> rcosts;
      for (int i : items.ids) rcosts.push_back(costs[i]);
      chosen = knapsack_dp<Rational>(items, rcosts, budget);
    }

    // Zero-cost profitable items ride along for free.
    std::vector<char> in(n, 0);
    for (int i : chosen) in[i] = 1;
    for (int i : eligible)
      if (!in[i] && costs[i].is_zero()) chosen.push_back(i);
    std::sort(chosen.begin(), chosen.end());
  }

  Solution s;
  s.vertices = std::move(chosen);
  s.total_cost = Rational(0);
  s.value = Rational(0);
  for (int i : s.vertices) {
    s.total_cost += costs[i];
    s.value += profits[i];
  }
  s.method = "knapsack_fptas";
  return s;
}

namespace {

// Fixes `fixed` as the chosen subset of layer `del` and reduces the class to
// a plain order-(r-1) SUKP over the remaining layers. Edges whose slot-del
// vertex is not fixed are dropped; slots already satisfied by `fixed`
// disappear; layer-del vertices outside `fixed` are decided out. Reduced
// edges of size 1 become vertex profits, of size 0 a constant offset.
struct LayerFix {
  SukpInstance sub;
  std::vector<int> orig_of;
  Rational offset{0};
};

LayerFix fix_layer(const ClassInstance& ci, int del, const std::vector<int>& fixed) {
  std::vector<char> in_fixed(ci.base->n(), 0);
  for (int v : fixed) in_fixed[v] = 1;
  std::vector<char> dead(ci.base->n(), 0);
  for (int v : ci.layers[del].verts)
    if (!in_fixed[v]) dead[v] = 1;

  std::vector<int> universe;
  for (int j = 0; j < ci.order(); ++j) {
    if (j == del) continue;
    for (int v : ci.layers[j].verts)
      if (!in_fixed[v] && !dead[v]) universe.push_back(v);
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::vector<int> sub_id(ci.base->n(), -1);
  for (std::size_t i = 0; i < universe.size(); ++i) sub_id[universe[i]] = static_cast<int>(i);

  std::map<std::vector<int>, Rational> reduced;  // merges duplicate reductions
  std::vector<Rational> vertex_profits(universe.size(), Rational(0));
  Rational offset(0);
  for (const auto& e : ci.edges) {
    if (!in_fixed[e.by_layer[del]]) continue;
    std::vector<int> rest;
    bool killed = false;
    for (int j = 0; j < ci.order(); ++j) {
      if (j == del) continue;
      int v = e.by_layer[j];
      if (in_fixed[v]) continue;  // already selected, slot satisfied
      if (dead[v]) {
        killed = true;
        break;
      }
      rest.push_back(sub_id[v]);
    }
    if (killed) continue;
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    if (rest.empty())
      offset += ci.profit_level;
    else if (rest.size() == 1)
      vertex_profits[rest[0]] += ci.profit_level;
    else
      reduced[rest] += ci.profit_level;
  }

  std::vector<Rational> costs;
  costs.reserve(universe.size());
  for (int v : universe) costs.push_back(ci.base->costs()[v]);
  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  for (const auto& [verts, p] : reduced) {
    edges.push_back(verts);
    profits.push_back(p);
  }
  Rational sub_budget = ci.budget - ci.cost_of(fixed);
  int m_cap = std::max(1, ci.order() - 1);
  return LayerFix{SukpInstance(std::move(costs), std::move(sub_budget), std::move(edges),
                               std::move(profits), std::move(vertex_profits), m_cap),
                  std::move(universe), std::move(offset)};
}

// Distinct slot-j endpoints of the class edges. Fixed sets that avoid every
// endpoint keep no edge, so enumeration may stay inside this set: dropping a
// non-endpoint from a fixed set never loses class value and frees budget.
std::vector<int> layer_endpoints(const ClassInstance& ci, int j) {
  std::vector<int> out;
  for (const auto& e : ci.edges) out.push_back(e.by_layer[j]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Solution class_candidate(const ClassInstance& ci, std::vector<int> verts,
                         const std::string& method) {
  Solution s;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  s.total_cost = ci.cost_of(verts);
  s.value = ci.class_value(verts);
  s.vertices = std::move(verts);
  s.method = method;
  return s;
}

// Layer-fix branch shared by the class strategies. Budgets and the reduced
// instance live in `work` (normalized for class 3); the candidate is ranked
// against `eval`, whose vertex ids `work` shares.
void run_fix_branch(const ClassInstance& eval, const ClassInstance& work, int del,
                    const std::vector<int>& fixed, const std::string& method,
                    const SukpConfig& cfg, TraceSink* trace, int depth, Solution& best) {
  if (work.cost_of(fixed) > work.budget) return;
  LayerFix fix = fix_layer(work, del, fixed);
  Solution sub = approx_sukp_impl(fix.sub, cfg, trace, depth + 1);
  std::vector<int> lifted = fixed;
  for (int v : sub.vertices) lifted.push_back(fix.orig_of[v]);
  Solution cand = class_candidate(eval, std::move(lifted), method);
  if (cand.total_cost > eval.budget) return;
  keep_better(best, cand);
}

}  // namespace

Solution solve_class2(const ClassInstance& ci, const SukpConfig& cfg, TraceSink* trace) {
  if (ci.tag != 2) throw std::invalid_argument("solve_class2 requires a class-2 instance");
  int r = ci.order();
  Solution best = class_candidate(ci, {}, "class2_empty");

  // Small-intersection case: fix at most 3 vertices of one layer i >= 2.
  for (int i = 1; i < r; ++i) {
    std::vector<int> endpoints = layer_endpoints(ci, i);
    int sz = static_cast<int>(endpoints.size());
    for (int t = 0; t <= std::min(3, sz); ++t)
      for_each_combination(sz, t, [&](const std::vector<int>& pick) {
        std::vector<int> fixed;
        fixed.reserve(pick.size());
        for (int p : pick) fixed.push_back(endpoints[p]);
        run_fix_branch(ci, ci, i, fixed, "class2_small", cfg, trace, 0, best);
      });
  }

  // Whole-tiny-layer case: assume all of layer 1 is part of the solution.
  run_fix_branch(ci, ci, 0, ci.layers[0].verts, "class2_all_tiny", cfg, trace, 0, best);

  trace_line(trace, "{\"event\":\"class2_result\",\"value\":\"" + best.value.str() + "\"}");
  return best;
}

NormalizedClass3 normalize_class3(const ClassInstance& ci) {
  if (ci.tag != 3) throw std::invalid_argument("normalize_class3 requires a class-3 instance");
  NormalizedClass3 out;
  out.cost_scale = Rational::pow2(ci.k_pow - ci.layers[0].bucket);  // lambda
  out.profit_scale = ci.profit_level;                               // kappa

  out.copy_counts.reserve(ci.order());
  for (int j = 0; j < ci.order(); ++j) {
    long gap = ci.layers[0].bucket - ci.layers[j].bucket;
    if (gap < 0 || gap > 60)
      throw OracleRefusal("normalize_class3: bucket spread too wide for copy counts");
    out.copy_counts.push_back(1LL << gap);
  }

  std::vector<Rational> costs;
  costs.reserve(ci.base->n());
  for (const auto& c : ci.base->costs()) costs.push_back(c / out.cost_scale);
  Rational budget = ci.budget / out.cost_scale;
  auto scaled = std::make_shared<SukpInstance>(std::move(costs), budget,
                                               std::vector<std::vector<int>>{},
                                               std::vector<Rational>{}, std::vector<Rational>{},
                                               ci.base->m_cap());

  out.instance = ci;
  out.instance.base = scaled;
  out.instance.budget = budget;
  out.instance.profit_level = Rational(1);
  return out;
}

BlowUpGraph blow_up(const NormalizedClass3& nc, const SukpConfig& cfg) {
  const ClassInstance& ci = nc.instance;
  int r = ci.order();

  long long total_verts = 0;
  mpz_class copy_product(1);
  for (int j = 0; j < r; ++j) {
    total_verts += nc.copy_counts[j] * static_cast<long long>(ci.layers[j].verts.size());
    copy_product *= static_cast<long>(nc.copy_counts[j]);
  }
  mpz_class total_edges = copy_product * static_cast<long>(ci.edges.size());
  if (total_verts > cfg.blowup_vertex_limit)
    throw OracleRefusal("blow_up refused: " + std::to_string(total_verts) +
                        " copy vertices exceed the limit " +
                        std::to_string(cfg.blowup_vertex_limit));
  if (total_edges > cfg.blowup_edge_limit)
    throw OracleRefusal("blow_up refused: " + total_edges.get_str() +
                        " copy edges exceed the limit " + std::to_string(cfg.blowup_edge_limit));

  BlowUpGraph out{Hypergraph(0, {}, 1), {}, {}, {}, nc.copy_counts, {}, {}, ci.base, ci.budget};
  // Copy ids are layer-major, then copy-major, then index-major, so within a
  // sorted edge the slot of layer j is position j.
  std::vector<long long> layer_first(r, 0);
  std::vector<std::map<int, int>> index_in_layer(r);
  long long next = 0;
  for (int j = 0; j < r; ++j) {
    layer_first[j] = next;
    const auto& verts = ci.layers[j].verts;
    out.layer_verts.push_back(verts);
    for (std::size_t l = 0; l < verts.size(); ++l)
      index_in_layer[j][verts[l]] = static_cast<int>(l);
    for (long long p = 0; p < nc.copy_counts[j]; ++p)
      for (std::size_t l = 0; l < verts.size(); ++l) {
        out.back_orig.push_back(verts[l]);
        out.layer_of.push_back(j);
        out.costs.push_back(ci.base->costs()[verts[l]] / Rational(nc.copy_counts[j]));
        ++next;
      }
  }

  std::vector<std::vector<int>> edges;
  for (const auto& e : ci.edges) {
    out.h_edges.push_back(e.sorted);
    std::vector<long long> pick(r, 0);
    while (true) {
      std::vector<int> copy_edge(r);
      for (int j = 0; j < r; ++j) {
        long long l = index_in_layer[j][e.by_layer[j]];
        copy_edge[j] = static_cast<int>(
            layer_first[j] + pick[j] * static_cast<long long>(ci.layers[j].verts.size()) + l);
      }
      edges.push_back(std::move(copy_edge));
      int j = r - 1;
      while (j >= 0 && pick[j] == nc.copy_counts[j] - 1) --j;
      if (j < 0) break;
      ++pick[j];
      for (int t = j + 1; t < r; ++t) pick[t] = 0;
    }
  }
  out.graph = Hypergraph(static_cast<int>(next), std::move(edges), r);
  return out;
}

Solution degree_select(const BlowUpGraph& h, const std::vector<int>& chosen, const Rational& budget,
                       int r) {
  Solution empty;
  empty.total_cost = Rational(0);
  empty.value = Rational(0);
  empty.method = "degree_select_empty";
  if (chosen.empty()) return empty;

  std::vector<long long> allowance(r, 0);
  for (int j = 0; j < r; ++j) {
    Rational cap = budget / (Rational(2LL * r) * Rational(h.copies[j]));
    allowance[j] = cap.floor_ll();
    if (allowance[j] <= 0) return empty;  // caller falls back to other branches
  }

  std::vector<char> in_chosen(h.graph.n(), 0);
  for (int v : chosen) in_chosen[v] = 1;

  std::vector<std::vector<int>> cur;
  for (const auto& e : h.graph.edges()) {
    bool all = true;
    for (int v : e)
      if (!in_chosen[v]) {
        all = false;
        break;
      }
    if (all) cur.push_back(e);
  }

  // Round j keeps the allowance-many original indices whose strongest chosen
  // copy has the largest degree in the surviving edges (ties to the lowest
  // index), then restricts the edges to the kept indices.
  std::vector<std::vector<int>> kept_per_layer(r);
  long long layer_first = 0;
  for (int j = 0; j < r; ++j) {
    long long layer_size = static_cast<long long>(h.layer_verts[j].size());
    std::vector<long long> degree(h.graph.n(), 0);
    for (const auto& e : cur) ++degree[e[j]];

    std::vector<long long> best_copy_degree(layer_size, -1);
    for (long long p = 0; p < h.copies[j]; ++p)
      for (long long l = 0; l < layer_size; ++l) {
        long long copy_id = layer_first + p * layer_size + l;
        if (!in_chosen[copy_id]) continue;
        best_copy_degree[l] = std::max(best_copy_degree[l], degree[copy_id]);
      }

    std::vector<int> candidates;
    for (long long l = 0; l < layer_size; ++l)
      if (best_copy_degree[l] >= 0) candidates.push_back(static_cast<int>(l));
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return best_copy_degree[a] > best_copy_degree[b]; });
    if (static_cast<long long>(candidates.size()) > allowance[j]) candidates.resize(allowance[j]);

    std::vector<char> kept_index(layer_size, 0);
    for (int l : candidates) kept_index[l] = 1;
    for (int l : candidates) kept_per_layer[j].push_back(h.layer_verts[j][l]);
    std::sort(kept_per_layer[j].begin(), kept_per_layer[j].end());

    std::vector<std::vector<int>> next_edges;
    for (const auto& e : cur) {
      long long local = (e[j] - layer_first) % layer_size;
      if (kept_index[local]) next_edges.push_back(e);
    }
    cur = std::move(next_edges);
    layer_first += h.copies[j] * layer_size;
  }

  std::vector<int> selected;
  for (const auto& kept : kept_per_layer) selected.insert(selected.end(), kept.begin(), kept.end());
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  Solution s;
  s.vertices = selected;
  s.total_cost = Rational(0);
  for (int v : selected) s.total_cost += h.norm_base->costs()[v];
  std::vector<char> in(h.norm_base->n(), 0);
  for (int v : selected) in[v] = 1;
  long long contained = 0;
  for (const auto& e : h.h_edges) {
    bool all = true;
    for (int v : e)
      if (!in[v]) {
        all = false;
        break;
      }
    if (all) ++contained;
  }
  s.value = Rational(contained);  // normalized profits are 1 per edge
  s.method = "degree_select";
  return s;
}

Solution solve_class3(const ClassInstance& ci, const SukpConfig& cfg, TraceSink* trace) {
  if (ci.tag != 3) throw std::invalid_argument("solve_class3 requires a class-3 instance");
  int r = ci.order();
  Solution best = class_candidate(ci, {}, "class3_empty");

  bool have_norm = true;
  NormalizedClass3 nc;
  try {
    nc = normalize_class3(ci);
  } catch (const OracleRefusal& e) {
    // Copy counts overflow; run the layer-fix strategies unnormalized and
    // skip the blow-up branch.
    trace_line(trace, std::string("{\"event\":\"class3_normalize_refused\",\"reason\":\"") +
                          e.what() + "\"}");
    have_norm = false;
    nc.instance = ci;
    nc.cost_scale = Rational(1);
    nc.profit_scale = ci.profit_level;
    nc.copy_counts.assign(r, 1);
  }
  const ClassInstance& norm = nc.instance;

  // S1: one vertex of the top layer at a time.
  for (int x : layer_endpoints(norm, r - 1))
    run_fix_branch(ci, norm, r - 1, {x}, "class3_single_top", cfg, trace, 0, best);

  // S2: all of the cheapest layer.
  run_fix_branch(ci, norm, 0, norm.layers[0].verts, "class3_all_cheapest", cfg, trace, 0, best);

  Rational small_budget_line = Rational(2LL * r) * Rational(nc.copy_counts[r - 1]);
  if (norm.budget <= small_budget_line) {
    // S3: bounded budget; at most 2r top-layer vertices can fit.
    std::vector<int> endpoints = layer_endpoints(norm, r - 1);
    int sz = static_cast<int>(endpoints.size());
    int cap = std::min(2 * r, sz);
    mpz_class combos(0);
    for (int t = 0; t <= cap; ++t) combos += binomial(sz, t);
    if (combos <= cfg.subset_enum_budget) {
      for (int t = 0; t <= cap; ++t)
        for_each_combination(sz, t, [&](const std::vector<int>& pick) {
          std::vector<int> fixed;
          fixed.reserve(pick.size());
          for (int p : pick) fixed.push_back(endpoints[p]);
          run_fix_branch(ci, norm, r - 1, fixed, "class3_small_budget", cfg, trace, 0, best);
        });
    } else {
      // Enumeration over budget: fall back to nested prefixes of the
      // cheapest endpoints (profits are uniform, so cheapest is densest).
      trace_line(trace,
                 "{\"event\":\"class3_enum_truncated\",\"candidates\":\"cheapest-prefix\"}");
      std::vector<int> by_cost = endpoints;
      std::stable_sort(by_cost.begin(), by_cost.end(), [&](int a, int b) {
        return norm.base->costs()[a] < norm.base->costs()[b];
      });
      std::vector<int> fixed;
      run_fix_branch(ci, norm, r - 1, fixed, "class3_small_budget", cfg, trace, 0, best);
      for (int t = 0; t < cap; ++t) {
        fixed.push_back(by_cost[t]);
        run_fix_branch(ci, norm, r - 1, fixed, "class3_small_budget", cfg, trace, 0, best);
      }
    }
  } else if (have_norm) {
    // S4: wide budget; copy blow-up, densest-subhypergraph call, degree
    // extraction, projection back to original vertices.
    try {
      BlowUpGraph star = blow_up(nc, cfg);
      long long k = std::min<long long>(norm.budget.floor_ll(),
                                        static_cast<long long>(star.graph.n()));
      if (k >= 1 && !star.graph.edges().empty()) {
        Solution picked = approx_dksh(star.graph, static_cast<int>(k), r, cfg.dksh, trace);
        Solution sel = degree_select(star, picked.vertices, norm.budget, r);
        Solution cand = class_candidate(ci, sel.vertices, "class3_blowup");
        if (cand.total_cost <= ci.budget) keep_better(best, cand);
      }
    } catch (const OracleRefusal& e) {
      trace_line(trace, std::string("{\"event\":\"class3_blowup_refused\",\"reason\":\"") +
                            e.what() + "\"}");
    }
  }

  trace_line(trace, "{\"event\":\"class3_result\",\"value\":\"" + best.value.str() + "\"}");
  return best;
}

namespace {

Solution approx_sukp_impl(const SukpInstance& inst, const SukpConfig& cfg, TraceSink* trace,
                          int depth) {
  PrunedSukp pruned = prune(inst);
  SukpInstance folded = fold_unit_edges(pruned.instance);
  SukpInstance rounded = round_profits(folded);
  BucketedInstance bucketed = bucket_costs(rounded);
  std::vector<ClassInstance> classes = decompose(bucketed);

  // Candidates as vertex sets over the pruned id space, rescored at the end
  // against the original instance and profits.
  std::vector<std::pair<std::vector<int>, std::string>> candidates;
  candidates.push_back({{}, "empty"});
  for (const auto& ci : classes) {
    if (ci.tag == 1) {
      Solution knap =
          knapsack_fptas(rounded.costs(), rounded.vertex_profits(), rounded.budget(), cfg.epsilon);
      candidates.push_back({knap.vertices, "class1_knapsack"});
    } else if (ci.tag == 2) {
      Solution sol = solve_class2(ci, cfg, trace);
      candidates.push_back({sol.vertices, sol.method});
    } else {
      Solution sol = solve_class3(ci, cfg, trace);
      candidates.push_back({sol.vertices, sol.method});
    }
    if (trace) {
      std::ostringstream os;
      os << "{\"event\":\"class_done\",\"depth\":" << depth << ",\"tag\":" << ci.tag
         << ",\"order\":" << ci.order() << ",\"profit_level\":\"" << ci.profit_level.str()
         << "\",\"edges\":" << ci.edges.size() << "}";
      trace_line(trace, os.str());
    }
  }

  std::vector<int> zero_cost;
  for (int v = 0; v < inst.n(); ++v)
    if (inst.costs()[v].is_zero()) zero_cost.push_back(v);

  Solution best;
  best.total_cost = Rational(0);
  best.value = Rational(-1);
  auto consider = [&](std::vector<int> verts, const std::string& method) {
    Solution cand = make_sukp_solution(inst, std::move(verts), method);
    if (cand.total_cost > inst.budget()) return;  // never propagate an infeasible branch
    if (!zero_cost.empty()) {
      std::vector<int> enriched = cand.vertices;
      enriched.insert(enriched.end(), zero_cost.begin(), zero_cost.end());
      Solution plus = make_sukp_solution(inst, std::move(enriched), method + "+free");
      if (plus.value > cand.value) cand = std::move(plus);
    }
    keep_better(best, cand);
  };

  for (auto& [verts, method] : candidates) {
    std::vector<int> orig;
    orig.reserve(verts.size());
    for (int v : verts) orig.push_back(pruned.orig_ids[v]);
    consider(std::move(orig), method);
  }

  if (inst.n() <= cfg.exact_cutoff_n) {
    try {
      Solution ex = exact_sukp(inst, cfg.exact_sukp_max_n);
      consider(ex.vertices, "exact_cutoff");
    } catch (const OracleRefusal& e) {
      trace_line(trace, std::string("{\"event\":\"exact_cutoff_refused\",\"reason\":\"") +
                            e.what() + "\"}");
    }
  }

  return best;
}

}  // namespace

Solution approx_sukp(const SukpInstance& inst, const SukpConfig& cfg, TraceSink* trace) {
  if (!cfg.dksh.base.solve)
    throw std::invalid_argument("approx_sukp requires a configured base oracle");
  return approx_sukp_impl(inst, cfg, trace, 0);
}

}  // namespace denseknap
