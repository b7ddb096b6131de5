#include "denseknap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "denseknap/dksh.hpp"
#include "denseknap/exponents.hpp"
#include "denseknap/generator.hpp"
#include "denseknap/oracles.hpp"
#include "denseknap/sukp.hpp"
#include "json.hpp"

namespace denseknap {

namespace {

long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
  unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
  return lo + static_cast<long long>(rng() % span);
}

struct TrialResult {
  int violations = 0;
  std::optional<Rational> ratio;  // aggregated per check (min or max)
};

enum class RatioSense { Min, Max };

// Runs fn over trial indices, optionally on several threads. Results land in
// a preallocated slot per trial, so the aggregation order (and therefore the
// report) is independent of the thread count.
std::vector<TrialResult> run_trials(long long trials, int threads,
                                    const std::function<TrialResult(long long)>& fn) {
  std::vector<TrialResult> results(trials);
  threads = std::max(1, threads);
  if (threads == 1 || trials < 2) {
    for (long long i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  std::atomic<long long> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      while (true) {
        long long i = next.fetch_add(1);
        if (i >= trials) break;
        results[i] = fn(i);
      }
    });
  for (auto& th : pool) th.join();
  return results;
}

VerifyReport aggregate(const std::string& check, const std::string& detail,
                       const VerifyOptions& opt, const std::vector<TrialResult>& results,
                       RatioSense sense) {
  VerifyReport report;
  report.check = check;
  report.detail = detail;
  report.trials = static_cast<long long>(results.size());
  std::optional<Rational> worst;
  for (std::size_t i = 0; i < results.size(); ++i) {
    report.violations += results[i].violations;
    if (results[i].violations > 0 && report.violation_seeds.size() < 32)
      report.violation_seeds.push_back(opt.seed + i);
    if (results[i].ratio) {
      if (!worst)
        worst = results[i].ratio;
      else
        worst = sense == RatioSense::Min ? min(*worst, *results[i].ratio)
                                         : max(*worst, *results[i].ratio);
    }
  }
  if (worst) report.worst_ratio = worst->str();
  return report;
}

Hypergraph random_hypergraph(std::mt19937_64& rng, int n, int m, long long max_edges) {
  GenSpec spec;
  spec.kind = GenKind::UniformRandom;
  spec.n = n;
  spec.m = m;
  mpz_class total = binomial(n, m);
  long long cap = total > max_edges ? max_edges : total.get_si();
  spec.edge_count = rand_int(rng, 1, std::max<long long>(cap, 1));
  spec.seed = rng();
  return std::get<Hypergraph>(generate(spec));
}

// ---- lemma22: MAX[G, floor(k/2)] >= 3^-m MAX[G, k] for k >= 4m ----

VerifyReport check_lemma22(const VerifyOptions& opt) {
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int m, n, k;
    bool order3 = opt.m == 3 || (opt.m == 0 && i % 6 == 5);
    if (order3) {
      m = 3;
      n = 13;
      k = 12;
    } else {
      m = 2;
      int n_hi = opt.n_max > 0 ? std::min(opt.n_max, 12) : 12;
      n = static_cast<int>(rand_int(rng, 8, std::max(8, n_hi)));
      k = static_cast<int>(rand_int(rng, 8, n));
    }
    Hypergraph g = random_hypergraph(rng, n, m, 4LL * n);
    Rational whole = exact_dksh(g, k, opt.oracle_budget).value;
    Rational half = exact_dksh(g, k / 2, opt.oracle_budget).value;
    Rational three_m = Rational(1);
    for (int t = 0; t < m; ++t) three_m *= Rational(3);
    if (half * three_m < whole) out.violations = 1;
    if (whole.sign() > 0) out.ratio = half * three_m / whole;
    return out;
  };
  return aggregate("lemma22", "", opt, run_trials(opt.trials, opt.threads, fn), RatioSense::Min);
}

// ---- lemma23: weighted reduction and rounded-graph bounds ----

VerifyReport check_lemma23(const VerifyOptions& opt) {
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int m = opt.m != 0 ? opt.m : (i % 2 == 0 ? 2 : 3);
    int n_hi = opt.n_max > 0 ? std::min(opt.n_max, 10) : 10;
    int n = static_cast<int>(rand_int(rng, std::min(m + 1, n_hi), n_hi));
    Hypergraph base = random_hypergraph(rng, n, std::min(m, n), 3LL * n);
    WeightedHypergraph g = with_random_weights(base, rng, 1, 32, 3);
    int k = static_cast<int>(rand_int(rng, 1, n));

    Rational opt_w = exact_weighted_dksh(g, k, opt.oracle_budget).value;
    RoundedWeighted rounded = round_weights(g);
    Solution reduced = solve_weighted(g, k, [&](const Hypergraph& level, int kk) {
      return exact_dksh(level, kk, opt.oracle_budget);
    });

    Rational denom = Rational(4LL * rounded.level_count_bound);
    if (reduced.value * denom < opt_w) out.violations += 1;
    Rational rounded_opt = rounded.graph.edges().empty()
                               ? Rational(0)
                               : exact_weighted_dksh(rounded.graph, k, opt.oracle_budget).value;
    if (rounded_opt * Rational(4) < opt_w) out.violations += 1;
    if (opt_w.sign() > 0)
      out.ratio = min(reduced.value * denom / opt_w, rounded_opt * Rational(4) / opt_w);
    return out;
  };
  return aggregate("lemma23", "", opt, run_trials(opt.trials, opt.threads, fn), RatioSense::Min);
}

// ---- rounding4x: pruning preserves the optimum; rounding keeps >= 1/4 ----

SukpInstance random_sukp(std::mt19937_64& rng, int n, int m, bool correlated) {
  GenSpec spec;
  spec.kind = correlated ? GenKind::SukpCorrelated : GenKind::SukpRandom;
  spec.n = n;
  spec.m = m;
  spec.edge_count = rand_int(rng, 1, std::max<long long>(2LL * n, 2));
  spec.cost_lo = 0;  // allow zero-cost vertices
  spec.cost_hi = 12;
  spec.cost_den_pow_max = 2;
  spec.profit_lo = 1;
  spec.profit_hi = 24;
  spec.profit_den_pow_max = 1;
  spec.vertex_profit_hi = rng() % 2 == 0 ? 4 : 0;
  spec.budget_frac = 0.1 + 0.06 * static_cast<double>(rand_int(rng, 0, 10));
  spec.seed = rng();
  return std::get<SukpInstance>(generate(spec));
}

VerifyReport check_rounding4x(const VerifyOptions& opt) {
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int m = opt.m != 0 ? opt.m : (i % 2 == 0 ? 2 : 3);
    int n_hi = opt.n_max > 0 ? std::min(opt.n_max, 10) : 10;
    int n = static_cast<int>(rand_int(rng, std::min(m, n_hi), n_hi));
    SukpInstance inst = random_sukp(rng, n, std::min(m, n), i % 3 == 2);

    Rational whole = exact_sukp(inst).value;
    SukpInstance pruned = prune(inst).instance;
    Rational pruned_opt = exact_sukp(pruned).value;
    if (pruned_opt != whole) out.violations += 1;  // pruning must preserve the optimum

    SukpInstance rounded = round_profits(fold_unit_edges(pruned));
    Rational rounded_opt = exact_sukp(rounded).value;
    if (rounded_opt * Rational(4) < whole) out.violations += 1;
    if (rounded_opt.sign() > 0) out.ratio = whole / rounded_opt;
    return out;
  };
  return aggregate("rounding4x", "", opt, run_trials(opt.trials, opt.threads, fn),
                   RatioSense::Max);
}

// ---- blowup: copy-graph optimum dominates, degree_select stays feasible ----

// Hand-built vertex-disjoint class-3 instance with copy-graph size <= 14.
// Layer buckets are nonincreasing with the layer index (cheapest first), so
// the copy counts 2^{bucket_1 - bucket_j} are nondecreasing.
ClassInstance random_class3(std::mt19937_64& rng, int r) {
  long k_pow = 6;
  int b0 = static_cast<int>(rand_int(rng, 3, 5));
  std::vector<int> buckets(r);
  std::vector<long long> copies(r);
  std::vector<int> sizes(r);
  long long copy_verts;
  do {
    copy_verts = 0;
    int gap = 0;
    for (int j = 0; j < r; ++j) {
      if (j > 0) gap += static_cast<int>(rand_int(rng, 0, 1));
      buckets[j] = b0 - gap;
      copies[j] = 1LL << gap;
      sizes[j] = static_cast<int>(rand_int(rng, 1, 3));
      copy_verts += copies[j] * sizes[j];
    }
  } while (copy_verts > 14);

  int n = 0;
  for (int j = 0; j < r; ++j) n += sizes[j];
  std::vector<Rational> costs(n, Rational(0));
  ClassInstance ci;
  ci.tag = 3;
  ci.k_pow = k_pow;
  ci.tiny_bucket = b0 + 2;  // any index above every layer bucket
  ci.layers.resize(r);
  int next_id = 0;
  for (int j = 0; j < r; ++j) {
    ci.layers[j].bucket = buckets[j];
    for (int t = 0; t < sizes[j]; ++t) {
      Rational lo = Rational::pow2(k_pow - buckets[j]);
      costs[next_id] = lo * Rational(8 + rand_int(rng, 1, 8), 8);  // in (lo, 2lo]
      ci.layers[j].verts.push_back(next_id);
      ++next_id;
    }
  }

  // Edges: a random subset of the layer cross product.
  std::vector<std::vector<int>> all;
  std::vector<int> pick(r, 0);
  while (true) {
    std::vector<int> edge(r);
    for (int j = 0; j < r; ++j) edge[j] = ci.layers[j].verts[pick[j]];
    all.push_back(edge);
    int j = r - 1;
    while (j >= 0 && pick[j] == sizes[j] - 1) --j;
    if (j < 0) break;
    ++pick[j];
    for (int t = j + 1; t < r; ++t) pick[t] = 0;
  }
  long long edge_count = rand_int(rng, 1, std::min<long long>(all.size(), 8));
  for (long long t = 0; t < edge_count; ++t) {
    long long u = rand_int(rng, t, static_cast<long long>(all.size()) - 1);
    std::swap(all[t], all[u]);
  }
  all.resize(edge_count);
  std::sort(all.begin(), all.end());
  for (const auto& by_layer : all) {
    ClassEdge e;
    e.by_layer = by_layer;
    e.sorted = by_layer;
    std::sort(e.sorted.begin(), e.sorted.end());
    ci.edges.push_back(std::move(e));
  }

  ci.profit_level = Rational::pow2(rand_int(rng, 0, 3));
  // Keep the normalized budget integral: the copy-graph bound is asserted at
  // budget floor(B/lambda), and a fractional sliver there can hide exactly
  // the replicated optimum the bound counts.
  Rational lambda = Rational::pow2(k_pow - buckets[0]);
  Rational total(0);
  for (const auto& c : costs) total += c;
  long long units = max(Rational(1), (total * Rational(rand_int(rng, 2, 8), 8) / lambda).floor())
                        .floor_ll();
  ci.budget = lambda * Rational(units);
  ci.base = std::make_shared<SukpInstance>(std::move(costs), ci.budget,
                                           std::vector<std::vector<int>>{},
                                           std::vector<Rational>{}, std::vector<Rational>{}, r);
  return ci;
}

VerifyReport check_blowup(const VerifyOptions& opt) {
  SukpConfig cfg = default_sukp_config();
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int r = opt.m != 0 ? std::max(2, std::min(opt.m, 3)) : (i % 2 == 0 ? 2 : 3);
    ClassInstance ci = random_class3(rng, r);
    NormalizedClass3 nc = normalize_class3(ci);
    BlowUpGraph star = blow_up(nc, cfg);

    std::vector<std::vector<int>> h_edges;
    for (const auto& e : nc.instance.edges) h_edges.push_back(e.sorted);
    SukpInstance h_inst(nc.instance.base->costs(), nc.instance.budget, h_edges,
                        std::vector<Rational>(h_edges.size(), Rational(1)), {}, r);
    Rational opt_h = exact_sukp(h_inst).value;

    SukpInstance star_inst(star.costs, nc.instance.budget.floor(), star.graph.edges(),
                           std::vector<Rational>(star.graph.edge_count(), Rational(1)), {}, r);
    Rational opt_star = exact_sukp(star_inst).value;

    Rational product(1);
    for (long long a : nc.copy_counts) product *= Rational(a);
    if (opt_star < product * opt_h) out.violations += 1;
    if ((product * opt_h).sign() > 0) out.ratio = opt_star / (product * opt_h);

    // degree_select feasibility: per-layer normalized cost at most B/r.
    long long k = std::min<long long>(nc.instance.budget.floor_ll(),
                                      static_cast<long long>(star.graph.n()));
    if (k >= 1 && !star.graph.edges().empty()) {
      Solution picked = approx_dksh(star.graph, static_cast<int>(k), r, cfg.dksh);
      Solution sel = degree_select(star, picked.vertices, nc.instance.budget, r);
      Rational total(0);
      for (int j = 0; j < r; ++j) {
        Rational layer_cost(0);
        for (int v : sel.vertices) {
          const auto& verts = nc.instance.layers[j].verts;
          if (std::binary_search(verts.begin(), verts.end(), v))
            layer_cost += nc.instance.base->costs()[v];
        }
        if (layer_cost * Rational(r) > nc.instance.budget) out.violations += 1;
        total += layer_cost;
      }
      if (total > nc.instance.budget) out.violations += 1;
    }
    return out;
  };
  return aggregate("blowup", "", opt, run_trials(opt.trials, opt.threads, fn), RatioSense::Min);
}

// ---- identities: the exact recurrence equalities ----

VerifyReport check_identities(const VerifyOptions& opt) {
  VerifyReport report;
  report.check = "identities";
  auto rows = exponents::verify_identities(std::max(3, opt.m_max_identities));
  report.trials = static_cast<long long>(rows.size());
  for (const auto& row : rows)
    if (!row.holds) ++report.violations;
  return report;
}

// ---- feasibility: end-to-end solver sanity against the oracles ----

VerifyReport check_feasibility_dksh(const VerifyOptions& opt) {
  DkshConfig cfg = default_dksh_config("exact");
  cfg.exact_cutoff_n = 0;  // exercise the approximation branches
  cfg.enum_budget = opt.oracle_budget;
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int m, n, k;
    if (opt.m == 0 && i % 5 == 4) {
      // shapes with k >= 4m, where the link recursion is the live branch
      if (i % 10 == 4) {
        m = 3;
        n = 13;
        k = 12;
      } else {
        m = 4;
        n = 17;
        k = 16;
      }
    } else {
      m = opt.m != 0 ? opt.m : static_cast<int>(2 + i % 3);
      int n_hi = opt.n_max > 0 ? std::min(opt.n_max, 12) : 12;
      n = static_cast<int>(rand_int(rng, std::min(m + 1, n_hi), n_hi));
      k = static_cast<int>(rand_int(rng, 1, n));
    }
    Hypergraph g = random_hypergraph(rng, n, std::min(m, n), 3LL * n);

    Solution approx = approx_dksh(g, k, m, cfg);
    if (static_cast<int>(approx.vertices.size()) > k) out.violations += 1;
    if (approx.value != Rational(induced_edge_count(g, approx.vertices))) out.violations += 1;
    Solution trivial = solve_trivial(g, k, m);
    if (approx.value < trivial.value) out.violations += 1;
    try {
      Rational exact = exact_dksh(g, k, opt.oracle_budget).value;
      if (approx.value > exact) out.violations += 1;
      if (approx.value.sign() > 0) out.ratio = exact / approx.value;
    } catch (const OracleRefusal&) {
      // no oracle at this size; structural checks above still ran
    }
    return out;
  };
  return aggregate("feasibility", "dksh", opt, run_trials(opt.trials, opt.threads, fn),
                   RatioSense::Max);
}

VerifyReport check_feasibility_sukp(const VerifyOptions& opt) {
  SukpConfig cfg = default_sukp_config();
  cfg.exact_cutoff_n = 0;  // the pipeline must stand on its own
  auto fn = [&](long long i) {
    std::mt19937_64 rng(opt.seed + i);
    TrialResult out;
    int m = opt.m != 0 ? opt.m : (i % 2 == 0 ? 2 : 3);
    int n_hi = opt.n_max > 0 ? std::min(opt.n_max, 14) : 12;
    int n = static_cast<int>(rand_int(rng, std::min(m + 2, n_hi), n_hi));
    SukpInstance inst = random_sukp(rng, n, std::min(m, n), i % 3 == 2);

    Solution approx = approx_sukp(inst, cfg);
    if (approx.total_cost > inst.budget()) out.violations += 1;
    if (approx.total_cost != inst.cost_of(approx.vertices)) out.violations += 1;
    if (approx.value != induced_profit(inst, approx.vertices)) out.violations += 1;

    Rational whole = exact_sukp(inst).value;
    if (approx.value > whole) out.violations += 1;
    if (approx.value.sign() > 0) out.ratio = whole / approx.value;
    if (whole.sign() > 0 && approx.value.is_zero()) out.violations += 1;

    // Dominance over the pipeline's own vertex-profit knapsack.
    PrunedSukp pruned = prune(inst);
    SukpInstance folded = fold_unit_edges(pruned.instance);
    Solution knap =
        knapsack_fptas(folded.costs(), folded.vertex_profits(), folded.budget(), cfg.epsilon);
    std::vector<int> mapped;
    for (int v : knap.vertices) mapped.push_back(pruned.orig_ids[v]);
    if (approx.value < induced_profit(inst, mapped)) out.violations += 1;

    // Pruning preserves the optimum; rounding keeps a quarter.
    Rational pruned_opt = exact_sukp(pruned.instance).value;
    if (pruned_opt != whole) out.violations += 1;
    Rational rounded_opt = exact_sukp(round_profits(folded)).value;
    if (rounded_opt * Rational(4) < whole) out.violations += 1;
    return out;
  };
  return aggregate("feasibility", "sukp", opt, run_trials(opt.trials, opt.threads, fn),
                   RatioSense::Max);
}

}  // namespace

std::vector<std::string> all_check_names() {
  return {"lemma22", "lemma23", "rounding4x", "blowup", "identities", "feasibility"};
}

std::vector<VerifyReport> run_check(const std::string& name, const VerifyOptions& opt) {
  if (name == "lemma22") return {check_lemma22(opt)};
  if (name == "lemma23") return {check_lemma23(opt)};
  if (name == "rounding4x") return {check_rounding4x(opt)};
  if (name == "blowup") return {check_blowup(opt)};
  if (name == "identities") return {check_identities(opt)};
  if (name == "feasibility") return {check_feasibility_dksh(opt), check_feasibility_sukp(opt)};
  throw std::invalid_argument("unknown check: " + name);
}

std::string report_to_json(const VerifyReport& report) {
  nlohmann::json doc;
  doc["check"] = report.check;
  if (!report.detail.empty()) doc["detail"] = report.detail;
  doc["trials"] = report.trials;
  doc["violations"] = report.violations;
  doc["worst_ratio"] = report.worst_ratio;
  doc["violation_seeds"] = report.violation_seeds;
  return doc.dump();
}

}  // namespace denseknap
