#include "denseknap/generator.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace denseknap {

namespace {

using nlohmann::json;

long long rand_int(std::mt19937_64& rng, long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("rand_int with empty range");
  unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1ULL;
  return lo + static_cast<long long>(rng() % span);
}

// Visits all k-subsets of 0..n-1 in lexicographic order.
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

std::vector<int> random_subset(std::mt19937_64& rng, int n, int k) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    long long j = rand_int(rng, i, n - 1);
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

// Exactly `count` distinct m-subsets. Small universes are enumerated and
// prefix-shuffled; sparse large universes use rejection sampling.
std::vector<std::vector<int>> sample_edges(std::mt19937_64& rng, int n, int m, long long count) {
  mpz_class total = binomial(n, m);
  if (count > total)
    throw std::invalid_argument("edge_count exceeds the number of available subsets");
  if (total <= 200'000) {
    std::vector<std::vector<int>> all;
    all.reserve(total.get_ui());
    for_each_combination(n, m, [&](const std::vector<int>& e) { all.push_back(e); });
    for (long long i = 0; i < count; ++i) {
      long long j = rand_int(rng, i, static_cast<long long>(all.size()) - 1);
      std::swap(all[i], all[j]);
    }
    std::vector<std::vector<int>> out(all.begin(), all.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::set<std::vector<int>> picked;
  while (static_cast<long long>(picked.size()) < count) picked.insert(random_subset(rng, n, m));
  return {picked.begin(), picked.end()};
}

Rational dyadic_from_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return Rational(q);
}

Instance gen_uniform(const GenSpec& spec, std::mt19937_64& rng) {
  if (spec.n < 1 || spec.m < 1) throw std::invalid_argument("uniform-random requires n, m >= 1");
  if (spec.m > spec.n) throw std::invalid_argument("edge size larger than vertex count");
  std::vector<std::vector<int>> edges;
  if (spec.edge_prob >= 0) {
    if (binomial(spec.n, spec.m) > 5'000'000)
      throw std::invalid_argument("edge_prob mode needs an enumerable subset universe");
    for_each_combination(spec.n, spec.m, [&](const std::vector<int>& e) {
      if (chance(rng, spec.edge_prob)) edges.push_back(e);
    });
  } else {
    long long count = spec.edge_count;
    if (count < 0) {
      mpz_class total = binomial(spec.n, spec.m);
      count = total > 2LL * spec.n ? 2LL * spec.n : total.get_si();
    }
    edges = sample_edges(rng, spec.n, spec.m, count);
  }
  return Hypergraph(spec.n, std::move(edges), spec.m);
}

Instance gen_planted(const GenSpec& spec, std::mt19937_64& rng) {
  if (spec.core_size < spec.m)
    throw std::invalid_argument("planted core smaller than the edge size");
  if (spec.core_size > spec.n) throw std::invalid_argument("planted core larger than n");
  std::set<std::vector<int>> edges;
  long long background = spec.edge_count >= 0 ? spec.edge_count : spec.n;
  for (const auto& e : sample_edges(rng, spec.n, spec.m, background)) edges.insert(e);
  std::vector<int> core = random_subset(rng, spec.n, spec.core_size);
  for_each_combination(spec.core_size, spec.m, [&](const std::vector<int>& pick) {
    if (!chance(rng, spec.core_density)) return;
    std::vector<int> e;
    e.reserve(pick.size());
    for (int i : pick) e.push_back(core[i]);
    std::sort(e.begin(), e.end());
    edges.insert(e);
  });
  return Hypergraph(spec.n, {edges.begin(), edges.end()}, spec.m);
}

Instance gen_sukp(const GenSpec& spec, std::mt19937_64& rng, bool correlated) {
  if (spec.n < 1 || spec.m < 1) throw std::invalid_argument("sukp generator requires n, m >= 1");
  std::vector<Rational> costs;
  costs.reserve(spec.n);
  for (int v = 0; v < spec.n; ++v)
    costs.push_back(random_positive_rational(rng, spec.cost_lo, spec.cost_hi, spec.cost_den_pow_max));

  std::vector<Rational> vertex_profits(spec.n, Rational(0));
  if (spec.vertex_profit_hi > 0)
    for (int v = 0; v < spec.n; ++v) {
      if (correlated)
        vertex_profits[v] = costs[v] * Rational(rand_int(rng, 1, 3), 2);
      else
        vertex_profits[v] = Rational(rand_int(rng, 0, spec.vertex_profit_hi));
    }

  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  if (spec.m >= 2) {
    long long count = spec.edge_count >= 0 ? spec.edge_count : 2LL * spec.n;
    std::set<std::vector<int>> seen;
    long long attempts = 0;
    while (static_cast<long long>(seen.size()) < count && attempts < 50 * count + 1000) {
      ++attempts;
      int size = static_cast<int>(rand_int(rng, 2, spec.m));
      if (size > spec.n) continue;
      seen.insert(random_subset(rng, spec.n, size));
    }
    for (const auto& e : seen) {
      edges.push_back(e);
      if (correlated) {
        Rational base(0);
        for (int v : e) base += costs[v];
        profits.push_back(base * Rational(rand_int(rng, 2, 6), 4));
      } else {
        profits.push_back(
            random_positive_rational(rng, spec.profit_lo, spec.profit_hi, spec.profit_den_pow_max));
      }
    }
  }

  Rational total(0);
  for (const auto& c : costs) total += c;
  Rational budget = (total * dyadic_from_double(spec.budget_frac) * Rational(16)).floor() / Rational(16);
  if (budget.sign() < 0) budget = Rational(0);

  return SukpInstance(std::move(costs), std::move(budget), std::move(edges), std::move(profits),
                      std::move(vertex_profits), std::max(spec.m, 1));
}

}  // namespace

bool chance(std::mt19937_64& rng, double p) {
  std::uint64_t draw = rng();  // always consume one draw, whatever p is
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  auto threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
  return (draw >> 11) < threshold;
}

Rational random_positive_rational(std::mt19937_64& rng, long long lo, long long hi,
                                  int den_pow_max) {
  long long num = rand_int(rng, lo, hi);
  long long den_pow = den_pow_max > 0 ? rand_int(rng, 0, den_pow_max) : 0;
  return Rational(num) / Rational::pow2(den_pow);
}

WeightedHypergraph with_random_weights(const Hypergraph& g, std::mt19937_64& rng, long long lo,
                                       long long hi, int den_pow_max) {
  if (lo < 1) throw std::invalid_argument("weights must be positive");
  std::vector<Rational> weights;
  weights.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i)
    weights.push_back(random_positive_rational(rng, lo, hi, den_pow_max));
  return WeightedHypergraph(g.n(), g.edges(), std::move(weights), g.m_cap());
}

Instance generate(const GenSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GenKind::UniformRandom:
      return gen_uniform(spec, rng);
    case GenKind::PlantedDense:
      return gen_planted(spec, rng);
    case GenKind::SukpRandom:
      return gen_sukp(spec, rng, false);
    case GenKind::SukpCorrelated:
      return gen_sukp(spec, rng, true);
  }
  throw std::invalid_argument("unknown generator kind");
}

namespace {

const std::pair<const char*, GenKind> kKindNames[] = {
    {"uniform-random", GenKind::UniformRandom},
    {"planted-dense", GenKind::PlantedDense},
    {"sukp-random", GenKind::SukpRandom},
    {"sukp-correlated", GenKind::SukpCorrelated},
};

}  // namespace

GenSpec parse_genspec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("genspec", e.what());
  }
  if (!doc.is_object()) throw ParseError("genspec", "expected a JSON object");
  GenSpec spec;
  bool kind_seen = false;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "kind") {
        std::string name = value.get<std::string>();
        bool found = false;
        for (const auto& [k, v] : kKindNames)
          if (name == k) {
            spec.kind = v;
            found = true;
          }
        if (!found) throw ParseError("kind", "unknown generator kind: " + name);
        kind_seen = true;
      } else if (key == "n") {
        spec.n = value.get<int>();
      } else if (key == "m") {
        spec.m = value.get<int>();
      } else if (key == "edge_count") {
        spec.edge_count = value.get<long long>();
      } else if (key == "edge_prob") {
        spec.edge_prob = value.get<double>();
      } else if (key == "core_size") {
        spec.core_size = value.get<int>();
      } else if (key == "core_density") {
        spec.core_density = value.get<double>();
      } else if (key == "cost_lo") {
        spec.cost_lo = value.get<long long>();
      } else if (key == "cost_hi") {
        spec.cost_hi = value.get<long long>();
      } else if (key == "cost_den_pow_max") {
        spec.cost_den_pow_max = value.get<int>();
      } else if (key == "profit_lo") {
        spec.profit_lo = value.get<long long>();
      } else if (key == "profit_hi") {
        spec.profit_hi = value.get<long long>();
      } else if (key == "profit_den_pow_max") {
        spec.profit_den_pow_max = value.get<int>();
      } else if (key == "vertex_profit_hi") {
        spec.vertex_profit_hi = value.get<long long>();
      } else if (key == "budget_frac") {
        spec.budget_frac = value.get<double>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else {
        throw ParseError(key, "unknown genspec field");
      }
    } catch (const json::exception& e) {
      throw ParseError(key, e.what());
    }
  }
  if (!kind_seen) throw ParseError("kind", "missing field");
  return spec;
}

std::string genspec_to_json(const GenSpec& spec) {
  const char* kind_name = "uniform-random";
  for (const auto& [k, v] : kKindNames)
    if (v == spec.kind) kind_name = k;
  json doc{{"kind", kind_name},
           {"n", spec.n},
           {"m", spec.m},
           {"edge_count", spec.edge_count},
           {"edge_prob", spec.edge_prob},
           {"core_size", spec.core_size},
           {"core_density", spec.core_density},
           {"cost_lo", spec.cost_lo},
           {"cost_hi", spec.cost_hi},
           {"cost_den_pow_max", spec.cost_den_pow_max},
           {"profit_lo", spec.profit_lo},
           {"profit_hi", spec.profit_hi},
           {"profit_den_pow_max", spec.profit_den_pow_max},
           {"vertex_profit_hi", spec.vertex_profit_hi},
           {"budget_frac", spec.budget_frac},
           {"seed", spec.seed}};
  return doc.dump();
}

}  // namespace denseknap
