#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "denseknap/instance_io.hpp"
#include "denseknap/instances.hpp"

namespace denseknap {

enum class GenKind { UniformRandom, PlantedDense, SukpRandom, SukpCorrelated };

// Seeded instance generator knobs. The PRNG is std::mt19937_64 throughout and
// all sampling is routed through it in a fixed order, so a (spec, seed) pair
// always produces the identical instance.
struct GenSpec {
  GenKind kind = GenKind::UniformRandom;
  int n = 10;
  int m = 3;
  long long edge_count = -1;  // exact number of edges when >= 0 ...
  double edge_prob = -1.0;    // ... else per-subset probability when >= 0
  int core_size = 0;          // planted-dense: vertices in the dense core
  double core_density = 1.0;  // planted-dense: probability per core subset
  // sukp: costs/profits are uniform integers in [lo, hi] divided by a random
  // power of two up to 2^den_pow_max.
  long long cost_lo = 1, cost_hi = 8;
  int cost_den_pow_max = 0;
  long long profit_lo = 1, profit_hi = 16;
  int profit_den_pow_max = 0;
  long long vertex_profit_hi = 0;  // 0 disables vertex profits
  double budget_frac = 0.35;       // budget = frac * total cost, rounded to /16
  std::uint64_t seed = 1;
};

GenSpec parse_genspec(const std::string& json_text);
std::string genspec_to_json(const GenSpec& spec);

Instance generate(const GenSpec& spec);

// Random positive rational in the spec'd style; shared by the harness.
Rational random_positive_rational(std::mt19937_64& rng, long long lo, long long hi,
                                  int den_pow_max);
// Decorates a hypergraph with seeded positive weights.
WeightedHypergraph with_random_weights(const Hypergraph& g, std::mt19937_64& rng, long long lo,
                                       long long hi, int den_pow_max);
// Deterministic Bernoulli draw that avoids floating-point distributions.
bool chance(std::mt19937_64& rng, double p);

}  // namespace denseknap
