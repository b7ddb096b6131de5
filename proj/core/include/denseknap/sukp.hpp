#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "denseknap/dksh.hpp"
#include "denseknap/instances.hpp"
#include "denseknap/trace.hpp"

namespace denseknap {

struct SukpConfig {
  Rational epsilon{1, 2};  // knapsack FPTAS loss knob
  int exact_cutoff_n = 12;
  DkshConfig dksh;  // drives the blow-up branch
  std::uint64_t seed = 0;
  // Enumeration cap for the bounded-budget subset branch; beyond it the
  // branch falls back to nested cheapest-prefix candidates.
  long long subset_enum_budget = 20'000;
  long long blowup_vertex_limit = 2'000;
  long long blowup_edge_limit = 200'000;
  int exact_sukp_max_n = 24;
};

SukpConfig default_sukp_config();

struct PrunedSukp {
  SukpInstance instance;
  std::vector<int> orig_ids;  // pruned id -> original id
};

// Drops vertices costing more than the budget, edges whose member cost sum
// exceeds the budget, and zero-profit edges. The optimum is unchanged.
PrunedSukp prune(const SukpInstance& inst);

// Moves size-1 edges into vertex profits; the objective is unchanged.
SukpInstance fold_unit_edges(const SukpInstance& inst);

// Rounds every edge profit down to the nearest value among
// 2^l, 2^{l-1}, ..., 2^{l-q}, 0, where 2^l is the largest power of two at
// most the top profit and q is the smallest integer above log2(n^r). Edges
// rounded to zero are removed. Keeps at least 1/4 of the optimum.
SukpInstance round_profits(const SukpInstance& inst);

struct BucketedInstance {
  std::shared_ptr<const SukpInstance> base;
  std::vector<int> bucket_of;  // per vertex, 1..s+3
  long k_pow = 0;              // 2^k_pow = smallest power of two >= max cost
  int s = 1;                   // smallest integer above log2 n

  int tiny_bucket() const { return s + 3; }
  // Lower cost bound of bucket b <= s+2, i.e. 2^{k_pow-b}.
  Rational bucket_cost_lo(int b) const { return Rational::pow2(k_pow - b); }
};

// Bucket b <= s+2 holds costs in (2^{k-b}, 2^{k+1-b}]; bucket s+3 holds
// costs in [0, 2^{k-s-2}] (zero-cost vertices included).
BucketedInstance bucket_costs(const SukpInstance& inst);

struct ClassLayer {
  int bucket = 0;
  std::vector<int> verts;  // sorted; layers may share vertices when an edge
                           // has several vertices in one bucket
};

struct ClassEdge {
  std::vector<int> by_layer;  // vertex occupying each layer slot
  std::vector<int> sorted;    // the same vertices as a sorted set
};

// One profit level and one bucket signature worth of edges, arranged as an
// r-partite hypergraph with layers ordered cheapest bucket first. tag 1 is
// the vertex-profit knapsack projection (no edges); tag 2 has the tiny
// bucket s+3 as layer 1; tag 3 has no tiny-bucket layer.
struct ClassInstance {
  int tag = 1;
  Rational profit_level;
  std::vector<ClassLayer> layers;
  std::vector<ClassEdge> edges;
  Rational budget;
  std::shared_ptr<const SukpInstance> base;  // cost lookup
  int tiny_bucket = 0;
  long k_pow = 0;  // bucket b <= s+2 spans (2^{k_pow-b}, 2^{k_pow+1-b}]

  int order() const { return static_cast<int>(layers.size()); }
  Rational cost_of(const std::vector<int>& verts) const;
  // profit_level times the number of class edges inside `verts`.
  Rational class_value(const std::vector<int>& verts) const;
};

// Splits a rounded, bucketed instance into one Class-1 instance plus one
// Class-2/3 instance per (profit level, bucket multiset) pair; every rounded
// edge lands in exactly one of them.
std::vector<ClassInstance> decompose(const BucketedInstance& b);

// Profit-scaling dynamic program. Feasible, and at least OPT/(1+epsilon);
// exact when profits are integers small enough that no scaling is needed.
Solution knapsack_fptas(const std::vector<Rational>& costs, const std::vector<Rational>& profits,
                        const Rational& budget, const Rational& epsilon);

Solution solve_class2(const ClassInstance& ci, const SukpConfig& cfg, TraceSink* trace = nullptr);

struct NormalizedClass3 {
  ClassInstance instance;  // costs divided by lambda, profits all 1
  Rational cost_scale;     // lambda: lower cost bound of layer 1's bucket
  Rational profit_scale;   // kappa: the class profit level
  std::vector<long long> copy_counts;  // a_j per layer; a_1 = 1, powers of two
};

// Scales a Class-3 instance so layer-1 costs land in (1,2] and profits are 1.
// Un-normalization multiplies values by kappa and costs by lambda.
NormalizedClass3 normalize_class3(const ClassInstance& ci);

struct BlowUpGraph {
  Hypergraph graph;  // r-uniform over copy vertices
  std::vector<Rational> costs;                // per copy vertex, in (1,2]
  std::vector<int> back_orig;                 // copy -> original vertex id
  std::vector<int> layer_of;                  // copy -> 0-based layer
  std::vector<long long> copies;              // a_j per layer
  std::vector<std::vector<int>> layer_verts;  // original ids per layer
  std::vector<std::vector<int>> h_edges;      // the source edges, as sorted original-id sets
  std::shared_ptr<const SukpInstance> norm_base;  // normalized cost lookup
  Rational budget;                                // the normalized budget
};

// Replaces layer j by a_j copies with costs divided by a_j; every class edge
// becomes one edge per copy combination. Refuses (OracleRefusal) when the
// copy graph would exceed the configured limits.
BlowUpGraph blow_up(const NormalizedClass3& nc, const SukpConfig& cfg);

// Degree-based extraction of an original-instance solution from a DkSHP
// selection on the blow-up graph. Keeps, per layer j, the
// floor(B/(2r a_j)) original indices whose best chosen copy has the highest
// degree in the edges restricted so far, then maps back. Per-layer cost is
// at most B/r. Returns the empty solution when some layer allowance is 0.
Solution degree_select(const BlowUpGraph& h, const std::vector<int>& chosen, const Rational& budget,
                       int r);

Solution solve_class3(const ClassInstance& ci, const SukpConfig& cfg, TraceSink* trace = nullptr);

// Full pipeline: prune, fold, round, bucket, decompose, solve every class,
// optionally solve exactly below the cutoff, rescore every candidate against
// the original profits (plus any free zero-cost vertices) and keep the best.
Solution approx_sukp(const SukpInstance& inst, const SukpConfig& cfg, TraceSink* trace = nullptr);

}  // namespace denseknap
