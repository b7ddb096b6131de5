#pragma once

#include <string>
#include <variant>

#include "denseknap/errors.hpp"
#include "denseknap/instances.hpp"

namespace denseknap {

using Instance = std::variant<Hypergraph, WeightedHypergraph, SukpInstance>;

// One JSON document per file.
//   {"kind": "hypergraph", "n": 5, "m_cap": 3,
//    "edges": [{"verts": [0,1,2]}, ...]}                  (optional "weight" per edge)
//   {"kind": "sukp", "n": 3, "m_cap": 2, "costs": ["1","3/2",...], "budget": "2",
//    "edges": [{"verts": [0,1], "profit": "5"}, ...], "vertex_profits": [...]}
// Rationals are strings ("5", "3/2", "0.25") or JSON integers; floating-point
// JSON numbers are rejected to keep instances exact.
Instance parse_instance(const std::string& json_text);
Instance read_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void write_instance(const Instance& inst, const std::string& path);

// Result document: {"cost", "guarantee_exponent", "method", "value", "vertices"}.
std::string solution_to_json(const Solution& sol, const Rational& guarantee_exponent);

}  // namespace denseknap
