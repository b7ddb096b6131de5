#include "denseknap/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace denseknap {

namespace {

using nlohmann::json;

Rational rational_field(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where, "expected a rational string or integer");
}

int int_field(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<int>();
}

const json& require(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing field");
  return *it;
}

std::vector<int> verts_field(const json& j, int n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an id array");
  std::vector<int> verts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    int v = int_field(j[i], at);
    if (v < 0 || v >= n) throw ParseError(at, "vertex id out of range");
    verts.push_back(v);
  }
  return verts;
}

Instance parse_hypergraph(const json& doc) {
  int n = int_field(require(doc, "n"), "n");
  if (n < 0) throw ParseError("n", "negative vertex count");
  int m_cap = int_field(require(doc, "m_cap"), "m_cap");
  const json& jedges = require(doc, "edges");
  if (!jedges.is_array()) throw ParseError("edges", "expected an array");

  std::vector<std::vector<int>> edges;
  std::vector<Rational> weights;
  std::size_t weighted = 0;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    const json& je = jedges[i];
    if (!je.is_object()) throw ParseError(where, "expected an object");
    edges.push_back(verts_field(require(je, "verts"), n, where + ".verts"));
    if (je.contains("weight")) {
      ++weighted;
      weights.push_back(rational_field(je["weight"], where + ".weight"));
    } else {
      weights.push_back(Rational(1));
    }
  }
  if (weighted > 0 && weighted < edges.size())
    throw ParseError("edges", "weighted graph must carry a weight on every edge");
  try {
    if (weighted > 0) return WeightedHypergraph(n, std::move(edges), std::move(weights), m_cap);
    return Hypergraph(n, std::move(edges), m_cap);
  } catch (const std::invalid_argument& e) {
    throw ParseError("edges", e.what());
  }
}

Instance parse_sukp(const json& doc) {
  int n = int_field(require(doc, "n"), "n");
  if (n < 0) throw ParseError("n", "negative item count");
  int m_cap = int_field(require(doc, "m_cap"), "m_cap");

  const json& jcosts = require(doc, "costs");
  if (!jcosts.is_array() || static_cast<int>(jcosts.size()) != n)
    throw ParseError("costs", "expected an array of length n");
  std::vector<Rational> costs;
  for (std::size_t i = 0; i < jcosts.size(); ++i) {
    std::string where = "costs[" + std::to_string(i) + "]";
    costs.push_back(rational_field(jcosts[i], where));
    if (costs.back().sign() < 0) throw ParseError(where, "negative cost");
  }

  Rational budget = rational_field(require(doc, "budget"), "budget");
  if (budget.sign() < 0) throw ParseError("budget", "negative budget");

  const json& jedges = require(doc, "edges");
  if (!jedges.is_array()) throw ParseError("edges", "expected an array");
  std::vector<std::vector<int>> edges;
  std::vector<Rational> profits;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    std::string where = "edges[" + std::to_string(i) + "]";
    const json& je = jedges[i];
    if (!je.is_object()) throw ParseError(where, "expected an object");
    edges.push_back(verts_field(require(je, "verts"), n, where + ".verts"));
    profits.push_back(rational_field(require(je, "profit"), where + ".profit"));
    if (profits.back().sign() < 0) throw ParseError(where + ".profit", "negative profit");
  }

  std::vector<Rational> vertex_profits;
  if (doc.contains("vertex_profits")) {
    const json& jvp = doc["vertex_profits"];
    if (!jvp.is_array() || static_cast<int>(jvp.size()) != n)
      throw ParseError("vertex_profits", "expected an array of length n");
    for (std::size_t i = 0; i < jvp.size(); ++i) {
      std::string where = "vertex_profits[" + std::to_string(i) + "]";
      vertex_profits.push_back(rational_field(jvp[i], where));
      if (vertex_profits.back().sign() < 0) throw ParseError(where, "negative profit");
    }
  }

  try {
    return SukpInstance(std::move(costs), std::move(budget), std::move(edges), std::move(profits),
                        std::move(vertex_profits), m_cap);
  } catch (const std::invalid_argument& e) {
    throw ParseError("edges", e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  std::string kind = require(doc, "kind").is_string() ? doc["kind"].get<std::string>() : "";
  if (kind == "hypergraph") return parse_hypergraph(doc);
  if (kind == "sukp") return parse_sukp(doc);
  throw ParseError("kind", "expected \"hypergraph\" or \"sukp\"");
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

namespace {

json rational_json(const Rational& r) { return json(r.str()); }

json hypergraph_json(const Hypergraph& g) {
  json doc;
  doc["kind"] = "hypergraph";
  doc["n"] = g.n();
  doc["m_cap"] = g.m_cap();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(json{{"verts", e}});
  doc["edges"] = std::move(edges);
  return doc;
}

json weighted_json(const WeightedHypergraph& g) {
  json doc;
  doc["kind"] = "hypergraph";
  doc["n"] = g.n();
  doc["m_cap"] = g.m_cap();
  json edges = json::array();
  for (std::size_t i = 0; i < g.edges().size(); ++i)
    edges.push_back(json{{"verts", g.edges()[i]}, {"weight", rational_json(g.weights()[i])}});
  doc["edges"] = std::move(edges);
  return doc;
}

json sukp_json(const SukpInstance& inst) {
  json doc;
  doc["kind"] = "sukp";
  doc["n"] = inst.n();
  doc["m_cap"] = inst.m_cap();
  json costs = json::array();
  for (const auto& c : inst.costs()) costs.push_back(rational_json(c));
  doc["costs"] = std::move(costs);
  doc["budget"] = rational_json(inst.budget());
  json edges = json::array();
  for (std::size_t i = 0; i < inst.edges().size(); ++i)
    edges.push_back(
        json{{"verts", inst.edges()[i]}, {"profit", rational_json(inst.edge_profits()[i])}});
  doc["edges"] = std::move(edges);
  json vp = json::array();
  for (const auto& p : inst.vertex_profits()) vp.push_back(rational_json(p));
  doc["vertex_profits"] = std::move(vp);
  return doc;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json doc = std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Hypergraph>) return hypergraph_json(x);
        if constexpr (std::is_same_v<T, WeightedHypergraph>) return weighted_json(x);
        if constexpr (std::is_same_v<T, SukpInstance>) return sukp_json(x);
      },
      inst);
  return doc.dump();
}

void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << instance_to_json(inst) << "\n";
}

std::string solution_to_json(const Solution& sol, const Rational& guarantee_exponent) {
  json doc;
  doc["value"] = sol.value.str();
  doc["vertices"] = sol.vertices;
  doc["cost"] = sol.total_cost.str();
  doc["method"] = sol.method;
  doc["guarantee_exponent"] = guarantee_exponent.str();
  return doc.dump();
}

}  // namespace denseknap
