#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cnbc/coloring.hpp"
#include "cnbc/constructors.hpp"
#include "cnbc/diagnostics.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/reduction.hpp"
#include "cnbc/solver.hpp"

// JSON views of reports and certificates. Keys keep insertion order so the
// CLI output is stable byte for byte.

namespace cnbc {

using ojson = nlohmann::ordered_json;

inline ojson to_ojson(const CheckResult& r) {
  ojson j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["witness"] = r.witness ? ojson(*r.witness) : ojson(nullptr);
  j["detail"] = r.detail;
  return j;
}

inline ojson to_ojson(const std::vector<CheckResult>& rs) {
  ojson arr = ojson::array();
  for (const auto& r : rs) arr.push_back(to_ojson(r));
  return arr;
}

inline ojson to_ojson(const DiagnosticsReport& report) {
  ojson j;
  j["k"] = report.k;
  j["verdict"] = to_string(report.verdict);
  j["checks"] = to_ojson(report.checks);
  return j;
}

inline ojson to_ojson(const BalanceCheck& check) {
  ojson j;
  j["balanced"] = check.balanced;
  if (check.violation) {
    j["violation"] = {{"vertex", check.violation->vertex}, {"counts", check.violation->counts}};
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

inline ojson to_ojson(const Coloring& c) {
  ojson j;
  j["k"] = c.k();
  j["colors"] = std::vector<Color>(c.colors().begin(), c.colors().end());
  return j;
}

inline ojson to_ojson(const ClassStats& s) {
  ojson j;
  j["k"] = s.k();
  j["sizes"] = s.sizes();
  ojson pairs = ojson::array();
  for (Color i = 1; i <= s.k(); ++i) {
    for (Color jj = i; jj <= s.k(); ++jj) pairs.push_back({{"i", i}, {"j", jj}, {"edges", s.edges_between(i, jj)}});
  }
  j["edges_between"] = pairs;
  return j;
}

inline ojson to_ojson(const SolveResult& r, bool with_timing) {
  ojson j;
  j["status"] = to_string(r.status);
  j["coloring"] = r.coloring ? to_ojson(*r.coloring) : ojson(nullptr);
  j["refuted_by"] = r.refuted_by ? to_ojson(*r.refuted_by) : ojson(nullptr);
  ojson stats;
  stats["nodes"] = r.stats.nodes;
  stats["max_depth"] = r.stats.max_depth;
  if (with_timing) stats["wall_time_us"] = r.stats.wall_time.count();
  j["stats"] = stats;
  return j;
}

inline ojson to_ojson(const Provenance& p) {
  ojson j;
  j["construction"] = p.construction;
  ojson params = ojson::object();
  for (const auto& [name, value] : p.params) params[name] = value;
  j["params"] = params;
  return j;
}

inline ojson to_ojson(const ReductionCertificate& cert) {
  ojson j;
  j["k"] = cert.k;
  j["original_vertices"] = cert.original_vertices;
  ojson cliques = ojson::array();
  for (const auto& ec : cert.edge_cliques) {
    cliques.push_back({{"edge", {ec.edge.first, ec.edge.second}}, {"clique", ec.members}});
  }
  j["edge_cliques"] = cliques;
  ojson padding = ojson::array();
  for (std::size_t v = 0; v < cert.padding.size(); ++v) {
    ojson gadgets = ojson::array();
    for (const auto& pad : cert.padding[v]) {
      gadgets.push_back({{"central", pad.central}, {"clique_a", pad.clique_a}, {"clique_b", pad.clique_b}});
    }
    padding.push_back({{"vertex", v}, {"gadgets", gadgets}});
  }
  j["padding"] = padding;
  return j;
}

inline ReductionCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    ReductionCertificate cert;
    cert.k = j.at("k").get<int>();
    cert.original_vertices = j.at("original_vertices").get<std::vector<Vertex>>();
    cert.original_vertex_count = cert.original_vertices.size();
    for (const auto& ec : j.at("edge_cliques")) {
      const auto edge = ec.at("edge").get<std::vector<Vertex>>();
      if (edge.size() != 2) throw ParseError(0, "certificate edge must have two endpoints");
      cert.edge_cliques.push_back({{edge[0], edge[1]}, ec.at("clique").get<std::vector<Vertex>>()});
    }
    cert.padding.resize(cert.original_vertex_count);
    for (const auto& entry : j.at("padding")) {
      const auto v = entry.at("vertex").get<Vertex>();
      if (v >= cert.padding.size()) throw ParseError(0, "certificate padding vertex out of range");
      for (const auto& pad : entry.at("gadgets")) {
        cert.padding[v].push_back({pad.at("central").get<Vertex>(), pad.at("clique_a").get<std::vector<Vertex>>(),
                                   pad.at("clique_b").get<std::vector<Vertex>>()});
      }
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid reduction certificate: ") + e.what());
  }
}

}  // namespace cnbc
