#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnbc/coloring.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"
#include "cnbc/solver.hpp"

// Polynomial reduction from proper k-coloring to closed-neighborhood balanced
// k-coloring (k >= 3), with the coloring maps in both directions.
//
// Layout of the reduced graph G':
//   ids 0..n-1            the original vertices
//   next (k-2)|E| ids     edge cliques, one block per edge in canonical order
//   remaining ids         padding gadgets, d(v)-1 per vertex v in id order,
//                         each laid out as [central, clique_a..., clique_b...]
// Every gadget is attached by the single edge central -- v.

namespace cnbc {

struct PaddingGadget {
  Vertex central = 0;
  std::vector<Vertex> clique_a;  // k-1 vertices
  std::vector<Vertex> clique_b;  // k-1 vertices
};

struct EdgeClique {
  Edge edge;
  std::vector<Vertex> members;  // k-2 vertices
};

struct ReductionCertificate {
  int k = 3;
  std::size_t original_vertex_count = 0;
  std::vector<Vertex> original_vertices;               // v in G -> its id in G'
  std::vector<EdgeClique> edge_cliques;                // one per edge of G
  std::vector<std::vector<PaddingGadget>> padding;     // per vertex of G, d(v)-1 gadgets
};

struct Reduction {
  Graph graph;
  ReductionCertificate certificate;
};

// |V(G')| = |V| + (k-2)|E| + (2k-1) * sum_v (d(v) - 1).
inline std::size_t reduced_vertex_count(const Graph& g, int k) {
  std::size_t padding = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) padding += g.degree(v) - 1;
  const auto kk = static_cast<std::size_t>(k);
  return g.vertex_count() + (kk - 2) * g.edge_count() + (2 * kk - 1) * padding;
}

inline Reduction build_reduction(const Graph& g, int k) {
  if (k < 3) throw std::invalid_argument("build_reduction: k must be at least 3");
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) {
      throw std::invalid_argument("build_reduction: vertex " + std::to_string(v) +
                                  " is isolated; its closed neighborhood in G' could never balance. Drop isolated "
                                  "vertices first (they do not affect proper colorability)");
    }
  }
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t n = reduced_vertex_count(g, k);
  check_vertex_budget(n, "build_reduction");

  Reduction out;
  auto& cert = out.certificate;
  cert.k = k;
  cert.original_vertex_count = g.vertex_count();
  cert.original_vertices.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) cert.original_vertices[v] = v;

  std::vector<Edge> edges = g.edges();
  Vertex next = g.vertex_count();
  auto add_clique = [&](const std::vector<Vertex>& members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) edges.emplace_back(members[i], members[j]);
    }
  };

  for (auto [u, v] : g.edges()) {
    EdgeClique ec{{u, v}, {}};
    for (std::size_t i = 0; i + 2 < kk; ++i) ec.members.push_back(next++);
    add_clique(ec.members);
    for (Vertex w : ec.members) {
      edges.emplace_back(u, w);
      edges.emplace_back(v, w);
    }
    cert.edge_cliques.push_back(std::move(ec));
  }

  cert.padding.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t t = 0; t + 1 < g.degree(v); ++t) {
      PaddingGadget pad;
      pad.central = next++;
      for (std::size_t i = 0; i + 1 < kk; ++i) pad.clique_a.push_back(next++);
      for (std::size_t i = 0; i + 1 < kk; ++i) pad.clique_b.push_back(next++);
      std::vector<Vertex> a{pad.central};
      a.insert(a.end(), pad.clique_a.begin(), pad.clique_a.end());
      std::vector<Vertex> b{pad.central};
      b.insert(b.end(), pad.clique_b.begin(), pad.clique_b.end());
      add_clique(a);
      add_clique(b);
      edges.emplace_back(pad.central, v);
      cert.padding[v].push_back(std::move(pad));
    }
  }
  if (next != n) throw std::logic_error("build_reduction: vertex accounting mismatch");
  out.graph = Graph::from_edges(n, edges);
  return out;
}

// The known K_k blocks of G': {u, v} plus the edge clique for every edge, and
// both halves {central} + clique of every padding gadget. Each is the closed
// neighborhood of one of its members, so it must be rainbow.
inline std::vector<std::vector<Vertex>> rainbow_blocks(const ReductionCertificate& cert) {
  std::vector<std::vector<Vertex>> blocks;
  for (const auto& ec : cert.edge_cliques) {
    std::vector<Vertex> block{cert.original_vertices[ec.edge.first], cert.original_vertices[ec.edge.second]};
    block.insert(block.end(), ec.members.begin(), ec.members.end());
    blocks.push_back(std::move(block));
  }
  for (const auto& per_vertex : cert.padding) {
    for (const auto& pad : per_vertex) {
      std::vector<Vertex> a{pad.central};
      a.insert(a.end(), pad.clique_a.begin(), pad.clique_a.end());
      std::vector<Vertex> b{pad.central};
      b.insert(b.end(), pad.clique_b.begin(), pad.clique_b.end());
      blocks.push_back(std::move(a));
      blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

inline bool is_proper(const Graph& g, const Coloring& c) {
  detail::require_matching_size(g, c);
  for (auto [u, v] : g.edges()) {
    if (c[u] == c[v]) return false;
  }
  return true;
}

// Backtracking search for a proper k-coloring (symmetry-reduced).
inline std::optional<Coloring> find_proper_coloring(const Graph& g, int k) {
  detail::require_k(k);
  const std::size_t n = g.vertex_count();
  std::vector<Color> colors(n, 0);
  auto rec = [&](auto&& self, Vertex v, int max_used) -> bool {
    if (v == n) return true;
    for (Color c = 1; c <= std::min(k, max_used + 1); ++c) {
      bool ok = true;
      for (Vertex w : g.neighbors(v)) {
        if (w < v && colors[w] == c) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      colors[v] = c;
      if (self(self, v + 1, std::max(max_used, c))) return true;
    }
    colors[v] = 0;
    return false;
  };
  if (!rec(rec, 0, 0)) return std::nullopt;
  return Coloring(k, std::move(colors));
}

namespace detail {
inline void require_certificate_matches(const Graph& g, const ReductionCertificate& cert) {
  if (cert.original_vertex_count != g.vertex_count() || cert.edge_cliques.size() != g.edge_count()) {
    throw std::invalid_argument("reduction certificate does not belong to this graph");
  }
}
}  // namespace detail

// Forward map: a proper coloring of G becomes a balanced coloring of G'.
// Edge cliques take the k-2 colors missing from their endpoints; gadget
// centrals copy v's color; each gadget half takes the other k-1 colors in
// ascending order.
inline Coloring lift_coloring(const Graph& g, const Coloring& proper, const ReductionCertificate& cert,
                              const Graph& reduced) {
  detail::require_certificate_matches(g, cert);
  if (proper.k() != cert.k) throw std::invalid_argument("lift_coloring: coloring uses a different k");
  if (!is_proper(g, proper)) throw std::invalid_argument("lift_coloring: input coloring is not proper");
  const int k = cert.k;
  std::vector<Color> colors(reduced.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) colors[cert.original_vertices[v]] = proper[v];

  for (const auto& ec : cert.edge_cliques) {
    std::size_t slot = 0;
    for (Color c = 1; c <= k; ++c) {
      if (c != proper[ec.edge.first] && c != proper[ec.edge.second]) colors[ec.members.at(slot++)] = c;
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const auto& pad : cert.padding[v]) {
      colors[pad.central] = proper[v];
      std::size_t slot = 0;
      for (Color c = 1; c <= k; ++c) {
        if (c == proper[v]) continue;
        colors[pad.clique_a.at(slot)] = c;
        colors[pad.clique_b.at(slot)] = c;
        ++slot;
      }
    }
  }
  Coloring out(k, std::move(colors));
  if (!verify_cnbc(reduced, out)) throw std::logic_error("lift_coloring produced an unbalanced coloring");
  return out;
}

// Backward map: restricting a balanced coloring of G' to V(G) gives a proper
// coloring, because every edge uv sits in a forced-rainbow K_k.
inline Coloring extract_coloring(const Graph& g, const Coloring& balanced, const ReductionCertificate& cert,
                                 const Graph& reduced) {
  detail::require_certificate_matches(g, cert);
  if (!verify_cnbc(reduced, balanced)) throw std::invalid_argument("extract_coloring: coloring of G' is not CNBC");
  std::vector<Color> colors(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) colors[v] = balanced[cert.original_vertices[v]];
  Coloring out(balanced.k(), std::move(colors));
  if (!is_proper(g, out)) throw std::logic_error("extract_coloring: restriction is not proper");
  return out;
}

struct EquivalenceReport {
  bool properly_colorable = false;
  SolveStatus reduced_status = SolveStatus::timeout;
  std::optional<Coloring> extracted;  // proper coloring pulled back from a solver solution
  SolveStats stats;

  // nullopt while the reduced side timed out.
  std::optional<bool> agree() const {
    if (reduced_status == SolveStatus::timeout) return std::nullopt;
    return properly_colorable == (reduced_status == SolveStatus::satisfiable);
  }
};

inline EquivalenceReport equivalence_check(const Graph& g, int k,
                                           std::chrono::milliseconds time_limit = std::chrono::seconds(60)) {
  const auto reduction = build_reduction(g, k);
  EquivalenceReport report;
  report.properly_colorable = find_proper_coloring(g, k).has_value();

  SolveOptions opts;
  opts.k = k;
  opts.time_limit = time_limit;
  opts.rainbow_cliques = rainbow_blocks(reduction.certificate);
  const auto result = solve(reduction.graph, opts);
  report.reduced_status = result.status;
  report.stats = result.stats;
  if (result.coloring) {
    report.extracted = extract_coloring(g, *result.coloring, reduction.certificate, reduction.graph);
  }
  return report;
}

}  // namespace cnbc
