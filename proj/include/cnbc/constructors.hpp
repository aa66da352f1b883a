#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cnbc/coloring.hpp"
#include "cnbc/diagnostics.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"

namespace cnbc {

struct Provenance {
  std::string construction;
  std::vector<std::pair<std::string, long long>> params;
};

// A graph bundled with a certified balanced closed-neighborhood coloring.
struct ColoredGraph {
  Graph graph;
  Coloring coloring;
  Provenance provenance;
};

// Wraps a construction result, throwing std::logic_error if the coloring does
// not balance every closed neighborhood.
inline ColoredGraph certify(Graph graph, Coloring coloring, Provenance provenance) {
  const auto check = verify_cnbc(graph, coloring);
  if (!check) {
    throw std::logic_error(provenance.construction + " produced an unbalanced coloring at vertex " +
                           std::to_string(check.violation->vertex));
  }
  return {std::move(graph), std::move(coloring), std::move(provenance)};
}

// K_n with round-robin colors 1, 2, ..., k, 1, 2, ... Requires k | n.
inline ColoredGraph color_complete(std::size_t n, int k) {
  detail::require_k(k);
  if (n == 0 || n % static_cast<std::size_t>(k) != 0) {
    throw HypothesisViolation("K_" + std::to_string(n) + " has a balanced " + std::to_string(k) +
                              "-coloring if and only if n is a positive multiple of k");
  }
  std::vector<Color> colors(n);
  for (Vertex v = 0; v < n; ++v) colors[v] = static_cast<Color>(v % static_cast<std::size_t>(k)) + 1;
  return certify(complete_graph(n), Coloring(k, std::move(colors)),
                 {"complete", {{"n", static_cast<long long>(n)}, {"k", k}}});
}

namespace detail {

inline void require_hamming_dimension(std::size_t d, int k) {
  require_k(k);
  if (d < 1 || d % static_cast<std::size_t>(k) != 1) {
    throw HypothesisViolation("H(" + std::to_string(d) + "," + std::to_string(k) + ") is balanced " +
                              std::to_string(k) + "-colorable if and only if d = 1 (mod k); its degree " +
                              std::to_string(d * static_cast<std::size_t>(k - 1)) + " is not -1 mod k");
  }
}

// Places k blocks side by side, block i (0-based) colored by the i-th cyclic
// shift of `block`. The new blocks differ in a fresh most-significant
// coordinate, so this colors a Hamming graph one dimension larger.
inline Coloring extend_by_shifts(const Coloring& block) {
  std::vector<Color> out;
  out.reserve(block.size() * static_cast<std::size_t>(block.k()));
  for (int i = 0; i < block.k(); ++i) {
    const auto shifted = cyclic_shift(block, i);
    out.insert(out.end(), shifted.colors().begin(), shifted.colors().end());
  }
  return Coloring(block.k(), std::move(out));
}

// k identical copies of `block` along a fresh most-significant coordinate.
inline Coloring replicate(const Coloring& block) {
  std::vector<Color> out;
  out.reserve(block.size() * static_cast<std::size_t>(block.k()));
  for (int i = 0; i < block.k(); ++i) out.insert(out.end(), block.colors().begin(), block.colors().end());
  return Coloring(block.k(), std::move(out));
}

}  // namespace detail

// Balanced coloring of H(d, k) for d = kn + 1, built block by block.
//
// Vertex ids put the first coordinate most significant, so fixing a prefix of
// coordinates selects a contiguous block. Starting from the rainbow on the
// all-zeros-prefix block X^1 (only the last coordinate varies), each step
// colors the next enclosing block: its k sub-blocks receive the 0th..(k-1)th
// cyclic shifts of the current scheme. After k - 1 such steps the scheme is
// copied unchanged across the leading coordinate. For n >= 2 the same two
// phases are applied on top of the recursively built coloring of
// H(k(n-1)+1, k). The rainbow K_k = H(1, k) is the n = 0 case.
inline ColoredGraph color_hamming(std::size_t d, int k) {
  detail::require_hamming_dimension(d, k);
  Graph graph = hamming_graph(d, static_cast<std::size_t>(k));

  std::vector<Color> rainbow(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rainbow[static_cast<std::size_t>(i)] = i + 1;
  Coloring scheme(k, std::move(rainbow));

  const std::size_t levels = (d - 1) / static_cast<std::size_t>(k);
  for (std::size_t level = 0; level < levels; ++level) {
    for (int step = 1; step < k; ++step) scheme = detail::extend_by_shifts(scheme);
    scheme = detail::replicate(scheme);
  }
  return certify(std::move(graph), std::move(scheme),
                 {"hamming", {{"d", static_cast<long long>(d)}, {"k", k}}});
}

// Independent balanced coloring of H(kn + 1, k): color(a) = (sum of the last
// n(k-1)+1 coordinates mod k) + 1.
//
// Why this balances N[a]: changing a summed coordinate through its k-1 other
// values moves the sum through every residue except its own once, so each of
// the n(k-1)+1 summed coordinates adds one neighbor of every foreign color.
// Each of the n unsummed coordinates adds k-1 neighbors of a's own color.
// Hence N[a] holds n(k-1)+1 vertices of each foreign color and
// 1 + n(k-1) of its own.
inline ColoredGraph color_hamming_closed_form(std::size_t d, int k) {
  detail::require_hamming_dimension(d, k);
  Graph graph = hamming_graph(d, static_cast<std::size_t>(k));
  const std::size_t n = (d - 1) / static_cast<std::size_t>(k);
  const std::size_t summed = n * static_cast<std::size_t>(k - 1) + 1;
  const std::size_t first_summed = d - summed;

  std::vector<Color> colors(graph.vertex_count());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    std::int64_t sum = 0;
    const auto& tuple = graph.label(v);
    for (std::size_t i = first_summed; i < d; ++i) sum += tuple[i];
    colors[v] = static_cast<Color>(sum % k) + 1;
  }
  return certify(std::move(graph), Coloring(k, std::move(colors)),
                 {"hamming_closed_form", {{"d", static_cast<long long>(d)}, {"k", k}}});
}

// (3k-2)-vertex addition at z. Appends, in order, u_1..u_k, v_1..v_{k-1},
// v'_1..v'_{k-1} after the existing vertices:
//   every u_i ~ z; u_1..u_{k-1} form a clique;
//   u_k ~ every v_i and v'_i; v_1..v_{k-1} and v'_1..v'_{k-1} are cliques.
// Gadget role colors (u_i -> i, v_i and v'_i -> i) are cyclically shifted so
// that role k lands on z's color; host vertices keep their colors.
inline ColoredGraph vertex_addition_3km2(const ColoredGraph& host, Vertex z) {
  const Graph& g = host.graph;
  const Coloring& c = host.coloring;
  if (z >= g.vertex_count()) throw std::out_of_range("vertex_addition_3km2: z out of range");
  if (!verify_cnbc(g, c)) throw HypothesisViolation("vertex_addition_3km2: host coloring is not balanced");

  const int k = c.k();
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t n0 = g.vertex_count();
  auto u = [&](std::size_t i) { return n0 + i - 1; };
  auto v = [&](std::size_t i) { return n0 + kk + i - 1; };
  auto vp = [&](std::size_t i) { return n0 + kk + (kk - 1) + i - 1; };
  const std::size_t n = n0 + 3 * kk - 2;

  std::vector<Edge> edges = g.edges();
  for (std::size_t i = 1; i <= kk; ++i) edges.emplace_back(u(i), z);
  for (std::size_t i = 1; i < kk; ++i) {
    for (std::size_t j = i + 1; j < kk; ++j) {
      edges.emplace_back(u(i), u(j));
      edges.emplace_back(v(i), v(j));
      edges.emplace_back(vp(i), vp(j));
    }
    edges.emplace_back(u(kk), v(i));
    edges.emplace_back(u(kk), vp(i));
  }

  const int shift = ((c[z] - k) % k + k) % k;
  auto actual = [&](std::size_t role) { return static_cast<Color>((static_cast<int>(role) - 1 + shift) % k + 1); };
  std::vector<Color> colors(c.colors().begin(), c.colors().end());
  colors.resize(n);
  for (std::size_t i = 1; i <= kk; ++i) colors[u(i)] = actual(i);
  for (std::size_t i = 1; i < kk; ++i) {
    colors[v(i)] = actual(i);
    colors[vp(i)] = actual(i);
  }

  Provenance prov = host.provenance;
  prov.construction = "vertex_addition(" + host.provenance.construction + ")";
  prov.params.emplace_back("z", static_cast<long long>(z));
  return certify(Graph::from_edges(n, edges), Coloring(k, std::move(colors)), std::move(prov));
}

// H_k: (3k-2)-vertex addition to the rainbow K_k at its color-k vertex.
// Order 4k - 2.
inline ColoredGraph build_hk(int k) {
  const auto base = color_complete(static_cast<std::size_t>(k), k);
  auto out = vertex_addition_3km2(base, static_cast<Vertex>(k - 1));
  out.provenance = {"hk", {{"k", k}}};
  return out;
}

struct SupergraphEmbedding {
  ColoredGraph colored;
  std::vector<Vertex> embedding;  // original vertex i -> its layer-1 copy
};

// Every graph is an induced subgraph of a balanced-colorable graph: take k
// layers v_i^1..v_i^k of V(G), join copies of E(G) within and across layers,
// and make each column {v_i^1..v_i^k} a clique; color v_i^j with j. Vertex
// v_i^j has id i*k + (j-1), which makes the result equal to G[K_k].
inline SupergraphEmbedding supergraph_embed(const Graph& g, int k) {
  detail::require_k(k);
  const auto kk = static_cast<std::size_t>(k);
  const auto total = checked_mul(g.vertex_count(), kk);
  if (!total) throw BudgetExceeded("supergraph_embed: vertex count overflows");
  check_vertex_budget(*total, "supergraph_embed");
  auto id = [&](Vertex i, std::size_t layer) { return i * kk + (layer - 1); };

  const auto g_edges = g.edges();
  std::vector<Edge> edges;
  for (std::size_t p = 1; p <= kk; ++p) {
    for (auto [a, b] : g_edges) edges.emplace_back(id(a, p), id(b, p));
  }
  for (std::size_t p = 1; p <= kk; ++p) {
    for (std::size_t q = 1; q <= kk; ++q) {
      if (p == q) continue;
      for (auto [a, b] : g_edges) edges.emplace_back(id(a, p), id(b, q));
    }
  }
  for (std::size_t p = 1; p <= kk; ++p) {
    for (std::size_t q = p + 1; q <= kk; ++q) {
      for (Vertex i = 0; i < g.vertex_count(); ++i) edges.emplace_back(id(i, p), id(i, q));
    }
  }

  std::vector<Color> colors(*total);
  std::vector<Label> labels(*total);
  std::vector<Vertex> embedding(g.vertex_count());
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    embedding[i] = id(i, 1);
    for (std::size_t p = 1; p <= kk; ++p) {
      colors[id(i, p)] = static_cast<Color>(p);
      labels[id(i, p)] = {static_cast<std::int64_t>(i), static_cast<std::int64_t>(p - 1)};
    }
  }
  auto colored = certify(Graph::from_edges(*total, edges, std::move(labels)), Coloring(k, std::move(colors)),
                         {"supergraph", {{"n", static_cast<long long>(g.vertex_count())}, {"k", k}}});
  return {std::move(colored), std::move(embedding)};
}

}  // namespace cnbc
