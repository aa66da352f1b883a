#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cnbc/coloring.hpp"
#include "cnbc/constructors.hpp"
#include "cnbc/diagnostics.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"

// Coloring transfers: each operator checks its hypotheses, builds the derived
// graph with the guaranteed coloring, and re-verifies the output before
// returning it.

namespace cnbc {

// A graph together with a balanced open-neighborhood coloring.
struct NbcColoredGraph {
  Graph graph;
  Coloring coloring;
};

namespace detail {

inline void require_cnbc(const Graph& g, const Coloring& c, const char* who) {
  if (!verify_cnbc(g, c)) throw HypothesisViolation(std::string(who) + ": input coloring is not CNBC");
}

inline void require_equitable(const Coloring& c, const char* who) {
  if (!c.is_equitable()) {
    throw HypothesisViolation(std::string(who) + ": color classes must all have the same size");
  }
}

inline void require_same_k(const Coloring& a, const Coloring& b, const char* who) {
  if (a.k() != b.k()) {
    throw HypothesisViolation(std::string(who) + ": colorings use different k (" + std::to_string(a.k()) + " vs " +
                              std::to_string(b.k()) + ")");
  }
}

inline NbcColoredGraph certify_nbc(Graph graph, Coloring coloring, const char* who) {
  if (!verify_nbc(graph, coloring)) throw std::logic_error(std::string(who) + " produced an unbalanced NBC coloring");
  return {std::move(graph), std::move(coloring)};
}

// Coloring of a product graph that reads the left factor's color.
inline Coloring project_left(const Coloring& left, std::size_t right_size) {
  std::vector<Color> colors(left.size() * right_size);
  for (Vertex g = 0; g < left.size(); ++g) {
    for (Vertex h = 0; h < right_size; ++h) colors[g * right_size + h] = left[g];
  }
  return Coloring(left.k(), std::move(colors));
}

}  // namespace detail

// Maps color i to ((i - 1) mod p) + 1, which stays balanced when p | k.
inline Coloring reduce_colors(const Graph& g, const Coloring& c, int p) {
  detail::require_cnbc(g, c, "reduce_colors");
  if (p < 2 || c.k() % p != 0) {
    throw HypothesisViolation("reduce_colors: p = " + std::to_string(p) + " must be at least 2 and divide k = " +
                              std::to_string(c.k()));
  }
  std::vector<Color> colors(c.size());
  for (Vertex v = 0; v < c.size(); ++v) colors[v] = (c[v] - 1) % p + 1;
  Coloring out(p, std::move(colors));
  if (!verify_cnbc(g, out)) throw std::logic_error("reduce_colors produced an unbalanced coloring");
  return out;
}

struct ComplementTransfer {
  Graph complement;
  bool nbc_of_graph = false;
  bool cnbc_of_complement = false;

  bool verdict() const noexcept { return nbc_of_graph; }
};

// For an equitable coloring c: c is NBC on G iff it is CNBC on the complement.
// Runs both verifiers and throws std::logic_error if they ever disagree.
inline ComplementTransfer complement_transfer(const Graph& g, const Coloring& c) {
  detail::require_matching_size(g, c);
  detail::require_equitable(c, "complement_transfer");
  ComplementTransfer out{complement(g)};
  out.nbc_of_graph = verify_nbc(g, c).balanced;
  out.cnbc_of_complement = verify_cnbc(out.complement, c).balanced;
  if (out.nbc_of_graph != out.cnbc_of_complement) {
    throw std::logic_error("complement duality violated for an equitable coloring");
  }
  return out;
}

// G ⊠ H colored by c(g, h) = c_G(g).
inline ColoredGraph strong_product_transfer(const ColoredGraph& gc, const Graph& h) {
  detail::require_cnbc(gc.graph, gc.coloring, "strong_product_transfer");
  return certify(build_product(ProductKind::strong, gc.graph, h), detail::project_left(gc.coloring, h.vertex_count()),
                 {"strong_product", {}});
}

// G □ K_2 colored by projection; the result is NBC (open neighborhoods).
inline NbcColoredGraph cartesian_k2_transfer(const ColoredGraph& gc) {
  detail::require_cnbc(gc.graph, gc.coloring, "cartesian_k2_transfer");
  return detail::certify_nbc(build_product(ProductKind::cartesian, gc.graph, complete_graph(2)),
                             detail::project_left(gc.coloring, 2), "cartesian_k2_transfer");
}

// G □ H for CNBC G and NBC H: c(g, h) = (c_G(g) + c_H(h) - 1) mod k + 1.
inline ColoredGraph cartesian_mixed_transfer(const ColoredGraph& gc, const NbcColoredGraph& hc) {
  detail::require_cnbc(gc.graph, gc.coloring, "cartesian_mixed_transfer");
  detail::require_same_k(gc.coloring, hc.coloring, "cartesian_mixed_transfer");
  if (!verify_nbc(hc.graph, hc.coloring)) throw HypothesisViolation("cartesian_mixed_transfer: H coloring is not NBC");
  const int k = gc.coloring.k();
  const std::size_t nh = hc.graph.vertex_count();
  std::vector<Color> colors(gc.graph.vertex_count() * nh);
  for (Vertex g = 0; g < gc.graph.vertex_count(); ++g) {
    for (Vertex h = 0; h < nh; ++h) colors[g * nh + h] = (gc.coloring[g] + hc.coloring[h] - 1) % k + 1;
  }
  return certify(build_product(ProductKind::cartesian, gc.graph, hc.graph), Coloring(k, std::move(colors)),
                 {"cartesian_mixed", {}});
}

// G[H] for equitable CNBC H, colored by c(g, h) = c_H(h).
inline ColoredGraph lexicographic_transfer(const Graph& g, const ColoredGraph& hc) {
  detail::require_cnbc(hc.graph, hc.coloring, "lexicographic_transfer");
  detail::require_equitable(hc.coloring, "lexicographic_transfer");
  const std::size_t nh = hc.graph.vertex_count();
  std::vector<Color> colors(g.vertex_count() * nh);
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    for (Vertex h = 0; h < nh; ++h) colors[a * nh + h] = hc.coloring[h];
  }
  return certify(build_product(ProductKind::lexicographic, g, hc.graph), Coloring(hc.coloring.k(), std::move(colors)),
                 {"lexicographic", {}});
}

// G ∨ H for two equitable CNBC inputs, each side keeping its coloring.
inline ColoredGraph join_transfer(const ColoredGraph& gc, const ColoredGraph& hc) {
  detail::require_cnbc(gc.graph, gc.coloring, "join_transfer");
  detail::require_cnbc(hc.graph, hc.coloring, "join_transfer");
  detail::require_same_k(gc.coloring, hc.coloring, "join_transfer");
  detail::require_equitable(gc.coloring, "join_transfer");
  detail::require_equitable(hc.coloring, "join_transfer");
  std::vector<Color> colors(gc.coloring.colors().begin(), gc.coloring.colors().end());
  colors.insert(colors.end(), hc.coloring.colors().begin(), hc.coloring.colors().end());
  return certify(build_product(ProductKind::join, gc.graph, hc.graph), Coloring(gc.coloring.k(), std::move(colors)),
                 {"join", {}});
}

// G × K_2 (bipartite double cover) colored by projection.
inline ColoredGraph direct_k2_transfer(const ColoredGraph& gc) {
  detail::require_cnbc(gc.graph, gc.coloring, "direct_k2_transfer");
  return certify(build_product(ProductKind::direct, gc.graph, complete_graph(2)), detail::project_left(gc.coloring, 2),
                 {"direct_k2", {}});
}

// Certificate that G × H cannot be CNBC: every degree of G and H is -1 mod k,
// so every product degree d_G(g) d_H(h) is 1 mod k, and 1 != -1 mod k for k >= 3.
struct DirectProductObstruction {
  int k = 3;
  std::size_t product_degree_residue = 1;  // common residue of all product degrees mod k
  Vertex g_witness = 0;
  Vertex h_witness = 0;
  std::size_t witness_degree = 0;  // d_G(g_witness) * d_H(h_witness)
};

inline DirectProductObstruction direct_product_obstruction(const Graph& g, const Graph& h, int k) {
  if (k < 3) {
    throw HypothesisViolation("direct_product_obstruction: k must be at least 3; for k = 2 the degree residue 1 "
                              "equals -1 and gives no obstruction");
  }
  for (const Graph* f : {&g, &h}) {
    if (f->vertex_count() == 0) throw HypothesisViolation("direct_product_obstruction: factors must be nonempty");
    const auto degree_check = check_degree_cnbc(*f, k);
    if (!degree_check.passed) throw HypothesisViolation("direct_product_obstruction: " + degree_check.detail);
  }
  const auto kk = static_cast<std::size_t>(k);
  DirectProductObstruction out;
  out.k = k;
  out.witness_degree = g.degree(0) * h.degree(0);
  out.product_degree_residue = out.witness_degree % kk;
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    for (Vertex b = 0; b < h.vertex_count(); ++b) {
      if ((g.degree(a) * h.degree(b)) % kk != 1) {
        throw std::logic_error("direct_product_obstruction: degree arithmetic failed");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Request-style dispatch (used by the CLI)
// ---------------------------------------------------------------------------

enum class TransferKind { reduce_colors, complement, strong, cartesian_k2, cartesian_mixed, lexicographic, join, direct_k2 };

inline std::string_view to_string(TransferKind kind) {
  switch (kind) {
    case TransferKind::reduce_colors: return "reduce";
    case TransferKind::complement: return "complement";
    case TransferKind::strong: return "strong";
    case TransferKind::cartesian_k2: return "cartesian-k2";
    case TransferKind::cartesian_mixed: return "cartesian-mixed";
    case TransferKind::lexicographic: return "lexicographic";
    case TransferKind::join: return "join";
    case TransferKind::direct_k2: return "direct-k2";
  }
  return "unknown";
}

inline std::optional<TransferKind> parse_transfer_kind(std::string_view name) {
  for (auto kind : {TransferKind::reduce_colors, TransferKind::complement, TransferKind::strong,
                    TransferKind::cartesian_k2, TransferKind::cartesian_mixed, TransferKind::lexicographic,
                    TransferKind::join, TransferKind::direct_k2}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

enum class BalanceTarget { cnbc, nbc };

// Inputs per kind:
//   reduce            first + first_coloring, p
//   complement        first + first_coloring
//   strong            first + first_coloring, second
//   cartesian-k2      first + first_coloring
//   cartesian-mixed   first + first_coloring (CNBC), second + second_coloring (NBC)
//   lexicographic     first (any graph), second + second_coloring
//   join              first + first_coloring, second + second_coloring
//   direct-k2         first + first_coloring
struct TransferRequest {
  TransferKind kind = TransferKind::strong;
  Graph first;
  std::optional<Coloring> first_coloring;
  std::optional<Graph> second;
  std::optional<Coloring> second_coloring;
  int p = 0;
};

struct TransferResult {
  Graph graph;
  Coloring coloring;
  BalanceTarget target = BalanceTarget::cnbc;
  bool verdict = true;  // complement: the shared biconditional value; always true otherwise
};

inline TransferResult run_transfer(const TransferRequest& req) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string(to_string(req.kind)) + " transfer needs " + what);
  };
  auto first_colored = [&] {
    need(req.first_coloring.has_value(), "a coloring of the first graph");
    return ColoredGraph{req.first, *req.first_coloring, {}};
  };
  auto second_colored = [&] {
    need(req.second.has_value() && req.second_coloring.has_value(), "a second graph with a coloring");
    return ColoredGraph{*req.second, *req.second_coloring, {}};
  };

  switch (req.kind) {
    case TransferKind::reduce_colors: {
      auto gc = first_colored();
      return {gc.graph, reduce_colors(gc.graph, gc.coloring, req.p)};
    }
    case TransferKind::complement: {
      auto gc = first_colored();
      auto result = complement_transfer(gc.graph, gc.coloring);
      return {result.complement, gc.coloring, BalanceTarget::cnbc, result.verdict()};
    }
    case TransferKind::strong: {
      need(req.second.has_value(), "a second graph");
      auto out = strong_product_transfer(first_colored(), *req.second);
      return {out.graph, out.coloring};
    }
    case TransferKind::cartesian_k2: {
      auto out = cartesian_k2_transfer(first_colored());
      return {out.graph, out.coloring, BalanceTarget::nbc};
    }
    case TransferKind::cartesian_mixed: {
      auto h = second_colored();
      auto out = cartesian_mixed_transfer(first_colored(), {h.graph, h.coloring});
      return {out.graph, out.coloring};
    }
    case TransferKind::lexicographic: {
      auto out = lexicographic_transfer(req.first, second_colored());
      return {out.graph, out.coloring};
    }
    case TransferKind::join: {
      auto out = join_transfer(first_colored(), second_colored());
      return {out.graph, out.coloring};
    }
    case TransferKind::direct_k2: {
      auto out = direct_k2_transfer(first_colored());
      return {out.graph, out.coloring};
    }
  }
  throw std::invalid_argument("unknown transfer kind");
}

}  // namespace cnbc
