#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnbc/errors.hpp"

namespace cnbc {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;
using Label = std::vector<std::int64_t>;

// ---------------------------------------------------------------------------
// Vertex budget
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;

namespace detail {
inline std::atomic<std::size_t>& vertex_budget_slot() {
  static std::atomic<std::size_t> budget{kDefaultVertexBudget};
  return budget;
}
}  // namespace detail

inline std::size_t vertex_budget() { return detail::vertex_budget_slot().load(); }
inline void set_vertex_budget(std::size_t budget) { detail::vertex_budget_slot().store(budget); }

// Restores the previous budget on scope exit.
class ScopedVertexBudget {
 public:
  explicit ScopedVertexBudget(std::size_t budget) : saved_(vertex_budget()) { set_vertex_budget(budget); }
  ~ScopedVertexBudget() { set_vertex_budget(saved_); }
  ScopedVertexBudget(const ScopedVertexBudget&) = delete;
  ScopedVertexBudget& operator=(const ScopedVertexBudget&) = delete;

 private:
  std::size_t saved_;
};

inline void check_vertex_budget(std::size_t n, std::string_view what) {
  if (n > vertex_budget()) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(n) +
                         " vertices, above the vertex budget of " + std::to_string(vertex_budget()));
  }
}

// a * b, or nullopt on overflow.
inline std::optional<std::size_t> checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::nullopt;
  return a * b;
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency
// lists and optional per-vertex integer-tuple labels.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from an edge list. Loops and out-of-range endpoints throw
  // std::invalid_argument; repeated edges collapse (set semantics).
  static Graph from_edges(std::size_t n, std::span<const Edge> edges, std::vector<Label> labels = {}) {
    check_vertex_budget(n, "graph");
    Graph g;
    g.adjacency_.assign(n, {});
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                    ") has an endpoint outside [0, " + std::to_string(n) + ")");
      }
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    for (auto& row : g.adjacency_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      g.edge_count_ += row.size();
    }
    g.edge_count_ /= 2;
    g.set_labels(std::move(labels));
    return g;
  }

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges, std::vector<Label> labels = {}) {
    return from_edges(n, std::span<const Edge>(edges), std::move(labels));
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& row = adjacency_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Closed neighborhood N[v] in ascending order.
  std::vector<Vertex> closed_neighborhood(Vertex v) const {
    std::vector<Vertex> out(adjacency_.at(v));
    out.insert(std::upper_bound(out.begin(), out.end(), v), v);
    return out;
  }

  // Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
      for (Vertex v : adjacency_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const Label& label(Vertex v) const { return labels_.at(v); }

  Graph with_labels(std::vector<Label> labels) const {
    Graph g = *this;
    g.set_labels(std::move(labels));
    return g;
  }

  // The common degree if the graph is regular (nullopt for irregular graphs;
  // the empty vertex set counts as 0-regular).
  std::optional<std::size_t> regular_degree() const {
    if (adjacency_.empty()) return 0;
    const std::size_t r = adjacency_.front().size();
    for (const auto& row : adjacency_) {
      if (row.size() != r) return std::nullopt;
    }
    return r;
  }

  // Induced subgraph on `keep` (new id i corresponds to keep[i]).
  Graph induced_subgraph(std::span<const Vertex> keep) const {
    std::vector<std::size_t> remap(vertex_count(), npos);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i] >= vertex_count()) throw std::invalid_argument("induced_subgraph: vertex out of range");
      if (remap[keep[i]] != npos) throw std::invalid_argument("induced_subgraph: repeated vertex");
      remap[keep[i]] = i;
    }
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (Vertex w : adjacency_[keep[i]]) {
        if (remap[w] != npos && i < remap[w]) sub.emplace_back(i, remap[w]);
      }
    }
    return from_edges(keep.size(), sub);
  }

  // Structural equality: same vertex count and the same edge set (labels ignored).
  bool same_edges(const Graph& other) const { return adjacency_ == other.adjacency_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void set_labels(std::vector<Label> labels) {
    if (!labels.empty() && labels.size() != adjacency_.size()) {
      throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                  " does not match vertex count " + std::to_string(adjacency_.size()));
    }
    labels_ = std::move(labels);
  }

  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Label> labels_;
  std::size_t edge_count_ = 0;
};

// ---------------------------------------------------------------------------
// VertexPairIndex
// ---------------------------------------------------------------------------

// Row-major bijection between pairs (left, right) and flat ids.
class VertexPairIndex {
 public:
  VertexPairIndex(std::size_t left_size, std::size_t right_size) : left_(left_size), right_(right_size) {
    const auto total = checked_mul(left_size, right_size);
    if (!total) throw BudgetExceeded("product vertex count overflows");
    size_ = *total;
  }

  std::size_t left_size() const noexcept { return left_; }
  std::size_t right_size() const noexcept { return right_; }
  std::size_t size() const noexcept { return size_; }

  Vertex flat(Vertex g, Vertex h) const {
    if (g >= left_ || h >= right_) throw std::out_of_range("VertexPairIndex::flat: pair out of range");
    return g * right_ + h;
  }

  std::pair<Vertex, Vertex> pair(Vertex id) const {
    if (id >= size_) throw std::out_of_range("VertexPairIndex::pair: id out of range");
    return {id / right_, id % right_};
  }

 private:
  std::size_t left_;
  std::size_t right_;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline Graph empty_graph(std::size_t n) { return Graph::from_edges(n, std::vector<Edge>{}); }

inline Graph complete_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("complete_graph: n must be positive");
  check_vertex_budget(n, "complete_graph");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: n must be at least 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  if (n == 0) throw std::invalid_argument("path_graph: n must be positive");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

// Complete bipartite K_{a,b}: part A is 0..a-1, part B is a..a+b-1.
inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  }
  return Graph::from_edges(a + b, edges);
}

// Star K_{1,leaves} with center 0.
inline Graph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

// Hamming graph H(d, k): d-tuples over {0..k-1}, adjacent iff they differ in
// exactly one coordinate. Vertex id is the base-k number with the first
// coordinate most significant; labels hold the tuples.
inline Graph hamming_graph(std::size_t d, std::size_t k) {
  if (d < 1) throw std::invalid_argument("hamming_graph: d must be at least 1");
  if (k < 2) throw std::invalid_argument("hamming_graph: k must be at least 2");
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) {
    const auto next = checked_mul(n, k);
    if (!next || *next > vertex_budget()) {
      throw BudgetExceeded("hamming_graph: k^d exceeds the vertex budget of " + std::to_string(vertex_budget()));
    }
    n = *next;
  }
  std::vector<Label> labels(n, Label(d));
  std::vector<Edge> edges;
  edges.reserve(n * d * (k - 1) / 2);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t rest = v;
    std::size_t place = 1;  // k^(d-1-i) for coordinate i, filled from the last one
    for (std::size_t i = d; i-- > 0;) {
      const std::size_t digit = rest % k;
      rest /= k;
      labels[v][i] = static_cast<std::int64_t>(digit);
      for (std::size_t other = digit + 1; other < k; ++other) edges.emplace_back(v, v + (other - digit) * place);
      place *= k;
    }
  }
  return Graph::from_edges(n, edges, std::move(labels));
}

// ---------------------------------------------------------------------------
// Binary operations
// ---------------------------------------------------------------------------

enum class ProductKind { cartesian, strong, direct, lexicographic, join, disjoint_union };

inline std::string_view to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::cartesian: return "cartesian";
    case ProductKind::strong: return "strong";
    case ProductKind::direct: return "direct";
    case ProductKind::lexicographic: return "lexicographic";
    case ProductKind::join: return "join";
    case ProductKind::disjoint_union: return "disjoint_union";
  }
  return "unknown";
}

inline std::optional<ProductKind> parse_product_kind(std::string_view name) {
  for (auto kind : {ProductKind::cartesian, ProductKind::strong, ProductKind::direct, ProductKind::lexicographic,
                    ProductKind::join, ProductKind::disjoint_union}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace detail {

inline Graph side_by_side(const Graph& g, const Graph& h, bool connect_all) {
  const std::size_t n = g.vertex_count() + h.vertex_count();
  check_vertex_budget(n, "join/disjoint union");
  const std::size_t offset = g.vertex_count();
  std::vector<Edge> edges = g.edges();
  for (auto [u, v] : h.edges()) edges.emplace_back(u + offset, v + offset);
  if (connect_all) {
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      for (Vertex v = 0; v < h.vertex_count(); ++v) edges.emplace_back(u, v + offset);
    }
  }
  std::vector<Label> labels;
  labels.reserve(n);
  for (Vertex u = 0; u < g.vertex_count(); ++u) labels.push_back({0, static_cast<std::int64_t>(u)});
  for (Vertex v = 0; v < h.vertex_count(); ++v) labels.push_back({1, static_cast<std::int64_t>(v)});
  return Graph::from_edges(n, edges, std::move(labels));
}

}  // namespace detail

// Product or sum of two graphs. The four products place (g, h) at
// g * |V(H)| + h; join and disjoint union put G first, then H offset by |V(G)|.
inline Graph build_product(ProductKind kind, const Graph& g, const Graph& h) {
  if (kind == ProductKind::join) return detail::side_by_side(g, h, true);
  if (kind == ProductKind::disjoint_union) return detail::side_by_side(g, h, false);

  const VertexPairIndex index(g.vertex_count(), h.vertex_count());
  check_vertex_budget(index.size(), std::string(to_string(kind)) + " product");

  std::vector<Edge> edges;
  const auto g_edges = g.edges();
  const auto h_edges = h.edges();

  if (kind == ProductKind::cartesian || kind == ProductKind::strong) {
    for (Vertex a = 0; a < g.vertex_count(); ++a) {
      for (auto [x, y] : h_edges) edges.emplace_back(index.flat(a, x), index.flat(a, y));
    }
    for (auto [a, b] : g_edges) {
      for (Vertex x = 0; x < h.vertex_count(); ++x) edges.emplace_back(index.flat(a, x), index.flat(b, x));
    }
  }
  if (kind == ProductKind::strong || kind == ProductKind::direct) {
    for (auto [a, b] : g_edges) {
      for (auto [x, y] : h_edges) {
        edges.emplace_back(index.flat(a, x), index.flat(b, y));
        edges.emplace_back(index.flat(a, y), index.flat(b, x));
      }
    }
  }
  if (kind == ProductKind::lexicographic) {
    for (Vertex a = 0; a < g.vertex_count(); ++a) {
      for (auto [x, y] : h_edges) edges.emplace_back(index.flat(a, x), index.flat(a, y));
    }
    for (auto [a, b] : g_edges) {
      for (Vertex x = 0; x < h.vertex_count(); ++x) {
        for (Vertex y = 0; y < h.vertex_count(); ++y) edges.emplace_back(index.flat(a, x), index.flat(b, y));
      }
    }
  }

  std::vector<Label> labels(index.size());
  for (Vertex id = 0; id < index.size(); ++id) {
    auto [a, x] = index.pair(id);
    labels[id] = {static_cast<std::int64_t>(a), static_cast<std::int64_t>(x)};
  }
  return Graph::from_edges(index.size(), edges, std::move(labels));
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto row = g.neighbors(u);
    auto it = row.begin();
    for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
      while (it != row.end() && *it < v) ++it;
      if (it == row.end() || *it != v) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(g.vertex_count(), edges, g.labels());
}

}  // namespace cnbc
