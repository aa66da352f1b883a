#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnbc/graph.hpp"

namespace cnbc {

using Color = int;

// Total assignment vertex -> color in {1..k}. Classes may be empty.
class Coloring {
 public:
  Coloring() = default;

  Coloring(int k, std::vector<Color> colors) : k_(k), colors_(std::move(colors)) {
    if (k_ < 2) throw std::invalid_argument("coloring: k must be at least 2, got " + std::to_string(k_));
    for (std::size_t v = 0; v < colors_.size(); ++v) {
      if (colors_[v] < 1 || colors_[v] > k_) {
        throw std::invalid_argument("coloring: vertex " + std::to_string(v) + " has color " +
                                    std::to_string(colors_[v]) + " outside [1, " + std::to_string(k_) + "]");
      }
    }
  }

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return colors_.size(); }
  Color operator[](Vertex v) const { return colors_.at(v); }
  std::span<const Color> colors() const noexcept { return colors_; }

  // sizes[i - 1] = |V_i|.
  std::vector<std::size_t> class_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
    for (Color c : colors_) ++sizes[static_cast<std::size_t>(c - 1)];
    return sizes;
  }

  bool is_equitable() const {
    const auto sizes = class_sizes();
    return std::all_of(sizes.begin(), sizes.end(), [&](std::size_t s) { return s == sizes.front(); });
  }

  std::vector<Vertex> class_members(Color c) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < colors_.size(); ++v) {
      if (colors_[v] == c) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  int k_ = 2;
  std::vector<Color> colors_;
};

// Lowest-id vertex whose neighborhood is unbalanced, with counts[i - 1] the
// number of color-i vertices in that neighborhood.
struct Violation {
  Vertex vertex = 0;
  std::vector<std::size_t> counts;
};

struct BalanceCheck {
  bool balanced = true;
  std::optional<Violation> violation;

  explicit operator bool() const noexcept { return balanced; }
};

namespace detail {

inline void require_matching_size(const Graph& g, const Coloring& c) {
  if (c.size() != g.vertex_count()) {
    throw std::invalid_argument("coloring covers " + std::to_string(c.size()) + " vertices but the graph has " +
                                std::to_string(g.vertex_count()));
  }
}

inline BalanceCheck verify_balance(const Graph& g, const Coloring& c, bool closed) {
  require_matching_size(g, c);
  const auto k = static_cast<std::size_t>(c.k());
  std::vector<std::size_t> counts(k);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::fill(counts.begin(), counts.end(), 0);
    if (closed) ++counts[static_cast<std::size_t>(c[v] - 1)];
    for (Vertex w : g.neighbors(v)) ++counts[static_cast<std::size_t>(c[w] - 1)];
    if (std::any_of(counts.begin(), counts.end(), [&](std::size_t x) { return x != counts.front(); })) {
      return {false, Violation{v, counts}};
    }
  }
  return {};
}

}  // namespace detail

// Every closed neighborhood N[v] holds equally many vertices of each color.
inline BalanceCheck verify_cnbc(const Graph& g, const Coloring& c) { return detail::verify_balance(g, c, true); }

// Open-neighborhood analogue over N(v).
inline BalanceCheck verify_nbc(const Graph& g, const Coloring& c) { return detail::verify_balance(g, c, false); }

// Color i becomes ((i - 1 + t) mod k) + 1. Negative t shifts backwards.
inline Coloring cyclic_shift(const Coloring& c, long long t) {
  const long long k = c.k();
  const long long shift = ((t % k) + k) % k;
  std::vector<Color> out(c.size());
  for (Vertex v = 0; v < c.size(); ++v) out[v] = static_cast<Color>((c[v] - 1 + shift) % k + 1);
  return Coloring(c.k(), std::move(out));
}

// Rename colors through perm, where perm[i - 1] is the new name of color i.
inline Coloring permute_colors(const Coloring& c, std::span<const Color> perm) {
  if (perm.size() != static_cast<std::size_t>(c.k())) throw std::invalid_argument("permute_colors: wrong length");
  std::vector<bool> seen(perm.size() + 1, false);
  for (Color p : perm) {
    if (p < 1 || p > c.k() || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("permute_colors: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Color> out(c.size());
  for (Vertex v = 0; v < c.size(); ++v) out[v] = perm[static_cast<std::size_t>(c[v] - 1)];
  return Coloring(c.k(), std::move(out));
}

// Class sizes and edge counts between (and within) color classes.
class ClassStats {
 public:
  ClassStats(int k, std::vector<std::size_t> sizes, std::vector<std::size_t> edges_by_pair)
      : k_(k), sizes_(std::move(sizes)), edges_(std::move(edges_by_pair)) {}

  int k() const noexcept { return k_; }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  std::size_t size(Color i) const { return sizes_.at(static_cast<std::size_t>(i - 1)); }

  // |E(V_i, V_j)|; for i == j, the number of edges inside V_i (each counted once).
  std::size_t edges_between(Color i, Color j) const {
    if (i > j) std::swap(i, j);
    return edges_.at(static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j - 1));
  }

  std::size_t intra_edges(Color i) const { return edges_between(i, i); }

  std::size_t total_vertices() const {
    std::size_t total = 0;
    for (auto s : sizes_) total += s;
    return total;
  }

  std::size_t total_edges() const {
    std::size_t total = 0;
    for (Color i = 1; i <= k_; ++i) {
      for (Color j = i; j <= k_; ++j) total += edges_between(i, j);
    }
    return total;
  }

 private:
  int k_;
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> edges_;  // upper triangle of a k x k matrix, row-major
};

inline ClassStats class_stats(const Graph& g, const Coloring& c) {
  detail::require_matching_size(g, c);
  const auto k = static_cast<std::size_t>(c.k());
  std::vector<std::size_t> edges(k * k, 0);
  for (auto [u, v] : g.edges()) {
    auto a = static_cast<std::size_t>(c[u] - 1);
    auto b = static_cast<std::size_t>(c[v] - 1);
    if (a > b) std::swap(a, b);
    ++edges[a * k + b];
  }
  return ClassStats(c.k(), c.class_sizes(), std::move(edges));
}

}  // namespace cnbc
