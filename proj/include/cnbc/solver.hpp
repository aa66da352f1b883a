#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cnbc/coloring.hpp"
#include "cnbc/diagnostics.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"

namespace cnbc {

enum class BalanceMode { cnbc, nbc };
enum class VertexOrder { degree_desc, input, custom };
enum class SolveStatus { satisfiable, unsatisfiable, timeout };

inline std::string_view to_string(BalanceMode m) { return m == BalanceMode::cnbc ? "cnbc" : "nbc"; }

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::satisfiable: return "satisfiable";
    case SolveStatus::unsatisfiable: return "unsatisfiable";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

struct Propagation {
  bool count_bounds = true;
  bool twin_merge = true;      // closed-neighborhood mode only
  bool clique_rainbow = true;  // applies to SolveOptions::rainbow_cliques
};

struct SolveOptions {
  BalanceMode mode = BalanceMode::cnbc;
  int k = 2;
  bool symmetry_breaking = true;
  Propagation propagation;
  std::chrono::milliseconds time_limit{60'000};
  VertexOrder vertex_order = VertexOrder::degree_desc;
  std::vector<Vertex> custom_order;  // permutation of V when vertex_order == custom

  // k-cliques Q containing a vertex w with N[w] = Q; every balanced coloring
  // makes such a Q rainbow. Registration is validated (closed mode only).
  std::vector<std::vector<Vertex>> rainbow_cliques;

  bool run_preflight = true;
  PreflightOptions preflight;
};

struct SolveStats {
  std::uint64_t nodes = 0;  // consistent assignments made
  std::size_t max_depth = 0;
  std::chrono::microseconds wall_time{0};
};

struct SolveResult {
  SolveStatus status = SolveStatus::unsatisfiable;
  std::optional<Coloring> coloring;
  SolveStats stats;
  std::optional<CheckResult> refuted_by;  // necessary condition that failed before search
};

namespace detail {

class BalanceSearch {
 public:
  BalanceSearch(const Graph& g, const SolveOptions& opts)
      : g_(g), opts_(opts), k_(static_cast<std::size_t>(opts.k)), closed_(opts.mode == BalanceMode::cnbc) {}

  SolveResult run() {
    const auto start = std::chrono::steady_clock::now();
    deadline_ = start + opts_.time_limit;
    SolveResult result;
    prepare(result);
    if (!result.refuted_by) {
      const bool found = search(0, 0);
      if (found) {
        result.status = SolveStatus::satisfiable;
        result.coloring = solution_;
      } else {
        result.status = timed_out_ ? SolveStatus::timeout : SolveStatus::unsatisfiable;
      }
    }
    stats_.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
    result.stats = stats_;
    return result;
  }

 private:
  void prepare(SolveResult& result) {
    const std::size_t n = g_.vertex_count();
    target_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      const std::size_t size = g_.degree(v) + (closed_ ? 1 : 0);
      if (size % k_ != 0) {
        result.refuted_by = closed_ ? check_degree_cnbc(g_, opts_.k) : check_degree_nbc(g_, opts_.k);
        return;
      }
      target_[v] = size / k_;
    }

    build_units();
    register_cliques();
    counts_.assign(n * k_, 0);
    color_.assign(n, 0);
  }

  void build_units() {
    const std::size_t n = g_.vertex_count();
    if (closed_ && opts_.propagation.twin_merge) {
      units_ = twin_partition(g_);
    } else {
      units_.clear();
      for (Vertex v = 0; v < n; ++v) units_.push_back({v});
    }

    std::vector<std::size_t> position(n);
    switch (opts_.vertex_order) {
      case VertexOrder::input:
        std::iota(position.begin(), position.end(), std::size_t{0});
        break;
      case VertexOrder::custom: {
        if (opts_.custom_order.size() != n) throw std::invalid_argument("custom vertex order must list every vertex");
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
          const Vertex v = opts_.custom_order[i];
          if (v >= n || seen[v]) throw std::invalid_argument("custom vertex order is not a permutation");
          seen[v] = true;
          position[v] = i;
        }
        break;
      }
      case VertexOrder::degree_desc: {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Vertex a, Vertex b) { return g_.degree(a) > g_.degree(b); });
        for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
        break;
      }
    }
    auto key = [&](const std::vector<Vertex>& unit) {
      std::size_t best = position[unit.front()];
      for (Vertex v : unit) best = std::min(best, position[v]);
      return best;
    };
    std::stable_sort(units_.begin(), units_.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
  }

  void register_cliques() {
    cliques_of_.assign(g_.vertex_count(), {});
    if (opts_.rainbow_cliques.empty() || !opts_.propagation.clique_rainbow) return;
    if (!closed_) throw std::invalid_argument("rainbow cliques are only sound for closed-neighborhood balance");
    for (const auto& raw : opts_.rainbow_cliques) {
      std::vector<Vertex> clique = raw;
      std::sort(clique.begin(), clique.end());
      if (clique.size() != k_ || std::adjacent_find(clique.begin(), clique.end()) != clique.end()) {
        throw std::invalid_argument("rainbow clique must have exactly k distinct vertices");
      }
      bool forced = false;
      for (Vertex u : clique) {
        if (u >= g_.vertex_count()) throw std::invalid_argument("rainbow clique vertex out of range");
        for (Vertex w : clique) {
          if (u != w && !g_.adjacent(u, w)) throw std::invalid_argument("rainbow clique is not a clique");
        }
        forced = forced || g_.closed_neighborhood(u) == clique;
      }
      if (!forced) throw std::invalid_argument("rainbow clique is not the closed neighborhood of any member");
      const std::size_t id = cliques_.size();
      for (Vertex u : clique) cliques_of_[u].push_back(id);
      cliques_.push_back(std::move(clique));
    }
  }

  // Neighborhoods that contain u: N[u] in closed mode, N(u) in open mode.
  template <typename F>
  bool for_each_watcher(Vertex u, F&& f) const {
    if (closed_ && !f(u)) return false;
    for (Vertex w : g_.neighbors(u)) {
      if (!f(w)) return false;
    }
    return true;
  }

  bool clique_allows(Vertex u, Color c) const {
    for (std::size_t id : cliques_of_[u]) {
      for (Vertex w : cliques_[id]) {
        if (w != u && color_[w] == c) return false;
      }
    }
    return true;
  }

  void unassign_vertex(Vertex u, Color c) {
    for_each_watcher(u, [&](Vertex w) {
      --counts_[w * k_ + static_cast<std::size_t>(c - 1)];
      return true;
    });
    color_[u] = 0;
  }

  // Colors u with c and updates neighborhood counts. With count bounds on, a
  // count above |N[w]| / k rejects the move. No separate deficit test is
  // needed: assigned + unassigned = k * target for every w, so when no color
  // exceeds its target the deficits add up to exactly the unassigned slots.
  bool assign_vertex(Vertex u, Color c) {
    if (!clique_allows(u, c)) return false;
    const auto ci = static_cast<std::size_t>(c - 1);
    bool ok = true;
    Vertex stopped_at = 0;
    for_each_watcher(u, [&](Vertex w) {
      const std::size_t count = ++counts_[w * k_ + ci];
      if (opts_.propagation.count_bounds && count > target_[w]) {
        ok = false;
        stopped_at = w;
        return false;
      }
      return true;
    });
    if (ok) {
      color_[u] = c;
      return true;
    }
    // Roll back the increments made before the violation.
    for_each_watcher(u, [&](Vertex w) {
      --counts_[w * k_ + ci];
      return w != stopped_at;
    });
    return false;
  }

  bool assign_unit(const std::vector<Vertex>& unit, Color c) {
    for (std::size_t i = 0; i < unit.size(); ++i) {
      if (!assign_vertex(unit[i], c)) {
        while (i-- > 0) unassign_vertex(unit[i], c);
        return false;
      }
    }
    return true;
  }

  void unassign_unit(const std::vector<Vertex>& unit, Color c) {
    for (Vertex u : unit) unassign_vertex(u, c);
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if ((stats_.nodes & 0xFF) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool search(std::size_t depth, int max_used) {
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (depth == units_.size()) {
      Coloring candidate(opts_.k, color_);
      const auto check = closed_ ? verify_cnbc(g_, candidate) : verify_nbc(g_, candidate);
      if (!check) {
        if (opts_.propagation.count_bounds) throw std::logic_error("solver reached an unbalanced complete assignment");
        return false;
      }
      solution_ = std::move(candidate);
      return true;
    }
    const auto& unit = units_[depth];
    const int limit = opts_.symmetry_breaking ? std::min(opts_.k, max_used + 1) : opts_.k;
    for (Color c = 1; c <= limit; ++c) {
      if (out_of_time()) return false;
      if (!assign_unit(unit, c)) continue;
      ++stats_.nodes;
      if (search(depth + 1, std::max(max_used, c))) return true;
      unassign_unit(unit, c);
      if (timed_out_) return false;
    }
    return false;
  }

  const Graph& g_;
  const SolveOptions& opts_;
  std::size_t k_;
  bool closed_;
  std::chrono::steady_clock::time_point deadline_;
  bool timed_out_ = false;

  std::vector<std::size_t> target_;
  std::vector<std::vector<Vertex>> units_;
  std::vector<std::vector<Vertex>> cliques_;
  std::vector<std::vector<std::size_t>> cliques_of_;
  std::vector<std::size_t> counts_;  // counts_[w * k + (c - 1)]
  std::vector<Color> color_;         // 0 = unassigned
  std::optional<Coloring> solution_;
  SolveStats stats_;
};

}  // namespace detail

// Exact backtracking search for a balanced k-coloring (closed or open
// neighborhoods). Satisfiable results are re-verified before returning.
inline SolveResult solve(const Graph& g, const SolveOptions& opts) {
  detail::require_k(opts.k);
  if (opts.time_limit <= std::chrono::milliseconds::zero()) throw std::invalid_argument("time limit must be positive");

  if (opts.mode == BalanceMode::cnbc && opts.run_preflight) {
    const auto report = preflight(g, opts.k, opts.preflight);
    if (const auto* failed = report.first_failure()) {
      SolveResult result;
      result.status = SolveStatus::unsatisfiable;
      result.refuted_by = *failed;
      return result;
    }
  }
  auto result = detail::BalanceSearch(g, opts).run();
  if (result.coloring) {
    const auto check = opts.mode == BalanceMode::cnbc ? verify_cnbc(g, *result.coloring)
                                                       : verify_nbc(g, *result.coloring);
    if (!check) throw std::logic_error("solver returned an unbalanced coloring");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

namespace detail {
inline std::atomic<std::uint64_t>& enumeration_budget_slot() {
  static std::atomic<std::uint64_t> budget{kDefaultEnumerationBudget};
  return budget;
}
}  // namespace detail

inline std::uint64_t enumeration_budget() { return detail::enumeration_budget_slot().load(); }
inline void set_enumeration_budget(std::uint64_t budget) { detail::enumeration_budget_slot().store(budget); }

// Every balanced k-coloring of g (no symmetry reduction), in lexicographic
// order of the color vector. Requires k^|V| <= budget.
inline std::vector<Coloring> brute_force(const Graph& g, int k, BalanceMode mode,
                                         std::uint64_t budget = enumeration_budget()) {
  detail::require_k(k);
  const std::size_t n = g.vertex_count();
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (space > budget / static_cast<std::uint64_t>(k)) {
      throw BudgetExceeded("brute_force: " + std::to_string(k) + "^" + std::to_string(n) +
                           " exceeds the enumeration budget of " + std::to_string(budget));
    }
    space *= static_cast<std::uint64_t>(k);
  }

  const bool closed = mode == BalanceMode::cnbc;
  // Vertex v is checked as soon as the last member of its neighborhood is set.
  std::vector<std::vector<Vertex>> ready(n);
  for (Vertex v = 0; v < n; ++v) {
    auto row = g.neighbors(v);
    std::optional<Vertex> last = closed ? std::optional<Vertex>(v) : std::nullopt;
    if (!row.empty()) last = std::max(last.value_or(0), row.back());
    if (last) ready[*last].push_back(v);
  }

  std::vector<Color> colors(n, 0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(k));
  auto balanced_at = [&](Vertex v) {
    std::fill(counts.begin(), counts.end(), 0);
    if (closed) ++counts[static_cast<std::size_t>(colors[v] - 1)];
    for (Vertex w : g.neighbors(v)) ++counts[static_cast<std::size_t>(colors[w] - 1)];
    return std::all_of(counts.begin(), counts.end(), [&](std::size_t x) { return x == counts.front(); });
  };

  std::vector<Coloring> out;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.emplace_back(k, colors);
      return;
    }
    for (Color c = 1; c <= k; ++c) {
      colors[i] = c;
      if (std::all_of(ready[i].begin(), ready[i].end(), balanced_at)) self(self, i + 1);
    }
    colors[i] = 0;
  };
  rec(rec, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Cross-validation
// ---------------------------------------------------------------------------

struct Disagreement {
  std::size_t index = 0;  // position in the corpus
  Graph original;
  Graph minimized;  // smallest graph found by greedy deletion that still disagrees
  SolveStatus solver_status = SolveStatus::unsatisfiable;
  std::size_t brute_force_solutions = 0;
};

struct CrossValidationReport {
  std::size_t instances = 0;
  std::size_t agreements = 0;
  std::size_t satisfiable = 0;
  std::size_t timeouts = 0;
  std::vector<Disagreement> disagreements;

  bool ok() const noexcept { return disagreements.empty(); }
};

namespace detail {

inline bool engines_disagree(const Graph& g, const SolveOptions& opts, SolveStatus* status, std::size_t* count) {
  const auto result = solve(g, opts);
  const auto all = brute_force(g, opts.k, opts.mode);
  if (status) *status = result.status;
  if (count) *count = all.size();
  if (result.status == SolveStatus::timeout) return false;
  return (result.status == SolveStatus::satisfiable) != !all.empty();
}

inline Graph minimize_disagreement(Graph g, const SolveOptions& opts) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size() && !shrunk; ++i) {
      auto fewer = edges;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      Graph candidate = Graph::from_edges(g.vertex_count(), fewer);
      if (engines_disagree(candidate, opts, nullptr, nullptr)) {
        g = std::move(candidate);
        shrunk = true;
      }
    }
    for (Vertex v = 0; v < g.vertex_count() && !shrunk && g.vertex_count() > 1; ++v) {
      std::vector<Vertex> keep;
      for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (u != v) keep.push_back(u);
      }
      Graph candidate = g.induced_subgraph(keep);
      if (engines_disagree(candidate, opts, nullptr, nullptr)) {
        g = std::move(candidate);
        shrunk = true;
      }
    }
  }
  return g;
}

}  // namespace detail

// Runs solve() and brute_force() on every instance and compares
// satisfiability. Brute-force solutions are re-verified as well.
inline CrossValidationReport cross_validate(const std::vector<Graph>& corpus, const SolveOptions& opts) {
  CrossValidationReport report;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Graph& g = corpus[i];
    const auto result = solve(g, opts);
    const auto all = brute_force(g, opts.k, opts.mode);
    for (const auto& c : all) {
      const auto check = opts.mode == BalanceMode::cnbc ? verify_cnbc(g, c) : verify_nbc(g, c);
      if (!check) throw std::logic_error("brute_force returned an unbalanced coloring");
    }
    ++report.instances;
    if (result.status == SolveStatus::timeout) {
      ++report.timeouts;
      continue;
    }
    const bool solver_sat = result.status == SolveStatus::satisfiable;
    if (solver_sat == !all.empty()) {
      ++report.agreements;
      if (solver_sat) ++report.satisfiable;
    } else {
      report.disagreements.push_back({i, g, detail::minimize_disagreement(g, opts), result.status, all.size()});
    }
  }
  return report;
}

}  // namespace cnbc
