#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cnbc/coloring.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"

namespace cnbc {

// Outcome of one necessary-condition or identity check.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::optional<Vertex> witness;  // offending vertex, when the check is per-vertex
  std::string detail;
};

enum class Verdict { definitely_not_cnbc, unknown };

inline const char* to_string(Verdict v) {
  return v == Verdict::definitely_not_cnbc ? "definitely-not-CNBC" : "unknown";
}

struct DiagnosticsReport {
  int k = 2;
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::unknown;

  const CheckResult* first_failure() const {
    for (const auto& c : checks) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline void require_k(long long k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2, got " + std::to_string(k));
}

inline std::size_t require_regular(const Graph& g, const char* op) {
  const auto r = g.regular_degree();
  if (!r) throw ContractViolation(std::string(op) + " requires a regular graph");
  return *r;
}

}  // namespace detail

// Every degree must be congruent to k - 1 modulo k.
inline CheckResult check_degree_cnbc(const Graph& g, int k) {
  detail::require_k(k);
  const auto kk = static_cast<std::size_t>(k);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if ((g.degree(v) + 1) % kk != 0) {
      return {"degree_cnbc", false, v,
              "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) + ", not congruent to " +
                  std::to_string(k - 1) + " mod " + std::to_string(k)};
    }
  }
  return {"degree_cnbc", true, std::nullopt, "every degree is congruent to -1 mod " + std::to_string(k)};
}

// The open-neighborhood analogue: k divides every degree.
inline CheckResult check_degree_nbc(const Graph& g, int k) {
  detail::require_k(k);
  const auto kk = static_cast<std::size_t>(k);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % kk != 0) {
      return {"degree_nbc", false, v,
              "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) + ", not a multiple of " +
                  std::to_string(k)};
    }
  }
  return {"degree_nbc", true, std::nullopt, "every degree is a multiple of " + std::to_string(k)};
}

// Classes of vertices with identical open neighborhoods, each sorted, ordered
// by smallest member. A balanced closed-neighborhood coloring is constant on
// every class.
inline std::vector<std::vector<Vertex>> twin_partition(const Graph& g) {
  std::map<std::vector<Vertex>, std::size_t> index;
  std::vector<std::vector<Vertex>> classes;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto row = g.neighbors(v);
    std::vector<Vertex> key(row.begin(), row.end());
    auto [it, inserted] = index.try_emplace(std::move(key), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(v);
  }
  return classes;
}

// |V| >= k. The vertex-free graph passes vacuously.
inline CheckResult check_order(const Graph& g, int k) {
  detail::require_k(k);
  const std::size_t n = g.vertex_count();
  const bool ok = n == 0 || n >= static_cast<std::size_t>(k);
  return {"order", ok, std::nullopt,
          "order " + std::to_string(n) + (ok ? " >= " : " < ") + std::to_string(k)};
}

// k^2 must divide 2|E| + |V| (the cross-class edge count is an integer).
inline CheckResult check_global_divisibility(const Graph& g, int k) {
  detail::require_k(k);
  const std::size_t total = 2 * g.edge_count() + g.vertex_count();
  const auto k2 = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
  const bool ok = total % k2 == 0;
  return {"global_divisibility", ok, std::nullopt,
          "2|E| + |V| = " + std::to_string(total) + (ok ? " is" : " is not") + " divisible by " + std::to_string(k2)};
}

// For an r-regular graph the class sizes |V|/k and the intra-class edge count
// (r + 1 - k)|V| / (2k^2) must be non-negative integers. Throws
// ContractViolation on irregular input.
inline CheckResult check_regular_divisibility(const Graph& g, int k) {
  detail::require_k(k);
  const auto r = static_cast<long long>(detail::require_regular(g, "check_regular_divisibility"));
  const auto n = static_cast<long long>(g.vertex_count());
  const long long kk = k;
  const long long intra = (r + 1 - kk) * n;
  const bool passed = n % kk == 0 && intra >= 0 && intra % (2 * kk * kk) == 0;
  return {"regular_divisibility", passed, std::nullopt,
          "r = " + std::to_string(r) + ", |V| = " + std::to_string(n) + ", (r+1-k)|V| = " + std::to_string(intra) +
              ", 2k^2 = " + std::to_string(2 * kk * kk)};
}

// Exact counting identities for a balanced coloring:
//   k^2 |E(V_i,V_j)| = 2|E| + |V|            for i != j
//   2 k^2 |E(V_i)|   = 2|E| + |V| - k^2 |V_i| for every i
// plus equal class sizes implying equal intra-class edge counts. Both sides
// are cross-multiplied so no fraction is ever formed.
inline std::vector<CheckResult> check_counting(const Graph& g, const Coloring& c) {
  if (!verify_cnbc(g, c)) throw ContractViolation("check_counting requires a closed-neighborhood balanced coloring");
  const auto stats = class_stats(g, c);
  const long long k = c.k();
  const long long k2 = k * k;
  const long long total = 2 * static_cast<long long>(g.edge_count()) + static_cast<long long>(g.vertex_count());

  CheckResult cross{"cross_edges", true, std::nullopt, "(2|E|+|V|)/k^2 = " + std::to_string(total) + "/" +
                                                           std::to_string(k2)};
  CheckResult intra{"intra_edges", true, std::nullopt, ""};
  CheckResult equal{"equal_size_equal_intra", true, std::nullopt, ""};
  for (Color i = 1; i <= c.k(); ++i) {
    for (Color j = i + 1; j <= c.k(); ++j) {
      const auto e = static_cast<long long>(stats.edges_between(i, j));
      if (k2 * e != total && cross.passed) {
        cross.passed = false;
        cross.detail = "|E(V_" + std::to_string(i) + ",V_" + std::to_string(j) + ")| = " + std::to_string(e);
      }
    }
    const auto e = static_cast<long long>(stats.intra_edges(i));
    const auto s = static_cast<long long>(stats.size(i));
    if (2 * k2 * e != total - k2 * s && intra.passed) {
      intra.passed = false;
      intra.detail = "|E(V_" + std::to_string(i) + ")| = " + std::to_string(e) + " with |V_" + std::to_string(i) +
                     "| = " + std::to_string(s);
    }
    for (Color j = i + 1; j <= c.k(); ++j) {
      if (stats.size(i) == stats.size(j) && stats.intra_edges(i) != stats.intra_edges(j) && equal.passed) {
        equal.passed = false;
        equal.detail = "classes " + std::to_string(i) + " and " + std::to_string(j) + " have equal size";
      }
    }
  }
  return {cross, intra, equal};
}

// Regular-graph identities for an r-regular graph with a balanced coloring:
//   k |V_i| = |V|,  k^2 |E(V_i,V_j)| = (r+1)|V|,  2k^2 |E(V_i)| = (r+1-k)|V|.
inline std::vector<CheckResult> check_regular_counting(const Graph& g, const Coloring& c) {
  const auto r = static_cast<long long>(detail::require_regular(g, "check_regular_counting"));
  if (!verify_cnbc(g, c)) {
    throw ContractViolation("check_regular_counting requires a closed-neighborhood balanced coloring");
  }
  const auto stats = class_stats(g, c);
  const long long k = c.k();
  const long long n = static_cast<long long>(g.vertex_count());

  CheckResult sizes{"regular_class_sizes", true, std::nullopt, "|V_i| = |V|/k"};
  CheckResult cross{"regular_cross_edges", true, std::nullopt, "|E(V_i,V_j)| = (r+1)|V|/k^2"};
  CheckResult intra{"regular_intra_edges", true, std::nullopt, "|E(V_i)| = (r+1-k)|V|/(2k^2)"};
  for (Color i = 1; i <= c.k(); ++i) {
    if (k * static_cast<long long>(stats.size(i)) != n) sizes.passed = false;
    if (2 * k * k * static_cast<long long>(stats.intra_edges(i)) != (r + 1 - k) * n) intra.passed = false;
    for (Color j = i + 1; j <= c.k(); ++j) {
      if (k * k * static_cast<long long>(stats.edges_between(i, j)) != (r + 1) * n) cross.passed = false;
    }
  }
  return {sizes, cross, intra};
}

// Individual checks can be switched off for ablation studies.
struct PreflightOptions {
  bool degree = true;
  bool order = true;
  bool global_divisibility = true;
  bool regular_divisibility = true;  // only applied to regular graphs
};

// Runs the enabled k-parameterized necessary conditions. The verdict is
// definitely-not-CNBC iff one of them fails.
inline DiagnosticsReport preflight(const Graph& g, int k, const PreflightOptions& opts = {}) {
  detail::require_k(k);
  DiagnosticsReport report;
  report.k = k;
  if (opts.degree) report.checks.push_back(check_degree_cnbc(g, k));
  if (opts.order) report.checks.push_back(check_order(g, k));
  if (opts.global_divisibility) report.checks.push_back(check_global_divisibility(g, k));
  if (opts.regular_divisibility && g.regular_degree()) report.checks.push_back(check_regular_divisibility(g, k));
  report.verdict = report.first_failure() ? Verdict::definitely_not_cnbc : Verdict::unknown;
  return report;
}

}  // namespace cnbc
