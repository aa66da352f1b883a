#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cnbc/errors.hpp"
#include "cnbc/graph.hpp"

// Edge-list format: one "u v" pair per line with 0-based ids; '#' starts a
// comment. The comment "# vertices N" declares the vertex count so trailing
// isolated vertices survive a round trip.
//
// DIMACS format: "c" comment lines, one "p edge N M" header, then M lines
// "e u v" with 1-based ids.

namespace cnbc {

enum class GraphFormat { edge_list, dimacs };

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_index(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" +
                               std::string(token) + "'");
  }
  return value;
}

// Collects edges, rejecting loops and repeats with the offending line.
class EdgeCollector {
 public:
  void add(std::size_t u, std::size_t v, std::size_t line) {
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    const Edge key{std::min(u, v), std::max(u, v)};
    if (!seen_.insert(key).second) {
      throw ParseError(line, "duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second));
    }
    edges_.push_back(key);
    max_id_ = std::max(max_id_, key.second + 1);
  }

  std::size_t min_vertex_count() const noexcept { return max_id_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  std::set<Edge> seen_;
  std::vector<Edge> edges_;
  std::size_t max_id_ = 0;
};

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  detail::EdgeCollector edges;
  std::optional<std::size_t> declared;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      const auto words = detail::split_ws(text.substr(hash + 1));
      if (words.size() == 2 && words[0] == "vertices") {
        if (declared) throw ParseError(line, "vertex count declared twice");
        declared = detail::parse_index(words[1], line, "vertex count");
      }
      text = text.substr(0, hash);
    }
    const auto tokens = detail::split_ws(text);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(line, "expected two vertex ids, got " + std::to_string(tokens.size()) + " tokens");
    edges.add(detail::parse_index(tokens[0], line, "vertex id"), detail::parse_index(tokens[1], line, "vertex id"),
              line);
  }
  std::size_t n = edges.min_vertex_count();
  if (declared) {
    if (*declared < n) {
      throw ParseError(0, "declared " + std::to_string(*declared) + " vertices but edges reference vertex " +
                              std::to_string(n - 1));
    }
    n = *declared;
  }
  return Graph::from_edges(n, edges.edges());
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph read_dimacs(std::istream& in) {
  detail::EdgeCollector edges;
  std::optional<std::size_t> n;
  std::size_t m = 0;
  std::size_t seen = 0;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto tokens = detail::split_ws(raw);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (n) throw ParseError(line, "second problem line");
      if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col")) {
        throw ParseError(line, "expected 'p edge <vertices> <edges>'");
      }
      n = detail::parse_index(tokens[2], line, "vertex count");
      m = detail::parse_index(tokens[3], line, "edge count");
      continue;
    }
    if (tokens[0] == "e") {
      if (!n) throw ParseError(line, "edge line before the problem line");
      if (tokens.size() != 3) throw ParseError(line, "expected 'e <u> <v>'");
      const auto u = detail::parse_index(tokens[1], line, "vertex id");
      const auto v = detail::parse_index(tokens[2], line, "vertex id");
      if (u < 1 || v < 1 || u > *n || v > *n) {
        throw ParseError(line, "vertex id outside 1.." + std::to_string(*n));
      }
      edges.add(u - 1, v - 1, line);
      ++seen;
      continue;
    }
    throw ParseError(line, "unrecognized line type '" + std::string(tokens[0]) + "'");
  }
  if (!n) throw ParseError(0, "missing 'p edge' problem line");
  if (seen != m) {
    throw ParseError(0, "problem line declares " + std::to_string(m) + " edges but " + std::to_string(seen) +
                            " were listed");
  }
  return Graph::from_edges(*n, edges.edges());
}

inline void write_dimacs(const Graph& g, std::ostream& out) {
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

// DIMACS when the first significant line starts with 'p' or 'c'.
inline GraphFormat detect_format(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    const auto t = detail::trim(raw);
    if (t.empty() || t.front() == '#') continue;
    if ((t.front() == 'p' || t.front() == 'c') && (t.size() == 1 || t[1] == ' ' || t[1] == '\t')) {
      return GraphFormat::dimacs;
    }
    return GraphFormat::edge_list;
  }
  return GraphFormat::edge_list;
}

inline Graph parse_graph(std::string_view text, std::optional<GraphFormat> format = std::nullopt) {
  std::istringstream in{std::string(text)};
  return format.value_or(detect_format(text)) == GraphFormat::dimacs ? read_dimacs(in) : read_edge_list(in);
}

inline std::string format_graph(const Graph& g, GraphFormat format = GraphFormat::edge_list) {
  std::ostringstream out;
  if (format == GraphFormat::dimacs) {
    write_dimacs(g, out);
  } else {
    write_edge_list(g, out);
  }
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

inline Graph load_graph(const std::string& path, std::optional<GraphFormat> format = std::nullopt) {
  try {
    return parse_graph(read_text_file(path), format);
  } catch (const ParseError& e) {
    throw e.in_file(path);
  }
}

}  // namespace cnbc
