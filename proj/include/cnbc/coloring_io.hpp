#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cnbc/coloring.hpp"
#include "cnbc/errors.hpp"
#include "cnbc/graph_io.hpp"

// Coloring files.
//   JSON: {"k": <int>, "colors": [c_0, c_1, ...]} indexed by vertex id.
//   CSV:  optional "# k=<int>" line, a "vertex,color" header, then one
//         "<vertex>,<color>" row per vertex. Without the k line, k is the
//         largest color present.

namespace cnbc {

inline std::string coloring_to_json(const Coloring& c) {
  nlohmann::ordered_json j;
  j["k"] = c.k();
  j["colors"] = std::vector<Color>(c.colors().begin(), c.colors().end());
  return j.dump() + "\n";
}

inline Coloring coloring_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid coloring JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("colors")) {
    throw ParseError(0, "coloring JSON must be an object with \"k\" and \"colors\"");
  }
  if (!j["k"].is_number_integer() || !j["colors"].is_array()) {
    throw ParseError(0, "coloring JSON: \"k\" must be an integer and \"colors\" an array");
  }
  std::vector<Color> colors;
  colors.reserve(j["colors"].size());
  for (const auto& entry : j["colors"]) {
    if (!entry.is_number_integer()) throw ParseError(0, "coloring JSON: colors must be integers");
    colors.push_back(entry.get<Color>());
  }
  try {
    return Coloring(j["k"].get<int>(), std::move(colors));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

inline std::string coloring_to_csv(const Coloring& c) {
  std::ostringstream out;
  out << "# k=" << c.k() << "\nvertex,color\n";
  for (Vertex v = 0; v < c.size(); ++v) out << v << ',' << c[v] << '\n';
  return out.str();
}

inline Coloring coloring_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<int> k;
  std::vector<std::optional<Color>> colors;
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto t = detail::trim(raw);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto body = detail::trim(t.substr(1));
      if (body.substr(0, 2) == "k=") k = static_cast<int>(detail::parse_index(body.substr(2), line, "k"));
      continue;
    }
    if (!header && t == "vertex,color") {
      header = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) throw ParseError(line, "expected '<vertex>,<color>'");
    const auto v = detail::parse_index(detail::trim(t.substr(0, comma)), line, "vertex id");
    const auto c = detail::parse_index(detail::trim(t.substr(comma + 1)), line, "color");
    if (v >= colors.size()) colors.resize(v + 1);
    if (colors[v]) throw ParseError(line, "vertex " + std::to_string(v) + " colored twice");
    colors[v] = static_cast<Color>(c);
  }
  std::vector<Color> dense;
  dense.reserve(colors.size());
  Color max_color = 0;
  for (std::size_t v = 0; v < colors.size(); ++v) {
    if (!colors[v]) throw ParseError(0, "vertex " + std::to_string(v) + " has no color");
    dense.push_back(*colors[v]);
    max_color = std::max(max_color, *colors[v]);
  }
  try {
    return Coloring(k.value_or(std::max(max_color, 2)), std::move(dense));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

// Format chosen by content: JSON when the first non-space character is '{'.
inline Coloring parse_coloring(std::string_view text) {
  const auto t = detail::trim(text);
  const auto first = t.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && t[first] == '{') return coloring_from_json(text);
  return coloring_from_csv(text);
}

inline Coloring load_coloring(const std::string& path) {
  try {
    return parse_coloring(read_text_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path);
  }
}

}  // namespace cnbc
