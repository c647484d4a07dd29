#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "isored/digraph.hpp"
#include "isored/error.hpp"
#include "isored/expression.hpp"

namespace isored {

/// Version written into and accepted from graph documents.
inline constexpr int kDocumentVersion = 1;

/// Document syntax or schema error with a 1-based line/column position.
class DocumentError : public Error {
 public:
  DocumentError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  explicit DocumentError(const std::string& what) : Error(ErrorKind::ParseError, what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline RationalFunction weight_field(const nlohmann::json& value, std::size_t edge_index) {
  const std::string where = "edges[" + std::to_string(edge_index) + "].weight";
  if (value.is_number_integer()) return RationalFunction(static_cast<long>(value.get<long long>()));
  if (value.is_number()) throw DocumentError(where + ": floating-point weights are not allowed; use p/q");
  if (!value.is_string()) throw DocumentError(where + ": expected a weight expression string");
  try {
    return parse_weight(value.get<std::string>());
  } catch (const ExpressionError& e) {
    throw DocumentError(where + ": " + e.what());
  }
}

}  // namespace detail

/// Reads a graph document:
///   {"version": 1, "vertices": ["v1", ...],
///    "edges": [{"from": "v1", "to": "v2", "weight": "1/l"}, ...]}
/// Duplicate edges are summed.
inline WeightedDigraph parse_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto pos = what.find("parse error"); pos != std::string::npos) {
      auto colon = what.find(": ", pos);
      what = colon == std::string::npos ? what.substr(pos) : what.substr(colon + 2);
    }
    throw DocumentError(line, column, what);
  }
  if (!doc.is_object()) throw DocumentError("document must be a JSON object");
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw DocumentError("missing integer field 'version'");
  }
  if (doc["version"].get<int>() != kDocumentVersion) {
    throw DocumentError("unsupported document version " + doc["version"].dump());
  }
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw DocumentError("missing array 'vertices'");
  std::vector<std::string> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_string()) throw DocumentError("vertex labels must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw DocumentError("'edges' must be an array");
    std::size_t k = 0;
    for (const auto& e : doc["edges"]) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("weight") ||
          !e["from"].is_string() || !e["to"].is_string()) {
        throw DocumentError(where + ": expected {\"from\", \"to\", \"weight\"}");
      }
      edges.push_back({e["from"].get<std::string>(), e["to"].get<std::string>(), detail::weight_field(e["weight"], k)});
      ++k;
    }
  }
  return WeightedDigraph::build(std::move(vertices), edges);
}

inline nlohmann::ordered_json document_json(const WeightedDigraph& g) {
  nlohmann::ordered_json doc;
  doc["version"] = kDocumentVersion;
  doc["vertices"] = g.labels();
  doc["edges"] = nlohmann::ordered_json::array();
  for (const EdgeSpec& e : g.edge_list()) {
    nlohmann::ordered_json edge;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["weight"] = e.weight.to_expression();
    doc["edges"].push_back(std::move(edge));
  }
  return doc;
}

/// Canonical document text; weights in canonical expression form.
inline std::string emit_graph(const WeightedDigraph& g) { return document_json(g).dump(2) + "\n"; }

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Graphviz DOT; nodes in declaration order, edges by source then target.
inline std::string emit_dot(const WeightedDigraph& g) {
  std::string out = "digraph G {\n";
  for (const auto& label : g.labels()) out += "  " + detail::dot_quote(label) + ";\n";
  for (const EdgeSpec& e : g.edge_list()) {
    out += "  " + detail::dot_quote(e.from) + " -> " + detail::dot_quote(e.to) +
           " [label=" + detail::dot_quote(e.weight.to_expression()) + "];\n";
  }
  return out + "}\n";
}

/// Ten significant digits; values under 1e-10 in magnitude print as 0.
inline std::string format_complex(std::complex<double> z) {
  auto real = [](double x) {
    if (std::abs(x) < 1e-10) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return std::string(buf);
  };
  std::string re = real(z.real());
  double im = std::abs(z.imag()) < 1e-10 ? 0.0 : z.imag();
  if (im == 0.0) return re;
  std::string im_str = real(std::abs(im));
  if (im_str == "1") im_str.clear();
  if (re == "0") return (im < 0 ? "-" : "") + im_str + "i";
  return re + (im < 0 ? "-" : "+") + im_str + "i";
}

}  // namespace isored
