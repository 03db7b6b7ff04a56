#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "sml/canonical.hpp"
#include "sml/error.hpp"
#include "sml/graph.hpp"
#include "sml/graph6.hpp"

namespace sml {

inline constexpr int kMaxInternalEnumeration = 7;

/// One representative per isomorphism class on n+1 vertices, obtained by
/// attaching a new vertex to every subset of each n-vertex class. Output is
/// canonical and sorted by graph6.
inline std::vector<Graph> extend_by_vertex(const std::vector<Graph>& classes) {
  std::map<std::string, Graph> seen;
  for (const Graph& g : classes) {
    const int n = g.order();
    if (n + 1 > kMaxVertices) throw DomainError("extension exceeds the vertex limit");
    std::vector<VertexMask> rows(n + 1);
    for (VertexMask sub = 0; sub <= mask::first(n); ++sub) {
      for (Vertex v = 0; v < n; ++v) rows[v] = g.neighbors(v) | (mask::contains(sub, v) ? mask::bit(n) : 0);
      rows[n] = sub;
      Graph c = canonical_form(Graph::from_rows(n + 1, rows));
      std::string key = encode_graph6(c);
      seen.try_emplace(std::move(key), std::move(c));
      if (n == 0) break;
    }
  }
  std::vector<Graph> out;
  out.reserve(seen.size());
  for (auto& [key, g] : seen) out.push_back(std::move(g));
  return out;
}

/// Every graph on n vertices up to isomorphism (11 at n=4, 1044 at n=7), in
/// canonical form and sorted by graph6. Internal generation stops at n=7;
/// larger orders must come from a graph6 stream.
inline std::vector<Graph> enumerate_graphs(int n, bool connected_only = false) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (n > kMaxInternalEnumeration) {
    throw DomainError("internal enumeration is limited to n <= " + std::to_string(kMaxInternalEnumeration) +
                      "; supply a graph6 stream for larger n");
  }
  std::vector<Graph> classes{Graph(0)};
  for (int i = 0; i < n; ++i) classes = extend_by_vertex(classes);
  if (connected_only) std::erase_if(classes, [](const Graph& g) { return !is_connected(g); });
  return classes;
}

/// Reads newline-separated graph6 codes. Blank lines are skipped; a malformed
/// line raises ParseError carrying its 1-based line number.
inline std::vector<Graph> ingest_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_graph6(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (in.bad()) throw DomainError("read failure on graph6 stream");
  return out;
}

inline std::vector<Graph> ingest_graph6_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  return ingest_graph6_stream(in);
}

}  // namespace sml
