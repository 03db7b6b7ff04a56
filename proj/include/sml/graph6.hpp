#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sml/error.hpp"
#include "sml/graph.hpp"

namespace sml {

namespace detail {

inline constexpr int kGraph6Offset = 63;
inline constexpr char kGraph6Header[] = ">>graph6<<";

inline int graph6_value(char c) {
  const int v = static_cast<unsigned char>(c) - kGraph6Offset;
  if (v < 0 || v > 63) {
    throw ParseError("graph6 character out of range (code " + std::to_string(static_cast<unsigned char>(c)) + ")");
  }
  return v;
}

}  // namespace detail

/// Decodes one graph6 line. A leading ">>graph6<<" header and trailing
/// whitespace are ignored; padding bits in the final byte are not checked.
inline Graph parse_graph6(std::string_view text) {
  if (text.starts_with(detail::kGraph6Header)) text.remove_prefix(sizeof(detail::kGraph6Header) - 1);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("empty graph6 string");

  std::size_t pos = 0;
  long n = 0;
  if (text[0] != '~') {
    n = detail::graph6_value(text[0]);
    pos = 1;
  } else {
    if (text.size() >= 2 && text[1] == '~') throw ParseError("graph6 eight-byte length form is not supported");
    if (text.size() < 4) throw ParseError("truncated graph6 length field");
    for (pos = 1; pos < 4; ++pos) n = (n << 6) | detail::graph6_value(text[pos]);
    if (n < 63) throw ParseError("non-canonical graph6 length field");
  }
  if (n > kMaxVertices) {
    throw ParseError("graph6 vertex count " + std::to_string(n) + " exceeds the supported " +
                     std::to_string(kMaxVertices));
  }

  const long bits = n * (n - 1) / 2;
  const long bytes = (bits + 5) / 6;
  if (static_cast<long>(text.size() - pos) < bytes) throw ParseError("truncated graph6 bit section");
  if (static_cast<long>(text.size() - pos) > bytes) throw ParseError("trailing characters after graph6 bit section");

  std::vector<VertexMask> rows(n, 0);
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int value = detail::graph6_value(text[pos + k / 6]);
      if ((value >> (5 - k % 6)) & 1) {
        rows[i] |= mask::bit(j);
        rows[j] |= mask::bit(i);
      }
    }
  }
  // Validate characters that carry only padding.
  for (long b = k / 6; b < bytes; ++b) detail::graph6_value(text[pos + b]);
  return Graph::from_rows(static_cast<int>(n), rows);
}

/// Encodes `g` in graph6 without header or newline.
inline std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + detail::kGraph6Offset));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + detail::kGraph6Offset));
    }
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + detail::kGraph6Offset));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + detail::kGraph6Offset));
  return out;
}

}  // namespace sml
