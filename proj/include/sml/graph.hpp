#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sml/error.hpp"

namespace sml {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// A set of vertices of a graph with at most 64 vertices, one bit per vertex.
using VertexMask = std::uint64_t;

inline constexpr int kMaxVertices = 64;

namespace mask {

constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }

constexpr VertexMask first(int n) { return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1; }

constexpr int count(VertexMask m) { return std::popcount(m); }

constexpr bool contains(VertexMask m, Vertex v) { return (m >> v) & 1U; }

/// Index of the lowest set bit; `m` must be nonzero.
constexpr Vertex lowest(VertexMask m) { return std::countr_zero(m); }

template <class Fn>
constexpr void for_each(VertexMask m, Fn&& fn) {
  while (m != 0) {
    fn(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
}

inline std::vector<Vertex> to_vector(VertexMask m) {
  std::vector<Vertex> out;
  out.reserve(count(m));
  for_each(m, [&](Vertex v) { out.push_back(v); });
  return out;
}

inline VertexMask from_vertices(std::span<const Vertex> vs) {
  VertexMask m = 0;
  for (Vertex v : vs) m |= bit(v);
  return m;
}

}  // namespace mask

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
///
/// Graphs are immutable values: every edit below returns a new graph.
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph on `n` vertices.
  explicit Graph(int n) : n_(check_order(n)) {}

  Graph(int n, std::span<const Edge> edges) : n_(check_order(n)) {
    for (auto [u, v] : edges) add(u, v);
  }

  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Builds a graph from adjacency rows. Rows must be symmetric, loop free and
  /// confined to the first `n` bits.
  static Graph from_rows(int n, std::span<const VertexMask> rows) {
    Graph g(n);
    if (static_cast<int>(rows.size()) != n) throw DomainError("row count does not match vertex count");
    const VertexMask all = mask::first(n);
    for (int v = 0; v < n; ++v) {
      if ((rows[v] & ~all) != 0) throw DomainError("adjacency row references a missing vertex");
      if (mask::contains(rows[v], v)) throw DomainError("adjacency row contains a loop");
      g.rows_[v] = rows[v];
    }
    for (int v = 0; v < n; ++v) {
      mask::for_each(rows[v], [&](Vertex u) {
        if (!mask::contains(rows[u], v)) throw DomainError("adjacency rows are not symmetric");
      });
    }
    return g;
  }

  int order() const noexcept { return n_; }

  int size() const noexcept {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += mask::count(rows_[v]);
    return twice / 2;
  }

  VertexMask vertices() const noexcept { return mask::first(n_); }

  VertexMask neighbors(Vertex v) const { return rows_[check_vertex(v)]; }

  /// Union of the neighborhoods of `set`, excluding `set` itself.
  VertexMask neighbors_of_set(VertexMask set) const noexcept {
    VertexMask out = 0;
    mask::for_each(set, [&](Vertex v) { out |= rows_[v]; });
    return out & ~set;
  }

  int degree(Vertex v) const { return mask::count(neighbors(v)); }

  bool adjacent(Vertex u, Vertex v) const { return mask::contains(neighbors(u), check_vertex(v)); }

  int max_degree() const noexcept {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, mask::count(rows_[v]));
    return best;
  }

  int min_degree() const noexcept {
    if (n_ == 0) return 0;
    int best = n_;
    for (int v = 0; v < n_; ++v) best = std::min(best, mask::count(rows_[v]));
    return best;
  }

  /// Edges as (u, v) with u < v, ordered by u then v.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u) {
      mask::for_each(rows_[u] & ~mask::first(u + 1), [&](Vertex v) { out.emplace_back(u, v); });
    }
    return out;
  }

  std::span<const VertexMask> rows() const noexcept { return {rows_.data(), static_cast<std::size_t>(n_)}; }

  bool operator==(const Graph& other) const noexcept {
    return n_ == other.n_ && std::equal(rows_.begin(), rows_.begin() + n_, other.rows_.begin());
  }

 private:
  static int check_order(int n) {
    if (n < 0 || n > kMaxVertices) {
      throw DomainError("vertex count " + std::to_string(n) + " outside the supported range 0.." +
                        std::to_string(kMaxVertices));
    }
    return n;
  }

  Vertex check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw DomainError("vertex " + std::to_string(v) + " out of range");
    return v;
  }

  void add(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw DomainError("loops are not allowed");
    rows_[u] |= mask::bit(v);
    rows_[v] |= mask::bit(u);
  }

  int n_ = 0;
  std::array<VertexMask, kMaxVertices> rows_{};
};

// ---------------------------------------------------------------------------
// Structural queries

/// Connected components ordered by their smallest vertex.
inline std::vector<VertexMask> components(const Graph& g, VertexMask within) {
  std::vector<VertexMask> out;
  VertexMask left = within;
  while (left != 0) {
    VertexMask comp = mask::bit(mask::lowest(left));
    VertexMask frontier = comp;
    while (frontier != 0) {
      VertexMask next = 0;
      mask::for_each(frontier, [&](Vertex v) { next |= g.neighbors(v); });
      next &= within & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

inline std::vector<VertexMask> components(const Graph& g) { return components(g, g.vertices()); }

/// True if `set` is nonempty and induces a connected subgraph.
inline bool induces_connected(const Graph& g, VertexMask set) {
  if (set == 0) return false;
  VertexMask reached = mask::bit(mask::lowest(set));
  VertexMask frontier = reached;
  while (frontier != 0) {
    VertexMask next = g.neighbors_of_set(frontier) & set & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == set;
}

inline bool is_connected(const Graph& g) { return g.order() <= 1 || induces_connected(g, g.vertices()); }

inline bool is_regular(const Graph& g) { return g.max_degree() == g.min_degree(); }

inline bool is_forest(const Graph& g) {
  return g.size() == g.order() - static_cast<int>(components(g).size());
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  for (VertexMask comp : components(g)) {
    Vertex root = mask::lowest(comp);
    side[root] = 0;
    std::vector<Vertex> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Vertex u = queue[i];
      bool ok = true;
      mask::for_each(g.neighbors(u), [&](Vertex v) {
        if (side[v] < 0) {
          side[v] = 1 - side[u];
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          ok = false;
        }
      });
      if (!ok) return false;
    }
  }
  return true;
}

/// Length of a shortest cycle, or 0 for forests.
inline int girth(const Graph& g) {
  const int n = g.order();
  int best = 0;
  for (Vertex root = 0; root < n; ++root) {
    std::vector<int> dist(n, -1), parent(n, -1);
    dist[root] = 0;
    std::vector<Vertex> queue{root};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Vertex u = queue[i];
      mask::for_each(g.neighbors(u), [&](Vertex v) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (parent[u] != v) {
          int len = dist[u] + dist[v] + 1;
          if (best == 0 || len < best) best = len;
        }
      });
    }
  }
  return best;
}

/// Graph induced on `set`, relabelled so the i-th smallest member becomes i.
inline Graph induced_subgraph(const Graph& g, VertexMask set) {
  std::vector<Vertex> keep = mask::to_vector(set & g.vertices());
  std::vector<int> index(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  std::vector<VertexMask> rows(keep.size(), 0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    mask::for_each(g.neighbors(keep[i]) & set, [&](Vertex v) { rows[i] |= mask::bit(index[v]); });
  }
  return Graph::from_rows(static_cast<int>(keep.size()), rows);
}

/// Applies a relabelling: vertex v of `g` becomes `perm[v]`.
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) throw DomainError("permutation length does not match vertex count");
  std::vector<VertexMask> rows(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    mask::for_each(g.neighbors(v), [&](Vertex u) { rows[perm[v]] |= mask::bit(perm[u]); });
  }
  return Graph::from_rows(n, rows);
}

// ---------------------------------------------------------------------------
// Edits. Each returns a new graph.

/// Disjoint union; vertices of `b` are shifted by `a.order()`.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  const int n = a.order() + b.order();
  if (n > kMaxVertices) throw DomainError("combined vertex count exceeds " + std::to_string(kMaxVertices));
  std::vector<VertexMask> rows(n, 0);
  for (Vertex v = 0; v < a.order(); ++v) rows[v] = a.neighbors(v);
  for (Vertex v = 0; v < b.order(); ++v) rows[a.order() + v] = b.neighbors(v) << a.order();
  return Graph::from_rows(n, rows);
}

/// Join: disjoint union plus every edge between the two parts.
inline Graph join(const Graph& a, const Graph& b) {
  const int n = a.order() + b.order();
  if (n > kMaxVertices) throw DomainError("combined vertex count exceeds " + std::to_string(kMaxVertices));
  const VertexMask left = mask::first(a.order());
  const VertexMask right = mask::first(n) & ~left;
  std::vector<VertexMask> rows(n, 0);
  for (Vertex v = 0; v < a.order(); ++v) rows[v] = a.neighbors(v) | right;
  for (Vertex v = 0; v < b.order(); ++v) rows[a.order() + v] = (b.neighbors(v) << a.order()) | left;
  return Graph::from_rows(n, rows);
}

inline Graph complement(const Graph& g) {
  std::vector<VertexMask> rows(g.order());
  for (Vertex v = 0; v < g.order(); ++v) rows[v] = ~g.neighbors(v) & g.vertices() & ~mask::bit(v);
  return Graph::from_rows(g.order(), rows);
}

inline Graph add_edge(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw DomainError("loops are not allowed");
  if (g.adjacent(u, v)) throw DomainError("edge " + std::to_string(u) + "-" + std::to_string(v) + " already present");
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  rows[u] |= mask::bit(v);
  rows[v] |= mask::bit(u);
  return Graph::from_rows(g.order(), rows);
}

inline Graph delete_edge(const Graph& g, Vertex u, Vertex v) {
  if (u == v || !g.adjacent(u, v)) {
    throw DomainError("edge " + std::to_string(u) + "-" + std::to_string(v) + " not present");
  }
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  rows[u] &= ~mask::bit(v);
  rows[v] &= ~mask::bit(u);
  return Graph::from_rows(g.order(), rows);
}

/// Removes `v`; vertices above `v` shift down by one.
inline Graph delete_vertex(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.order()) throw DomainError("vertex " + std::to_string(v) + " not present");
  return induced_subgraph(g, g.vertices() & ~mask::bit(v));
}

/// Merges `v` into `u`. Parallel edges collapse, the loop is dropped, and
/// vertices above `v` shift down by one (so the merged vertex is `u` or `u-1`).
inline Graph contract_edge(const Graph& g, Vertex u, Vertex v) {
  if (u == v || !g.adjacent(u, v)) {
    throw DomainError("cannot contract " + std::to_string(u) + "-" + std::to_string(v) + ": not an edge");
  }
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  const VertexMask merged = (rows[u] | rows[v]) & ~mask::bit(u) & ~mask::bit(v);
  mask::for_each(rows[v], [&](Vertex w) { rows[w] &= ~mask::bit(v); });
  rows[v] = 0;
  rows[u] = merged;
  mask::for_each(merged, [&](Vertex w) { rows[w] |= mask::bit(u); });
  return induced_subgraph(Graph::from_rows(g.order(), rows), g.vertices() & ~mask::bit(v));
}

// ---------------------------------------------------------------------------
// Named graphs

namespace graphs {

inline Graph empty(int n) { return Graph(n); }

inline Graph complete(int n) {
  std::vector<VertexMask> rows(n);
  for (int v = 0; v < n; ++v) rows[v] = mask::first(n) & ~mask::bit(v);
  return Graph::from_rows(n, rows);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

inline Graph cycle(int n) {
  if (n < 3) throw DomainError("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

inline Graph complete_bipartite(int a, int b) { return join(empty(a), empty(b)); }

inline Graph star(int leaves) { return complete_bipartite(1, leaves); }

/// Circulant graph: v ~ v±o (mod n) for every offset o.
inline Graph circulant(int n, std::span<const int> offsets) {
  std::vector<VertexMask> rows(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int o : offsets) {
      int w = ((v + o) % n + n) % n;
      if (w == v) throw DomainError("circulant offset produces a loop");
      rows[v] |= mask::bit(w);
      rows[w] |= mask::bit(v);
    }
  }
  return Graph::from_rows(n, rows);
}

/// `copies` disjoint copies of `g`.
inline Graph copies(const Graph& g, int copies) {
  Graph out(0);
  for (int i = 0; i < copies; ++i) out = disjoint_union(out, g);
  return out;
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i ~ i+5.
inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
    e.emplace_back(i, i + 5);
  }
  return Graph(10, e);
}

}  // namespace graphs

}  // namespace sml
