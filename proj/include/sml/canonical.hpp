#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sml/graph.hpp"
#include "sml/graph6.hpp"

namespace sml {

// Canonical labelling by individualization-refinement:
//   * refine an ordered partition until it is equitable, splitting cells by
//     the count of neighbours in every cell (a label-invariant rule);
//   * individualize each vertex of the first smallest non-singleton cell and
//     recurse; discrete partitions give candidate labellings;
//   * the candidate with the lexicographically largest relabelled adjacency
//     rows wins.
// Vertices in the target cell that are twins of one already tried are
// skipped: swapping twins is an automorphism fixing everything individualized
// so far, so their subtrees produce the same candidates.

namespace detail {

using Partition = std::vector<std::vector<Vertex>>;

inline void refine(const Graph& g, Partition& cells) {
  const int n = g.order();
  std::vector<int> cell_of(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (Vertex v : cells[c]) cell_of[v] = static_cast<int>(c);

    std::vector<VertexMask> cell_masks(cells.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (Vertex v : cells[c]) cell_masks[c] |= mask::bit(v);

    Partition next;
    next.reserve(n);
    for (auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::vector<std::pair<std::vector<int>, Vertex>> keyed;
      keyed.reserve(cell.size());
      for (Vertex v : cell) {
        std::vector<int> sig(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) sig[c] = mask::count(g.neighbors(v) & cell_masks[c]);
        keyed.emplace_back(std::move(sig), v);
      }
      std::sort(keyed.begin(), keyed.end());
      std::size_t start = 0;
      for (std::size_t i = 1; i <= keyed.size(); ++i) {
        if (i == keyed.size() || keyed[i].first != keyed[start].first) {
          std::vector<Vertex> part;
          for (std::size_t j = start; j < i; ++j) part.push_back(keyed[j].second);
          next.push_back(std::move(part));
          start = i;
        }
      }
    }
    if (next.size() != cells.size()) changed = true;
    cells = std::move(next);
  }
}

inline bool twins(const Graph& g, Vertex u, Vertex v) {
  const VertexMask pair = mask::bit(u) | mask::bit(v);
  return (g.neighbors(u) & ~pair) == (g.neighbors(v) & ~pair);
}

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g) {}

  std::vector<Vertex> run() {
    Partition cells{std::vector<Vertex>{}};
    for (Vertex v = 0; v < g_.order(); ++v) cells[0].push_back(v);
    if (g_.order() > 0) search(std::move(cells));
    return best_perm_;
  }

 private:
  void search(Partition cells) {
    refine(g_, cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() > 1 && (target == cells.size() || cells[c].size() < cells[target].size())) target = c;
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<Vertex> tried;
    for (Vertex v : cells[target]) {
      if (std::any_of(tried.begin(), tried.end(), [&](Vertex u) { return twins(g_, u, v); })) continue;
      tried.push_back(v);
      Partition child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          child.push_back(cells[c]);
          continue;
        }
        child.push_back({v});
        std::vector<Vertex> rest;
        for (Vertex w : cells[c])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      search(std::move(child));
    }
  }

  void leaf(const Partition& cells) {
    const int n = g_.order();
    std::vector<Vertex> perm(n);
    for (std::size_t c = 0; c < cells.size(); ++c) perm[cells[c][0]] = static_cast<Vertex>(c);
    std::vector<VertexMask> rows(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      mask::for_each(g_.neighbors(v), [&](Vertex u) { rows[perm[v]] |= mask::bit(perm[u]); });
    }
    if (best_perm_.empty() || rows > best_rows_) {
      best_rows_ = std::move(rows);
      best_perm_ = std::move(perm);
    }
  }

  const Graph& g_;
  std::vector<VertexMask> best_rows_;
  std::vector<Vertex> best_perm_;
};

}  // namespace detail

/// Labelling `perm` such that relabel(g, perm) is the canonical form of g.
inline std::vector<Vertex> canonical_labeling(const Graph& g) { return detail::Canonizer(g).run(); }

/// Representative of g's isomorphism class; isomorphic inputs give equal graphs.
inline Graph canonical_form(const Graph& g) {
  if (g.order() == 0) return g;
  return relabel(g, canonical_labeling(g));
}

/// graph6 string of the canonical form, usable as a dictionary key.
inline std::string canonical_key(const Graph& g) { return encode_graph6(canonical_form(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace sml
