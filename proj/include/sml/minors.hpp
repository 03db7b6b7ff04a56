#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sml/canonical.hpp"
#include "sml/error.hpp"
#include "sml/graph.hpp"

namespace sml {

/// Branch sets certifying that H is a minor of G: branch_sets[h] is the set of
/// G-vertices contracted onto H-vertex h.
struct MinorWitness {
  std::vector<VertexMask> branch_sets;
};

/// True iff the branch sets are nonempty, pairwise disjoint, each induces a
/// connected subgraph of g, and every edge of h joins its two branch sets.
inline bool verify_witness(const Graph& h, const Graph& g, const MinorWitness& w) {
  if (static_cast<int>(w.branch_sets.size()) != h.order()) return false;
  VertexMask used = 0;
  for (VertexMask set : w.branch_sets) {
    if (set == 0 || (set & ~g.vertices()) != 0 || (set & used) != 0) return false;
    if (!induces_connected(g, set)) return false;
    used |= set;
  }
  for (auto [a, b] : h.edges()) {
    if ((g.neighbors_of_set(w.branch_sets[a]) & w.branch_sets[b]) == 0) return false;
  }
  return true;
}

namespace detail {

// Backtracking branch-set construction. H-vertices are placed one at a time,
// each as a connected set of still-free G-vertices that touches the branch
// sets of its already placed H-neighbours. Connected sets are enumerated
// without repetition by anchoring each set at its lowest vertex inside the
// neighbourhood of one placed neighbour (or among all free vertices for the
// first vertex of an H-component) and growing it with an include/exclude
// recursion. Pruning after each placement:
//   * enough free vertices remain for the unplaced H-vertices;
//   * every placed set has as many free neighbours as unplaced H-neighbours;
//   * every unplaced H-vertex has some free component touching all of its
//     placed neighbours' sets;
//   * twin H-vertices take branch sets in increasing order of lowest vertex.
class MinorSearch {
 public:
  MinorSearch(const Graph& h, const Graph& g) : h_(h), g_(g) {
    const int k = h.order();
    std::vector<bool> placed(k, false);
    std::vector<int> placed_nbrs(k, 0);
    for (int pos = 0; pos < k; ++pos) {
      int pick = -1;
      for (Vertex v = 0; v < k; ++v) {
        if (placed[v]) continue;
        if (pick < 0 || placed_nbrs[v] > placed_nbrs[pick] ||
            (placed_nbrs[v] == placed_nbrs[pick] && h.degree(v) > h.degree(pick))) {
          pick = v;
        }
      }
      placed[pick] = true;
      order_.push_back(pick);
      mask::for_each(h.neighbors(pick), [&](Vertex u) { ++placed_nbrs[u]; });
    }
    std::vector<int> pos_of(k);
    for (int pos = 0; pos < k; ++pos) pos_of[order_[pos]] = pos;
    earlier_.assign(k, 0);
    later_.assign(k, 0);
    twin_prev_.assign(k, -1);
    for (int pos = 0; pos < k; ++pos) {
      mask::for_each(h.neighbors(order_[pos]), [&](Vertex u) {
        if (pos_of[u] < pos) earlier_[pos] |= mask::bit(pos_of[u]);
        else later_[pos] |= mask::bit(pos_of[u]);
      });
      for (int prev = pos - 1; prev >= 0; --prev) {
        if (twins(h, order_[prev], order_[pos])) {
          twin_prev_[pos] = prev;
          break;
        }
      }
    }
    sets_.assign(k, 0);
  }

  std::optional<MinorWitness> run(VertexMask allowed) {
    free_ = allowed;
    if (!place(0)) return std::nullopt;
    MinorWitness w;
    w.branch_sets.assign(h_.order(), 0);
    for (std::size_t pos = 0; pos < order_.size(); ++pos) w.branch_sets[order_[pos]] = sets_[pos];
    return w;
  }

 private:
  int size() const { return static_cast<int>(order_.size()); }

  bool place(int pos) {
    if (pos == size()) return true;
    const int max_size = mask::count(free_) - (size() - pos - 1);
    if (max_size < 1) return false;

    VertexMask anchors = free_;
    if (earlier_[pos] != 0) {
      int fewest = 65;
      mask::for_each(earlier_[pos], [&](Vertex j) {
        const VertexMask cand = g_.neighbors_of_set(sets_[j]) & free_;
        if (mask::count(cand) < fewest) {
          fewest = mask::count(cand);
          anchors = cand;
        }
      });
    }
    VertexMask banned = 0;
    bool found = false;
    mask::for_each(anchors, [&](Vertex a) {
      if (found) return;
      const VertexMask pool = free_ & ~banned;
      found = grow(pos, mask::bit(a), g_.neighbors(a) & pool, 0, pool, max_size);
      banned |= mask::bit(a);
    });
    return found;
  }

  bool grow(int pos, VertexMask set, VertexMask ext, VertexMask excluded, VertexMask pool, int max_size) {
    if (try_set(pos, set)) return true;
    if (mask::count(set) >= max_size) return false;
    while (ext != 0) {
      const Vertex w = mask::lowest(ext);
      ext &= ext - 1;
      const VertexMask next_ext = (ext | (g_.neighbors(w) & pool)) & ~set & ~excluded & ~mask::bit(w);
      if (grow(pos, set | mask::bit(w), next_ext, excluded, pool, max_size)) return true;
      excluded |= mask::bit(w);
    }
    return false;
  }

  bool try_set(int pos, VertexMask set) {
    const VertexMask reach = g_.neighbors_of_set(set);
    bool touches = true;
    mask::for_each(earlier_[pos], [&](Vertex j) { touches = touches && (reach & sets_[j]) != 0; });
    if (!touches) return false;
    if (twin_prev_[pos] >= 0 && mask::lowest(set) < mask::lowest(sets_[twin_prev_[pos]])) return false;
    sets_[pos] = set;
    free_ &= ~set;
    if (feasible(pos) && place(pos + 1)) return true;
    free_ |= set;
    sets_[pos] = 0;
    return false;
  }

  bool feasible(int pos) const {
    if (pos + 1 == size()) return true;
    const VertexMask future = mask::first(size()) & ~mask::first(pos + 1);
    for (int j = 0; j <= pos; ++j) {
      const int pending = mask::count(later_[j] & future);
      if (pending > 0 && mask::count(g_.neighbors_of_set(sets_[j]) & free_) < pending) return false;
    }
    const auto comps = components(g_, free_);
    std::vector<VertexMask> touched(comps.size(), 0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const VertexMask reach = g_.neighbors_of_set(comps[c]);
      for (int j = 0; j <= pos; ++j)
        if ((reach & sets_[j]) != 0) touched[c] |= mask::bit(j);
    }
    for (int l = pos + 1; l < size(); ++l) {
      const VertexMask need = earlier_[l] & mask::first(pos + 1);
      if (need == 0) continue;
      if (std::none_of(touched.begin(), touched.end(), [&](VertexMask t) { return (need & ~t) == 0; })) return false;
    }
    return true;
  }

  const Graph& h_;
  const Graph& g_;
  std::vector<Vertex> order_;
  std::vector<VertexMask> earlier_;  // over positions
  std::vector<VertexMask> later_;    // over positions
  std::vector<int> twin_prev_;
  std::vector<VertexMask> sets_;     // by position
  VertexMask free_ = 0;
};

}  // namespace detail

namespace detail {

/// Vertex connectivity capped at 3: 0 if disconnected or empty, 1 for K1, K2
/// and graphs with a cut vertex, 2 with a 2-separator or for K3, else 3.
inline int connectivity_upto3(const Graph& h) {
  if (h.order() == 0 || !is_connected(h)) return 0;
  if (h.order() <= 2) return 1;
  const VertexMask all = h.vertices();
  for (Vertex v = 0; v < h.order(); ++v)
    if (!induces_connected(h, all & ~mask::bit(v))) return 1;
  if (h.order() == 3) return 2;
  for (Vertex a = 0; a < h.order(); ++a)
    for (Vertex b = a + 1; b < h.order(); ++b)
      if (!induces_connected(h, all & ~mask::bit(a) & ~mask::bit(b))) return 2;
  return 3;
}

inline MinorWitness lift_witness(MinorWitness w, VertexMask part) {
  const std::vector<Vertex> verts = mask::to_vector(part);
  for (VertexMask& set : w.branch_sets) {
    VertexMask lifted = 0;
    mask::for_each(set, [&](Vertex v) { lifted |= mask::bit(verts[v]); });
    set = lifted;
  }
  return w;
}

// Splits g along small separators before searching. With h k-connected, an
// h-minor of g lies within one component (k >= 1), one block (k >= 2), or one
// part of a 2-separation {a,b} with the edge ab added (k >= 3).
inline std::optional<MinorWitness> split_minor_search(const Graph& h, int kappa, const Graph& g) {
  if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
  const VertexMask all = g.vertices();

  const auto parts = components(g);
  if (parts.size() > 1) {
    for (VertexMask part : parts)
      if (auto w = split_minor_search(h, kappa, induced_subgraph(g, part))) return lift_witness(std::move(*w), part);
    return std::nullopt;
  }

  if (kappa >= 2 && g.order() > 2) {
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto sides = components(g, all & ~mask::bit(v));
      if (sides.size() < 2) continue;
      for (VertexMask side : sides) {
        const VertexMask part = side | mask::bit(v);
        if (auto w = split_minor_search(h, kappa, induced_subgraph(g, part))) return lift_witness(std::move(*w), part);
      }
      return std::nullopt;
    }
  }

  if (kappa >= 3 && g.order() > 3) {
    for (Vertex a = 0; a < g.order(); ++a) {
      for (Vertex b = a + 1; b < g.order(); ++b) {
        const auto sides = components(g, all & ~mask::bit(a) & ~mask::bit(b));
        if (sides.size() < 2) continue;
        for (std::size_t i = 0; i < sides.size(); ++i) {
          const VertexMask part = sides[i] | mask::bit(a) | mask::bit(b);
          Graph torso = induced_subgraph(g, part);
          const std::vector<Vertex> verts = mask::to_vector(part);
          const Vertex la = static_cast<Vertex>(std::find(verts.begin(), verts.end(), a) - verts.begin());
          const Vertex lb = static_cast<Vertex>(std::find(verts.begin(), verts.end(), b) - verts.begin());
          if (!g.adjacent(a, b)) torso = add_edge(torso, la, lb);
          auto w = split_minor_search(h, kappa, torso);
          if (!w) continue;
          MinorWitness lifted = lift_witness(std::move(*w), part);
          if (!g.adjacent(a, b)) {
            // g is 2-connected here, so any other side touches both a and b
            // and stands in for the virtual edge.
            const VertexMask other = sides[i == 0 ? 1 : 0];
            for (VertexMask& set : lifted.branch_sets)
              if (mask::contains(set, a)) set |= other;
          }
          return lifted;
        }
        return std::nullopt;
      }
    }
  }

  return MinorSearch(h, g).run(all);
}

}  // namespace detail

/// Searches for h as a minor of g. Returns a witness that passes
/// verify_witness, or nullopt when h is not a minor.
inline std::optional<MinorWitness> has_minor(const Graph& h, const Graph& g) {
  if (h.order() == 0) return MinorWitness{};
  if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
  const int kappa = detail::connectivity_upto3(h);
  if (kappa == 0) return detail::MinorSearch(h, g).run(g.vertices());
  return detail::split_minor_search(h, kappa, g);
}

// ---------------------------------------------------------------------------
// Forbidden-minor families

enum class FamilyName { kPlanar, kOuterplanar, kLinkless };

struct ForbiddenFamily {
  FamilyName name;
  std::vector<Graph> members;
};

inline std::string to_string(FamilyName name) {
  switch (name) {
    case FamilyName::kPlanar: return "planar";
    case FamilyName::kOuterplanar: return "outerplanar";
    case FamilyName::kLinkless: return "linkless";
  }
  return "?";
}

namespace detail {

/// Replaces triangle {a,b,c} by a new vertex joined to a, b and c.
inline std::optional<Graph> delta_to_wye(const Graph& g, Vertex a, Vertex b, Vertex c) {
  if (g.order() >= kMaxVertices) return std::nullopt;
  const int n = g.order();
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  rows.push_back(mask::bit(a) | mask::bit(b) | mask::bit(c));
  rows[a] = (rows[a] & ~mask::bit(b) & ~mask::bit(c)) | mask::bit(n);
  rows[b] = (rows[b] & ~mask::bit(a) & ~mask::bit(c)) | mask::bit(n);
  rows[c] = (rows[c] & ~mask::bit(a) & ~mask::bit(b)) | mask::bit(n);
  return Graph::from_rows(n + 1, rows);
}

/// Replaces degree-3 vertex v, whose neighbours are pairwise non-adjacent,
/// by a triangle on its neighbours.
inline Graph wye_to_delta(const Graph& g, Vertex v) {
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  const VertexMask nb = rows[v];
  mask::for_each(nb, [&](Vertex u) { rows[u] = (rows[u] | nb) & ~mask::bit(u) & ~mask::bit(v); });
  rows[v] = 0;
  return induced_subgraph(Graph::from_rows(g.order(), rows), g.vertices() & ~mask::bit(v));
}

}  // namespace detail

/// Closure of {seed} under ΔY and YΔ, one representative per isomorphism
/// class, ordered by vertex count and then canonical graph6. YΔ applies only
/// to degree-3 vertices with an independent neighbourhood, so every member
/// keeps the seed's edge count.
inline std::vector<Graph> delta_y_closure(const Graph& seed) {
  std::map<std::string, Graph> seen;
  std::vector<Graph> queue{canonical_form(seed)};
  seen.emplace(encode_graph6(queue.front()), queue.front());
  auto visit = [&](const Graph& g) {
    Graph c = canonical_form(g);
    std::string key = encode_graph6(c);
    if (seen.emplace(key, c).second) queue.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Graph g = queue[i];
    for (Vertex a = 0; a < g.order(); ++a) {
      const VertexMask higher = g.neighbors(a) & ~mask::first(a + 1);
      mask::for_each(higher, [&](Vertex b) {
        mask::for_each(higher & g.neighbors(b) & ~mask::first(b + 1), [&](Vertex c) {
          if (auto y = detail::delta_to_wye(g, a, b, c)) visit(*y);
        });
      });
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      const VertexMask nb = g.neighbors(v);
      if (mask::count(nb) != 3) continue;
      bool independent = true;
      mask::for_each(nb, [&](Vertex u) { independent = independent && (g.neighbors(u) & nb) == 0; });
      if (independent) visit(detail::wye_to_delta(g, v));
    }
  }
  std::vector<Graph> out;
  for (auto& [key, g] : seen) out.push_back(g);
  std::stable_sort(out.begin(), out.end(), [](const Graph& a, const Graph& b) { return a.order() < b.order(); });
  return out;
}

/// The seven graphs of the ΔY/YΔ closure of K_6, computed once.
inline const std::vector<Graph>& petersen_family() {
  static const std::vector<Graph> family = delta_y_closure(graphs::complete(6));
  return family;
}

inline ForbiddenFamily forbidden_family(FamilyName name) {
  switch (name) {
    case FamilyName::kPlanar: return {name, {graphs::complete(5), graphs::complete_bipartite(3, 3)}};
    case FamilyName::kOuterplanar: return {name, {graphs::complete(4), graphs::complete_bipartite(2, 3)}};
    case FamilyName::kLinkless: return {name, petersen_family()};
  }
  throw DomainError("unknown family");
}

struct ForbiddenMinorHit {
  std::size_t member = 0;  ///< index into ForbiddenFamily::members
  MinorWitness witness;
};

/// First family member found as a minor of g, if any.
inline std::optional<ForbiddenMinorHit> find_forbidden_minor(const Graph& g, const ForbiddenFamily& family) {
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    if (auto w = has_minor(family.members[i], g)) return ForbiddenMinorHit{i, std::move(*w)};
  }
  return std::nullopt;
}

inline bool excludes_family(const Graph& g, FamilyName name) {
  return !find_forbidden_minor(g, forbidden_family(name)).has_value();
}

inline bool is_planar(const Graph& g) { return excludes_family(g, FamilyName::kPlanar); }
inline bool is_outerplanar(const Graph& g) { return excludes_family(g, FamilyName::kOuterplanar); }
inline bool is_linkless(const Graph& g) { return excludes_family(g, FamilyName::kLinkless); }

/// For connected, K_{1,t}-minor-free h: whether e(h) <= n(h) + t(t-3)/2.
inline bool max_degree_residual_bound(const Graph& h, int t) {
  if (t < 1) throw DomainError("t must be positive");
  if (h.order() == 0 || !is_connected(h)) throw PreconditionError("residual graph must be connected and nonempty");
  if (has_minor(graphs::star(t), h)) throw PreconditionError("residual graph contains a K_{1," + std::to_string(t) + "} minor");
  return h.size() <= h.order() + t * (t - 3) / 2;
}

}  // namespace sml
