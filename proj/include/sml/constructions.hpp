#pragma once

#include <string>
#include <vector>

#include "sml/error.hpp"
#include "sml/graph.hpp"

namespace sml {

enum class ConstructionFamily { kCliqueMinorFree, kBipartiteMinorFree, kColinDeVerdiere };

/// Parameters of one of the three extremal constructions.
///
///   kCliqueMinorFree   (n, r):    K_{r-2} joined to an independent set
///   kBipartiteMinorFree(n, s, t): K_{s-1} joined to k copies of K_t plus K_p
///   kColinDeVerdiere   (n, m):    K_{m-1} joined to a path on n-m+1 vertices
struct ConstructionParams {
  ConstructionFamily family = ConstructionFamily::kCliqueMinorFree;
  int n = 0;
  int r = 0;
  int s = 0;
  int t = 0;
  int m = 0;

  /// Number of whole K_t blocks, floor((n-s+1)/t).
  int k() const { return t > 0 ? (n - s + 1) / t : 0; }
  /// Size of the leftover clique, (n-s+1) mod t.
  int p() const { return t > 0 ? (n - s + 1) % t : 0; }

  void validate() const {
    if (n < 0 || n > kMaxVertices) throw DomainError("n must lie in 0.." + std::to_string(kMaxVertices));
    switch (family) {
      case ConstructionFamily::kCliqueMinorFree:
        if (r < 3) throw DomainError("r must be at least 3");
        if (n < r - 1) throw DomainError("n must be at least r-1");
        break;
      case ConstructionFamily::kBipartiteMinorFree:
        if (s < 2 || t < s) throw DomainError("need 2 <= s <= t");
        if (n < s) throw DomainError("n must be at least s");
        break;
      case ConstructionFamily::kColinDeVerdiere:
        if (m < 2) throw DomainError("m must be at least 2");
        if (n < m) throw DomainError("n must be at least m");
        break;
    }
  }
};

inline Graph construct(const ConstructionParams& params) {
  params.validate();
  switch (params.family) {
    case ConstructionFamily::kCliqueMinorFree:
      return join(graphs::complete(params.r - 2), graphs::empty(params.n - params.r + 2));
    case ConstructionFamily::kBipartiteMinorFree: {
      Graph residual = disjoint_union(graphs::copies(graphs::complete(params.t), params.k()),
                                      graphs::complete(params.p()));
      return join(graphs::complete(params.s - 1), residual);
    }
    case ConstructionFamily::kColinDeVerdiere:
      return join(graphs::complete(params.m - 1), graphs::path(params.n - params.m + 1));
  }
  throw DomainError("unknown construction family");
}

/// K_{r-2} joined to an independent set of size n-r+2.
inline Graph construct_kr_extremal(int n, int r) {
  return construct({.family = ConstructionFamily::kCliqueMinorFree, .n = n, .r = r});
}

/// K_{s-1} joined to (k K_t + K_p) where n-s+1 = k t + p, 0 <= p < t.
inline Graph construct_kst_extremal(int n, int s, int t) {
  return construct({.family = ConstructionFamily::kBipartiteMinorFree, .n = n, .s = s, .t = t});
}

/// K_{m-1} joined to the path on n-m+1 vertices.
inline Graph construct_cdv_extremal(int n, int m) {
  return construct({.family = ConstructionFamily::kColinDeVerdiere, .n = n, .m = m});
}

// Closed-form edge counts of the constructions.

inline long kr_extremal_edges(long n, long r) { return (r - 2) * (n - r + 2) + (r - 2) * (r - 3) / 2; }

/// Valid when t divides n-s+1.
inline long kst_extremal_edges(long n, long s, long t) {
  return ((t + 2 * s - 3) * (n - s + 1) + (s - 1) * (s - 2)) / 2;
}

inline long cdv_extremal_edges(long n, long m) { return (m - 1) * (n - m + 1) + (m - 1) * (m - 2) / 2 + (n - m); }

// ---------------------------------------------------------------------------
// Apex decomposition

struct ApexDecomposition {
  VertexMask apex = 0;              ///< vertices of degree n-1
  std::vector<Vertex> residual_of;  ///< residual vertex i is original vertex residual_of[i]
  Graph residual;                   ///< graph induced on the non-apex vertices
};

/// Splits off every universal vertex. For K_n the apex set is all of V and
/// the residual is the empty graph on zero vertices.
inline ApexDecomposition decompose_apex_clique(const Graph& g) {
  ApexDecomposition out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == g.order() - 1) out.apex |= mask::bit(v);
  const VertexMask rest = g.vertices() & ~out.apex;
  out.residual_of = mask::to_vector(rest);
  out.residual = induced_subgraph(g, rest);
  return out;
}

enum class ResidualShape { kIndependent, kDisjointCliques, kDisjointPaths, kOther };

struct ResidualClass {
  ResidualShape shape = ResidualShape::kOther;
  int clique_size = 0;  ///< t for kDisjointCliques, 0 otherwise

  bool operator==(const ResidualClass&) const = default;
};

/// Classifies the residual left by decompose_apex_clique. Checks run in the
/// order independent, equal cliques, paths, so 2K_2 reports as cliques of
/// size 2 and an edgeless graph (including the empty one) as independent.
inline ResidualClass recognize_residual(const Graph& h) {
  if (h.size() == 0) return {ResidualShape::kIndependent, 0};
  auto comps = components(h);
  const int t = mask::count(comps.front());
  bool cliques = true;
  for (VertexMask c : comps) {
    const int size = mask::count(c);
    if (size != t) {
      cliques = false;
      break;
    }
    bool complete = true;
    mask::for_each(c, [&](Vertex v) { complete = complete && mask::count(h.neighbors(v)) == size - 1; });
    if (!complete) {
      cliques = false;
      break;
    }
  }
  if (cliques) return {ResidualShape::kDisjointCliques, t};
  if (h.max_degree() <= 2 && is_forest(h)) return {ResidualShape::kDisjointPaths, 0};
  return {ResidualShape::kOther, 0};
}

inline std::string to_string(const ResidualClass& c) {
  switch (c.shape) {
    case ResidualShape::kIndependent: return "independent";
    case ResidualShape::kDisjointCliques: return "disjoint cliques K" + std::to_string(c.clique_size);
    case ResidualShape::kDisjointPaths: return "disjoint paths";
    case ResidualShape::kOther: return "other";
  }
  return "other";
}

}  // namespace sml
