#pragma once

#include <string>

#include "sml/error.hpp"
#include "sml/graph.hpp"
#include "sml/minors.hpp"

namespace sml {

/// Colin de Verdière class as decided by the forbidden-minor
/// characterizations: mu <= 1 (disjoint paths), 2 (outerplanar), 3 (planar),
/// 4 (linklessly embeddable), or >= 5.
enum class MuValue { kAtMost1 = 1, kTwo = 2, kThree = 3, kFour = 4, kAtLeast5 = 5 };

struct MuClass {
  MuValue value = MuValue::kAtMost1;

  /// 1..5; the smallest characterization level the graph passes.
  int level() const { return static_cast<int>(value); }

  /// True when the class guarantees mu(G) <= m.
  bool at_most(int m) const { return value != MuValue::kAtLeast5 && level() <= m; }

  bool operator==(const MuClass&) const = default;
  auto operator<=>(const MuClass&) const = default;
};

inline std::string to_string(MuClass c) {
  switch (c.value) {
    case MuValue::kAtMost1: return "<=1 (disjoint union of paths)";
    case MuValue::kTwo: return "=2 (outerplanar, not a union of paths)";
    case MuValue::kThree: return "=3 (planar, not outerplanar)";
    case MuValue::kFour: return "=4 (linkless, not planar)";
    case MuValue::kAtLeast5: return ">=5 (not linklessly embeddable)";
  }
  return "?";
}

/// Short label: "<=1", "=2", "=3", "=4" or ">=5".
inline std::string short_label(MuClass c) {
  switch (c.value) {
    case MuValue::kAtMost1: return "<=1";
    case MuValue::kTwo: return "=2";
    case MuValue::kThree: return "=3";
    case MuValue::kFour: return "=4";
    case MuValue::kAtLeast5: return ">=5";
  }
  return "?";
}

inline bool is_disjoint_paths(const Graph& g) { return g.max_degree() <= 2 && is_forest(g); }

inline MuClass classify_mu(const Graph& g) {
  if (is_disjoint_paths(g)) return {MuValue::kAtMost1};
  if (is_outerplanar(g)) return {MuValue::kTwo};
  if (is_planar(g)) return {MuValue::kThree};
  if (is_linkless(g)) return {MuValue::kFour};
  return {MuValue::kAtLeast5};
}

struct MuJoinBound {
  int upper = 0;
  bool exact = false;  ///< v is universal and g has an edge, so mu(G) == upper
};

/// mu(G) <= mu(G - v) + 1, with equality when v is adjacent to every other
/// vertex and G has at least one edge.
inline MuJoinBound mu_join_bound(const Graph& g, Vertex v, int mu_without) {
  if (v < 0 || v >= g.order()) throw DomainError("vertex " + std::to_string(v) + " out of range");
  if (mu_without < 0) throw DomainError("mu bound must be nonnegative");
  return {mu_without + 1, g.degree(v) == g.order() - 1 && g.size() > 0};
}

inline MuJoinBound mu_join_bound(const Graph& g, Vertex v, MuClass without) {
  if (without.value == MuValue::kAtLeast5) throw DomainError("class >=5 is not an upper bound");
  return mu_join_bound(g, v, without.level());
}

/// e(G) <= m n - m(m+1)/2 for a graph of class at most m (m in 1..4).
inline bool check_problem1(const Graph& g, int m) {
  if (m < 1 || m > 4) throw DomainError("m must lie in 1..4 for a decidable class");
  if (!classify_mu(g).at_most(m)) throw PreconditionError("graph is not in the class mu <= " + std::to_string(m));
  const long n = g.order();
  return g.size() <= m * n - static_cast<long>(m) * (m + 1) / 2;
}

/// e(G) <= 3n - 9 for a bipartite linklessly embeddable graph. Report only.
inline bool check_problem2(const Graph& g) {
  if (!is_bipartite(g)) throw PreconditionError("graph is not bipartite");
  if (!is_linkless(g)) throw PreconditionError("graph is not linklessly embeddable");
  return g.size() <= 3L * g.order() - 9;
}

/// classify_mu(K_{m,m}) equals m+1, for m in 3..4.
inline bool mu_kmm_check(int m) {
  if (m < 3 || m > 4) throw DomainError("m must lie in 3..4");
  const MuClass c = classify_mu(graphs::complete_bipartite(m, m));
  return c.level() == m + 1;
}

}  // namespace sml
