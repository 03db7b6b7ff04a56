#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sml/cdv.hpp"
#include "sml/constructions.hpp"
#include "sml/error.hpp"
#include "sml/minors.hpp"

namespace sml {

struct KrMinorFree {
  int r = 3;
  bool operator==(const KrMinorFree&) const = default;
};

struct KstMinorFree {
  int s = 2;
  int t = 2;
  bool operator==(const KstMinorFree&) const = default;
};

struct CdvAtMost {
  int m = 1;
  bool operator==(const CdvAtMost&) const = default;
};

/// A minor-closed family: no K_r minor, no K_{s,t} minor, or mu(G) <= m.
using FamilySpec = std::variant<KrMinorFree, KstMinorFree, CdvAtMost>;

inline void validate(const FamilySpec& family) {
  std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, KrMinorFree>) {
          if (f.r < 3) throw DomainError("r must be at least 3");
        } else if constexpr (std::is_same_v<F, KstMinorFree>) {
          if (f.s < 2 || f.t < f.s) throw DomainError("need 2 <= s <= t");
        } else {
          if (f.m < 1 || f.m > 4) throw DomainError("m must lie in 1..4");
        }
      },
      family);
}

/// "kr", "kst" or "cdv".
inline std::string family_tag(const FamilySpec& family) {
  switch (family.index()) {
    case 0: return "kr";
    case 1: return "kst";
    default: return "cdv";
  }
}

/// Parameters as "r=5", "s=2;t=3" or "m=3".
inline std::string family_params(const FamilySpec& family) {
  if (auto* f = std::get_if<KrMinorFree>(&family)) return "r=" + std::to_string(f->r);
  if (auto* f = std::get_if<KstMinorFree>(&family)) return "s=" + std::to_string(f->s) + ";t=" + std::to_string(f->t);
  return "m=" + std::to_string(std::get<CdvAtMost>(family).m);
}

/// The excluded graph for the K_r and K_{s,t} families.
inline std::optional<Graph> excluded_minor(const FamilySpec& family) {
  if (auto* f = std::get_if<KrMinorFree>(&family)) return graphs::complete(f->r);
  if (auto* f = std::get_if<KstMinorFree>(&family)) return graphs::complete_bipartite(f->s, f->t);
  return std::nullopt;
}

inline bool family_filter(const FamilySpec& family, const Graph& g) {
  validate(family);
  if (auto h = excluded_minor(family)) return !has_minor(*h, g).has_value();
  return classify_mu(g).at_most(std::get<CdvAtMost>(family).m);
}

/// The candidate extremal graph on n vertices, or nullopt when n is below
/// the construction's range.
inline std::optional<Graph> family_construction(const FamilySpec& family, int n) {
  validate(family);
  if (auto* f = std::get_if<KrMinorFree>(&family)) {
    if (n < f->r - 1) return std::nullopt;
    return construct_kr_extremal(n, f->r);
  }
  if (auto* f = std::get_if<KstMinorFree>(&family)) {
    if (n < f->s) return std::nullopt;
    return construct_kst_extremal(n, f->s, f->t);
  }
  const int m = std::get<CdvAtMost>(family).m;
  if (m < 2 || n < m) return std::nullopt;
  return construct_cdv_extremal(n, m);
}

// ---------------------------------------------------------------------------
// Clique completion

struct CliqueCompletion {
  bool safe = false;
  std::vector<Edge> deleted;  ///< edges removed before completing the clique
  Graph completed;            ///< the graph after deletion and completion
};

namespace detail {

inline Graph complete_on(const Graph& g, VertexMask set) {
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  mask::for_each(set, [&](Vertex v) { rows[v] |= set & ~mask::bit(v); });
  return Graph::from_rows(g.order(), rows);
}

inline long binomial2(long x) { return x * (x - 1) / 2; }

}  // namespace detail

/// Vertices outside `set` adjacent to every vertex of `set`.
inline VertexMask common_neighborhood(const Graph& g, VertexMask set) {
  VertexMask common = g.vertices() & ~set;
  mask::for_each(set, [&](Vertex v) { common &= g.neighbors(v); });
  return common;
}

/// Completes `clique` to a clique in a family member and reports whether the
/// result stays in the family, after deleting at most `deletion_budget`
/// edges outside the clique (searched exhaustively, smallest sets first).
///
/// Hypotheses, with T the common neighbourhood of the clique set:
///   K_r family:     |set| = r-2 and |T| >= max(r+1, C(r-2,2)+3)
///   K_{s,t} family: |set| = s-1 and |T| >  C(s-1,2)
///   mu <= m family: |set| >= 1   and |T| >  C(|set|,2)
/// A violated hypothesis (including g not being a member) raises
/// PreconditionError rather than returning an unsafe result.
inline CliqueCompletion complete_clique(const Graph& g, VertexMask clique, const FamilySpec& family,
                                        int deletion_budget = 0) {
  validate(family);
  if ((clique & ~g.vertices()) != 0) throw DomainError("clique set references a missing vertex");
  if (!family_filter(family, g)) throw PreconditionError("graph is not a member of the family");
  const long size = mask::count(clique);
  const long common = mask::count(common_neighborhood(g, clique));
  if (auto* f = std::get_if<KrMinorFree>(&family)) {
    if (size != f->r - 2) throw PreconditionError("clique set must have r-2 vertices");
    if (common < std::max<long>(f->r + 1, detail::binomial2(f->r - 2) + 3)) {
      throw PreconditionError("common neighbourhood too small for clique completion");
    }
  } else if (auto* f = std::get_if<KstMinorFree>(&family)) {
    if (size != f->s - 1) throw PreconditionError("clique set must have s-1 vertices");
    if (common <= detail::binomial2(f->s - 1)) throw PreconditionError("common neighbourhood too small");
  } else {
    if (size < 1) throw PreconditionError("clique set must be nonempty");
    if (common <= detail::binomial2(size)) throw PreconditionError("common neighbourhood too small");
  }
  if (deletion_budget < 0) throw DomainError("deletion budget must be nonnegative");

  std::vector<Edge> candidates;
  for (auto [u, v] : g.edges())
    if (!(mask::contains(clique, u) && mask::contains(clique, v))) candidates.emplace_back(u, v);

  CliqueCompletion out;
  std::vector<std::size_t> pick;
  // Subsets of `candidates` of size `k`, lexicographic.
  auto try_size = [&](int k) -> bool {
    if (k > static_cast<int>(candidates.size())) return false;
    pick.resize(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
      Graph h = g;
      for (std::size_t i : pick) h = delete_edge(h, candidates[i].first, candidates[i].second);
      Graph completed = detail::complete_on(h, clique);
      if (family_filter(family, completed)) {
        out.safe = true;
        out.completed = completed;
        for (std::size_t i : pick) out.deleted.push_back(candidates[i]);
        return true;
      }
      int i = k - 1;
      while (i >= 0 && pick[i] == candidates.size() - k + i) --i;
      if (i < 0) return false;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  };
  for (int k = 0; k <= deletion_budget; ++k)
    if (try_size(k)) return out;
  out.completed = detail::complete_on(g, clique);
  return out;
}

/// Whether completing `clique` keeps g in the family. For the K_r family no
/// edges may be deleted; for the other families up to C(|clique|, 2) edges
/// may be deleted first.
inline bool clique_completion_safe(const Graph& g, VertexMask clique, const FamilySpec& family) {
  const int budget = std::holds_alternative<KrMinorFree>(family)
                         ? 0
                         : static_cast<int>(detail::binomial2(mask::count(clique)));
  return complete_clique(g, clique, family, budget).safe;
}

}  // namespace sml
