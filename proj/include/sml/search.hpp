#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sml/constructions.hpp"
#include "sml/enumerate.hpp"
#include "sml/family.hpp"
#include "sml/graph6.hpp"
#include "sml/spectral.hpp"

namespace sml {

/// Per-n extremal findings for one family, compared with the family's
/// construction.
struct SearchReport {
  int n = 0;
  FamilySpec family;
  double max_lambda = 0.0;
  std::string argmax_graph6;
  int max_edges = 0;
  std::string edge_argmax_graph6;
  std::optional<double> construction_lambda;  ///< absent when n is below the construction's range
  std::optional<int> construction_edges;
  std::string construction_graph6;
  bool construction_member = false;
  bool lambda_match = false;  ///< construction is a member and within 1e-9 of max_lambda
  long bound_violations = 0;  ///< K_{s,t} family only: members above kst_lambda_bound + 1e-9
  long members = 0;
  long graphs_scanned = 0;

  bool operator==(const SearchReport&) const = default;
};

inline constexpr double kLambdaMatchTolerance = 1e-9;

namespace detail {

/// Spectral radii are compared on a 1e-9 grid so ties resolve by graph6 and
/// the merge is associative regardless of chunking.
inline long long lambda_key(double lambda) { return std::llround(lambda * 1e9); }

struct ScanAccumulator {
  long scanned = 0;
  long members = 0;
  long violations = 0;
  bool any = false;
  double lambda = 0.0;
  std::string lambda_g6;
  int edges = 0;
  std::string edges_g6;

  void offer(double lam, int e, const std::string& g6) {
    if (!any || lambda_key(lam) > lambda_key(lambda) || (lambda_key(lam) == lambda_key(lambda) && g6 < lambda_g6)) {
      lambda = lam;
      lambda_g6 = g6;
    }
    if (!any || e > edges || (e == edges && g6 < edges_g6)) {
      edges = e;
      edges_g6 = g6;
    }
    any = true;
  }

  void merge(const ScanAccumulator& o) {
    scanned += o.scanned;
    members += o.members;
    violations += o.violations;
    if (!o.any) return;
    if (!any) {
      lambda = o.lambda;
      lambda_g6 = o.lambda_g6;
      edges = o.edges;
      edges_g6 = o.edges_g6;
      any = true;
      return;
    }
    if (lambda_key(o.lambda) > lambda_key(lambda) ||
        (lambda_key(o.lambda) == lambda_key(lambda) && o.lambda_g6 < lambda_g6)) {
      lambda = o.lambda;
      lambda_g6 = o.lambda_g6;
    }
    if (o.edges > edges || (o.edges == edges && o.edges_g6 < edges_g6)) {
      edges = o.edges;
      edges_g6 = o.edges_g6;
    }
  }
};

inline ScanAccumulator scan_chunk(const FamilySpec& family, int n, std::span<const Graph> chunk) {
  ScanAccumulator acc;
  const auto* kst = std::get_if<KstMinorFree>(&family);
  const double bound = (kst != nullptr && n >= kst->s) ? kst_lambda_bound(n, kst->s, kst->t)
                                                       : std::numeric_limits<double>::infinity();
  for (const Graph& g : chunk) {
    if (g.order() != n) {
      throw DomainError("graph with " + std::to_string(g.order()) + " vertices in a scan for n = " + std::to_string(n));
    }
    ++acc.scanned;
    if (!family_filter(family, g)) continue;
    ++acc.members;
    const double lam = n == 0 ? 0.0 : spectral_radius(g).lambda;
    if (lam > bound + kLambdaMatchTolerance) ++acc.violations;
    acc.offer(lam, g.size(), encode_graph6(g));
  }
  return acc;
}

}  // namespace detail

/// Default worker count: SML_THREADS if set, else the hardware concurrency.
inline int default_parallelism() {
  if (const char* env = std::getenv("SML_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Scans every graph in `source`, recording the spectral-radius maximizer and
/// the edge maximizer among family members (ties broken by smallest graph6),
/// and compares them with the family's construction. The result does not
/// depend on `threads`.
inline SearchReport scan_family(const FamilySpec& family, int n, std::span<const Graph> source, int threads = 1) {
  validate(family);
  if (n < 1) throw DomainError("n must be at least 1");
  threads = std::max(1, threads);
  const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(1, source.size()));
  const std::size_t per = (source.size() + chunks - 1) / chunks;

  std::vector<detail::ScanAccumulator> parts(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto work = [&](std::size_t c) {
    try {
      const std::size_t begin = std::min(source.size(), c * per);
      const std::size_t end = std::min(source.size(), begin + per);
      parts[c] = detail::scan_chunk(family, n, source.subspan(begin, end - begin));
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(work, c);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::ScanAccumulator total;
  for (const auto& p : parts) total.merge(p);
  if (!total.any) throw DomainError("no family member among the scanned graphs");

  SearchReport report;
  report.n = n;
  report.family = family;
  report.max_lambda = total.lambda;
  report.argmax_graph6 = total.lambda_g6;
  report.max_edges = total.edges;
  report.edge_argmax_graph6 = total.edges_g6;
  report.bound_violations = total.violations;
  report.members = total.members;
  report.graphs_scanned = total.scanned;
  if (auto c = family_construction(family, n)) {
    report.construction_lambda = spectral_radius(*c).lambda;
    report.construction_edges = c->size();
    report.construction_graph6 = encode_graph6(*c);
    report.construction_member = family_filter(family, *c);
    report.lambda_match = report.construction_member &&
                          std::abs(*report.construction_lambda - report.max_lambda) <= kLambdaMatchTolerance;
  }
  return report;
}

inline SearchReport search_max_lambda(const FamilySpec& family, int n, std::span<const Graph> source,
                                      int threads = 1) {
  return scan_family(family, n, source, threads);
}

inline SearchReport search_max_edges(const FamilySpec& family, int n, std::span<const Graph> source,
                                     int threads = 1) {
  return scan_family(family, n, source, threads);
}

/// Scans the internal enumeration of all graphs on n <= 7 vertices.
inline SearchReport search_max_lambda(const FamilySpec& family, int n, int threads = 1) {
  const auto all = enumerate_graphs(n);
  return scan_family(family, n, all, threads);
}

inline SearchReport search_max_edges(const FamilySpec& family, int n, int threads = 1) {
  const auto all = enumerate_graphs(n);
  return scan_family(family, n, all, threads);
}

// ---------------------------------------------------------------------------
// Membership report

struct MembershipReport {
  bool member = false;
  double lambda = 0.0;
  std::optional<double> bound;         ///< kst: upper bound; kr: lower bound of the construction
  std::optional<bool> equality_structure;  ///< kst only
  std::optional<bool> congruent;       ///< kst only: n == s-1 (mod t)
  int apex_count = 0;
  ResidualClass residual;
};

/// Membership, spectral radius and the applicable bound. For the K_{s,t}
/// family also decides whether g is K_{s-1} joined to disjoint copies of K_t.
inline MembershipReport verify_membership(const Graph& g, const FamilySpec& family) {
  validate(family);
  MembershipReport out;
  out.member = family_filter(family, g);
  out.lambda = g.order() == 0 ? 0.0 : spectral_radius(g).lambda;
  const ApexDecomposition dec = decompose_apex_clique(g);
  out.apex_count = mask::count(dec.apex);
  out.residual = recognize_residual(dec.residual);
  const int n = g.order();
  if (auto* f = std::get_if<KrMinorFree>(&family)) {
    if (n >= f->r - 2) out.bound = kr_lambda_lower_bound(n, f->r);
  } else if (auto* f = std::get_if<KstMinorFree>(&family)) {
    if (n >= f->s) out.bound = kst_lambda_bound(n, f->s, f->t);
    out.congruent = ((n - (f->s - 1)) % f->t + f->t) % f->t == 0;
    bool structure = false;
    if (out.apex_count == f->s - 1) {
      structure = out.residual.shape == ResidualShape::kDisjointCliques && out.residual.clique_size == f->t;
    } else if (out.apex_count > f->s - 1) {
      // Extra universal vertices sit in the residual, which is then connected:
      // only a single K_t fits, making g complete on s-1+t vertices.
      structure = n == f->s - 1 + f->t && out.apex_count == n;
    }
    out.equality_structure = structure;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

/// Twelve digits after the decimal point.
inline std::string format_number(double v) {
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

inline std::string csv_header() {
  return "n,family,params,max_lambda,argmax_g6,max_edges,edge_argmax_g6,construction_lambda,lambda_match,"
         "bound_violations,graphs_scanned";
}

inline std::string to_csv_row(const SearchReport& r) {
  std::string row;
  row += std::to_string(r.n) + ',' + family_tag(r.family) + ',' + family_params(r.family) + ',';
  row += format_number(r.max_lambda) + ',' + r.argmax_graph6 + ',';
  row += std::to_string(r.max_edges) + ',' + r.edge_argmax_graph6 + ',';
  row += (r.construction_lambda ? format_number(*r.construction_lambda) : std::string()) + ',';
  row += std::string(r.lambda_match ? "true" : "false") + ',';
  row += std::to_string(r.bound_violations) + ',' + std::to_string(r.graphs_scanned);
  return row;
}

inline nlohmann::ordered_json to_json(const SearchReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["family"] = family_tag(r.family);
  j["params"] = family_params(r.family);
  j["max_lambda"] = std::stod(format_number(r.max_lambda));
  j["argmax_g6"] = r.argmax_graph6;
  j["max_edges"] = r.max_edges;
  j["edge_argmax_g6"] = r.edge_argmax_graph6;
  j["construction_lambda"] =
      r.construction_lambda ? nlohmann::ordered_json(std::stod(format_number(*r.construction_lambda)))
                            : nlohmann::ordered_json();
  j["lambda_match"] = r.lambda_match;
  j["bound_violations"] = r.bound_violations;
  j["graphs_scanned"] = r.graphs_scanned;
  return j;
}

}  // namespace sml
