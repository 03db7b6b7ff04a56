#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "sml/error.hpp"
#include "sml/graph.hpp"

namespace sml {

/// Largest adjacency eigenvalue with a nonnegative eigenvector scaled so its
/// largest entry is 1.
struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;
  double residual = 0.0;  ///< max_i |(A x)_i - lambda x_i|
  long iterations = 0;
  Vertex max_vertex = 0;  ///< lowest vertex with vector entry 1
};

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr long kMaxPowerIterations = 1'000'000;

namespace detail {

inline double inf_norm_residual(const Graph& g, std::span<const Vertex> verts, std::span<const double> x,
                                double lambda) {
  double worst = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < verts.size(); ++j)
      if (g.adjacent(verts[i], verts[j])) ax += x[j];
    worst = std::max(worst, std::abs(ax - lambda * x[i]));
  }
  return worst;
}

/// Power iteration restricted to one connected component.
inline EigenResult component_power_iteration(const Graph& g, VertexMask comp, double tol) {
  const std::vector<Vertex> verts = mask::to_vector(comp);
  const std::size_t n = verts.size();
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < n; ++i) local[verts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> adj(n);
  int max_deg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mask::for_each(g.neighbors(verts[i]) & comp, [&](Vertex v) { adj[i].push_back(local[v]); });
    max_deg = std::max(max_deg, static_cast<int>(adj[i].size()));
  }

  EigenResult res;
  res.vector.assign(n, 1.0);
  if (n == 1) return res;

  // A + (max_deg + 1) I has a strictly dominant Perron eigenvalue even when
  // the component is bipartite.
  const double shift = max_deg + 1.0;
  std::vector<double> x(n, 1.0), ax(n);
  for (long it = 1; it <= kMaxPowerIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j : adj[i]) sum += x[j];
      ax[i] = sum;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += x[i] * ax[i];
      den += x[i] * x[i];
    }
    const double lambda = num / den;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(ax[i] - lambda * x[i]));
    if (residual <= tol) {
      res.lambda = lambda;
      res.vector = x;
      res.residual = residual;
      res.iterations = it;
      return res;
    }
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ax[i] + shift * x[i];
      top = std::max(top, x[i]);
    }
    for (double& xi : x) xi /= top;
  }
  throw DomainError("power iteration did not converge within " + std::to_string(kMaxPowerIterations) +
                    " iterations at tolerance " + std::to_string(tol));
}

}  // namespace detail

/// Spectral radius and Perron vector of the adjacency matrix.
///
/// Each component is solved by power iteration on A + (Δ+1)I from the
/// all-ones vector; the component with the largest eigenvalue wins (lowest
/// component on ties within 1e-12) and every other entry is zero. The result
/// is rescaled so the largest entry is exactly 1.
inline EigenResult spectral_radius(const Graph& g, double tol = kDefaultEigenTolerance) {
  if (g.order() < 1) throw DomainError("spectral radius needs at least one vertex");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  EigenResult best;
  VertexMask best_comp = 0;
  long total_iterations = 0;
  for (VertexMask comp : components(g)) {
    EigenResult r = detail::component_power_iteration(g, comp, tol);
    total_iterations += r.iterations;
    if (best_comp == 0 || r.lambda > best.lambda + 1e-12) {
      best = std::move(r);
      best_comp = comp;
    }
  }

  EigenResult out;
  out.lambda = best.lambda;
  out.iterations = total_iterations;
  out.vector.assign(g.order(), 0.0);
  const std::vector<Vertex> verts = mask::to_vector(best_comp);
  const double top = *std::max_element(best.vector.begin(), best.vector.end());
  for (std::size_t i = 0; i < verts.size(); ++i) out.vector[verts[i]] = best.vector[i] / top;
  out.max_vertex = verts.front();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (best.vector[i] == top) {
      out.max_vertex = verts[i];
      out.vector[verts[i]] = 1.0;
      break;
    }
  }
  std::vector<Vertex> all = mask::to_vector(g.vertices());
  out.residual = detail::inf_norm_residual(g, all, out.vector, out.lambda);
  return out;
}

/// Rayleigh-quotient change x^T(B - A)x / x^T x when `removed` edges are
/// deleted from g and `added` pairs inserted. Positive values certify that
/// the rewired graph has a strictly larger spectral radius when x is a
/// Perron vector of g. A pair may appear in both lists, cancelling out.
inline double rayleigh_delta(const Graph& g, std::span<const double> x, std::span<const Edge> removed,
                             std::span<const Edge> added) {
  if (x.empty()) throw DomainError("empty vector");
  if (static_cast<int>(x.size()) != g.order()) throw DomainError("vector length does not match vertex count");
  auto same = [](Edge a, Edge b) {
    return (a.first == b.first && a.second == b.second) || (a.first == b.second && a.second == b.first);
  };
  double delta = 0.0;
  for (auto [u, v] : removed) {
    if (u == v || !g.adjacent(u, v)) throw DomainError("removed pair is not an edge of the graph");
    delta -= x[u] * x[v];
  }
  for (auto e : added) {
    auto [u, v] = e;
    if (u == v) throw DomainError("added pair is a loop");
    if (g.adjacent(u, v) && std::none_of(removed.begin(), removed.end(), [&](Edge r) { return same(r, e); })) {
      throw DomainError("added pair is already an edge of the graph");
    }
    delta += x[u] * x[v];
  }
  double norm2 = 0.0;
  for (double xi : x) norm2 += xi * xi;
  if (norm2 == 0.0) throw DomainError("zero vector");
  return 2.0 * delta / norm2;
}

// ---------------------------------------------------------------------------
// Closed-form bounds

/// The 2x2 matrix [[d, n2], [n1, k]] for the join of a d-regular graph on n1
/// vertices and a graph of maximum degree k on n2 vertices.
struct QuotientMatrix {
  int d = 0;
  int k = 0;
  int n1 = 1;
  int n2 = 1;

  void validate() const {
    if (n1 < 1 || n2 < 1) throw DomainError("quotient parts must be nonempty");
    if (d < 0 || d > n1 - 1) throw DomainError("d must lie in 0..n1-1");
    if (k < 0 || k > n2 - 1) throw DomainError("k must lie in 0..n2-1");
  }
};

/// Larger eigenvalue of the quotient matrix. Only nonnegative entries and
/// nonempty parts are required here, so the closed form can be evaluated for
/// every n; validate() checks that the matrix comes from an actual join.
inline double quotient_bound(const QuotientMatrix& q) {
  if (q.n1 < 1 || q.n2 < 1) throw DomainError("quotient parts must be nonempty");
  if (q.d < 0 || q.k < 0) throw DomainError("quotient degrees must be nonnegative");
  const double d = q.d, k = q.k;
  return ((d + k) + std::sqrt((d - k) * (d - k) + 4.0 * q.n1 * static_cast<double>(q.n2))) / 2.0;
}

/// Upper bound on the spectral radius of an n-vertex K_{s,t}-minor-free graph
/// (n large), attained by K_{s-1} joined to disjoint copies of K_t.
inline double kst_lambda_bound(long n, long s, long t) {
  if (s < 2 || t < s) throw DomainError("need 2 <= s <= t");
  if (n < s) throw DomainError("n must be at least s");
  const double a = static_cast<double>(s + t - 3);
  const double inner = static_cast<double>((s - 1) * (n - s + 1) - (s - 2) * (t - 1));
  return (a + std::sqrt(a * a + 4.0 * inner)) / 2.0;
}

/// sqrt((r-2)(n-r+2)): the spectral radius of K_{r-2,n-r+2}, a K_r-minor-free
/// subgraph of the K_r construction.
inline double kr_lambda_lower_bound(long n, long r) {
  if (r < 3) throw DomainError("r must be at least 3");
  if (n < r - 2) throw DomainError("n must be at least r-2");
  return std::sqrt(static_cast<double>((r - 2) * (n - r + 2)));
}

struct InterlacingCheck {
  double bound = 0.0;
  double lambda = 0.0;
  bool tight = false;  ///< h2 is k-regular, decided structurally
  QuotientMatrix quotient;
};

/// Compares lambda_1(h1 v h2) with the quotient bound. `h1` must be regular.
inline InterlacingCheck check_interlacing_bound(const Graph& h1, const Graph& h2,
                                                double tol = kDefaultEigenTolerance) {
  if (h1.order() == 0 || h2.order() == 0) throw DomainError("both join parts must be nonempty");
  if (!is_regular(h1)) throw DomainError("first join part is not regular");
  InterlacingCheck out;
  out.quotient = {.d = h1.max_degree(), .k = h2.max_degree(), .n1 = h1.order(), .n2 = h2.order()};
  out.quotient.validate();
  out.bound = quotient_bound(out.quotient);
  out.lambda = spectral_radius(join(h1, h2), tol).lambda;
  out.tight = is_regular(h2);
  return out;
}

}  // namespace sml
