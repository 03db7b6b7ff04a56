#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "sml/constructions.hpp"
#include "sml/spectral.hpp"
#include "support/oracles.hpp"

using namespace sml;
using Catch::Matchers::WithinAbs;

namespace {

/// Dense symmetric eigensolver as an independent reference.
double dense_lambda(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.order(), g.order());
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

void check_eigen_result(const Graph& g, const EigenResult& r) {
  REQUIRE(r.vector.size() == static_cast<std::size_t>(g.order()));
  REQUIRE(r.residual <= 1e-10);
  double top = 0.0;
  for (double x : r.vector) {
    REQUIRE(x >= 0.0);
    top = std::max(top, x);
  }
  REQUIRE(top == 1.0);
  REQUIRE(r.vector[r.max_vertex] == 1.0);
  for (Vertex v = 0; v < g.order(); ++v) {
    double ax = 0.0;
    mask::for_each(g.neighbors(v), [&](Vertex u) { ax += r.vector[u]; });
    REQUIRE(std::abs(ax - r.lambda * r.vector[v]) <= 1e-10);
  }
}

}  // namespace

TEST_CASE("spectral radius of named graphs", "[spectral]") {
  for (int n = 2; n <= 20; ++n) CHECK_THAT(spectral_radius(graphs::complete(n)).lambda, WithinAbs(n - 1, 1e-10));
  for (int n = 3; n <= 20; ++n) CHECK_THAT(spectral_radius(graphs::cycle(n)).lambda, WithinAbs(2.0, 1e-10));
  for (int r = 3; r <= 7; ++r)
    for (int n = r; n <= 20; ++n)
      CHECK_THAT(spectral_radius(graphs::complete_bipartite(r - 2, n - r + 2)).lambda,
                 WithinAbs(std::sqrt((r - 2.0) * (n - r + 2.0)), 1e-10));
  // Quotient [[1,3],[2,0]] has eigenvalues (1 ± 5)/2.
  CHECK_THAT(spectral_radius(join(graphs::complete(2), Graph(3))).lambda, WithinAbs(3.0, 1e-10));
  CHECK(spectral_radius(Graph(1)).lambda == 0.0);
  CHECK_THROWS_AS(spectral_radius(Graph(0)), DomainError);
  CHECK_THROWS_AS(spectral_radius(graphs::path(5), 1e-30), DomainError);
}

TEST_CASE("power iteration agrees with a dense eigensolver", "[spectral]") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = oracle::random_graph(rng, 1 + trial % 30, 0.05 + 0.9 * ((trial * 37) % 100) / 100.0);
    const EigenResult r = spectral_radius(g);
    check_eigen_result(g, r);
    REQUIRE_THAT(r.lambda, WithinAbs(dense_lambda(g), 1e-9));
  }
  for (const Graph& g : {graphs::path(12), graphs::cycle(12), graphs::complete_bipartite(5, 7),
                         construct_cdv_extremal(20, 4), construct_kst_extremal(30, 3, 4)}) {
    check_eigen_result(g, spectral_radius(g));
    REQUIRE_THAT(spectral_radius(g).lambda, WithinAbs(dense_lambda(g), 1e-9));
  }
}

TEST_CASE("disconnected graphs use the dominant component", "[spectral]") {
  const Graph g = disjoint_union(graphs::complete(3), graphs::complete(4));
  const EigenResult r = spectral_radius(g);
  CHECK_THAT(r.lambda, WithinAbs(3.0, 1e-12));
  for (Vertex v = 0; v < 3; ++v) CHECK(r.vector[v] == 0.0);
  for (Vertex v = 3; v < 7; ++v) CHECK_THAT(r.vector[v], WithinAbs(1.0, 1e-12));
  check_eigen_result(g, r);

  // Equal components: the lower one wins.
  const EigenResult tie = spectral_radius(disjoint_union(graphs::cycle(4), graphs::cycle(4)));
  CHECK(tie.vector[0] == 1.0);
  CHECK(tie.vector[4] == 0.0);
  CHECK(tie.max_vertex == 0);

  const EigenResult isolated = spectral_radius(Graph(3));
  CHECK(isolated.lambda == 0.0);
  CHECK(isolated.vector == std::vector<double>{1.0, 0.0, 0.0});
}

TEST_CASE("spectral radius is deterministic", "[spectral]") {
  const Graph g = construct_cdv_extremal(15, 3);
  const EigenResult a = spectral_radius(g);
  const EigenResult b = spectral_radius(g);
  CHECK(a.lambda == b.lambda);
  CHECK(a.vector == b.vector);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("edge monotonicity and subgraph bound", "[spectral]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(rng, 2 + trial % 9, 0.35);
    const double base = spectral_radius(g).lambda;
    for (Vertex u = 0; u < g.order(); ++u) {
      for (Vertex v = u + 1; v < g.order(); ++v) {
        if (g.adjacent(u, v)) {
          REQUIRE(spectral_radius(delete_edge(g, u, v)).lambda <= base + 1e-10);
          continue;
        }
        const double bigger = spectral_radius(add_edge(g, u, v)).lambda;
        REQUIRE(bigger >= base - 1e-12);
        if (is_connected(g)) REQUIRE(bigger - base > 1e-12);
      }
    }
    for (Vertex v = 0; v < g.order() && g.order() > 1; ++v)
      REQUIRE(spectral_radius(delete_vertex(g, v)).lambda <= base + 1e-10);
  }
}

TEST_CASE("rayleigh delta", "[spectral]") {
  const Graph p4 = graphs::path(4);
  const EigenResult r = spectral_radius(p4);
  const std::vector<Edge> none;
  const std::vector<Edge> ends{{0, 3}};
  CHECK(rayleigh_delta(p4, r.vector, none, ends) > 0.0);

  const std::vector<Edge> same{{1, 2}};
  CHECK(rayleigh_delta(p4, r.vector, same, same) == 0.0);

  // Star K_{1,4}: Perron vector (1, 1/2, 1/2, 1/2, 1/2), squared norm 2.
  // Moving leaf 1 from the centre to leaf 2: 2 (1/4 - 1/2) / 2 = -1/4.
  const Graph star = graphs::star(4);
  const EigenResult s = spectral_radius(star);
  CHECK_THAT(s.vector[1], WithinAbs(0.5, 1e-12));
  const std::vector<Edge> removed{{0, 1}};
  const std::vector<Edge> added{{1, 2}};
  CHECK_THAT(rayleigh_delta(star, s.vector, removed, added), WithinAbs(-0.25, 1e-12));

  const std::vector<double> empty;
  CHECK_THROWS_AS(rayleigh_delta(star, empty, removed, added), DomainError);
  CHECK_THROWS_AS(rayleigh_delta(star, s.vector, added, none), DomainError);
  CHECK_THROWS_AS(rayleigh_delta(star, s.vector, none, removed), DomainError);
}

TEST_CASE("quotient and closed-form bounds", "[spectral]") {
  CHECK_THAT(quotient_bound({.d = 1, .k = 0, .n1 = 2, .n2 = 3}), WithinAbs(3.0, 1e-12));
  for (int q = 1; q <= 30; ++q)
    CHECK_THAT(quotient_bound({.d = 0, .k = 0, .n1 = 1, .n2 = q}), WithinAbs(std::sqrt(q), 1e-12));
  CHECK_THROWS_AS(quotient_bound({.d = -1, .k = 0, .n1 = 2, .n2 = 3}), DomainError);
  CHECK_THROWS_AS((QuotientMatrix{.d = 2, .k = 0, .n1 = 2, .n2 = 3}.validate()), DomainError);
  CHECK_THROWS_AS((QuotientMatrix{.d = 0, .k = 3, .n1 = 2, .n2 = 3}.validate()), DomainError);
  CHECK_THROWS_AS(quotient_bound({.d = 0, .k = 0, .n1 = 0, .n2 = 3}), DomainError);

  CHECK_THAT(kst_lambda_bound(5, 2, 2), WithinAbs((1.0 + std::sqrt(17.0)) / 2.0, 1e-12));
  CHECK_THAT(kst_lambda_bound(5, 2, 2), WithinAbs(spectral_radius(construct_kst_extremal(5, 2, 2)).lambda, 1e-9));
  CHECK_THAT(kst_lambda_bound(10, 2, 3), WithinAbs(spectral_radius(construct_kst_extremal(10, 2, 3)).lambda, 1e-9));
  for (int s = 2; s <= 8; ++s)
    for (int t = s; t <= 10; ++t) {
      const double v = kst_lambda_bound(s, s, t);
      REQUIRE(std::isfinite(v));
      REQUIRE(v >= s - 1);
    }
  CHECK_THROWS_AS(kst_lambda_bound(5, 3, 2), DomainError);

  for (int s = 2; s <= 6; ++s)
    for (int t = s; t <= 6; ++t)
      for (int n = s; n <= 200; ++n) {
        const double q = quotient_bound({.d = s - 2, .k = t - 1, .n1 = s - 1, .n2 = n - s + 1});
        REQUIRE_THAT(q, WithinAbs(kst_lambda_bound(n, s, t), 1e-12));
      }
}

TEST_CASE("lower bound from the complete bipartite subgraph", "[spectral]") {
  for (int r = 3; r <= 8; ++r)
    for (int n = r; n <= 30; ++n)
      REQUIRE(spectral_radius(construct_kr_extremal(n, r)).lambda >= kr_lambda_lower_bound(n, r) - 1e-12);
}

TEST_CASE("interlacing bound examples", "[spectral]") {
  const auto tight = check_interlacing_bound(graphs::complete(2), graphs::copies(graphs::complete(3), 3));
  CHECK(tight.tight);
  CHECK_THAT(tight.bound, WithinAbs((3.0 + std::sqrt(73.0)) / 2.0, 1e-12));
  CHECK_THAT(tight.lambda, WithinAbs(tight.bound, 1e-9));

  const auto fan = check_interlacing_bound(Graph(1), graphs::path(3));
  CHECK_FALSE(fan.tight);
  CHECK(fan.lambda < fan.bound - 1e-9);

  const auto indep = check_interlacing_bound(graphs::complete(2), Graph(3));
  CHECK(indep.tight);
  CHECK_THAT(indep.lambda, WithinAbs(indep.bound, 1e-9));

  CHECK_THROWS_AS(check_interlacing_bound(graphs::path(3), Graph(2)), DomainError);
}
