#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "sml/canonical.hpp"
#include "sml/constructions.hpp"
#include "sml/enumerate.hpp"
#include "sml/graph.hpp"
#include "sml/graph6.hpp"
#include "support/oracles.hpp"

using namespace sml;

namespace {

void check_simple(const Graph& g) {
  int degree_sum = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    REQUIRE_FALSE(mask::contains(g.neighbors(v), v));
    mask::for_each(g.neighbors(v), [&](Vertex u) { REQUIRE(g.adjacent(u, v)); });
    degree_sum += g.degree(v);
  }
  REQUIRE(degree_sum == 2 * g.size());
}

}  // namespace

TEST_CASE("graph construction rejects loops and bad vertices", "[graph]") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Graph(65), DomainError);
  const std::vector<VertexMask> asym{0b10, 0b00};
  CHECK_THROWS_AS(Graph::from_rows(2, asym), DomainError);
  Graph g(4, {{0, 1}, {1, 0}, {2, 3}});
  CHECK(g.size() == 2);
}

TEST_CASE("graph6 encoding of small graphs", "[graph6]") {
  CHECK(encode_graph6(graphs::complete(2)) == "A_");
  CHECK(encode_graph6(Graph(0)) == "?");
  CHECK(encode_graph6(Graph(1)) == "@");
  CHECK(parse_graph6("@") == Graph(1));
  CHECK(parse_graph6("A_") == graphs::complete(2));
  CHECK(parse_graph6("?").order() == 0);

  // D?{ : bits 0000000000 1111 -> vertex 4 joined to 0..3.
  const Graph star = parse_graph6("D?{");
  CHECK(star == Graph(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}}));
  CHECK(encode_graph6(star) == "D?{");

  const Graph c4 = graphs::cycle(4);
  CHECK(parse_graph6(encode_graph6(c4)) == c4);
  CHECK(parse_graph6(">>graph6<<A_") == graphs::complete(2));
  CHECK(parse_graph6("A_\r\n") == graphs::complete(2));
}

TEST_CASE("graph6 rejects malformed input", "[graph6]") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("A"), ParseError);      // truncated bit section
  CHECK_THROWS_AS(parse_graph6("A__"), ParseError);    // trailing byte
  CHECK_THROWS_AS(parse_graph6("A!"), ParseError);     // below 63
  CHECK_THROWS_AS(parse_graph6("A\x7f"), ParseError);  // above 126
  CHECK_THROWS_AS(parse_graph6("~?"), ParseError);     // truncated length
  CHECK_THROWS_AS(parse_graph6("~?@@"), ParseError);   // 65 vertices: beyond the bitset limit
}

TEST_CASE("graph6 long length form", "[graph6]") {
  std::mt19937 rng(7);
  for (int n : {62, 63, 64}) {
    const Graph g = oracle::random_graph(rng, n, 0.3);
    const std::string code = encode_graph6(g);
    CHECK(code == oracle::encode_graph6(g));
    CHECK(parse_graph6(code) == g);
    if (n >= 63) {
      const std::string len{'~', static_cast<char>(63 + ((n >> 12) & 63)), static_cast<char>(63 + ((n >> 6) & 63)),
                            static_cast<char>(63 + (n & 63))};
      CHECK(code.substr(0, 4) == len);
    }
  }
}

TEST_CASE("graph6 agrees with the reference encoder on every graph up to 7 vertices", "[graph6]") {
  std::mt19937 rng(11);
  for (int n = 0; n <= 7; ++n) {
    for (const Graph& g : enumerate_graphs(n)) {
      const Graph shuffled = relabel(g, oracle::random_permutation(rng, n));
      for (const Graph& h : {g, shuffled}) {
        const std::string code = encode_graph6(h);
        REQUIRE(code == oracle::encode_graph6(h));
        REQUIRE(parse_graph6(code) == h);
        REQUIRE(encode_graph6(parse_graph6(code)) == code);
      }
    }
  }
}

TEST_CASE("join", "[graph]") {
  CHECK(join(Graph(1), Graph(4)) == graphs::star(4));
  const Graph j = join(graphs::complete(2), graphs::path(3));
  CHECK(j.order() == 5);
  CHECK(j.size() == 1 + 2 + 6);
  CHECK_THROWS_AS(join(Graph(40), Graph(30)), DomainError);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph a = oracle::random_graph(rng, 1 + trial % 9, 0.4);
    const Graph b = oracle::random_graph(rng, 1 + (trial * 7) % 11, 0.3);
    const Graph ab = join(a, b);
    check_simple(ab);
    REQUIRE(ab.size() == a.size() + b.size() + a.order() * b.order());
  }
}

TEST_CASE("contraction and deletion", "[graph]") {
  CHECK(isomorphic(contract_edge(graphs::cycle(4), 0, 1), graphs::complete(3)));
  CHECK(isomorphic(contract_edge(graphs::complete(4), 2, 3), graphs::complete(3)));
  CHECK(isomorphic(contract_edge(graphs::path(3), 0, 1), graphs::path(2)));
  CHECK_THROWS_AS(contract_edge(graphs::path(3), 0, 2), DomainError);

  CHECK(delete_vertex(graphs::complete(4), 1) == graphs::complete(3));
  CHECK(isomorphic(delete_edge(graphs::cycle(4), 0, 1), graphs::path(4)));
  CHECK(delete_vertex(graphs::star(5), 0) == Graph(5));
  CHECK_THROWS_AS(delete_vertex(graphs::complete(3), 3), DomainError);
  CHECK_THROWS_AS(delete_edge(graphs::path(3), 0, 2), DomainError);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = oracle::random_graph(rng, 2 + trial % 10, 0.45);
    for (auto [u, v] : g.edges()) {
      const Graph c = contract_edge(g, u, v);
      check_simple(c);
      REQUIRE(c.order() == g.order() - 1);
      REQUIRE(c.size() == g.size() - 1 - mask::count(g.neighbors(u) & g.neighbors(v)));
      const Graph d = delete_edge(g, u, v);
      check_simple(d);
      REQUIRE(d.size() == g.size() - 1);
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      const Graph d = delete_vertex(g, v);
      check_simple(d);
      REQUIRE(d.size() == g.size() - g.degree(v));
    }
  }
}

TEST_CASE("structural queries", "[graph]") {
  CHECK(girth(graphs::petersen()) == 5);
  CHECK(girth(graphs::path(6)) == 0);
  CHECK(girth(graphs::complete_bipartite(3, 3)) == 4);
  CHECK(is_bipartite(graphs::cycle(6)));
  CHECK_FALSE(is_bipartite(graphs::cycle(5)));
  CHECK(components(disjoint_union(graphs::path(3), graphs::cycle(3))).size() == 2);
  CHECK(is_regular(graphs::petersen()));
  CHECK(is_forest(graphs::star(4)));
}

TEST_CASE("extremal constructions match their edge formulas", "[constructions]") {
  CHECK(construct_kr_extremal(10, 5).size() == 24);
  CHECK(construct_kr_extremal(10, 5).size() == 3 * 10 - 6);
  CHECK(construct_kr_extremal(5, 3) == graphs::star(4));
  CHECK(construct_kst_extremal(10, 2, 3).size() == 18);
  CHECK(isomorphic(construct_kst_extremal(10, 2, 3), join(Graph(1), graphs::copies(graphs::complete(3), 3))));
  CHECK(construct_kst_extremal(5, 2, 2).size() == 6);
  CHECK(construct_kst_extremal(3, 3, 3) == graphs::complete(3));
  CHECK(construct_cdv_extremal(6, 3).size() == 12);
  CHECK(construct_cdv_extremal(5, 2) == join(Graph(1), graphs::path(4)));

  CHECK_THROWS_AS(construct_kr_extremal(1, 3), DomainError);
  CHECK_THROWS_AS(construct_kr_extremal(5, 2), DomainError);
  CHECK_THROWS_AS(construct_kst_extremal(5, 3, 2), DomainError);
  CHECK_THROWS_AS(construct_kst_extremal(2, 3, 3), DomainError);
  CHECK_THROWS_AS(construct_cdv_extremal(3, 4), DomainError);

  for (int r = 3; r <= 9; ++r)
    for (int n = r - 1; n <= 40; ++n) REQUIRE(construct_kr_extremal(n, r).size() == kr_extremal_edges(n, r));
  for (int s = 2; s <= 6; ++s)
    for (int t = s; t <= 7; ++t)
      for (int n = s; n <= 50; ++n) {
        const ConstructionParams p{.family = ConstructionFamily::kBipartiteMinorFree, .n = n, .s = s, .t = t};
        REQUIRE(p.k() * t + p.p() == n - s + 1);
        if (p.p() == 0) REQUIRE(construct_kst_extremal(n, s, t).size() == kst_extremal_edges(n, s, t));
      }
  for (int m = 2; m <= 8; ++m)
    for (int n = m; n <= 40; ++n) REQUIRE(construct_cdv_extremal(n, m).size() == cdv_extremal_edges(n, m));
}

TEST_CASE("apex decomposition", "[constructions]") {
  const auto fan = decompose_apex_clique(join(graphs::complete(2), graphs::path(4)));
  CHECK(mask::count(fan.apex) == 2);
  CHECK(isomorphic(fan.residual, graphs::path(4)));

  const auto c5 = decompose_apex_clique(graphs::cycle(5));
  CHECK(c5.apex == 0);
  CHECK(c5.residual == graphs::cycle(5));

  const auto kst = decompose_apex_clique(construct_kst_extremal(10, 2, 3));
  CHECK(mask::count(kst.apex) == 1);
  CHECK(isomorphic(kst.residual, graphs::copies(graphs::complete(3), 3)));

  const auto kn = decompose_apex_clique(graphs::complete(5));
  CHECK(kn.apex == mask::first(5));
  CHECK(kn.residual.order() == 0);

  std::mt19937 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = 1 + trial % 4;
    Graph h = oracle::random_graph(rng, 2 + trial % 8, 0.5);
    if (h.max_degree() >= h.order() - 1) continue;
    const auto dec = decompose_apex_clique(join(graphs::complete(a), h));
    REQUIRE(mask::count(dec.apex) >= a);
  }
}

TEST_CASE("residual recognition", "[constructions]") {
  CHECK(recognize_residual(Graph(5)).shape == ResidualShape::kIndependent);
  CHECK(recognize_residual(disjoint_union(graphs::path(3), graphs::path(2))).shape == ResidualShape::kDisjointPaths);
  CHECK(recognize_residual(graphs::copies(graphs::complete(3), 3)) ==
        ResidualClass{ResidualShape::kDisjointCliques, 3});
  CHECK(recognize_residual(graphs::copies(graphs::complete(2), 2)) ==
        ResidualClass{ResidualShape::kDisjointCliques, 2});
  CHECK(recognize_residual(disjoint_union(graphs::complete(3), graphs::complete(2))).shape ==
        ResidualShape::kOther);
  CHECK(recognize_residual(graphs::cycle(4)).shape == ResidualShape::kOther);
  CHECK(recognize_residual(Graph(0)).shape == ResidualShape::kIndependent);
}

TEST_CASE("graph6 stream ingestion", "[enumerate]") {
  std::istringstream empty("");
  CHECK(ingest_graph6_stream(empty).empty());

  std::istringstream good("A_\n@\n\nD?{\n");
  CHECK(ingest_graph6_stream(good).size() == 3);

  std::istringstream bad("A_\nA_\nA!\nA_\n");
  try {
    ingest_graph6_stream(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_graph6_stream(std::filesystem::path("/nonexistent/graphs.g6")), DomainError);
}

TEST_CASE("ingesting a stream of all graphs on 8 vertices", "[enumerate]") {
  const auto eight = extend_by_vertex(enumerate_graphs(7));
  REQUIRE(eight.size() == 12346);
  const auto path = std::filesystem::temp_directory_path() / "sml_all8.g6";
  {
    std::ofstream out(path);
    for (const Graph& g : eight) out << encode_graph6(g) << '\n';
  }
  const auto read = ingest_graph6_stream(path);
  REQUIRE(read.size() == 12346);
  for (std::size_t i = 0; i < read.size(); ++i) REQUIRE(read[i] == eight[i]);
  std::filesystem::remove(path);
}
