#include <doctest.h>

#include <sstream>

#include "planarsucc/errors.hpp"
#include "planarsucc/graph.hpp"

using namespace planarsucc;

namespace {

LabeledGraph path(std::size_t n) {
  LabeledGraph g(n);
  for (Label u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

}  // namespace

TEST_CASE("oracle contraction keeps a simple graph") {
  LabeledGraph g(4);
  for (Label a = 0; a < 4; ++a)
    for (Label b = a + 1; b < 4; ++b) g.add_edge(a, b);
  CHECK(oracle_contract(g, 0, 1) == 0);
  CHECK(g.vertex_count() == 3);
  CHECK(g.degree(0) == 2);
  CHECK(g.check_simple());
  CHECK_THROWS_AS(oracle_contract(g, 0, 1), Error);
}

TEST_CASE("oracle deletions") {
  LabeledGraph g = path(3);
  oracle_delete_edge(g, 0, 1);
  CHECK(g.degree(0) == 0);
  oracle_delete_vertex(g, 2);
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("connect_components links the smallest label of each component") {
  LabeledGraph g(5);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  const Label vd = connect_components(g);
  CHECK(vd == 5);
  CHECK(g.is_connected());
  CHECK(g.neighbors(vd) == std::set<Label>{0, 1, 3});
}

TEST_CASE("generated graphs are connected, simple and planar") {
  for (std::size_t n : {1, 2, 3, 10, 200, 2000}) {
    const LabeledGraph g = generate_planar(n, n * 7 + 1);
    CHECK(g.vertex_count() == n);
    CHECK(g.is_connected());
    CHECK(g.check_simple());
    CHECK(is_planar(g));
    if (n >= 3) CHECK(g.edge_count() <= 3 * n - 6);
  }
  CHECK(generate_planar(300, 4) == generate_planar(300, 4));
}

TEST_CASE("is_planar rejects K5 and K3,3") {
  LabeledGraph k5(5);
  for (Label a = 0; a < 5; ++a)
    for (Label b = a + 1; b < 5; ++b) k5.add_edge(a, b);
  CHECK_FALSE(is_planar(k5));
  LabeledGraph k33(6);
  for (Label a = 0; a < 3; ++a)
    for (Label b = 3; b < 6; ++b) k33.add_edge(a, b);
  CHECK_FALSE(is_planar(k33));
}

TEST_CASE("graph file round trip and validation") {
  const LabeledGraph g = generate_planar(50, 2);
  std::stringstream s;
  write_graph(g, s);
  CHECK(read_graph(s) == g);

  std::istringstream dense("p 4 7\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\ne 1 2\n");
  CHECK_THROWS_AS(read_graph(dense), ParseError);
  std::istringstream loop("p 3 1\ne 2 2\n");
  CHECK_THROWS_AS(read_graph(loop), ParseError);
  std::istringstream range("p 3 1\ne 2 4\n");
  CHECK_THROWS_AS(read_graph(range), ParseError);
  std::istringstream count("p 3 2\ne 1 2\n");
  CHECK_THROWS_AS(read_graph(count), ParseError);
}

TEST_CASE("script parsing") {
  std::istringstream in("C 1 2\n# comment\nDV 3\nDE 1 4\nN 1\nD 2\nA 1 2\n");
  const auto ops = read_script(in);
  REQUIRE(ops.size() == 6);
  CHECK(ops[0].kind == OpKind::Contract);
  CHECK(ops[0].u == 0);
  CHECK(ops[0].v == 1);
  CHECK(ops[1].line == 3);
  CHECK(ops[5].kind == OpKind::Adjacent);
  std::istringstream bad("C 1\n");
  CHECK_THROWS_AS(read_script(bad), ParseError);
  std::istringstream zero("N 0\n");
  CHECK_THROWS_AS(read_script(zero), ParseError);
}
