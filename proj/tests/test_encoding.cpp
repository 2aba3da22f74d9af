#include <doctest.h>

#include <random>
#include <sstream>

#include "planarsucc/driver.hpp"
#include "planarsucc/encoding.hpp"
#include "planarsucc/errors.hpp"

using namespace planarsucc;

namespace {

LabeledGraph complete(std::size_t n) {
  LabeledGraph g(n);
  for (Label a = 0; a < n; ++a)
    for (Label b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

LabeledGraph path(std::size_t n) {
  LabeledGraph g(n);
  for (Label u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

EncodingConfig small(std::size_t r, std::size_t rp, bool hashing = false) {
  EncodingConfig c;
  c.partition.r = r;
  c.partition.r_prime = rp;
  c.hashing = hashing;
  return c;
}

std::vector<Label> sorted(const std::set<Label>& s) { return {s.begin(), s.end()}; }

bool same_as(const DynamicEncoding& e, const LabeledGraph& o) {
  if (e.live_vertices() != o.vertices()) return false;
  for (Label u : o.vertices())
    if (e.neighbors(u) != sorted(o.neighbors(u)) || e.degree(u) != o.degree(u)) return false;
  return true;
}

}  // namespace

TEST_CASE("K4 is a single micro graph") {
  DynamicEncoding e(complete(4), EncodingConfig{});
  const Hierarchy& h = e.core().hierarchy();
  CHECK(h.mini.size() == 1);
  CHECK(h.n_nb == 4);
  CHECK(h.mini[0].micro.size() == 1);
  CHECK(e.neighbors(0) == std::vector<Label>{1, 2, 3});
  for (Label u = 0; u < 4; ++u) CHECK(e.degree(u) == 3);
  CHECK(e.check_invariants().ok());
  CHECK(e.contract(0, 1) == 0);
  CHECK(e.degree(0) == 2);
  CHECK_FALSE(e.live(1));
}

TEST_CASE("path contraction") {
  DynamicEncoding e(path(3), EncodingConfig{});
  e.contract(1, 2);
  CHECK(e.neighbors(1) == std::vector<Label>{0});
  CHECK_THROWS_AS(e.contract(0, 0), Error);
  CHECK_THROWS_AS(e.neighbors(2), Error);
}

TEST_CASE("the boundary endpoint survives a mixed contraction") {
  const LabeledGraph g = path(40);
  DynamicEncoding e(g, small(4, 2));
  REQUIRE(e.core().hierarchy().mini.size() > 1);
  bool tried = false;
  for (Label u = 0; u + 1 < 40 && !tried; ++u) {
    const Label v = u + 1;
    if (e.global_boundary(u) == e.global_boundary(v)) continue;
    const Label b = e.global_boundary(u) ? u : v, x = b == u ? v : u;
    CHECK(e.contract(x, b) == b);
    CHECK_FALSE(e.live(x));
    tried = true;
  }
  CHECK(tried);
  CHECK(e.check_invariants().ok());
}

TEST_CASE("a disconnected input never shows its connector") {
  LabeledGraph g(6);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  DynamicEncoding e(g, small(4, 2));
  CHECK(e.universe() == 6);
  CHECK(e.live_vertices().size() == 6);
  CHECK(e.neighbors(5).empty());
  CHECK(e.degree(5) == 0);
  CHECK(e.degree(2) == 1);
  CHECK(e.neighbors(0) == std::vector<Label>{1});
  e.contract(2, 3);
  CHECK(e.degree(2) == 1);
  CHECK(e.reconstruct().edge_count() == 2);
  CHECK(e.check_invariants().ok());
  CHECK_THROWS_AS(e.neighbors(6), Error);
}

TEST_CASE("fresh encodings reproduce the input") {
  for (std::size_t n : {1, 2, 50, 500}) {
    const LabeledGraph g = generate_planar(n, n + 3);
    DynamicEncoding e(g, small(32, 4));
    CHECK(e.reconstruct() == g);
    CHECK(e.check_invariants().ok());
  }
}

TEST_CASE("contract a 500-vertex graph down to one vertex") {
  const LabeledGraph g = generate_planar(500, 42);
  LabeledGraph o = g;
  DynamicEncoding e(g, small(32, 4));
  std::mt19937_64 rng(1);
  std::size_t step = 0;
  while (o.edge_count() > 0) {
    auto edges = o.edges();
    auto [u, v] = edges[rng() % edges.size()];
    if (rng() % 2) std::swap(u, v);
    const Label s = e.contract(u, v);
    oracle_contract(o, s, s == u ? v : u);
    REQUIRE(same_as(e, o));
    if (++step % 25 == 0) REQUIRE(e.check_invariants().ok());
  }
  CHECK(e.live_vertices().size() == 1);
  CHECK(e.check_invariants().ok());
}

TEST_CASE("vertex deletion") {
  DynamicEncoding k3(complete(3), EncodingConfig{});
  k3.delete_vertex(2);
  CHECK(k3.neighbors(0) == std::vector<Label>{1});
  try {
    k3.degree(2);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::DeletedVertex);
  }
  CHECK_THROWS_AS(k3.delete_vertex(2), Error);

  const LabeledGraph g = generate_planar(400, 8);
  LabeledGraph o = g;
  DynamicEncoding e(g, small(16, 3));
  std::size_t done = 0;
  for (Label u : g.vertices()) {
    if (!e.global_boundary(u)) continue;
    e.delete_vertex(u);
    oracle_delete_vertex(o, u);
    if (++done == 30) break;
  }
  CHECK(done == 30);
  CHECK(same_as(e, o));
  CHECK(e.check_invariants().ok());
}

TEST_CASE("hashing mode adjacency and edge deletion") {
  DynamicEncoding k3(complete(3), small(64, 4, true));
  CHECK(k3.adjacent(0, 1));
  k3.delete_edge(0, 1);
  CHECK_FALSE(k3.adjacent(0, 1));
  CHECK(k3.neighbors(0) == std::vector<Label>{2});
  CHECK_THROWS_AS(k3.delete_edge(0, 1), Error);

  const LabeledGraph g = generate_planar(600, 5);
  DynamicEncoding e(g, small(16, 3, true));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10000; ++t) {
    const Label u = rng() % 600, v = rng() % 600;
    if (u == v) continue;
    CHECK(e.adjacent(u, v) == g.has_edge(u, v));
  }
  for (auto [u, v] : g.edges()) CHECK(e.adjacent(u, v));
}

TEST_CASE("adjacency without hashing is refused") {
  DynamicEncoding e(complete(3), EncodingConfig{});
  try {
    e.adjacent(0, 1);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::HashingRequired);
    CHECK(std::string(err.what()) == "hashing mode required");
  }
  CHECK_THROWS_AS(e.delete_edge(0, 1), Error);
}

TEST_CASE("delete every edge, then every vertex") {
  const auto r = delete_all_replay(400, 3, small(16, 4, true), true);
  CHECK_MESSAGE(r.ok, r.transcript);
}

TEST_CASE("a corrupted degree entry is reported") {
  const LabeledGraph g = generate_planar(300, 1);
  DynamicEncoding e(g, small(16, 4));
  REQUIRE(e.check_invariants().ok());
  Label b = 0;
  while (!e.global_boundary(b)) ++b;
  e.corrupt_degree_for_testing(b);
  CHECK_FALSE(e.check_invariants().ok());

  VerifyOptions opt;
  opt.n = 200;
  opt.ops = 300;
  opt.inject_fault = true;
  CHECK_FALSE(verify(opt).ok);
}

TEST_CASE("neighbor queries stay within the probe budget") {
  const LabeledGraph g = generate_planar(2000, 6);
  DynamicEncoding e(g, EncodingConfig{});
  for (Label u = 0; u < 2000; ++u) {
    const auto p0 = counters().probes;
    const auto nb = e.neighbors(u);
    CHECK(counters().probes - p0 <= 16 * (nb.size() + 1));
  }
}

TEST_CASE("serialization header") {
  DynamicEncoding e(generate_planar(100, 1), small(16, 4));
  std::ostringstream s;
  e.serialize(s);
  CHECK(s.str().rfind("PSE1 ", 0) == 0);
  CHECK(s.str().find("\nmicro ") != std::string::npos);
}

TEST_CASE("space report") {
  DynamicEncoding e(generate_planar(1000, 1), EncodingConfig{});
  const SpaceReport sp = e.space();
  CHECK(sp.micro_graphs > 0);
  CHECK(sp.micro_index_bits <= sp.micro_index_bound);
  CHECK(sp.side_bits() > 0);
}

TEST_CASE("oracle replay, default seed") {
  VerifyOptions opt;
  opt.check_every_op = true;
  const auto r = verify(opt);
  CHECK_MESSAGE(r.ok, r.transcript);
}

TEST_CASE("oracle replay across micro sizes and modes") {
  for (std::size_t rp : {2, 3, 4, 5})
    for (bool hashing : {false, true})
      for (std::uint64_t seed : {0, 1, 2}) {
        VerifyOptions opt;
        opt.n = 150;
        opt.ops = 450;
        opt.seed = seed;
        opt.enc = small(std::max<std::size_t>(rp, 12), rp, hashing);
        opt.check_every_op = true;
        const auto r = verify(opt);
        CHECK_MESSAGE(r.ok, "r'=" << rp << " hashing=" << hashing << " seed=" << seed << "\n" << r.transcript);
      }
}
