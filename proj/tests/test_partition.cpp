#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "planarsucc/errors.hpp"
#include "planarsucc/partition.hpp"

using namespace planarsucc;

TEST_CASE("r-partition covers every edge once and respects the cap") {
  for (std::size_t n : {10, 300, 3000}) {
    const LabeledGraph g = generate_planar(n, n);
    for (std::size_t cap : {8, 64}) {
      const RPartition p = build_rpartition(g, cap);
      std::map<Edge, int> seen;
      std::map<Label, int> pieces;
      for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        CHECK(p.vertices[i].size() <= cap);
        for (Label x : p.vertices[i]) pieces[x]++;
        for (auto e : p.edges[i]) {
          seen[std::minmax(e.first, e.second)]++;
          CHECK(std::binary_search(p.vertices[i].begin(), p.vertices[i].end(), e.first));
          CHECK(std::binary_search(p.vertices[i].begin(), p.vertices[i].end(), e.second));
        }
      }
      CHECK(seen.size() == g.edge_count());
      for (auto [e, c] : seen) CHECK((c == 1 && g.has_edge(e.first, e.second)));
      std::set<Label> want_b;
      for (auto [x, c] : pieces)
        if (c > 1) want_b.insert(x);
      CHECK(std::set<Label>(p.boundary.begin(), p.boundary.end()) == want_b);
    }
  }
  LabeledGraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  CHECK_THROWS_AS(build_rpartition(two, 4), Error);
}

TEST_CASE("hierarchy reproduces the graph through its label maps") {
  for (std::size_t n : {5, 200, 2500}) {
    const LabeledGraph g = generate_planar(n, 3 * n);
    PartitionConfig cfg;
    cfg.r = 32;
    cfg.r_prime = 4;
    const Hierarchy h = build_hierarchy(g, cfg);
    REQUIRE(h.n == n);
    for (Label u = 0; u < n; ++u) CHECK(h.from_core[h.to_core[u]] == u);
    std::set<Edge> rebuilt;
    auto put = [&](Label a, Label b) { rebuilt.insert(std::minmax(h.from_core[a], h.from_core[b])); };
    for (auto [a, b] : h.f_edges) {
      CHECK(h.shared(a));
      CHECK(h.shared(b));
      put(a, b);
    }
    for (std::uint32_t i = 0; i < h.mini.size(); ++i) {
      const MiniPiece& p = h.mini[i];
      for (Label x = 0; x < p.first_db; ++x) {
        CHECK(p.global[x] == p.offset + x);
        CHECK(h.phi(p.global[x]) == std::pair<std::uint32_t, Label>{i, x});
      }
      for (Label x = p.first_db; x < p.n; ++x) CHECK(h.shared(p.global[x]));
      for (auto [a, b] : p.f_edges) {
        CHECK(a >= p.first_mb);
        CHECK(b >= p.first_mb);
        CHECK_FALSE((a >= p.first_db && b >= p.first_db));
        put(p.global[a], p.global[b]);
      }
      for (std::uint32_t j = 0; j < p.micro.size(); ++j) {
        const MicroPiece& mp = p.micro[j];
        CHECK(mp.mini.size() <= cfg.r_prime);
        CHECK(mp.first_gb == mp.first_mb);
        for (unsigned x = 0; x < mp.first_mb; ++x) {
          CHECK(mp.mini[x] == p.first_simple[j] + x);
          CHECK(h.phi_i(i, mp.mini[x]) == std::pair<std::uint32_t, unsigned>{j, x});
        }
        for (auto [a, b] : mp.edges) {
          CHECK_FALSE((a >= mp.first_mb && b >= mp.first_mb));
          put(p.global[mp.mini[a]], p.global[mp.mini[b]]);
        }
      }
    }
    std::set<Edge> want;
    for (auto e : g.edges()) want.insert(std::minmax(e.first, e.second));
    CHECK(rebuilt == want);
  }
}
