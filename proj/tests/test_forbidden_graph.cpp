#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "planarsucc/errors.hpp"
#include "planarsucc/forbidden_graph.hpp"

using namespace planarsucc;

namespace {

// Adjacency maps with payloads; the merge follows the documented rules.
struct Naive {
  std::vector<bool> b;
  std::map<Label, std::map<Label, std::uint64_t>> adj;

  void insert(Label u, Label v, std::uint64_t p) {
    if (b[u] && b[v]) return;
    adj[u][v] = p;
    adj[v][u] = p;
  }
  MergeReport merge(Label u, Label v, Label s) {
    MergeReport r;
    const Label o = s == u ? v : u;
    auto ns = adj[s];
    auto no = adj[o];
    r.had_edge = ns.count(o) != 0;
    for (auto [w, p] : no) {
      adj[w].erase(o);
      if (w == s) continue;
      if (ns.count(w)) r.discarded_parallel.push_back({s, w, p});
      else if (b[s] && b[w]) r.discarded_forbidden.push_back({s, w, p});
      else {
        adj[s][w] = p;
        adj[w][s] = p;
        r.inserted_new.push_back({s, w, p});
      }
    }
    adj[s].erase(o);
    adj.erase(o);
    return r;
  }
};

}  // namespace

TEST_CASE("forbidden pairs are silently dropped") {
  ForbiddenGraph g(4, {true, true, false, false});
  CHECK_FALSE(g.insert(0, 1));
  CHECK(g.insert(0, 2, 5));
  CHECK(g.payload(2, 0) == 5);
  CHECK_THROWS_AS(g.insert(2, 0), Error);
  CHECK(g.forbidden_degree(2) == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.erase(0, 2) == 5);
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_THROWS_AS(g.erase(0, 2), Error);
}

TEST_CASE("merge against naive adjacency maps") {
  std::mt19937_64 rng(21);
  for (int inst = 0; inst < 40; ++inst) {
    const std::size_t n = 30;
    std::vector<bool> b(n);
    for (std::size_t x = 0; x < n; ++x) b[x] = rng() % 3 == 0;
    ForbiddenGraph g(n, b);
    Naive o{b, {}};
    std::set<Label> live;
    for (Label x = 0; x < n; ++x) live.insert(x);
    for (int e = 0; e < 60; ++e) {
      const Label u = rng() % n, v = rng() % n;
      if (u == v || g.adjacent(u, v)) continue;
      const std::uint64_t p = rng() % 1000;
      g.insert(u, v, p);
      o.insert(u, v, p);
    }
    while (live.size() > 2) {
      auto it = live.begin();
      std::advance(it, rng() % live.size());
      const Label u = *it;
      Label v;
      do {
        it = live.begin();
        std::advance(it, rng() % live.size());
        v = *it;
      } while (v == u);
      const Label s = rng() % 2 ? u : v;
      const auto got = g.merge(u, v, s);
      const auto want = o.merge(u, v, s);
      live.erase(s == u ? v : u);
      CHECK(got.had_edge == want.had_edge);
      CHECK(got.discarded_parallel.size() == want.discarded_parallel.size());
      CHECK(got.discarded_forbidden.size() == want.discarded_forbidden.size());
      CHECK(got.inserted_new.size() == want.inserted_new.size());
      CHECK_THROWS_AS(g.degree(s == u ? v : u), Error);
      for (Label x : live) {
        const auto nb = g.neighbors(x);
        std::set<Label> gs(nb.begin(), nb.end());
        std::set<Label> ws;
        for (auto [w, p] : o.adj[x]) {
          ws.insert(w);
          CHECK(g.payload(x, w) == p);
        }
        CHECK(gs == ws);
      }
      CHECK(g.check());
    }
  }
}

TEST_CASE("deleted vertices are reported as deleted") {
  ForbiddenGraph g(3, {});
  g.insert(0, 1);
  g.insert(1, 2);
  g.delete_vertex(1);
  CHECK(g.degree(0) == 0);
  CHECK(g.edge_count() == 0);
  try {
    g.degree(1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DeletedVertex);
  }
}
