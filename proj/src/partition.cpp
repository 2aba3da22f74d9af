#include "planarsucc/partition.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <unordered_map>

#include "planarsucc/errors.hpp"

namespace planarsucc {

namespace {

struct Group {
  std::vector<Label> vertices;
  std::vector<Edge> edges;
};

std::vector<Label> endpoints(const std::vector<Edge>& edges) {
  std::vector<Label> v;
  v.reserve(edges.size() * 2);
  for (auto [a, b] : edges) {
    v.push_back(a);
    v.push_back(b);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

using LocalAdj = std::vector<std::vector<std::uint32_t>>;

std::vector<std::uint32_t> bfs_levels(const LocalAdj& adj, std::uint32_t root) {
  std::vector<std::uint32_t> level(adj.size(), UINT32_MAX);
  std::vector<std::uint32_t> queue{root};
  level[root] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto w : adj[queue[h]])
      if (level[w] == UINT32_MAX) {
        level[w] = level[queue[h]] + 1;
        queue.push_back(w);
      }
  return level;
}

std::uint32_t pseudo_peripheral(const LocalAdj& adj, std::uint32_t start) {
  std::uint32_t root = start, ecc = 0;
  for (int round = 0; round < 8; ++round) {
    const auto level = bfs_levels(adj, root);
    std::uint32_t far = root;
    for (std::uint32_t x = 0; x < adj.size(); ++x)
      if (level[x] != UINT32_MAX && level[x] > level[far]) far = x;
    if (round > 0 && level[far] <= ecc) break;
    ecc = level[far];
    root = far;
  }
  return root;
}

void split(Group g, std::size_t cap, std::vector<Group>& out) {
  std::vector<Group> stack;
  stack.push_back(std::move(g));
  while (!stack.empty()) {
    Group cur = std::move(stack.back());
    stack.pop_back();
    if (cur.vertices.size() <= cap) {
      out.push_back(std::move(cur));
      continue;
    }
    const std::size_t n = cur.vertices.size();
    std::unordered_map<Label, std::uint32_t> loc;
    loc.reserve(n * 2);
    for (std::uint32_t i = 0; i < n; ++i) loc[cur.vertices[i]] = i;
    LocalAdj adj(n);
    for (auto [a, b] : cur.edges) {
      adj[loc[a]].push_back(loc[b]);
      adj[loc[b]].push_back(loc[a]);
    }
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<std::size_t> comp_size;
    for (std::uint32_t s = 0; s < n; ++s) {
      if (comp[s] != UINT32_MAX) continue;
      const auto c = static_cast<std::uint32_t>(comp_size.size());
      std::vector<std::uint32_t> q{s};
      comp[s] = c;
      for (std::size_t h = 0; h < q.size(); ++h)
        for (auto w : adj[q[h]])
          if (comp[w] == UINT32_MAX) {
            comp[w] = c;
            q.push_back(w);
          }
      comp_size.push_back(q.size());
    }
    Group a, b;
    if (comp_size.size() > 1) {
      std::vector<std::uint32_t> order(comp_size.size());
      for (std::uint32_t c = 0; c < order.size(); ++c) order[c] = c;
      std::stable_sort(order.begin(), order.end(),
                       [&](auto x, auto y) { return comp_size[x] > comp_size[y]; });
      std::vector<bool> to_b(comp_size.size(), false);
      std::size_t wa = 0, wb = 0;
      for (auto c : order) {
        if (wa <= wb) wa += comp_size[c];
        else { wb += comp_size[c]; to_b[c] = true; }
      }
      for (std::uint32_t x = 0; x < n; ++x)
        (to_b[comp[x]] ? b : a).vertices.push_back(cur.vertices[x]);
      for (auto e : cur.edges) (to_b[comp[loc[e.first]]] ? b : a).edges.push_back(e);
    } else {
      const auto root = pseudo_peripheral(adj, 0);
      const auto level = bfs_levels(adj, root);
      const std::uint32_t depth = *std::max_element(level.begin(), level.end());
      if (depth >= 2) {
        std::vector<std::size_t> upto(depth + 1, 0);
        for (auto l : level) upto[l]++;
        for (std::uint32_t l = 1; l <= depth; ++l) upto[l] += upto[l - 1];
        std::uint32_t best = 1;
        auto gap = [&](std::uint32_t l) {
          return std::llabs(static_cast<long long>(2 * upto[l]) - static_cast<long long>(n));
        };
        for (std::uint32_t l = 2; l < depth; ++l)
          if (gap(l) < gap(best)) best = l;
        for (auto e : cur.edges) {
          const auto l = std::max(level[loc[e.first]], level[loc[e.second]]);
          (l <= best ? a : b).edges.push_back(e);
        }
      } else {
        const std::size_t half = cur.edges.size() / 2;
        a.edges.assign(cur.edges.begin(), cur.edges.begin() + static_cast<std::ptrdiff_t>(half));
        b.edges.assign(cur.edges.begin() + static_cast<std::ptrdiff_t>(half), cur.edges.end());
      }
      a.vertices = endpoints(a.edges);
      b.vertices = endpoints(b.edges);
    }
    stack.push_back(std::move(b));
    stack.push_back(std::move(a));
  }
}

RPartition finish(std::vector<Group>& groups) {
  RPartition p;
  std::unordered_map<Label, unsigned> count;
  for (auto& gr : groups) {
    std::sort(gr.vertices.begin(), gr.vertices.end());
    for (auto v : gr.vertices) count[v]++;
    p.vertices.push_back(std::move(gr.vertices));
    p.edges.push_back(std::move(gr.edges));
  }
  for (auto [v, c] : count)
    if (c >= 2) p.boundary.push_back(v);
  std::sort(p.boundary.begin(), p.boundary.end());
  return p;
}

}  // namespace

RPartition partition_edges(const std::vector<Label>& vertices, const std::vector<Edge>& edges,
                           std::size_t cap) {
  if (cap < 2) fail(ErrorKind::InvalidArgument, "piece size cap must be at least 2");
  std::vector<Group> groups;
  if (!vertices.empty()) split(Group{vertices, edges}, cap, groups);
  return finish(groups);
}

RPartition build_rpartition(const LabeledGraph& g, std::size_t cap) {
  if (!g.is_connected()) fail(ErrorKind::NotConnected, "graph must be connected");
  return partition_edges(g.vertices(), g.edges(), cap);
}

std::pair<std::uint32_t, Label> Hierarchy::phi(Label u) const {
  if (u >= n_nb) fail(ErrorKind::InvalidArgument, "globally shared vertex has several duplicates");
  const auto t = piece_starts.rank(u + 1) - 1;
  const auto i = static_cast<std::uint32_t>(piece_of_start.get(t));
  return {i, u - mini[i].offset};
}

std::pair<std::uint32_t, unsigned> Hierarchy::phi_i(std::uint32_t i, Label x) const {
  const MiniPiece& p = mini[i];
  if (x >= p.first_mb) fail(ErrorKind::InvalidArgument, "boundary vertex has several duplicates");
  const auto t = p.simple_starts.rank(x + 1) - 1;
  const auto j = static_cast<std::uint32_t>(p.simple_micro.get(t));
  return {j, static_cast<unsigned>(x - p.first_simple[j])};
}

std::size_t Hierarchy::static_bits() const {
  std::size_t b = piece_starts.bits() + piece_of_start.bits();
  const unsigned lw = bits_for(n);
  for (const auto& p : mini) {
    b += p.simple_starts.bits() + p.simple_micro.bits();
    b += 4 * lw;  // offset, n, first_mb, first_db
    const unsigned mw = bits_for(p.n);
    b += p.micro.size() * (mw + 3 * 3);  // first_simple, delimiters
  }
  return b;
}

Hierarchy build_hierarchy(const LabeledGraph& g, const PartitionConfig& cfg) {
  if (cfg.r_prime < 2) fail(ErrorKind::InvalidArgument, "r' must be at least 2");
  if (cfg.r < cfg.r_prime) fail(ErrorKind::InvalidArgument, "r must be at least r'");
  Hierarchy h;
  h.n = g.vertex_count();
  if (h.n == 0) fail(ErrorKind::InvalidArgument, "empty graph");
  if (g.max_label() + 1 != h.n) fail(ErrorKind::InvalidArgument, "labels must be 0..n-1");

  const RPartition outer = build_rpartition(g, cfg.cap_factor * cfg.r);
  std::vector<bool> shared(h.n, false);
  for (auto u : outer.boundary) shared[u] = true;
  h.outer_boundary = outer.boundary.size();

  h.to_core.assign(h.n, 0);
  h.from_core.assign(h.n, 0);
  std::vector<Label> shared_list = outer.boundary;
  Label nb_count = 0;
  for (Label u = 0; u < h.n; ++u)
    if (!shared[u]) ++nb_count;
  h.n_nb = nb_count;
  for (std::size_t t = 0; t < shared_list.size(); ++t) {
    h.to_core[shared_list[t]] = h.n_nb + static_cast<Label>(t);
    h.from_core[h.n_nb + t] = shared_list[t];
  }
  h.member.assign(shared_list.size(), {});

  Label next_core = 0;
  std::vector<std::uint32_t> starts, start_piece;
  std::vector<unsigned> cnt(h.n, 0);
  std::vector<Label> mini_of(h.n, 0);
  for (std::size_t i = 0; i < outer.vertices.size(); ++i) {
    MiniPiece piece;
    const auto& vi = outer.vertices[i];
    std::vector<Edge> inner_edges;
    std::unordered_map<Label, bool> has_edge;
    for (auto e : outer.edges[i]) {
      if (shared[e.first] && shared[e.second]) continue;
      inner_edges.push_back(e);
      has_edge[e.first] = has_edge[e.second] = true;
    }
    std::vector<Label> group;
    for (auto u : vi)
      if (!shared[u] || has_edge.count(u)) group.push_back(u);
    const RPartition inner = partition_edges(group, inner_edges, cfg.r_prime);
    for (const auto& mv : inner.vertices)
      for (auto u : mv) cnt[u] = 0;
    for (const auto& mv : inner.vertices)
      for (auto u : mv) cnt[u]++;
    auto boundary = [&](Label u) { return shared[u] || cnt[u] >= 2; };

    // Mini labels: simple grouped by micro graph, then mini-boundary, then shared.
    Label x = 0;
    piece.first_simple.resize(inner.vertices.size());
    for (std::size_t j = 0; j < inner.vertices.size(); ++j) {
      piece.first_simple[j] = x;
      for (auto u : inner.vertices[j])
        if (!boundary(u)) {
          mini_of[u] = x++;
          piece.global.push_back(u);
        }
    }
    piece.first_mb = x;
    for (auto u : vi)
      if (!shared[u] && cnt[u] >= 2) {
        mini_of[u] = x++;
        piece.global.push_back(u);
      }
    piece.first_db = x;
    for (auto u : vi)
      if (shared[u]) {
        mini_of[u] = x++;
        piece.global.push_back(u);
      }
    piece.n = x;
    piece.offset = next_core;
    for (Label y = 0; y < piece.first_db; ++y) {
      h.to_core[piece.global[y]] = next_core + y;
      h.from_core[next_core + y] = piece.global[y];
    }
    if (piece.first_db > 0) {
      starts.push_back(next_core);
      start_piece.push_back(static_cast<std::uint32_t>(i));
    }
    next_core += piece.first_db;
    for (Label y = piece.first_db; y < piece.n; ++y)
      h.member[h.to_core[piece.global[y]] - h.n_nb].push_back({static_cast<std::uint32_t>(i), y});

    // Micro graphs.
    piece.member.assign(piece.n - piece.first_mb, {});
    std::vector<std::uint32_t> sstarts, smicro;
    for (std::size_t j = 0; j < inner.vertices.size(); ++j) {
      MicroPiece mp;
      std::vector<Label> simple, mb, db;
      for (auto u : inner.vertices[j]) {
        if (!boundary(u)) simple.push_back(mini_of[u]);
        else if (!shared[u]) mb.push_back(mini_of[u]);
        else db.push_back(mini_of[u]);
      }
      std::sort(simple.begin(), simple.end());
      std::sort(mb.begin(), mb.end());
      std::sort(db.begin(), db.end());
      mp.first_gb = mp.first_mb = static_cast<unsigned>(simple.size());
      mp.first_db = static_cast<unsigned>(simple.size() + mb.size());
      for (auto* part : {&simple, &mb, &db}) mp.mini.insert(mp.mini.end(), part->begin(), part->end());
      std::unordered_map<Label, unsigned> micro_of;
      for (unsigned t = 0; t < mp.mini.size(); ++t) {
        micro_of[mp.mini[t]] = t;
        if (mp.mini[t] >= piece.first_mb)
          piece.member[mp.mini[t] - piece.first_mb].push_back({static_cast<std::uint32_t>(j), t});
      }
      for (auto [a, b] : inner.edges[j]) {
        const Label ma = mini_of[a], mb2 = mini_of[b];
        if (boundary(a) && boundary(b)) piece.f_edges.push_back({ma, mb2});
        else mp.edges.push_back({micro_of[ma], micro_of[mb2]});
      }
      if (!simple.empty()) {
        sstarts.push_back(piece.first_simple[j]);
        smicro.push_back(static_cast<std::uint32_t>(j));
      }
      piece.micro.push_back(std::move(mp));
    }
    piece.simple_starts = IndexableDictionary(piece.first_mb, sstarts);
    piece.simple_micro = CompactArray::for_max(smicro.size(), inner.vertices.size());
    for (std::size_t t = 0; t < smicro.size(); ++t) piece.simple_micro.set(t, smicro[t]);
    h.inner_boundary_total += piece.n - piece.first_mb;
    h.mini.push_back(std::move(piece));
  }
  // Mini labels above refer to input labels; convert stored globals to core labels.
  for (auto& p : h.mini)
    for (auto& gl : p.global) gl = h.to_core[gl];
  for (auto e : g.edges())
    if (shared[e.first] && shared[e.second])
      h.f_edges.push_back(make_edge(h.to_core[e.first], h.to_core[e.second]));
  h.piece_starts = IndexableDictionary(h.n_nb, starts);
  h.piece_of_start = CompactArray::for_max(start_piece.size(), h.mini.size());
  for (std::size_t t = 0; t < start_piece.size(); ++t) h.piece_of_start.set(t, start_piece[t]);
  return h;
}

void dump_hierarchy(const Hierarchy& h, std::ostream& out) {
  out << "hierarchy n=" << h.n << " shared=" << (h.n - h.n_nb) << " mini=" << h.mini.size() << '\n';
  for (std::size_t i = 0; i < h.mini.size(); ++i) {
    const auto& p = h.mini[i];
    out << "mini " << i << " offset=" << p.offset << " n=" << p.n << " first_mb=" << p.first_mb
        << " first_db=" << p.first_db << " micro=" << p.micro.size() << '\n';
    out << "  global:";
    for (auto gl : p.global) out << ' ' << gl;
    out << '\n';
    for (std::size_t j = 0; j < p.micro.size(); ++j) {
      const auto& m = p.micro[j];
      out << "  micro " << j << " colors=" << m.first_gb << '/' << m.first_mb << '/' << m.first_db
          << " mini:";
      for (auto x : m.mini) out << ' ' << x;
      out << " edges:";
      for (auto [a, b] : m.edges) out << ' ' << a << '-' << b;
      out << '\n';
    }
    out << "  f_edges:";
    for (auto [a, b] : p.f_edges) out << ' ' << a << '-' << b;
    out << '\n';
  }
  out << "f_edges:";
  for (auto [a, b] : h.f_edges) out << ' ' << a << '-' << b;
  out << '\n';
}

}  // namespace planarsucc
