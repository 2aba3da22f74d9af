#include "planarsucc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/polygon/voronoi.hpp>

#include "planarsucc/errors.hpp"

namespace planarsucc {

LabeledGraph::LabeledGraph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) adj_.emplace_hint(adj_.end(), static_cast<Label>(i), std::set<Label>{});
}

void LabeledGraph::require(Label u) const {
  if (!adj_.count(u)) fail(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(u));
}

void LabeledGraph::add_vertex(Label u) { adj_.try_emplace(u); }

void LabeledGraph::add_edge(Label u, Label v) {
  if (u == v) fail(ErrorKind::InvalidArgument, "self-loop");
  require(u);
  require(v);
  if (!adj_[u].insert(v).second) fail(ErrorKind::EdgeExists, "edge already present");
  adj_[v].insert(u);
  ++edges_;
}

void LabeledGraph::remove_edge(Label u, Label v) {
  require(u);
  require(v);
  if (!adj_[u].erase(v)) fail(ErrorKind::NotAnEdge, "not an edge");
  adj_[v].erase(u);
  edge_aux_.erase(make_edge(u, v));
  --edges_;
}

void LabeledGraph::remove_vertex(Label u) {
  require(u);
  for (Label w : adj_[u]) {
    adj_[w].erase(u);
    edge_aux_.erase(make_edge(u, w));
    --edges_;
  }
  adj_.erase(u);
  vertex_aux_.erase(u);
}

bool LabeledGraph::has_edge(Label u, Label v) const {
  auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v);
}

const std::set<Label>& LabeledGraph::neighbors(Label u) const {
  auto it = adj_.find(u);
  if (it == adj_.end()) fail(ErrorKind::UnknownVertex, "unknown vertex " + std::to_string(u));
  return it->second;
}

std::vector<Label> LabeledGraph::vertices() const {
  std::vector<Label> out;
  out.reserve(adj_.size());
  for (const auto& [u, _] : adj_) out.push_back(u);
  return out;
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (const auto& [u, ns] : adj_)
    for (Label v : ns)
      if (u < v) out.emplace_back(u, v);
  return out;
}

Label LabeledGraph::max_label() const { return adj_.empty() ? 0 : adj_.rbegin()->first; }

void LabeledGraph::set_vertex_aux(Label u, std::int64_t value) {
  require(u);
  vertex_aux_[u] = value;
}

void LabeledGraph::set_edge_aux(Label u, Label v, std::int64_t value) {
  if (!has_edge(u, v)) fail(ErrorKind::NotAnEdge, "not an edge");
  edge_aux_[make_edge(u, v)] = value;
}

bool LabeledGraph::check_simple() const {
  std::size_t halfedges = 0;
  for (const auto& [u, ns] : adj_) {
    for (Label v : ns) {
      if (v == u) return false;
      auto it = adj_.find(v);
      if (it == adj_.end() || !it->second.count(u)) return false;
    }
    halfedges += ns.size();
  }
  if (halfedges != 2 * edges_) return false;
  for (const auto& [e, _] : edge_aux_)
    if (!has_edge(e.first, e.second)) return false;
  for (const auto& [u, _] : vertex_aux_)
    if (!has_vertex(u)) return false;
  return true;
}

std::vector<std::vector<Label>> LabeledGraph::components() const {
  std::vector<std::vector<Label>> comps;
  std::set<Label> seen;
  for (const auto& [s, _] : adj_) {
    if (seen.count(s)) continue;
    comps.emplace_back();
    std::vector<Label> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      Label x = stack.back();
      stack.pop_back();
      comps.back().push_back(x);
      for (Label y : adj_.at(x))
        if (seen.insert(y).second) stack.push_back(y);
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

bool LabeledGraph::is_connected() const { return components().size() <= 1; }

Label oracle_contract(LabeledGraph& g, Label u, Label v) {
  if (u == v) fail(ErrorKind::SameVertex, "cannot contract a vertex with itself");
  if (!g.has_vertex(u) || !g.has_vertex(v)) fail(ErrorKind::UnknownVertex, "unknown vertex");
  if (!g.has_edge(u, v)) fail(ErrorKind::NotAnEdge, "not an edge");
  std::vector<Label> nv(g.neighbors(v).begin(), g.neighbors(v).end());
  g.remove_vertex(v);
  for (Label w : nv)
    if (w != u && !g.has_edge(u, w)) g.add_edge(u, w);
  return u;
}

void oracle_delete_vertex(LabeledGraph& g, Label u) { g.remove_vertex(u); }

void oracle_delete_edge(LabeledGraph& g, Label u, Label v) { g.remove_edge(u, v); }

Label connect_components(LabeledGraph& g) {
  const Label vd = g.vertex_count() ? g.max_label() + 1 : 0;
  auto comps = g.components();
  g.add_vertex(vd);
  for (const auto& c : comps) g.add_edge(vd, c.front());
  return vd;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

LabeledGraph generate_planar(std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "n must be at least 1");
  std::mt19937_64 rng(seed);
  using Point = boost::polygon::point_data<int>;
  std::vector<Point> pts;
  std::set<std::pair<int, int>> used;
  while (pts.size() < n) {
    const int x = static_cast<int>(rng() % (1U << 24));
    const int y = static_cast<int>(rng() % (1U << 24));
    if (used.emplace(x, y).second) pts.emplace_back(x, y);
  }

  std::vector<Edge> tri;
  if (n >= 2) {
    boost::polygon::voronoi_diagram<double> vd;
    boost::polygon::construct_voronoi(pts.begin(), pts.end(), &vd);
    std::set<Edge> seen;
    for (const auto& e : vd.edges()) {
      if (!e.is_primary()) continue;
      const Label a = static_cast<Label>(e.cell()->source_index());
      const Label b = static_cast<Label>(e.twin()->cell()->source_index());
      if (a != b && seen.insert(make_edge(a, b)).second) tri.push_back(make_edge(a, b));
    }
  }
  std::sort(tri.begin(), tri.end());
  for (std::size_t i = tri.size(); i > 1; --i) std::swap(tri[i - 1], tri[rng() % i]);

  LabeledGraph g(n);
  UnionFind uf(n);
  std::vector<Edge> rest;
  for (const auto& e : tri) {
    if (uf.unite(e.first, e.second)) g.add_edge(e.first, e.second);
    else rest.push_back(e);
  }
  for (const auto& e : rest)
    if (rng() & 1U) g.add_edge(e.first, e.second);
  return g;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == '#') continue;
    return true;
  }
  return false;
}

long long parse_int(std::istringstream& ss, std::size_t lineno, const char* what) {
  long long v;
  if (!(ss >> v)) throw ParseError(lineno, std::string("expected ") + what);
  return v;
}

void expect_end(std::istringstream& ss, std::size_t lineno) {
  std::string extra;
  if (ss >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
}

}  // namespace

LabeledGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "missing header 'p <n> <m>'");
  std::istringstream hs(line);
  std::string tag;
  hs >> tag;
  if (tag != "p") throw ParseError(lineno, "expected header 'p <n> <m>'");
  const long long n = parse_int(hs, lineno, "vertex count");
  const long long m = parse_int(hs, lineno, "edge count");
  expect_end(hs, lineno);
  if (n < 0 || m < 0) throw ParseError(lineno, "negative count");
  if (n >= 3 && m > 3 * n - 6) throw ParseError(lineno, "m > 3n-6, graph cannot be planar");
  LabeledGraph g(static_cast<std::size_t>(n));
  long long seen = 0;
  while (next_content_line(in, line, lineno)) {
    std::istringstream es(line);
    es >> tag;
    if (tag != "e") throw ParseError(lineno, "expected edge line 'e <u> <v>'");
    const long long u = parse_int(es, lineno, "endpoint");
    const long long v = parse_int(es, lineno, "endpoint");
    expect_end(es, lineno);
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "endpoint out of range");
    if (u == v) throw ParseError(lineno, "self-loop");
    if (g.has_edge(static_cast<Label>(u - 1), static_cast<Label>(v - 1)))
      throw ParseError(lineno, "duplicate edge");
    g.add_edge(static_cast<Label>(u - 1), static_cast<Label>(v - 1));
    ++seen;
  }
  if (seen != m)
    throw ParseError(lineno, "header announces " + std::to_string(m) + " edges, found " +
                                 std::to_string(seen));
  return g;
}

LabeledGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return read_graph(in);
}

void write_graph(const LabeledGraph& g, std::ostream& out) {
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

void write_graph_file(const LabeledGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  write_graph(g, out);
}

std::vector<Op> read_script(std::istream& in) {
  std::vector<Op> ops;
  std::string line;
  std::size_t lineno = 0;
  while (next_content_line(in, line, lineno)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    Op op;
    op.line = lineno;
    int arity = 0;
    if (tag == "C") { op.kind = OpKind::Contract; arity = 2; }
    else if (tag == "DV") { op.kind = OpKind::DeleteVertex; arity = 1; }
    else if (tag == "DE") { op.kind = OpKind::DeleteEdge; arity = 2; }
    else if (tag == "N") { op.kind = OpKind::Neighbors; arity = 1; }
    else if (tag == "D") { op.kind = OpKind::Degree; arity = 1; }
    else if (tag == "A") { op.kind = OpKind::Adjacent; arity = 2; }
    else throw ParseError(lineno, "unknown operation '" + tag + "'");
    const long long a = parse_int(ss, lineno, "vertex");
    if (a < 1) throw ParseError(lineno, "labels are 1-based");
    op.u = static_cast<Label>(a - 1);
    if (arity == 2) {
      const long long b = parse_int(ss, lineno, "vertex");
      if (b < 1) throw ParseError(lineno, "labels are 1-based");
      op.v = static_cast<Label>(b - 1);
    }
    expect_end(ss, lineno);
    ops.push_back(op);
  }
  return ops;
}

std::vector<Op> read_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return read_script(in);
}

void write_script(const std::vector<Op>& ops, std::ostream& out) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::Contract: out << "C " << op.u + 1 << ' ' << op.v + 1; break;
      case OpKind::DeleteVertex: out << "DV " << op.u + 1; break;
      case OpKind::DeleteEdge: out << "DE " << op.u + 1 << ' ' << op.v + 1; break;
      case OpKind::Neighbors: out << "N " << op.u + 1; break;
      case OpKind::Degree: out << "D " << op.u + 1; break;
      case OpKind::Adjacent: out << "A " << op.u + 1 << ' ' << op.v + 1; break;
    }
    out << '\n';
  }
}

bool is_planar(const LabeledGraph& g) {
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  std::map<Label, std::size_t> id;
  for (Label u : g.vertices()) id.emplace(u, id.size());
  BG bg(id.size());
  for (const auto& [u, v] : g.edges()) boost::add_edge(id[u], id[v], bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace planarsucc
