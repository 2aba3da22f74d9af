#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace planarsucc {

using Label = std::uint32_t;
using Edge = std::pair<Label, Label>;

inline Edge make_edge(Label a, Label b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Mutable simple undirected graph over integer labels; the oracle and a
// general-purpose container.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t n);  // vertices 0..n-1, no edges

  void add_vertex(Label u);
  void add_edge(Label u, Label v);
  void remove_edge(Label u, Label v);
  void remove_vertex(Label u);

  bool has_vertex(Label u) const { return adj_.count(u) != 0; }
  bool has_edge(Label u, Label v) const;
  const std::set<Label>& neighbors(Label u) const;
  std::size_t degree(Label u) const { return neighbors(u).size(); }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  std::vector<Label> vertices() const;
  std::vector<Edge> edges() const;
  Label max_label() const;

  void set_vertex_aux(Label u, std::int64_t value);
  const std::map<Label, std::int64_t>& vertex_aux() const { return vertex_aux_; }
  void set_edge_aux(Label u, Label v, std::int64_t value);
  const std::map<Edge, std::int64_t>& edge_aux() const { return edge_aux_; }

  // Full scan: symmetry, no loops, edge count, aux keys.
  bool check_simple() const;
  bool is_connected() const;
  std::vector<std::vector<Label>> components() const;

  bool operator==(const LabeledGraph& o) const { return adj_ == o.adj_; }

 private:
  void require(Label u) const;
  std::map<Label, std::set<Label>> adj_;
  std::size_t edges_ = 0;
  std::map<Label, std::int64_t> vertex_aux_;
  std::map<Edge, std::int64_t> edge_aux_;
};

// v is merged into u: N(u) := N(u) + N(v) - {u, v}. Returns u.
Label oracle_contract(LabeledGraph& g, Label u, Label v);
void oracle_delete_vertex(LabeledGraph& g, Label u);
void oracle_delete_edge(LabeledGraph& g, Label u, Label v);

// Adds v_d = max label + 1 joined to the smallest label of every component.
Label connect_components(LabeledGraph& g);

// Connected planar graph on 0..n-1: Delaunay triangulation of random points,
// then random removal of non-spanning-tree edges.
LabeledGraph generate_planar(std::size_t n, std::uint64_t seed);

// Boyer-Myrvold test.
bool is_planar(const LabeledGraph& g);

// Edge-list format: "p <n> <m>" then m lines "e <u> <v>", labels 1-based.
LabeledGraph read_graph(std::istream& in);
LabeledGraph read_graph_file(const std::string& path);
void write_graph(const LabeledGraph& g, std::ostream& out);
void write_graph_file(const LabeledGraph& g, const std::string& path);

enum class OpKind { Contract, DeleteVertex, DeleteEdge, Neighbors, Degree, Adjacent };

struct Op {
  OpKind kind;
  Label u = 0;
  Label v = 0;
  std::size_t line = 0;
};

// Script lines: "C u v", "DV u", "DE u v", "N u", "D u", "A u v" (1-based).
std::vector<Op> read_script(std::istream& in);
std::vector<Op> read_script_file(const std::string& path);
void write_script(const std::vector<Op>& ops, std::ostream& out);

}  // namespace planarsucc
