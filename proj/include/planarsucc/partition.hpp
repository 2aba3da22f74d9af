#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "planarsucc/graph.hpp"
#include "planarsucc/succinct.hpp"

namespace planarsucc {

struct RPartition {
  std::vector<std::vector<Label>> vertices;  // sorted, per piece
  std::vector<std::vector<Edge>> edges;      // per piece, edge-disjoint
  std::vector<Label> boundary;               // vertices in two or more pieces
};

// Recursive BFS-level bisection of a connected graph until every piece has
// at most `cap` vertices.
RPartition build_rpartition(const LabeledGraph& g, std::size_t cap);
// Same on an arbitrary vertex set and edge list (components may be many).
RPartition partition_edges(const std::vector<Label>& vertices, const std::vector<Edge>& edges,
                           std::size_t cap);

struct PartitionConfig {
  std::size_t r = 64;
  std::size_t r_prime = 4;
  std::size_t cap_factor = 2;
};

enum class Color : std::uint8_t { Simple, GlobalBoundary, MiniBoundary, DoubleBoundary };

struct MicroPiece {
  std::vector<Label> mini;  // micro label -> static mini label
  // Lowest micro label of each color; the global-boundary class is empty so
  // first_gb == first_mb.
  unsigned first_gb = 0, first_mb = 0, first_db = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;  // micro labels, after F_i routing
  Color color(unsigned x) const {
    return x < first_gb ? Color::Simple
           : x < first_mb ? Color::GlobalBoundary
           : x < first_db ? Color::MiniBoundary
                          : Color::DoubleBoundary;
  }
};

struct MiniPiece {
  Label offset = 0;                // global label of mini label 0
  std::uint32_t n = 0;             // |V(P_i)|
  std::uint32_t first_mb = 0;      // mini labels [first_mb, n) form the boundary of P_i
  std::uint32_t first_db = 0;      // [first_db, n) are the duplicates of globally shared vertices
  std::vector<Label> global;       // mini label -> core global label
  std::vector<MicroPiece> micro;
  std::vector<Label> first_simple;  // per micro graph, mini label of micro label 0
  std::vector<std::vector<std::pair<std::uint32_t, unsigned>>> member;  // boundary x' -> (j, x'')
  std::vector<std::pair<Label, Label>> f_edges;  // edges between boundary vertices, mini labels
  IndexableDictionary simple_starts;  // over [0, first_mb], starts of non-empty simple blocks
  CompactArray simple_micro;          // rank -> micro index
};

// Static three-level labelling. Core global labels put every vertex that
// lies in a single mini graph first, grouped by mini graph in mini-label
// order, then all globally shared vertices.
struct Hierarchy {
  std::size_t n = 0;
  Label n_nb = 0;                // labels >= n_nb are globally shared
  std::vector<Label> to_core;    // input label -> core label
  std::vector<Label> from_core;  // core label -> input label
  std::vector<MiniPiece> mini;
  std::vector<Edge> f_edges;     // both endpoints shared, core labels
  std::vector<std::vector<std::pair<std::uint32_t, Label>>> member;  // shared u - n_nb -> (i, u')
  IndexableDictionary piece_starts;  // over [0, n_nb], starts of non-empty blocks
  CompactArray piece_of_start;       // rank -> mini index
  std::size_t outer_boundary = 0;
  std::size_t inner_boundary_total = 0;

  bool shared(Label u) const { return u >= n_nb; }
  // u < n_nb -> (i, u').
  std::pair<std::uint32_t, Label> phi(Label u) const;
  // Simple mini label -> (j, x'').
  std::pair<std::uint32_t, unsigned> phi_i(std::uint32_t i, Label x) const;
  std::size_t static_bits() const;
};

Hierarchy build_hierarchy(const LabeledGraph& g, const PartitionConfig& cfg);
void dump_hierarchy(const Hierarchy& h, std::ostream& out);

}  // namespace planarsucc
