#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "planarsucc/graph.hpp"
#include "planarsucc/succinct.hpp"

namespace planarsucc {

// Planarity of a graph with at most 8 vertices, given as adjacency rows
// (bit v of rows[u] set iff {u, v} is an edge). True iff the graph has no
// subdivision of K5 or K3,3.
bool tiny_planarity(const std::vector<std::uint32_t>& rows);
bool tiny_planarity(std::size_t n, const std::vector<Edge>& edges);

// Pair index of {a, b}, a != b, in the edge bitmask of a micro graph.
constexpr unsigned pair_index(unsigned a, unsigned b) {
  return a < b ? b * (b - 1) / 2 + a : a * (a - 1) / 2 + b;
}

// All planar graphs on vertex sets [0, k), k <= r'+1, addressed by a dense
// per-k index. Vertex k-1 is the dummy: it is adjacent exactly to the deleted
// vertices, and a deleted vertex has no other neighbour.
class MicroTable {
 public:
  static constexpr unsigned kMaxRPrime = 6;
  static constexpr int kNonplanar = -2;
  static constexpr int kUndefined = -1;

  explicit MicroTable(unsigned r_prime);

  unsigned r_prime() const { return r_prime_; }
  unsigned max_k() const { return r_prime_ + 1; }
  std::size_t count(unsigned k) const { return strata_.at(k).masks.size(); }
  std::size_t valid_count(unsigned k) const { return strata_.at(k).valid.size(); }
  unsigned index_width(unsigned k) const;

  std::uint32_t mask(unsigned k, std::uint32_t idx) const { return strata_.at(k).masks.at(idx); }
  // -1 when the mask is not a planar graph.
  std::int64_t index_of(unsigned k, std::uint32_t mask) const;
  std::uint32_t encode(unsigned k, std::uint32_t mask) const;
  bool valid_state(unsigned k, std::uint32_t idx) const;

  // Neighbour row of u over [0, k-1); the dummy bit is cleared.
  std::uint32_t row(unsigned k, std::uint32_t idx, unsigned u) const;
  bool is_deleted(unsigned k, std::uint32_t idx, unsigned u) const;
  bool adjacent(unsigned k, std::uint32_t idx, unsigned u, unsigned v) const;
  unsigned degree(unsigned k, std::uint32_t idx, unsigned u) const;
  std::vector<unsigned> neighbors(unsigned k, std::uint32_t idx, unsigned u) const;
  // Sorted neighbours w of u with a <= w <= b.
  std::vector<unsigned> range_neighbors(unsigned k, std::uint32_t idx, unsigned u, unsigned a,
                                        unsigned b) const;
  std::uint32_t range_row(unsigned k, std::uint32_t idx, unsigned u, unsigned a, unsigned b) const;

  // v merged into u: N(u) gains N(v) - {u}, v becomes deleted.
  std::uint32_t merge(unsigned k, std::uint32_t idx, unsigned u, unsigned v) const;
  // Removes every edge {u, w} with a <= w <= b.
  std::uint32_t batch_delete(unsigned k, std::uint32_t idx, unsigned u, unsigned a,
                             unsigned b) const;
  // Removes all edges of u and marks it deleted.
  std::uint32_t delete_vertex(unsigned k, std::uint32_t idx, unsigned u) const;

  void save(std::ostream& out) const;
  static MicroTable load(std::istream& in);

  std::size_t transition_bytes() const;

 private:
  MicroTable() = default;
  struct Stratum {
    std::vector<std::uint32_t> masks;
    std::vector<std::int32_t> index;  // mask -> index, -1 if nonplanar
    std::vector<std::uint32_t> valid;
    IndexableDictionary valid_id;
    std::vector<std::int32_t> trans;  // [valid rank][u][v]
  };
  void build_lookup(unsigned k);
  void build_transitions(unsigned k);
  const Stratum& stratum(unsigned k) const;
  void check_live(unsigned k, std::uint32_t idx, unsigned u) const;

  unsigned r_prime_ = 0;
  std::vector<Stratum> strata_;
};

// Decoded edge rows of a micro graph on k vertices.
std::vector<std::uint32_t> decode_rows(unsigned k, std::uint32_t mask);
std::uint32_t encode_rows(const std::vector<std::uint32_t>& rows);

}  // namespace planarsucc
