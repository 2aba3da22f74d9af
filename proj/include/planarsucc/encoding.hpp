#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "planarsucc/forbidden_graph.hpp"
#include "planarsucc/graph.hpp"
#include "planarsucc/mappings.hpp"
#include "planarsucc/microtable.hpp"
#include "planarsucc/partition.hpp"

namespace planarsucc {

struct EncodingConfig {
  PartitionConfig partition;
  bool hashing = false;
};

struct InvariantReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

struct SpaceReport {
  std::size_t n = 0;
  std::size_t micro_graphs = 0;
  std::size_t micro_index_bits = 0;    // measured size of the packed micro records
  std::size_t micro_index_bound = 0;   // sum of (stratum index width + 3)
  std::size_t static_bits = 0;
  std::size_t dynamic_bits = 0;
  std::size_t side_bits() const { return static_bits + dynamic_bits; }
  std::size_t table_bytes = 0;
};

// The encoding over core labels [0, n): labels below n_nb lie in a single
// mini graph, the rest are globally shared. Contractions pick the survivor
// from the structure; see contract().
class EncodingCore {
 public:
  EncodingCore(const LabeledGraph& g, const EncodingConfig& cfg, std::shared_ptr<const MicroTable> table);

  std::size_t size() const { return h_.n; }
  bool live(Label u) const { return u < h_.n && !dead_[u]; }
  bool shared(Label u) const { return h_.shared(u); }
  const Hierarchy& hierarchy() const { return h_; }
  const MicroTable& table() const { return *table_; }
  bool hashing() const { return cfg_.hashing; }

  std::vector<Label> neighbors(Label u) const;
  std::size_t degree(Label u) const;
  // Contracts the edge {u, v}. If exactly one endpoint is shared it
  // survives; otherwise the survivor follows the merge with the larger
  // bookkeeping side. Returns the survivor, the other label dies.
  Label contract(Label u, Label v);
  void delete_vertex(Label u);
  bool adjacent(Label u, Label v) const;
  void delete_edge(Label u, Label v);

  InvariantReport check_invariants() const;
  SpaceReport space() const;
  void serialize(std::ostream& out) const;
  void corrupt_degree_for_testing(Label u);

 private:
  struct Mini {
    ForbiddenGraph f;  // internal boundary labels shifted by first_mb; B = shared duplicates
    HFamily h;         // boundary vertices vs micro graphs
    IntExtMap ie;
    DynInverse inv;    // shared duplicates -> global label
    std::vector<DynInverse> micro_inv;  // per micro graph: duplicates -> internal mini label
    CompactArray deg;  // degree inside the mini graph, by internal boundary label
    BitVector dead;    // external mini labels
    std::unordered_map<std::uint64_t, std::uint32_t> hash;  // (internal, micro) -> micro label
    std::size_t micro_base = 0;
  };
  using UpEdges = std::vector<std::pair<Label, Label>>;
  struct Touched {
    std::vector<std::pair<std::uint32_t, Label>> mini;  // (i, internal boundary label)
    std::vector<std::tuple<std::uint32_t, std::uint32_t, unsigned>> micro;  // (i, j, dup micro label)
  };

  // micro records
  unsigned micro_k(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t micro_idx(std::uint32_t i, std::uint32_t j) const;
  void set_micro_idx(std::uint32_t i, std::uint32_t j, std::uint32_t idx);

  // label translation
  Label micro_to_internal(std::uint32_t i, std::uint32_t j, unsigned x) const;
  Label external_to_global(std::uint32_t i, Label xe) const;
  Label internal_to_global(std::uint32_t i, Label xi) const;
  bool is_boundary(std::uint32_t i, Label x) const { return x >= h_.mini[i].first_mb; }
  bool is_dup(std::uint32_t i, Label x) const { return x >= h_.mini[i].first_db; }
  Label fb(std::uint32_t i, Label x) const { return x - h_.mini[i].first_mb; }  // local id in F_i / H_i

  template <class F>
  void for_each_mini_neighbor(std::uint32_t i, Label xi, F&& f) const;
  template <class F>
  void for_each_micro_neighbor(std::uint32_t i, std::uint32_t j, unsigned x, F&& f) const;

  // degree bookkeeping
  std::size_t mini_degree(std::uint32_t i, Label xi) const;
  void deg_add(Label u, std::int64_t d);
  void degi_add(std::uint32_t i, Label xi, std::int64_t d, Touched& t);
  void lose_edge(std::uint32_t i, Label xi, Touched& t);
  void refresh(Touched& t);
  void route_up(const UpEdges& up);

  // merges
  Label mini_merge(std::uint32_t i, Label a, Label b, int prefer, bool require_edge, UpEdges& up,
                   Touched& t);
  void micro_merge(std::uint32_t i, std::uint32_t j, unsigned s, unsigned d, UpEdges& up, Touched& t);
  bool find_dup_in_micro(std::uint32_t i, std::uint32_t j, unsigned from, Label target_internal,
                         unsigned& found) const;
  bool find_global_dup(std::uint32_t i, Label v_ext, Label u, Label& u_ext) const;

  // deletions
  void mini_delete(std::uint32_t i, Label xi, Touched& t);
  void micro_delete(std::uint32_t i, std::uint32_t j, unsigned x, Touched& t);

  // hashing
  static std::uint64_t key(Label a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }
  void require_hashing() const;
  bool locate_in_mini(std::uint32_t i, Label a, Label b, std::uint32_t& j, unsigned& xa,
                      unsigned& xb) const;

  void check_live(Label u) const;

  EncodingConfig cfg_;
  std::shared_ptr<const MicroTable> table_;
  Hierarchy h_;
  ForbiddenGraph f_;  // shared vertices, local id u - n_nb
  HFamily hg_;        // shared vertices vs mini graphs
  CompactArray deg_;  // by shared local id
  BitVector dead_;
  std::vector<Mini> mini_;
  BitVector records_;
  CompactArray record_off_;
  std::unordered_map<std::uint64_t, Label> hash_;  // (shared local id, mini) -> external mini label
};

// The public encoding over input labels. Disconnected input gets a hidden
// connector vertex that never shows up in answers.
class DynamicEncoding {
 public:
  DynamicEncoding(const LabeledGraph& g, const EncodingConfig& cfg,
                  std::shared_ptr<const MicroTable> table = nullptr);

  std::size_t universe() const { return n_; }
  bool live(Label u) const { return u < n_ && core_->live(u2c_[u]); }
  bool global_boundary(Label u) const;
  std::vector<Label> neighbors(Label u) const;  // sorted
  std::size_t degree(Label u) const;
  Label contract(Label u, Label v);
  void delete_vertex(Label u);
  bool adjacent(Label u, Label v) const;
  void delete_edge(Label u, Label v);
  std::vector<Label> live_vertices() const;
  LabeledGraph reconstruct() const;

  InvariantReport check_invariants() const;
  SpaceReport space() const { return core_->space(); }
  void serialize(std::ostream& out) const;
  const EncodingCore& core() const { return *core_; }
  void corrupt_degree_for_testing(Label u) { core_->corrupt_degree_for_testing(u2c_.at(u)); }

 private:
  void check(Label u) const;
  std::size_t n_ = 0;
  bool has_connector_ = false;
  std::vector<bool> connector_adj_;
  std::vector<Label> u2c_, c2u_;
  std::unique_ptr<EncodingCore> core_;
};

}  // namespace planarsucc
