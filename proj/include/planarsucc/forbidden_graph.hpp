#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "planarsucc/graph.hpp"

namespace planarsucc {

struct ReportedEdge {
  Label a = 0;  // the surviving endpoint
  Label b = 0;
  std::uint64_t payload = 0;
};

struct MergeReport {
  std::vector<ReportedEdge> discarded_parallel;  // payload of the discarded copy
  std::vector<ReportedEdge> inserted_new;
  std::vector<ReportedEdge> discarded_forbidden;
  bool had_edge = false;  // {u, v} existed and vanished as a self-loop
  std::uint64_t edge_payload = 0;
};

// Simple graph over external labels [0, universe) with a forbidden set B:
// no edge joins two B vertices. Merges relink the smaller internal vertex
// into the larger; the external label of the result is chosen freely.
class ForbiddenGraph {
 public:
  using Payload = std::uint64_t;
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  ForbiddenGraph() = default;
  ForbiddenGraph(std::size_t universe, const std::vector<bool>& forbidden);

  std::size_t universe() const { return ext2int_.size(); }
  bool forbidden(Label x) const;
  bool live(Label x) const { return x < ext2int_.size() && ext2int_[x] != kNone; }
  bool is_deleted(Label x) const { return x < deleted_.size() && deleted_[x]; }

  // False (and no edge) when both endpoints are in B.
  bool insert(Label u, Label v, Payload p = 0);
  Payload erase(Label u, Label v);
  bool adjacent(Label u, Label v) const;
  Payload payload(Label u, Label v) const;
  void set_payload(Label u, Label v, Payload p);
  std::size_t degree(Label u) const;
  std::size_t forbidden_degree(Label u) const;
  std::vector<Label> neighbors(Label u) const;

  template <class F>
  void for_each_neighbor(Label u, F&& f) const {
    const Slot& s = slots_[slot(u)];
    for (const auto& [x, p] : s.b) f(int2ext_[x], p);
    for (const auto& [x, p] : s.nb) f(int2ext_[x], p);
  }
  // The B-neighbour view of u.
  template <class F>
  void for_each_forbidden_neighbor(Label u, F&& f) const {
    for (const auto& [x, p] : slots_[slot(u)].b) f(int2ext_[x], p);
  }

  MergeReport merge(Label u, Label v, Label survivor);
  void delete_vertex(Label u);

  std::size_t edge_count() const { return edges_; }
  std::vector<ReportedEdge> edges() const;
  std::uint32_t internal(Label x) const { return slot(x); }
  std::uint64_t relinks() const { return relinks_; }

  // Symmetry, no B-B edge, label maps mutually inverse.
  bool check() const;
  // Logical size: two label-width entries per edge plus payloads, label maps,
  // B and deletion flags.
  std::size_t bits(unsigned payload_width) const;

 private:
  struct Slot {
    std::unordered_map<std::uint32_t, Payload> b;   // neighbours in B
    std::unordered_map<std::uint32_t, Payload> nb;  // neighbours outside B
  };
  std::uint32_t slot(Label x) const;
  std::unordered_map<std::uint32_t, Payload>& side(std::uint32_t owner, std::uint32_t other) {
    return slot_b_[other] ? slots_[owner].b : slots_[owner].nb;
  }
  const std::unordered_map<std::uint32_t, Payload>& side(std::uint32_t owner,
                                                         std::uint32_t other) const {
    return slot_b_[other] ? slots_[owner].b : slots_[owner].nb;
  }
  std::size_t slot_degree(std::uint32_t s) const { return slots_[s].b.size() + slots_[s].nb.size(); }
  void link(std::uint32_t a, std::uint32_t b, Payload p);
  void unlink(std::uint32_t a, std::uint32_t b);

  std::vector<Slot> slots_;
  std::vector<bool> slot_b_;
  std::vector<std::uint32_t> ext2int_;
  std::vector<std::uint32_t> int2ext_;
  std::vector<bool> deleted_;
  std::size_t edges_ = 0;
  std::uint64_t relinks_ = 0;
};

}  // namespace planarsucc
