#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "planarsucc/forbidden_graph.hpp"
#include "planarsucc/succinct.hpp"

namespace planarsucc {

// Internal/external label pair over the managed range [lo, hi); identity
// elsewhere.
class IntExtMap {
 public:
  IntExtMap() = default;
  IntExtMap(Label lo, Label hi);

  bool managed(Label x) const { return x >= lo_ && x < hi_; }
  Label internal(Label ext) const;
  Label external(Label in) const;
  // internal(ext) := in and external(in) := ext.
  void set(Label ext, Label in);
  std::size_t bits() const { return int_.bits() + ext_.bits(); }

 private:
  Label lo_ = 0, hi_ = 0;
  CompactArray int_, ext_;
};

// Writable inverse map over [lo, hi), initialized from a static table.
class DynInverse {
 public:
  DynInverse() = default;
  DynInverse(Label lo, const std::vector<Label>& initial, std::uint64_t max_value);

  bool managed(Label x) const { return x >= lo_ && x - lo_ < values_.size(); }
  Label get(Label x) const;
  void set(Label x, Label value);
  std::size_t bits() const { return values_.bits(); }

 private:
  Label lo_ = 0;
  CompactArray values_;
};

struct PhiMergeResult {
  std::vector<std::tuple<Label, Label, Label>> cap;  // (piece, survivor duplicate, absorbed duplicate)
  std::vector<std::pair<Label, Label>> only;         // (piece, absorbed duplicate now owned by survivor)
};

// H, H^{>0} and optionally H': bipartite graphs between boundary vertices
// [0, nb) and pieces [0, np). An edge (b, p) with payload x says that b has
// duplicate x in piece p. Pieces are forbidden vertices.
class HFamily {
 public:
  HFamily() = default;
  HFamily(std::size_t nb, std::size_t np, bool with_prime);

  std::size_t boundary_count() const { return nb_; }
  void add(Label b, Label p, Label dup, bool positive);

  bool has(Label b, Label p) const { return h_.adjacent(b, nb_ + p); }
  Label dup(Label b, Label p) const { return static_cast<Label>(h_.payload(b, nb_ + p)); }
  std::size_t count(Label b) const { return h_.degree(b); }
  bool positive(Label b, Label p) const { return pos_.adjacent(b, nb_ + p); }
  bool prime(Label b, Label p) const { return prime_.adjacent(b, nb_ + p); }

  template <class F>
  void phi_iter(Label b, F&& f) const {
    h_.for_each_neighbor(b, [&](Label x, std::uint64_t d) { f(x - static_cast<Label>(nb_), static_cast<Label>(d)); });
  }
  template <class F>
  void phi_nonzero_iter(Label b, F&& f) const {
    pos_.for_each_neighbor(b, [&](Label x, std::uint64_t d) { f(x - static_cast<Label>(nb_), static_cast<Label>(d)); });
  }
  template <class F>
  void phi_prime_iter(Label b, F&& f) const {
    prime_.for_each_neighbor(b, [&](Label x, std::uint64_t d) { f(x - static_cast<Label>(nb_), static_cast<Label>(d)); });
  }

  // Merges v into u (the survivor keeps label `survivor`). The ^{>0} and prime
  // graphs drop the absorbed side's shared pieces first, so the survivor's
  // payloads are never overwritten there; callers repair them afterwards.
  PhiMergeResult phi_merge(Label u, Label v, Label survivor);
  void nonzero_update(Label b, Label p, Label dup, bool now_positive);
  void prime_update(Label b, Label p, Label dup, bool now_present);
  void delete_vertex(Label b);

  bool check() const;
  std::size_t bits() const;
  const ForbiddenGraph& h() const { return h_; }
  const ForbiddenGraph& pos() const { return pos_; }
  const ForbiddenGraph& prime_graph() const { return prime_; }

 private:
  std::size_t nb_ = 0, np_ = 0;
  bool with_prime_ = false;
  ForbiddenGraph h_, pos_, prime_;
};

}  // namespace planarsucc
