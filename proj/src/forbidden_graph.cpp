#include "planarsucc/forbidden_graph.hpp"

#include "planarsucc/errors.hpp"
#include "planarsucc/succinct.hpp"

namespace planarsucc {

ForbiddenGraph::ForbiddenGraph(std::size_t universe, const std::vector<bool>& forbidden)
    : slots_(universe), slot_b_(universe, false), ext2int_(universe), int2ext_(universe),
      deleted_(universe, false) {
  if (forbidden.size() > universe) fail(ErrorKind::InvalidArgument, "forbidden set larger than universe");
  for (std::size_t x = 0; x < universe; ++x) {
    ext2int_[x] = int2ext_[x] = static_cast<std::uint32_t>(x);
    slot_b_[x] = x < forbidden.size() && forbidden[x];
  }
}

std::uint32_t ForbiddenGraph::slot(Label x) const {
  if (x >= ext2int_.size()) fail(ErrorKind::UnknownVertex, "label outside universe");
  if (ext2int_[x] == kNone) {
    if (deleted_[x]) fail(ErrorKind::DeletedVertex, "vertex is deleted");
    fail(ErrorKind::UnknownVertex, "vertex was merged away");
  }
  return ext2int_[x];
}

bool ForbiddenGraph::forbidden(Label x) const { return slot_b_[slot(x)]; }

void ForbiddenGraph::link(std::uint32_t a, std::uint32_t b, Payload p) {
  side(a, b).emplace(b, p);
  side(b, a).emplace(a, p);
  ++edges_;
}

void ForbiddenGraph::unlink(std::uint32_t a, std::uint32_t b) {
  side(a, b).erase(b);
  side(b, a).erase(a);
  --edges_;
}

bool ForbiddenGraph::insert(Label u, Label v, Payload p) {
  if (u == v) fail(ErrorKind::SameVertex, "self-loop");
  const auto a = slot(u), b = slot(v);
  counters().work++;
  if (side(a, b).count(b)) fail(ErrorKind::EdgeExists, "edge already present");
  if (slot_b_[a] && slot_b_[b]) return false;
  link(a, b, p);
  return true;
}

ForbiddenGraph::Payload ForbiddenGraph::erase(Label u, Label v) {
  const auto a = slot(u), b = slot(v);
  counters().work++;
  auto& m = side(a, b);
  auto it = m.find(b);
  if (it == m.end()) fail(ErrorKind::NotAnEdge, "edge not present");
  const Payload p = it->second;
  unlink(a, b);
  return p;
}

bool ForbiddenGraph::adjacent(Label u, Label v) const {
  const auto a = slot(u), b = slot(v);
  counters().probes++;
  return a != b && side(a, b).count(b) != 0;
}

ForbiddenGraph::Payload ForbiddenGraph::payload(Label u, Label v) const {
  const auto a = slot(u), b = slot(v);
  counters().probes++;
  const auto& m = side(a, b);
  auto it = m.find(b);
  if (it == m.end()) fail(ErrorKind::NotAnEdge, "edge not present");
  return it->second;
}

void ForbiddenGraph::set_payload(Label u, Label v, Payload p) {
  const auto a = slot(u), b = slot(v);
  auto it = side(a, b).find(b);
  if (it == side(a, b).end()) fail(ErrorKind::NotAnEdge, "edge not present");
  it->second = p;
  side(b, a)[a] = p;
}

std::size_t ForbiddenGraph::degree(Label u) const { return slot_degree(slot(u)); }

std::size_t ForbiddenGraph::forbidden_degree(Label u) const { return slots_[slot(u)].b.size(); }

std::vector<Label> ForbiddenGraph::neighbors(Label u) const {
  std::vector<Label> out;
  for_each_neighbor(u, [&](Label x, Payload) { out.push_back(x); });
  return out;
}

MergeReport ForbiddenGraph::merge(Label u, Label v, Label survivor) {
  if (u == v) fail(ErrorKind::SameVertex, "cannot merge a vertex with itself");
  if (survivor != u && survivor != v) fail(ErrorKind::InvalidArgument, "survivor must be an endpoint");
  const Label other = survivor == u ? v : u;
  const auto ss = slot(survivor), so = slot(other);
  MergeReport rep;
  {
    auto& m = side(ss, so);
    auto it = m.find(so);
    if (it != m.end()) {
      rep.had_edge = true;
      rep.edge_payload = it->second;
      unlink(ss, so);
    }
  }
  std::uint32_t keep, gone;
  if (slot_b_[ss] != slot_b_[so] || slot_degree(ss) >= slot_degree(so)) {
    keep = ss;
    gone = so;
  } else {
    keep = so;
    gone = ss;
  }
  const bool reversed = keep != ss;
  if (reversed) {
    // New edges of the survivor are the kept side's edges it lacked.
    for (const auto* m : {&slots_[keep].b, &slots_[keep].nb})
      for (const auto& [x, p] : *m) {
        counters().work++;
        if (!side(gone, x).count(x)) rep.inserted_new.push_back({survivor, int2ext_[x], p});
      }
  }
  std::vector<std::pair<std::uint32_t, Payload>> moved;
  moved.reserve(slot_degree(gone));
  for (const auto* m : {&slots_[gone].b, &slots_[gone].nb})
    for (const auto& e : *m) moved.push_back(e);
  for (auto [x, p] : moved) {
    counters().work++;
    ++relinks_;
    unlink(gone, x);
    auto& km = side(keep, x);
    auto it = km.find(x);
    if (it != km.end()) {
      if (reversed) {
        rep.discarded_parallel.push_back({survivor, int2ext_[x], it->second});
        it->second = p;
        side(x, keep)[keep] = p;
      } else {
        rep.discarded_parallel.push_back({survivor, int2ext_[x], p});
      }
    } else if (slot_b_[keep] && slot_b_[x]) {
      rep.discarded_forbidden.push_back({survivor, int2ext_[x], p});
    } else {
      link(keep, x, p);
      if (!reversed) rep.inserted_new.push_back({survivor, int2ext_[x], p});
    }
  }
  ext2int_[survivor] = keep;
  int2ext_[keep] = survivor;
  ext2int_[other] = kNone;
  int2ext_[gone] = kNone;
  return rep;
}

void ForbiddenGraph::delete_vertex(Label u) {
  const auto s = slot(u);
  std::vector<std::uint32_t> nb;
  for (const auto* m : {&slots_[s].b, &slots_[s].nb})
    for (const auto& e : *m) nb.push_back(e.first);
  for (auto x : nb) {
    counters().work++;
    unlink(s, x);
  }
  ext2int_[u] = kNone;
  int2ext_[s] = kNone;
  deleted_[u] = true;
}

std::vector<ReportedEdge> ForbiddenGraph::edges() const {
  std::vector<ReportedEdge> out;
  for (std::uint32_t s = 0; s < slots_.size(); ++s) {
    if (int2ext_[s] == kNone) continue;
    for (const auto* m : {&slots_[s].b, &slots_[s].nb})
      for (const auto& [x, p] : *m)
        if (int2ext_[s] < int2ext_[x]) out.push_back({int2ext_[s], int2ext_[x], p});
  }
  return out;
}

bool ForbiddenGraph::check() const {
  std::size_t half = 0;
  for (std::uint32_t s = 0; s < slots_.size(); ++s) {
    const Label e = int2ext_[s];
    if (e == kNone) {
      if (slot_degree(s)) return false;
      continue;
    }
    if (ext2int_[e] != s) return false;
    for (int which = 0; which < 2; ++which) {
      const auto& m = which ? slots_[s].nb : slots_[s].b;
      for (const auto& [x, p] : m) {
        if (x == s || int2ext_[x] == kNone) return false;
        if (slot_b_[x] != (which == 0)) return false;
        if (slot_b_[s] && slot_b_[x]) return false;
        const auto& back = side(x, s);
        auto it = back.find(s);
        if (it == back.end() || it->second != p) return false;
        ++half;
      }
    }
  }
  for (Label x = 0; x < ext2int_.size(); ++x)
    if (ext2int_[x] != kNone && int2ext_[ext2int_[x]] != x) return false;
  return half == 2 * edges_;
}

std::size_t ForbiddenGraph::bits(unsigned payload_width) const {
  const unsigned w = bits_for(universe());
  return edges_ * (2 * w + payload_width) + 2 * universe() * w + 2 * universe();
}

}  // namespace planarsucc
