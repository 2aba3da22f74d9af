#include "planarsucc/encoding.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>

#include "planarsucc/errors.hpp"

namespace planarsucc {

namespace {

constexpr unsigned kKBits = 3;

}  // namespace

EncodingCore::EncodingCore(const LabeledGraph& g, const EncodingConfig& cfg,
                           std::shared_ptr<const MicroTable> table)
    : cfg_(cfg), table_(std::move(table)) {
  if (!table_) table_ = std::make_shared<MicroTable>(static_cast<unsigned>(cfg.partition.r_prime));
  if (table_->r_prime() < cfg.partition.r_prime)
    fail(ErrorKind::InvalidArgument, "micro table is smaller than r'");
  h_ = build_hierarchy(g, cfg.partition);
  const std::size_t n = h_.n, ns = n - h_.n_nb, np = h_.mini.size();
  f_ = ForbiddenGraph(ns, {});
  hg_ = HFamily(ns, np, false);
  deg_ = CompactArray::for_max(ns, n);
  dead_ = BitVector(n);

  // Packed micro records: [k][index] with the stratum width of k.
  std::vector<std::uint64_t> offs{0};
  for (const auto& p : h_.mini)
    for (const auto& m : p.micro) {
      const auto k = static_cast<unsigned>(m.mini.size() + 1);
      offs.push_back(offs.back() + kKBits + table_->index_width(k));
    }
  records_ = BitVector(offs.back() + 64);
  record_off_ = CompactArray::for_max(offs.size(), offs.back());
  for (std::size_t t = 0; t < offs.size(); ++t) record_off_.set(t, offs[t]);

  mini_.resize(np);
  std::size_t base = 0;
  for (std::uint32_t i = 0; i < np; ++i) {
    const MiniPiece& p = h_.mini[i];
    Mini& m = mini_[i];
    m.micro_base = base;
    base += p.micro.size();
    const std::size_t nb = p.n - p.first_mb;
    std::vector<bool> forb(nb, false);
    for (Label x = p.first_db; x < p.n; ++x) forb[x - p.first_mb] = true;
    m.f = ForbiddenGraph(nb, forb);
    m.h = HFamily(nb, p.micro.size(), true);
    m.ie = IntExtMap(p.first_mb, p.n);
    m.inv = DynInverse(p.first_db, std::vector<Label>(p.global.begin() + p.first_db, p.global.end()), n);
    m.deg = CompactArray::for_max(nb, n);
    m.dead = BitVector(p.n);
    for (std::uint32_t j = 0; j < p.micro.size(); ++j) {
      const MicroPiece& mp = p.micro[j];
      const auto k = static_cast<unsigned>(mp.mini.size() + 1);
      m.micro_inv.emplace_back(mp.first_mb,
                               std::vector<Label>(mp.mini.begin() + mp.first_mb, mp.mini.end()), p.n);
      std::vector<std::uint32_t> rows(k, 0);
      for (auto [a, b] : mp.edges) {
        rows[a] |= 1U << b;
        rows[b] |= 1U << a;
      }
      const std::uint32_t pos = static_cast<std::uint32_t>(record_off_.get(m.micro_base + j));
      records_.set_bits(pos, kKBits, k);
      set_micro_idx(i, j, table_->encode(k, encode_rows(rows)));
    }
    for (auto [a, b] : p.f_edges) {
      m.f.insert(a - p.first_mb, b - p.first_mb);
      m.deg.set(a - p.first_mb, m.deg.get(a - p.first_mb) + 1);
      m.deg.set(b - p.first_mb, m.deg.get(b - p.first_mb) + 1);
    }
    for (Label x = p.first_mb; x < p.n; ++x)
      for (auto [j, xm] : p.member[x - p.first_mb]) {
        const unsigned k = micro_k(i, j);
        const auto idx = micro_idx(i, j);
        const unsigned d = table_->degree(k, idx, xm);
        m.deg.set(x - p.first_mb, m.deg.get(x - p.first_mb) + d);
        m.h.add(x - p.first_mb, j, xm, d > 0);
        m.h.prime_update(x - p.first_mb, j, xm,
                         table_->range_row(k, idx, xm, p.micro[j].first_gb, k - 2) != 0);
        if (cfg_.hashing) m.hash[key(x, j)] = xm;
      }
  }
  for (auto [a, b] : h_.f_edges) {
    f_.insert(a - h_.n_nb, b - h_.n_nb);
    deg_.set(a - h_.n_nb, deg_.get(a - h_.n_nb) + 1);
    deg_.set(b - h_.n_nb, deg_.get(b - h_.n_nb) + 1);
  }
  for (Label s = 0; s < ns; ++s)
    for (auto [i, x] : h_.member[s]) {
      const auto d = mini_[i].deg.get(x - h_.mini[i].first_mb);
      deg_.set(s, deg_.get(s) + d);
      hg_.add(s, i, x, d > 0);
      if (cfg_.hashing) hash_[key(s, i)] = x;
    }
  // The hierarchy's edge lists are only needed for construction.
  for (auto& p : h_.mini) {
    p.f_edges.clear();
    p.f_edges.shrink_to_fit();
    for (auto& mp : p.micro) {
      mp.edges.clear();
      mp.edges.shrink_to_fit();
    }
  }
  h_.f_edges.clear();
  h_.f_edges.shrink_to_fit();
}

unsigned EncodingCore::micro_k(std::uint32_t i, std::uint32_t j) const {
  return static_cast<unsigned>(records_.get_bits(record_off_.get(mini_[i].micro_base + j), kKBits));
}

std::uint32_t EncodingCore::micro_idx(std::uint32_t i, std::uint32_t j) const {
  const auto pos = record_off_.get(mini_[i].micro_base + j);
  const unsigned w = table_->index_width(static_cast<unsigned>(records_.get_bits(pos, kKBits)));
  counters().probes++;
  return w ? static_cast<std::uint32_t>(records_.get_bits(pos + kKBits, w)) : 0;
}

void EncodingCore::set_micro_idx(std::uint32_t i, std::uint32_t j, std::uint32_t idx) {
  const auto pos = record_off_.get(mini_[i].micro_base + j);
  const unsigned w = table_->index_width(static_cast<unsigned>(records_.get_bits(pos, kKBits)));
  if (w) records_.set_bits(pos + kKBits, w, idx);
}

Label EncodingCore::micro_to_internal(std::uint32_t i, std::uint32_t j, unsigned x) const {
  const MicroPiece& mp = h_.mini[i].micro[j];
  if (x < mp.first_mb) return h_.mini[i].first_simple[j] + x;
  return mini_[i].micro_inv[j].get(x);
}

Label EncodingCore::external_to_global(std::uint32_t i, Label xe) const {
  if (is_dup(i, xe)) return mini_[i].inv.get(xe);
  return h_.mini[i].offset + xe;
}

Label EncodingCore::internal_to_global(std::uint32_t i, Label xi) const {
  return external_to_global(i, mini_[i].ie.external(xi));
}

void EncodingCore::check_live(Label u) const {
  if (u >= h_.n) fail(ErrorKind::UnknownVertex, "unknown vertex");
  if (dead_[u]) fail(ErrorKind::DeletedVertex, "vertex is deleted or merged away");
}

template <class F>
void EncodingCore::for_each_micro_neighbor(std::uint32_t i, std::uint32_t j, unsigned x, F&& f) const {
  const unsigned k = micro_k(i, j);
  for (std::uint32_t r = table_->row(k, micro_idx(i, j), x); r; r &= r - 1) {
    counters().probes++;
    f(micro_to_internal(i, j, static_cast<unsigned>(std::countr_zero(r))));
  }
}

template <class F>
void EncodingCore::for_each_mini_neighbor(std::uint32_t i, Label xi, F&& f) const {
  const Mini& m = mini_[i];
  const Label base = h_.mini[i].first_mb;
  if (is_boundary(i, xi)) {
    counters().probes++;
    m.f.for_each_neighbor(xi - base, [&](Label y, std::uint64_t) {
      counters().probes++;
      f(y + base);
    });
    m.h.phi_nonzero_iter(xi - base, [&](Label j, Label xm) { for_each_micro_neighbor(i, j, xm, f); });
  } else {
    const auto [j, xm] = h_.phi_i(i, xi);
    for_each_micro_neighbor(i, j, xm, f);
  }
}

std::vector<Label> EncodingCore::neighbors(Label u) const {
  check_live(u);
  std::vector<Label> out;
  auto emit_mini = [&](std::uint32_t i, Label xi) {
    for_each_mini_neighbor(i, xi, [&](Label y) { out.push_back(internal_to_global(i, y)); });
  };
  if (shared(u)) {
    const Label s = u - h_.n_nb;
    counters().probes++;
    f_.for_each_neighbor(s, [&](Label y, std::uint64_t) {
      counters().probes++;
      out.push_back(y + h_.n_nb);
    });
    hg_.phi_nonzero_iter(s, [&](Label i, Label xe) { emit_mini(i, mini_[i].ie.internal(xe)); });
  } else {
    const auto [i, xe] = h_.phi(u);
    emit_mini(i, mini_[i].ie.internal(xe));
  }
  return out;
}

std::size_t EncodingCore::mini_degree(std::uint32_t i, Label xi) const {
  if (is_boundary(i, xi)) return mini_[i].deg.get(fb(i, xi));
  const auto [j, xm] = h_.phi_i(i, xi);
  return table_->degree(micro_k(i, j), micro_idx(i, j), xm);
}

std::size_t EncodingCore::degree(Label u) const {
  check_live(u);
  counters().probes++;
  if (shared(u)) return deg_.get(u - h_.n_nb);
  const auto [i, xe] = h_.phi(u);
  return mini_degree(i, mini_[i].ie.internal(xe));
}

void EncodingCore::deg_add(Label u, std::int64_t d) {
  const Label s = u - h_.n_nb;
  const auto v = static_cast<std::int64_t>(deg_.get(s)) + d;
  if (v < 0) fail(ErrorKind::InvalidArgument, "degree bookkeeping went negative");
  deg_.set(s, static_cast<std::uint64_t>(v));
}

void EncodingCore::degi_add(std::uint32_t i, Label xi, std::int64_t d, Touched& t) {
  CompactArray& deg = mini_[i].deg;
  const auto v = static_cast<std::int64_t>(deg.get(fb(i, xi))) + d;
  if (v < 0) fail(ErrorKind::InvalidArgument, "mini degree bookkeeping went negative");
  deg.set(fb(i, xi), static_cast<std::uint64_t>(v));
  if (is_dup(i, xi)) t.mini.emplace_back(i, xi);
}

void EncodingCore::lose_edge(std::uint32_t i, Label xi, Touched& t) {
  if (!is_boundary(i, xi)) return;
  degi_add(i, xi, -1, t);
  if (is_dup(i, xi)) deg_add(internal_to_global(i, xi), -1);
}

void EncodingCore::refresh(Touched& t) {
  for (auto [i, xi] : t.mini) {
    const Mini& m = mini_[i];
    if (!is_dup(i, xi) || !m.h.h().live(fb(i, xi))) continue;
    const Label xe = m.ie.external(xi);
    if (m.dead[xe]) continue;
    const Label s = m.inv.get(xe) - h_.n_nb;
    if (!hg_.h().live(s) || !hg_.has(s, i) || hg_.dup(s, i) != xe) continue;
    hg_.nonzero_update(s, i, xe, m.deg.get(fb(i, xi)) > 0);
  }
  for (auto [i, j, x] : t.micro) {
    Mini& m = mini_[i];
    const unsigned k = micro_k(i, j);
    const auto idx = micro_idx(i, j);
    if (table_->is_deleted(k, idx, x)) continue;
    const Label xi = micro_to_internal(i, j, x);
    if (!m.h.h().live(fb(i, xi)) || !m.h.has(fb(i, xi), j) || m.h.dup(fb(i, xi), j) != x) continue;
    m.h.nonzero_update(fb(i, xi), j, x, table_->degree(k, idx, x) > 0);
    m.h.prime_update(fb(i, xi), j, x,
                     table_->range_row(k, idx, x, h_.mini[i].micro[j].first_gb, k - 2) != 0);
  }
  t.mini.clear();
  t.micro.clear();
}

void EncodingCore::route_up(const UpEdges& up) {
  for (auto [a, b] : up) {
    const Label sa = a - h_.n_nb, sb = b - h_.n_nb;
    if (f_.adjacent(sa, sb)) {
      deg_add(a, -1);
      deg_add(b, -1);
    } else {
      f_.insert(sa, sb);
    }
  }
}

void EncodingCore::micro_merge(std::uint32_t i, std::uint32_t j, unsigned s, unsigned d, UpEdges& up,
                               Touched& t) {
  Mini& m = mini_[i];
  const MicroPiece& mp = h_.mini[i].micro[j];
  const unsigned k = micro_k(i, j);
  auto idx = micro_idx(i, j);
  const std::uint32_t rs = table_->row(k, idx, s), rd = table_->row(k, idx, d);
  const Label si = micro_to_internal(i, j, s);
  for (std::uint32_t c = rs & rd; c; c &= c - 1) {
    const auto x = static_cast<unsigned>(std::countr_zero(c));
    counters().work++;
    lose_edge(i, si, t);
    lose_edge(i, micro_to_internal(i, j, x), t);
    if (x >= mp.first_mb) t.micro.emplace_back(i, j, x);
  }
  if ((rs >> d) & 1U) {
    lose_edge(i, si, t);
    lose_edge(i, si, t);
  }
  idx = table_->merge(k, idx, s, d);
  if (s >= mp.first_gb) {
    // Edges between two boundary colors may not stay in a micro graph.
    const std::uint32_t forb = table_->range_row(k, idx, s, mp.first_gb, k - 2);
    if (forb) idx = table_->batch_delete(k, idx, s, mp.first_gb, k - 2);
    for (std::uint32_t c = forb; c; c &= c - 1) {
      const auto x = static_cast<unsigned>(std::countr_zero(c));
      const Label xi = micro_to_internal(i, j, x);
      counters().work++;
      if (is_dup(i, si) && is_dup(i, xi)) {
        degi_add(i, si, -1, t);
        degi_add(i, xi, -1, t);
        up.emplace_back(internal_to_global(i, si), internal_to_global(i, xi));
      } else if (m.f.adjacent(fb(i, si), fb(i, xi))) {
        lose_edge(i, si, t);
        lose_edge(i, xi, t);
      } else {
        m.f.insert(fb(i, si), fb(i, xi));
      }
      t.micro.emplace_back(i, j, x);
    }
  }
  set_micro_idx(i, j, idx);
  if (s >= mp.first_mb) t.micro.emplace_back(i, j, s);
}

bool EncodingCore::find_dup_in_micro(std::uint32_t i, std::uint32_t j, unsigned from,
                                     Label target_internal, unsigned& found) const {
  const MicroPiece& mp = h_.mini[i].micro[j];
  const unsigned k = micro_k(i, j);
  if (mp.first_mb + 1 >= k) return false;
  for (std::uint32_t r = table_->range_row(k, micro_idx(i, j), from, mp.first_mb, k - 2); r; r &= r - 1) {
    const auto y = static_cast<unsigned>(std::countr_zero(r));
    counters().work++;
    if (micro_to_internal(i, j, y) == target_internal) {
      found = y;
      return true;
    }
  }
  return false;
}

bool EncodingCore::find_global_dup(std::uint32_t i, Label v_ext, Label u, Label& u_ext) const {
  const Mini& m = mini_[i];
  const MiniPiece& p = h_.mini[i];
  const Label vi = m.ie.internal(v_ext);
  auto test = [&](Label yi) {
    counters().work++;
    if (!is_dup(i, yi)) return false;
    const Label ye = m.ie.external(yi);
    if (m.inv.get(ye) != u) return false;
    u_ext = ye;
    return true;
  };
  auto scan_micro = [&](std::uint32_t j, unsigned x) {
    const MicroPiece& mp = p.micro[j];
    const unsigned k = micro_k(i, j);
    if (mp.first_gb + 1 >= k) return false;
    for (std::uint32_t r = table_->range_row(k, micro_idx(i, j), x, mp.first_gb, k - 2); r; r &= r - 1)
      if (test(micro_to_internal(i, j, static_cast<unsigned>(std::countr_zero(r))))) return true;
    return false;
  };
  if (!is_boundary(i, vi)) {
    const auto [j, x] = h_.phi_i(i, vi);
    return scan_micro(j, x);
  }
  bool hit = false;
  m.f.for_each_forbidden_neighbor(fb(i, vi), [&](Label y, std::uint64_t) {
    if (!hit) hit = test(y + p.first_mb);
  });
  if (hit) return true;
  m.h.phi_prime_iter(fb(i, vi), [&](Label j, Label x) {
    if (!hit) hit = scan_micro(j, x);
  });
  return hit;
}

Label EncodingCore::mini_merge(std::uint32_t i, Label a, Label b, int prefer, bool require_edge,
                               UpEdges& up, Touched& t) {
  Mini& m = mini_[i];
  const MiniPiece& p = h_.mini[i];
  const Label ai = m.ie.internal(a), bi = m.ie.internal(b);
  const bool ba = is_boundary(i, ai), bb = is_boundary(i, bi);
  counters().work++;
  if (!ba && !bb) {
    // M1: both in one micro graph.
    const auto [ja, xa] = h_.phi_i(i, ai);
    const auto [jb, xb] = h_.phi_i(i, bi);
    if (ja != jb || !table_->adjacent(micro_k(i, ja), micro_idx(i, ja), xa, xb))
      fail(ErrorKind::NotAnEdge, "not an edge");
    const bool keep_b = prefer == 1;
    micro_merge(i, ja, keep_b ? xb : xa, keep_b ? xa : xb, up, t);
    m.dead.set(keep_b ? a : b);
    return keep_b ? b : a;
  }
  if (ba != bb) {
    // M2: the simple endpoint is absorbed by the boundary endpoint.
    const Label se = ba ? a : b, de = ba ? b : a;
    if ((prefer == 0 && se != a) || (prefer == 1 && se != b))
      fail(ErrorKind::InvalidArgument, "forced merge direction contradicts the requested survivor");
    const Label si = m.ie.internal(se);
    const auto [j, dx] = h_.phi_i(i, m.ie.internal(de));
    unsigned sx = 0;
    if (!find_dup_in_micro(i, j, dx, si, sx)) fail(ErrorKind::NotAnEdge, "not an edge");
    degi_add(i, si, table_->degree(micro_k(i, j), micro_idx(i, j), dx), t);
    micro_merge(i, j, sx, dx, up, t);
    m.dead.set(de);
    return se;
  }
  // M3: both endpoints are boundary vertices of the mini graph.
  if (require_edge && !m.f.adjacent(fb(i, ai), fb(i, bi))) fail(ErrorKind::NotAnEdge, "not an edge");
  Label si, di;
  if (is_dup(i, ai) != is_dup(i, bi)) si = is_dup(i, ai) ? ai : bi;
  else si = m.h.count(fb(i, ai)) >= m.h.count(fb(i, bi)) ? ai : bi;
  di = si == ai ? bi : ai;
  Label se = prefer == 0 ? a : prefer == 1 ? b : m.ie.external(si);
  const Label de = se == a ? b : a;
  if (is_dup(i, se) != is_dup(i, si))
    fail(ErrorKind::InvalidArgument, "survivor label would change boundary status");
  if (const Label old = m.ie.external(si); old != se) {
    m.ie.set(old, di);
    m.ie.set(se, si);
  }
  m.dead.set(de);
  degi_add(i, si, static_cast<std::int64_t>(m.deg.get(fb(i, di))), t);
  const PhiMergeResult pm = m.h.phi_merge(fb(i, si), fb(i, di), fb(i, si));
  for (auto [j, dx] : pm.only) {
    m.micro_inv[j].set(dx, si);
    if (cfg_.hashing) {
      m.hash.erase(key(di, j));
      m.hash[key(si, j)] = dx;
    }
  }
  if (cfg_.hashing)
    for (const auto& c : pm.cap) m.hash.erase(key(di, std::get<0>(c)));
  const MergeReport fr = m.f.merge(fb(i, si), fb(i, di), fb(i, si));
  if (fr.had_edge) {
    lose_edge(i, si, t);
    lose_edge(i, si, t);
  }
  for (const auto& e : fr.discarded_parallel) {
    lose_edge(i, si, t);
    lose_edge(i, e.b + p.first_mb, t);
  }
  for (const auto& e : fr.discarded_forbidden) {
    const Label xi = e.b + p.first_mb;
    degi_add(i, si, -1, t);
    degi_add(i, xi, -1, t);
    up.emplace_back(internal_to_global(i, si), internal_to_global(i, xi));
  }
  for (const auto& [j, sx, dx] : pm.cap) {
    micro_merge(i, j, sx, dx, up, t);
    t.micro.emplace_back(i, j, sx);
  }
  t.mini.emplace_back(i, si);
  return se;
}

Label EncodingCore::contract(Label u, Label v) {
  check_live(u);
  check_live(v);
  if (u == v) fail(ErrorKind::SameVertex, "cannot contract a vertex with itself");
  counters().work++;
  UpEdges up;
  Touched t;
  const bool su = shared(u), sv = shared(v);
  if (!su && !sv) {
    // G1
    const auto [i, a] = h_.phi(u);
    const auto [i2, b] = h_.phi(v);
    if (i != i2) fail(ErrorKind::NotAnEdge, "not an edge");
    const Label se = mini_merge(i, a, b, -1, true, up, t);
    route_up(up);
    refresh(t);
    const Label s = h_.mini[i].offset + se;
    const Label d = s == u ? v : u;
    dead_.set(d);
    return s;
  }
  if (su != sv) {
    // G2
    const Label gu = su ? u : v, gv = su ? v : u;
    const auto [i, ve] = h_.phi(gv);
    Label ue = 0;
    if (!find_global_dup(i, ve, gu, ue)) fail(ErrorKind::NotAnEdge, "not an edge");
    deg_add(gu, static_cast<std::int64_t>(mini_degree(i, mini_[i].ie.internal(ve))));
    mini_merge(i, ue, ve, 0, false, up, t);
    t.mini.emplace_back(i, mini_[i].ie.internal(ue));
    route_up(up);
    refresh(t);
    dead_.set(gv);
    return gu;
  }
  // G3
  const Label lu = u - h_.n_nb, lv = v - h_.n_nb;
  if (!f_.adjacent(lu, lv)) fail(ErrorKind::NotAnEdge, "not an edge");
  const Label s = hg_.count(lu) >= hg_.count(lv) ? u : v;
  const Label d = s == u ? v : u;
  const Label ls = s - h_.n_nb, ld = d - h_.n_nb;
  deg_add(s, static_cast<std::int64_t>(deg_.get(ld)));
  const PhiMergeResult pm = hg_.phi_merge(ls, ld, ls);
  for (auto [i, de] : pm.only) {
    mini_[i].inv.set(de, s);
    if (cfg_.hashing) {
      hash_.erase(key(ld, i));
      hash_[key(ls, i)] = de;
    }
  }
  if (cfg_.hashing)
    for (const auto& c : pm.cap) hash_.erase(key(ld, std::get<0>(c)));
  const MergeReport fr = f_.merge(ls, ld, ls);
  if (fr.had_edge) deg_add(s, -2);
  for (const auto& e : fr.discarded_parallel) {
    deg_add(s, -1);
    deg_add(e.b + h_.n_nb, -1);
  }
  for (const auto& [i, se, de] : pm.cap) {
    mini_merge(i, se, de, 0, false, up, t);
    t.mini.emplace_back(i, mini_[i].ie.internal(se));
  }
  route_up(up);
  refresh(t);
  dead_.set(d);
  return s;
}

void EncodingCore::micro_delete(std::uint32_t i, std::uint32_t j, unsigned x, Touched& t) {
  const MicroPiece& mp = h_.mini[i].micro[j];
  const unsigned k = micro_k(i, j);
  const auto idx = micro_idx(i, j);
  for (std::uint32_t r = table_->row(k, idx, x); r; r &= r - 1) {
    const auto y = static_cast<unsigned>(std::countr_zero(r));
    counters().work++;
    lose_edge(i, micro_to_internal(i, j, y), t);
    if (y >= mp.first_mb) t.micro.emplace_back(i, j, y);
  }
  set_micro_idx(i, j, table_->delete_vertex(k, idx, x));
}

void EncodingCore::mini_delete(std::uint32_t i, Label xi, Touched& t) {
  Mini& m = mini_[i];
  const MiniPiece& p = h_.mini[i];
  m.dead.set(m.ie.external(xi));
  if (!is_boundary(i, xi)) {
    const auto [j, x] = h_.phi_i(i, xi);
    micro_delete(i, j, x, t);
    return;
  }
  std::vector<std::pair<Label, Label>> dups;
  m.h.phi_iter(fb(i, xi), [&](Label j, Label x) { dups.emplace_back(j, x); });
  for (auto [j, x] : dups) {
    micro_delete(i, j, x, t);
    if (cfg_.hashing) m.hash.erase(key(xi, j));
  }
  m.f.for_each_neighbor(fb(i, xi), [&](Label y, std::uint64_t) { lose_edge(i, y + p.first_mb, t); });
  m.f.delete_vertex(fb(i, xi));
  m.h.delete_vertex(fb(i, xi));
}

void EncodingCore::delete_vertex(Label u) {
  check_live(u);
  counters().work++;
  Touched t;
  if (shared(u)) {
    const Label s = u - h_.n_nb;
    std::vector<std::pair<Label, Label>> dups;
    hg_.phi_iter(s, [&](Label i, Label xe) { dups.emplace_back(i, xe); });
    for (auto [i, xe] : dups) {
      mini_delete(i, mini_[i].ie.internal(xe), t);
      if (cfg_.hashing) hash_.erase(key(s, i));
    }
    f_.for_each_neighbor(s, [&](Label y, std::uint64_t) { deg_add(y + h_.n_nb, -1); });
    f_.delete_vertex(s);
    hg_.delete_vertex(s);
  } else {
    const auto [i, xe] = h_.phi(u);
    mini_delete(i, mini_[i].ie.internal(xe), t);
  }
  dead_.set(u);
  refresh(t);
}

void EncodingCore::require_hashing() const {
  if (!cfg_.hashing) fail(ErrorKind::HashingRequired, "hashing mode required");
}

bool EncodingCore::locate_in_mini(std::uint32_t i, Label ai, Label bi, std::uint32_t& j, unsigned& xa,
                                  unsigned& xb) const {
  const Mini& m = mini_[i];
  if (is_boundary(i, ai) && !is_boundary(i, bi)) return locate_in_mini(i, bi, ai, j, xb, xa);
  // ai is simple here.
  const auto [ja, x] = h_.phi_i(i, ai);
  j = ja;
  xa = x;
  if (!is_boundary(i, bi)) {
    const auto [jb, y] = h_.phi_i(i, bi);
    xb = y;
    return jb == ja;
  }
  counters().probes++;
  auto it = m.hash.find(key(bi, j));
  if (it == m.hash.end()) return false;
  xb = it->second;
  return true;
}

bool EncodingCore::adjacent(Label u, Label v) const {
  require_hashing();
  check_live(u);
  check_live(v);
  if (u == v) return false;
  if (shared(u) && shared(v)) return f_.adjacent(u - h_.n_nb, v - h_.n_nb);
  if (shared(v)) std::swap(u, v);
  // v is not shared: its mini graph is the only candidate.
  const auto [i, be] = h_.phi(v);
  Label ae;
  if (shared(u)) {
    counters().probes++;
    auto it = hash_.find(key(u - h_.n_nb, i));
    if (it == hash_.end()) return false;
    ae = it->second;
  } else {
    const auto [i2, x] = h_.phi(u);
    if (i2 != i) return false;
    ae = x;
  }
  const Mini& m = mini_[i];
  const Label ai = m.ie.internal(ae), bi = m.ie.internal(be);
  if (is_boundary(i, ai) && is_boundary(i, bi)) return m.f.adjacent(fb(i, ai), fb(i, bi));
  std::uint32_t j = 0;
  unsigned xa = 0, xb = 0;
  if (!locate_in_mini(i, ai, bi, j, xa, xb)) return false;
  return table_->adjacent(micro_k(i, j), micro_idx(i, j), xa, xb);
}

void EncodingCore::delete_edge(Label u, Label v) {
  require_hashing();
  check_live(u);
  check_live(v);
  if (u == v) fail(ErrorKind::SameVertex, "self-loop");
  if (!adjacent(u, v)) fail(ErrorKind::NotAnEdge, "not an edge");
  counters().work++;
  if (shared(u) && shared(v)) {
    f_.erase(u - h_.n_nb, v - h_.n_nb);
    deg_add(u, -1);
    deg_add(v, -1);
    return;
  }
  if (shared(v)) std::swap(u, v);
  const auto [i, be] = h_.phi(v);
  const Label ae = shared(u) ? hash_.at(key(u - h_.n_nb, i)) : h_.phi(u).second;
  Mini& m = mini_[i];
  const Label ai = m.ie.internal(ae), bi = m.ie.internal(be);
  Touched t;
  if (is_boundary(i, ai) && is_boundary(i, bi)) {
    m.f.erase(fb(i, ai), fb(i, bi));
  } else {
    std::uint32_t j = 0;
    unsigned xa = 0, xb = 0;
    locate_in_mini(i, ai, bi, j, xa, xb);
    const unsigned k = micro_k(i, j);
    set_micro_idx(i, j, table_->batch_delete(k, micro_idx(i, j), xa, xb, xb));
    const unsigned fmb = h_.mini[i].micro[j].first_mb;
    if (xa >= fmb) t.micro.emplace_back(i, j, xa);
    if (xb >= fmb) t.micro.emplace_back(i, j, xb);
  }
  lose_edge(i, ai, t);
  lose_edge(i, bi, t);
  refresh(t);
}

InvariantReport EncodingCore::check_invariants() const {
  const Counters saved = counters();
  InvariantReport rep;
  auto bad = [&](const std::string& msg) {
    if (rep.violations.size() < 64) rep.violations.push_back(msg);
  };
  auto str = [](auto... xs) {
    std::ostringstream o;
    ((o << xs << ' '), ...);
    return o.str();
  };
  const Label nnb = h_.n_nb;
  std::vector<std::pair<Label, Label>> managed;
  auto add_edge = [&](Label a, Label b, const char* where) {
    if (a == b) bad(str("self-loop in", where, a));
    if (!live(a) || !live(b)) bad(str("edge with a dead endpoint in", where, a, b));
    managed.push_back(std::minmax(a, b));
  };

  if (!f_.check()) bad("F structure check failed");
  if (!hg_.check()) bad("H structure check failed");
  for (const auto& e : f_.edges()) add_edge(e.a + nnb, e.b + nnb, "F");

  std::size_t h_edges = 0, hash_expect = 0;
  for (std::uint32_t i = 0; i < mini_.size(); ++i) {
    const Mini& m = mini_[i];
    const MiniPiece& p = h_.mini[i];
    if (!m.f.check()) bad(str("F_i structure check failed", i));
    if (!m.h.check()) bad(str("H_i structure check failed", i));
    for (Label x = p.first_mb; x < p.n; ++x)
      if (m.ie.internal(m.ie.external(x)) != x) bad(str("label round trip failed", i, x));
    for (const auto& e : m.f.edges()) {
      const Label a = e.a + p.first_mb, b = e.b + p.first_mb;
      if (is_dup(i, a) && is_dup(i, b)) bad(str("edge between duplicates in F_i", i, a, b));
      add_edge(internal_to_global(i, a), internal_to_global(i, b), "F_i");
    }
    for (std::uint32_t j = 0; j < p.micro.size(); ++j) {
      const MicroPiece& mp = p.micro[j];
      const unsigned k = micro_k(i, j);
      const auto idx = micro_idx(i, j);
      if (k != mp.mini.size() + 1) bad(str("micro stratum changed", i, j));
      if (!table_->valid_state(k, idx)) bad(str("invalid micro code", i, j));
      for (unsigned x = 0; x + 1 < k; ++x) {
        const bool del = table_->is_deleted(k, idx, x);
        if (x < mp.first_mb) {
          if (del != m.dead[p.first_simple[j] + x]) bad(str("simple deletion flag mismatch", i, j, x));
          if (del) continue;
        } else {
          if (del) continue;
          const Label xi = micro_to_internal(i, j, x);
          if (!is_boundary(i, xi) || !m.h.h().live(fb(i, xi)) || !m.h.has(fb(i, xi), j) ||
              m.h.dup(fb(i, xi), j) != x)
            bad(str("micro duplicate without H_i entry", i, j, x));
        }
        for (unsigned y = x + 1; y + 1 < k; ++y) {
          if (table_->is_deleted(k, idx, y) || !table_->adjacent(k, idx, x, y)) continue;
          if (x >= mp.first_mb && y >= mp.first_mb) bad(str("boundary edge kept in micro graph", i, j, x, y));
          add_edge(internal_to_global(i, micro_to_internal(i, j, x)),
                   internal_to_global(i, micro_to_internal(i, j, y)), "micro");
        }
      }
    }
    for (Label xi = p.first_mb; xi < p.n; ++xi) {
      const Label xe = m.ie.external(xi);
      const bool alive = m.h.h().live(fb(i, xi));
      if (alive == m.dead[xe]) bad(str("mini boundary status mismatch", i, xi));
      if (alive != m.f.live(fb(i, xi))) bad(str("F_i and H_i disagree on liveness", i, xi));
      if (!alive) continue;
      std::size_t sum = m.f.degree(fb(i, xi));
      m.h.phi_iter(fb(i, xi), [&](Label j, Label x) {
        ++h_edges;
        const unsigned k = micro_k(i, j);
        const auto idx = micro_idx(i, j);
        if (table_->is_deleted(k, idx, x) || m.micro_inv[j].get(x) != xi) {
          bad(str("H_i entry points to a foreign duplicate", i, xi, j, x));
          return;
        }
        const unsigned d = table_->degree(k, idx, x);
        sum += d;
        if (m.h.positive(fb(i, xi), j) != (d > 0)) bad(str("H_i^{>0} out of date", i, xi, j));
        const bool pr = table_->range_row(k, idx, x, p.micro[j].first_gb, k - 2) != 0;
        if (m.h.prime(fb(i, xi), j) != pr) bad(str("H_i' out of date", i, xi, j));
        if (cfg_.hashing) {
          auto it = m.hash.find(key(xi, j));
          if (it == m.hash.end() || it->second != x) bad(str("micro hash mismatch", i, xi, j));
        }
      });
      if (m.deg.get(fb(i, xi)) != sum) bad(str("Deg_i mismatch", i, xi, m.deg.get(fb(i, xi)), sum));
    }
    if (cfg_.hashing) hash_expect += m.hash.size();
  }
  if (cfg_.hashing && hash_expect != h_edges) bad("stale micro hash entries");

  std::size_t g_edges = 0;
  for (Label u = 0; u < h_.n; ++u) {
    if (!shared(u)) {
      const auto [i, xe] = h_.phi(u);
      if (mini_[i].dead[xe] != dead_[u]) bad(str("mini deletion flag mismatch", u));
      continue;
    }
    const Label s = u - nnb;
    if (hg_.h().live(s) == dead_[u] || f_.live(s) == dead_[u]) bad(str("global status mismatch", u));
    if (dead_[u]) continue;
    std::size_t sum = f_.degree(s);
    hg_.phi_iter(s, [&](Label i, Label xe) {
      ++g_edges;
      const Mini& m = mini_[i];
      if (!is_dup(i, xe) || m.dead[xe] || m.inv.get(xe) != u) {
        bad(str("H entry points to a foreign duplicate", u, i, xe));
        return;
      }
      const auto d = m.deg.get(fb(i, m.ie.internal(xe)));
      sum += d;
      if (hg_.positive(s, i) != (d > 0)) bad(str("H^{>0} out of date", u, i));
      if (cfg_.hashing) {
        auto it = hash_.find(key(s, i));
        if (it == hash_.end() || it->second != xe) bad(str("global hash mismatch", u, i));
      }
    });
    if (deg_.get(s) != sum) bad(str("Deg mismatch", u, deg_.get(s), sum));
  }
  if (cfg_.hashing && g_edges != hash_.size()) bad("stale global hash entries");

  // Queries against the managed edge set.
  std::sort(managed.begin(), managed.end());
  for (std::size_t t = 1; t < managed.size(); ++t)
    if (managed[t] == managed[t - 1]) bad(str("edge managed twice:", managed[t].first, managed[t].second));
  std::vector<std::size_t> start(h_.n + 1, 0);
  for (const auto& e : managed) {
    ++start[e.first + 1];
    ++start[e.second + 1];
  }
  for (std::size_t u = 0; u < h_.n; ++u) start[u + 1] += start[u];
  std::vector<Label> adj(start.back());
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& e : managed) {
    adj[fill[e.first]++] = e.second;
    adj[fill[e.second]++] = e.first;
  }
  std::vector<Label> nb;
  for (Label u = 0; u < h_.n; ++u) {
    if (dead_[u]) continue;
    nb = neighbors(u);
    std::sort(nb.begin(), nb.end());
    const auto b = adj.begin() + static_cast<std::ptrdiff_t>(start[u]);
    const auto e = adj.begin() + static_cast<std::ptrdiff_t>(start[u + 1]);
    std::sort(b, e);
    if (!std::equal(nb.begin(), nb.end(), b, e)) bad(str("neighbors disagree with managed edges", u));
    const std::size_t want = start[u + 1] - start[u];
    if (degree(u) != want) bad(str("degree disagrees with managed edges", u, degree(u), want));
  }
  counters() = saved;
  return rep;
}

SpaceReport EncodingCore::space() const {
  SpaceReport r;
  r.n = h_.n;
  r.micro_graphs = record_off_.size() - 1;
  r.micro_index_bits = record_off_.get(r.micro_graphs);
  for (std::uint32_t i = 0; i < mini_.size(); ++i)
    for (std::uint32_t j = 0; j < h_.mini[i].micro.size(); ++j)
      r.micro_index_bound += table_->index_width(micro_k(i, j)) + kKBits;
  r.static_bits = h_.static_bits() + record_off_.bits();
  const unsigned lw = bits_for(h_.n);
  std::size_t d = f_.bits(0) + hg_.bits() + deg_.bits() + dead_.bits();
  for (const Mini& m : mini_) {
    d += m.f.bits(0) + m.h.bits() + m.ie.bits() + m.inv.bits() + m.deg.bits() + m.dead.bits();
    for (const auto& mi : m.micro_inv) d += mi.bits();
    if (cfg_.hashing) d += m.hash.size() * 2 * lw;
  }
  if (cfg_.hashing) d += hash_.size() * 2 * lw;
  r.dynamic_bits = d;
  r.table_bytes = table_->transition_bytes();
  return r;
}

void EncodingCore::serialize(std::ostream& out) const {
  out << "PSE1 " << h_.n << ' ' << h_.n_nb << ' ' << mini_.size() << '\n';
  for (std::uint32_t i = 0; i < mini_.size(); ++i) {
    const auto& p = h_.mini[i];
    out << "mini " << i << ' ' << p.n << ' ' << p.micro.size() << '\n';
    for (std::uint32_t j = 0; j < p.micro.size(); ++j)
      out << "micro " << micro_k(i, j) << ' ' << micro_idx(i, j) << '\n';
    for (const auto& e : mini_[i].f.edges())
      out << "fi " << e.a + p.first_mb << ' ' << e.b + p.first_mb << '\n';
  }
  for (const auto& e : f_.edges()) out << "f " << e.a + h_.n_nb << ' ' << e.b + h_.n_nb << '\n';
}

void EncodingCore::corrupt_degree_for_testing(Label u) {
  check_live(u);
  if (shared(u)) {
    deg_.set(u - h_.n_nb, deg_.get(u - h_.n_nb) + 1);
    return;
  }
  const auto [i, xe] = h_.phi(u);
  const Label xi = mini_[i].ie.internal(xe);
  if (!is_boundary(i, xi)) fail(ErrorKind::InvalidArgument, "vertex has no degree entry");
  mini_[i].deg.set(fb(i, xi), mini_[i].deg.get(fb(i, xi)) + 1);
}

DynamicEncoding::DynamicEncoding(const LabeledGraph& g, const EncodingConfig& cfg,
                                 std::shared_ptr<const MicroTable> table) {
  if (g.vertex_count() == 0) fail(ErrorKind::InvalidArgument, "empty graph");
  n_ = static_cast<std::size_t>(g.max_label()) + 1;
  if (g.vertex_count() != n_) fail(ErrorKind::InvalidArgument, "vertex labels must be 0..n-1");
  LabeledGraph h = g;
  connector_adj_.assign(n_, false);
  if (!h.is_connected()) {
    const Label c = connect_components(h);
    has_connector_ = true;
    for (Label x : h.neighbors(c)) connector_adj_[x] = true;
  }
  core_ = std::make_unique<EncodingCore>(h, cfg, std::move(table));
  u2c_ = core_->hierarchy().to_core;
  c2u_ = core_->hierarchy().from_core;
}

void DynamicEncoding::check(Label u) const {
  if (u >= n_) fail(ErrorKind::UnknownVertex, "unknown vertex");
  if (!live(u)) fail(ErrorKind::DeletedVertex, "vertex is deleted or merged away");
}

bool DynamicEncoding::global_boundary(Label u) const {
  if (u >= n_) fail(ErrorKind::UnknownVertex, "unknown vertex");
  return core_->shared(u2c_[u]);
}

std::vector<Label> DynamicEncoding::neighbors(Label u) const {
  check(u);
  std::vector<Label> out;
  for (Label c : core_->neighbors(u2c_[u])) {
    const Label x = c2u_[c];
    if (x < n_) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t DynamicEncoding::degree(Label u) const {
  check(u);
  return core_->degree(u2c_[u]) - (connector_adj_[u] ? 1 : 0);
}

Label DynamicEncoding::contract(Label u, Label v) {
  check(u);
  check(v);
  if (u == v) fail(ErrorKind::SameVertex, "cannot contract a vertex with itself");
  const bool bu = global_boundary(u), bv = global_boundary(v);
  const Label want = (bu != bv && bv) ? v : u;
  const Label other = want == u ? v : u;
  const Label cs = core_->contract(u2c_[u], u2c_[v]);
  if (cs != u2c_[want]) {
    std::swap(u2c_[want], u2c_[other]);
    c2u_[u2c_[want]] = want;
    c2u_[u2c_[other]] = other;
  }
  connector_adj_[want] = connector_adj_[want] || connector_adj_[other];
  connector_adj_[other] = false;
  return want;
}

void DynamicEncoding::delete_vertex(Label u) {
  check(u);
  core_->delete_vertex(u2c_[u]);
  connector_adj_[u] = false;
}

bool DynamicEncoding::adjacent(Label u, Label v) const {
  if (!core_->hashing()) fail(ErrorKind::HashingRequired, "hashing mode required");
  check(u);
  check(v);
  return core_->adjacent(u2c_[u], u2c_[v]);
}

void DynamicEncoding::delete_edge(Label u, Label v) {
  if (!core_->hashing()) fail(ErrorKind::HashingRequired, "hashing mode required");
  check(u);
  check(v);
  core_->delete_edge(u2c_[u], u2c_[v]);
}

std::vector<Label> DynamicEncoding::live_vertices() const {
  std::vector<Label> out;
  for (Label u = 0; u < n_; ++u)
    if (live(u)) out.push_back(u);
  return out;
}

LabeledGraph DynamicEncoding::reconstruct() const {
  LabeledGraph g;
  for (Label u : live_vertices()) g.add_vertex(u);
  for (Label u : live_vertices())
    for (Label x : neighbors(u))
      if (u < x) g.add_edge(u, x);
  return g;
}

InvariantReport DynamicEncoding::check_invariants() const {
  InvariantReport rep = core_->check_invariants();
  for (Label u = 0; u < n_; ++u)
    if (c2u_[u2c_[u]] != u) rep.violations.push_back("label permutation broken at " + std::to_string(u));
  if (has_connector_) {
    const Label c = u2c_.size() > n_ ? u2c_[n_] : 0;
    if (!core_->live(c)) {
      rep.violations.push_back("connector vertex vanished");
    } else {
      const Counters saved = counters();
      std::vector<bool> adj(n_, false);
      for (Label x : core_->neighbors(c)) adj[c2u_[x]] = true;
      counters() = saved;
      for (Label u = 0; u < n_; ++u)
        if (live(u) && adj[u] != connector_adj_[u])
          rep.violations.push_back("connector flag out of date at " + std::to_string(u));
    }
  }
  return rep;
}

void DynamicEncoding::serialize(std::ostream& out) const { core_->serialize(out); }

}  // namespace planarsucc
