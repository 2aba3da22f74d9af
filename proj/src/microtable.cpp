#include "planarsucc/microtable.hpp"

#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <string>

#include "planarsucc/errors.hpp"

namespace planarsucc {

namespace {

// Backtracking search for a subdivision of a pattern graph whose branch
// vertices are fixed; pattern edges are routed one at a time as internally
// disjoint paths through the non-branch vertices.
struct SubdivisionSearch {
  const std::vector<std::uint32_t>& rows;
  std::uint32_t free_mask;
  std::vector<std::pair<unsigned, unsigned>> edges;

  bool route(std::size_t t, std::uint32_t used) const {
    if (t == edges.size()) return true;
    return extend(t, edges[t].first, used);
  }

  bool extend(std::size_t t, unsigned cur, std::uint32_t used) const {
    const unsigned target = edges[t].second;
    if ((rows[cur] >> target) & 1U) {
      if (route(t + 1, used)) return true;
    }
    std::uint32_t next = rows[cur] & free_mask & ~used;
    while (next) {
      const unsigned w = std::countr_zero(next);
      next &= next - 1;
      if (extend(t, w, used | (1U << w))) return true;
    }
    return false;
  }
};

unsigned missing_edges(const std::vector<std::uint32_t>& rows,
                       const std::vector<std::pair<unsigned, unsigned>>& edges) {
  unsigned c = 0;
  for (auto [a, b] : edges)
    if (!((rows[a] >> b) & 1U)) ++c;
  return c;
}

bool has_k5(const std::vector<std::uint32_t>& rows, std::uint32_t alive) {
  std::vector<unsigned> cand;
  for (unsigned x = 0; x < rows.size(); ++x)
    if (((alive >> x) & 1U) && std::popcount(rows[x]) >= 4) cand.push_back(x);
  const unsigned c = static_cast<unsigned>(cand.size());
  if (c < 5) return false;
  for (std::uint32_t pick = 0; pick < (1U << c); ++pick) {
    if (std::popcount(pick) != 5) continue;
    std::vector<unsigned> br;
    std::uint32_t branch = 0;
    for (unsigned t = 0; t < c; ++t)
      if ((pick >> t) & 1U) { br.push_back(cand[t]); branch |= 1U << cand[t]; }
    SubdivisionSearch s{rows, alive & ~branch, {}};
    for (unsigned a = 0; a < 5; ++a)
      for (unsigned b = a + 1; b < 5; ++b) s.edges.emplace_back(br[a], br[b]);
    if (missing_edges(rows, s.edges) > static_cast<unsigned>(std::popcount(s.free_mask))) continue;
    if (s.route(0, 0)) return true;
  }
  return false;
}

bool has_k33(const std::vector<std::uint32_t>& rows, std::uint32_t alive) {
  std::vector<unsigned> cand;
  for (unsigned x = 0; x < rows.size(); ++x)
    if (((alive >> x) & 1U) && std::popcount(rows[x]) >= 3) cand.push_back(x);
  const unsigned c = static_cast<unsigned>(cand.size());
  if (c < 6) return false;
  for (std::uint32_t pick = 0; pick < (1U << c); ++pick) {
    if (std::popcount(pick) != 6) continue;
    std::vector<unsigned> br;
    std::uint32_t branch = 0;
    for (unsigned t = 0; t < c; ++t)
      if ((pick >> t) & 1U) { br.push_back(cand[t]); branch |= 1U << cand[t]; }
    // br[0] is always on side A; choose its two partners.
    for (unsigned p = 1; p < 6; ++p)
      for (unsigned q = p + 1; q < 6; ++q) {
        std::array<unsigned, 3> side_a{br[0], br[p], br[q]};
        std::vector<unsigned> side_b;
        for (unsigned t = 1; t < 6; ++t)
          if (t != p && t != q) side_b.push_back(br[t]);
        SubdivisionSearch s{rows, alive & ~branch, {}};
        for (unsigned a : side_a)
          for (unsigned b : side_b) s.edges.emplace_back(a, b);
        if (missing_edges(rows, s.edges) > static_cast<unsigned>(std::popcount(s.free_mask)))
          continue;
        if (s.route(0, 0)) return true;
      }
  }
  return false;
}

void remove_vertex(std::vector<std::uint32_t>& rows, unsigned x) {
  std::uint32_t nb = rows[x];
  while (nb) {
    const unsigned w = std::countr_zero(nb);
    nb &= nb - 1;
    rows[w] &= ~(1U << x);
  }
  rows[x] = 0;
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) fail(ErrorKind::InvalidArgument, "truncated table cache");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

bool tiny_planarity(const std::vector<std::uint32_t>& rows_in) {
  const std::size_t n = rows_in.size();
  if (n > 8) fail(ErrorKind::TooLarge, "tiny planarity test takes at most 8 vertices");
  for (unsigned u = 0; u < n; ++u) {
    if ((rows_in[u] >> u) & 1U) fail(ErrorKind::InvalidArgument, "self-loop");
    if (rows_in[u] >> n) fail(ErrorKind::InvalidArgument, "neighbour out of range");
    for (unsigned v = 0; v < n; ++v)
      if (((rows_in[u] >> v) & 1U) != ((rows_in[v] >> u) & 1U))
        fail(ErrorKind::InvalidArgument, "adjacency rows not symmetric");
  }
  std::vector<std::uint32_t> rows = rows_in;
  std::uint32_t alive = (1U << n) - 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (unsigned x = 0; x < n; ++x) {
      if (!((alive >> x) & 1U)) continue;
      const int d = std::popcount(rows[x]);
      if (d <= 1) {
        remove_vertex(rows, x);
        alive &= ~(1U << x);
        changed = true;
      } else if (d == 2) {
        const unsigned a = std::countr_zero(rows[x]);
        const unsigned b = std::countr_zero(rows[x] & (rows[x] - 1));
        remove_vertex(rows, x);
        alive &= ~(1U << x);
        rows[a] |= 1U << b;
        rows[b] |= 1U << a;
        changed = true;
      }
    }
  }
  const int nv = std::popcount(alive);
  int m = 0;
  for (auto r : rows) m += std::popcount(r);
  m /= 2;
  if (nv < 5) return true;
  if (m > 3 * nv - 6) return false;
  if (m < 9) return true;
  return !has_k5(rows, alive) && !has_k33(rows, alive);
}

bool tiny_planarity(std::size_t n, const std::vector<Edge>& edges) {
  if (n > 8) fail(ErrorKind::TooLarge, "tiny planarity test takes at most 8 vertices");
  std::vector<std::uint32_t> rows(n, 0);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) fail(ErrorKind::UnknownVertex, "edge endpoint out of range");
    if (a == b) fail(ErrorKind::InvalidArgument, "self-loop");
    rows[a] |= 1U << b;
    rows[b] |= 1U << a;
  }
  return tiny_planarity(rows);
}

std::vector<std::uint32_t> decode_rows(unsigned k, std::uint32_t mask) {
  std::vector<std::uint32_t> rows(k, 0);
  for (unsigned b = 1; b < k; ++b)
    for (unsigned a = 0; a < b; ++a)
      if ((mask >> pair_index(a, b)) & 1U) {
        rows[a] |= 1U << b;
        rows[b] |= 1U << a;
      }
  return rows;
}

std::uint32_t encode_rows(const std::vector<std::uint32_t>& rows) {
  std::uint32_t mask = 0;
  for (unsigned b = 1; b < rows.size(); ++b)
    for (unsigned a = 0; a < b; ++a)
      if ((rows[a] >> b) & 1U) mask |= 1U << pair_index(a, b);
  return mask;
}

MicroTable::MicroTable(unsigned r_prime) : r_prime_(r_prime) {
  if (r_prime > kMaxRPrime) fail(ErrorKind::CapExceeded, "r' above 6 is not supported");
  if (r_prime < 2) fail(ErrorKind::InvalidArgument, "r' must be at least 2");
  strata_.resize(max_k() + 1);
  for (unsigned k = 1; k <= max_k(); ++k) {
    Stratum& s = strata_[k];
    const std::uint32_t total = 1U << (k * (k - 1) / 2);
    for (std::uint32_t mask = 0; mask < total; ++mask)
      if (k <= 4 || tiny_planarity(decode_rows(k, mask))) s.masks.push_back(mask);
    build_lookup(k);
    build_transitions(k);
  }
}

void MicroTable::build_lookup(unsigned k) {
  Stratum& s = strata_[k];
  s.index.assign(std::size_t{1} << (k * (k - 1) / 2), -1);
  for (std::uint32_t i = 0; i < s.masks.size(); ++i) s.index[s.masks[i]] = static_cast<std::int32_t>(i);
  s.valid.clear();
  for (std::uint32_t i = 0; i < s.masks.size(); ++i) {
    const auto rows = decode_rows(k, s.masks[i]);
    const unsigned d = k - 1;
    bool ok = true;
    std::uint32_t dn = rows[d];
    while (dn && ok) {
      const unsigned x = std::countr_zero(dn);
      dn &= dn - 1;
      ok = rows[x] == (1U << d);
    }
    if (ok) s.valid.push_back(i);
  }
  s.valid_id = IndexableDictionary(s.masks.size(), s.valid);
}

void MicroTable::build_transitions(unsigned k) {
  Stratum& s = strata_[k];
  const unsigned live = k - 1, d = k - 1;
  s.trans.assign(s.valid.size() * live * live, kUndefined);
  for (std::size_t r = 0; r < s.valid.size(); ++r) {
    const auto base = decode_rows(k, s.masks[s.valid[r]]);
    for (unsigned u = 0; u < live; ++u) {
      if ((base[u] >> d) & 1U) continue;
      for (unsigned v = 0; v < live; ++v) {
        if (u == v || ((base[v] >> d) & 1U)) continue;
        auto rows = base;
        std::uint32_t nv = rows[v] & ~(1U << u);
        remove_vertex(rows, v);
        while (nv) {
          const unsigned w = std::countr_zero(nv);
          nv &= nv - 1;
          rows[u] |= 1U << w;
          rows[w] |= 1U << u;
        }
        rows[v] |= 1U << d;
        rows[d] |= 1U << v;
        const auto res = s.index[encode_rows(rows)];
        s.trans[(r * live + u) * live + v] = res < 0 ? kNonplanar : res;
      }
    }
  }
}

const MicroTable::Stratum& MicroTable::stratum(unsigned k) const {
  if (k == 0 || k > max_k()) fail(ErrorKind::InvalidArgument, "micro graph size outside table");
  return strata_[k];
}

unsigned MicroTable::index_width(unsigned k) const {
  return bits_for(stratum(k).masks.size() - 1);
}

std::int64_t MicroTable::index_of(unsigned k, std::uint32_t mask) const {
  const Stratum& s = stratum(k);
  if (mask >= s.index.size()) fail(ErrorKind::InvalidArgument, "bitmask outside stratum");
  return s.index[mask];
}

std::uint32_t MicroTable::encode(unsigned k, std::uint32_t mask) const {
  const auto idx = index_of(k, mask);
  if (idx < 0) fail(ErrorKind::NonplanarResult, "bitmask is not a planar graph");
  return static_cast<std::uint32_t>(idx);
}

bool MicroTable::valid_state(unsigned k, std::uint32_t idx) const {
  const Stratum& s = stratum(k);
  return idx < s.masks.size() && s.valid_id.member(idx);
}

void MicroTable::check_live(unsigned k, std::uint32_t idx, unsigned u) const {
  if (u + 1 >= k) fail(ErrorKind::UnknownVertex, "micro label out of range");
  if (is_deleted(k, idx, u)) fail(ErrorKind::DeletedVertex, "micro vertex is deleted");
}

bool MicroTable::is_deleted(unsigned k, std::uint32_t idx, unsigned u) const {
  return (mask(k, idx) >> pair_index(u, k - 1)) & 1U;
}

std::uint32_t MicroTable::row(unsigned k, std::uint32_t idx, unsigned u) const {
  check_live(k, idx, u);
  counters().probes++;
  const std::uint32_t m = mask(k, idx);
  std::uint32_t r = 0;
  for (unsigned v = 0; v + 1 < k; ++v)
    if (v != u && ((m >> pair_index(u, v)) & 1U)) r |= 1U << v;
  return r;
}

bool MicroTable::adjacent(unsigned k, std::uint32_t idx, unsigned u, unsigned v) const {
  check_live(k, idx, v);
  return u != v && ((row(k, idx, u) >> v) & 1U);
}

unsigned MicroTable::degree(unsigned k, std::uint32_t idx, unsigned u) const {
  return static_cast<unsigned>(std::popcount(row(k, idx, u)));
}

std::uint32_t MicroTable::range_row(unsigned k, std::uint32_t idx, unsigned u, unsigned a,
                                    unsigned b) const {
  if (a > b) fail(ErrorKind::InvalidArgument, "empty label range");
  std::uint32_t r = row(k, idx, u);
  if (a >= 32) return 0;
  r &= ~((1U << a) - 1);
  if (b < 31) r &= (2U << b) - 1;
  return r;
}

std::vector<unsigned> MicroTable::range_neighbors(unsigned k, std::uint32_t idx, unsigned u,
                                                  unsigned a, unsigned b) const {
  std::vector<unsigned> out;
  for (std::uint32_t r = range_row(k, idx, u, a, b); r; r &= r - 1)
    out.push_back(static_cast<unsigned>(std::countr_zero(r)));
  return out;
}

std::vector<unsigned> MicroTable::neighbors(unsigned k, std::uint32_t idx, unsigned u) const {
  std::vector<unsigned> out;
  for (std::uint32_t r = row(k, idx, u); r; r &= r - 1)
    out.push_back(static_cast<unsigned>(std::countr_zero(r)));
  return out;
}

std::uint32_t MicroTable::merge(unsigned k, std::uint32_t idx, unsigned u, unsigned v) const {
  if (u == v) fail(ErrorKind::SameVertex, "cannot merge a vertex with itself");
  check_live(k, idx, u);
  check_live(k, idx, v);
  const Stratum& s = stratum(k);
  if (!s.valid_id.member(idx)) fail(ErrorKind::InvalidArgument, "code violates the dummy invariant");
  counters().work++;
  const unsigned live = k - 1;
  const auto res = s.trans[(s.valid_id.rank(idx) * live + u) * live + v];
  if (res == kNonplanar) fail(ErrorKind::NonplanarResult, "merge result is not planar");
  return static_cast<std::uint32_t>(res);
}

std::uint32_t MicroTable::batch_delete(unsigned k, std::uint32_t idx, unsigned u, unsigned a,
                                       unsigned b) const {
  const std::uint32_t r = range_row(k, idx, u, a, b);
  if (!r) return idx;
  counters().work++;
  std::uint32_t m = mask(k, idx);
  for (unsigned v = 0; v + 1 < k; ++v)
    if ((r >> v) & 1U) m &= ~(1U << pair_index(u, v));
  return encode(k, m);
}

std::uint32_t MicroTable::delete_vertex(unsigned k, std::uint32_t idx, unsigned u) const {
  check_live(k, idx, u);
  counters().work++;
  std::uint32_t m = mask(k, idx);
  for (unsigned v = 0; v + 1 < k; ++v)
    if (v != u) m &= ~(1U << pair_index(u, v));
  m |= 1U << pair_index(u, k - 1);
  return encode(k, m);
}

std::size_t MicroTable::transition_bytes() const {
  std::size_t b = 0;
  for (const auto& s : strata_) b += s.trans.size() * sizeof(std::int32_t);
  return b;
}

void MicroTable::save(std::ostream& out) const {
  out << "MTBL1 " << r_prime_ << '\n';
  for (unsigned k = 1; k <= max_k(); ++k) {
    const Stratum& s = strata_[k];
    write_u32(out, static_cast<std::uint32_t>(s.masks.size()));
    for (auto m : s.masks) write_u32(out, m);
    write_u32(out, static_cast<std::uint32_t>(s.trans.size()));
    for (auto t : s.trans) write_u32(out, static_cast<std::uint32_t>(t));
  }
  if (!out) fail(ErrorKind::InvalidArgument, "failed to write table cache");
}

MicroTable MicroTable::load(std::istream& in) {
  std::string tag;
  unsigned r = 0;
  if (!(in >> tag >> r) || tag != "MTBL1") throw ParseError(1, "expected header 'MTBL1 <r_prime>'");
  if (r > kMaxRPrime) fail(ErrorKind::CapExceeded, "r' above 6 is not supported");
  if (r < 2) fail(ErrorKind::InvalidArgument, "r' must be at least 2");
  in.get();
  MicroTable t;
  t.r_prime_ = r;
  t.strata_.resize(t.max_k() + 1);
  for (unsigned k = 1; k <= t.max_k(); ++k) {
    Stratum& s = t.strata_[k];
    const std::uint32_t universe = 1U << (k * (k - 1) / 2);
    const std::uint32_t cnt = read_u32(in);
    if (cnt > universe) fail(ErrorKind::InvalidArgument, "corrupt table cache");
    s.masks.resize(cnt);
    for (auto& m : s.masks) {
      m = read_u32(in);
      if (m >= universe) fail(ErrorKind::InvalidArgument, "corrupt table cache");
    }
    for (std::size_t i = 1; i < s.masks.size(); ++i)
      if (s.masks[i] <= s.masks[i - 1]) fail(ErrorKind::InvalidArgument, "corrupt table cache");
    t.build_lookup(k);
    const std::uint32_t tc = read_u32(in);
    if (tc != s.valid.size() * (k - 1) * (k - 1)) fail(ErrorKind::InvalidArgument, "corrupt table cache");
    s.trans.resize(tc);
    for (auto& x : s.trans) {
      x = static_cast<std::int32_t>(read_u32(in));
      if (x < kNonplanar || x >= static_cast<std::int32_t>(cnt))
        fail(ErrorKind::InvalidArgument, "corrupt table cache");
    }
  }
  return t;
}

}  // namespace planarsucc
