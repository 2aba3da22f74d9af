#pragma once

// Brute-force reference for the micro table: decode a code, apply the
// operation on explicit adjacency rows, compare with the table answer.

#include <cstdint>
#include <string>
#include <vector>

#include "planarsucc/errors.hpp"
#include "planarsucc/graph.hpp"
#include "planarsucc/microtable.hpp"

namespace table_oracle {

using namespace planarsucc;

inline bool rows_planar(const std::vector<std::uint32_t>& rows) {
  LabeledGraph g(rows.size());
  for (Label a = 0; a < rows.size(); ++a)
    for (Label b = a + 1; b < rows.size(); ++b)
      if ((rows[a] >> b) & 1U) g.add_edge(a, b);
  return is_planar(g);
}

inline void link(std::vector<std::uint32_t>& rows, unsigned a, unsigned b, bool on) {
  if (on) {
    rows[a] |= 1U << b;
    rows[b] |= 1U << a;
  } else {
    rows[a] &= ~(1U << b);
    rows[b] &= ~(1U << a);
  }
}

struct Tally {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::string first;
  void miss(const std::string& what) {
    if (!mismatches++) first = what;
  }
};

// Every code of every stratum: merges of all live pairs on reachable codes,
// range_neighbors / batch_delete for every live u and range [a, b].
inline Tally check_table(const MicroTable& t) {
  Tally tally;
  for (unsigned k = 1; k <= t.max_k(); ++k) {
    const unsigned live = k - 1, dummy = k - 1;
    for (std::uint32_t idx = 0; idx < t.count(k); ++idx) {
      const bool valid = t.valid_state(k, idx);
      const auto rows = decode_rows(k, t.mask(k, idx));
      auto deleted = [&](unsigned x) { return (rows[dummy] >> x) & 1U; };
      auto tag = [&](const char* op, unsigned u, unsigned v) {
        return std::string(op) + " k=" + std::to_string(k) + " idx=" + std::to_string(idx) + " u=" +
               std::to_string(u) + " v=" + std::to_string(v);
      };
      for (unsigned u = 0; u < live; ++u) {
        if (deleted(u)) continue;
        for (unsigned v = 0; v < live; ++v) {
          if (v == u || deleted(v)) continue;
          if (!valid) {
            // merges are only defined on codes that satisfy the dummy invariant
            ++tally.checked;
            try {
              t.merge(k, idx, u, v);
              tally.miss(tag("merge on invalid code", u, v));
            } catch (const Error& e) {
              if (e.kind() != ErrorKind::InvalidArgument) tally.miss(tag("merge on invalid code", u, v));
            }
            continue;
          }
          auto want = rows;
          for (unsigned w = 0; w < live; ++w)
            if (w != u && ((rows[v] >> w) & 1U)) link(want, u, w, true);
          for (unsigned w = 0; w < k; ++w) link(want, v, w, false);
          link(want, v, dummy, true);
          ++tally.checked;
          const bool planar = rows_planar(want);
          try {
            const auto got = t.merge(k, idx, u, v);
            if (!planar || t.mask(k, got) != encode_rows(want)) tally.miss(tag("merge", u, v));
          } catch (const Error& e) {
            if (planar || e.kind() != ErrorKind::NonplanarResult) tally.miss(tag("merge raised", u, v));
          }
        }
        for (unsigned a = 0; a < live; ++a)
          for (unsigned b = a; b < live; ++b) {
            std::vector<unsigned> want_nb;
            auto want = rows;
            for (unsigned w = a; w <= b; ++w)
              if ((rows[u] >> w) & 1U) {
                want_nb.push_back(w);
                link(want, u, w, false);
              }
            tally.checked += 2;
            if (t.range_neighbors(k, idx, u, a, b) != want_nb) tally.miss(tag("range_neighbors", a, b));
            if (t.mask(k, t.batch_delete(k, idx, u, a, b)) != encode_rows(want))
              tally.miss(tag("batch_delete", a, b));
          }
      }
    }
  }
  return tally;
}

}  // namespace table_oracle
