#include "planarsucc/driver.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "planarsucc/errors.hpp"

namespace planarsucc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Live vertex set with O(1) sampling and removal.
class LiveSet {
 public:
  explicit LiveSet(std::vector<Label> v) : items_(std::move(v)) {
    Label mx = 0;
    for (Label u : items_) mx = std::max(mx, u);
    pos_.assign(items_.empty() ? 0 : mx + 1, 0);
    for (std::size_t i = 0; i < items_.size(); ++i) pos_[items_[i]] = i;
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  template <class R>
  Label pick(R& rng) const {
    return items_[std::uniform_int_distribution<std::size_t>(0, items_.size() - 1)(rng)];
  }
  void erase(Label u) {
    const std::size_t i = pos_[u];
    items_[i] = items_.back();
    pos_[items_[i]] = i;
    items_.pop_back();
  }

 private:
  std::vector<Label> items_;
  std::vector<std::size_t> pos_;
};

std::string join(const std::vector<Label>& v) {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? " " : "") << v[i] + 1;
  return o.str();
}

template <class R>
Label pick_neighbor(const LabeledGraph& g, Label u, R& rng) {
  const auto& nb = g.neighbors(u);
  auto it = nb.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng));
  return *it;
}

}  // namespace

VerifyResult verify(const VerifyOptions& opt, std::shared_ptr<const MicroTable> table) {
  VerifyResult res;
  const LabeledGraph g = generate_planar(opt.n, opt.seed);
  LabeledGraph oracle = g;
  DynamicEncoding enc(g, opt.enc, std::move(table));
  std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + 17);
  std::uniform_real_distribution<double> coin(0, 1);
  LiveSet live(g.vertices());
  std::vector<Op> done;

  auto diverge = [&](const std::string& what) {
    res.ok = false;
    std::ostringstream t;
    t << "divergence after " << done.size() << " ops: " << what << "\nops:\n";
    write_script(done, t);
    res.transcript = t.str();
  };
  auto compare_vertex = [&](Label u) {
    const auto p0 = counters().probes;
    const auto nb = enc.neighbors(u);
    const auto dp = counters().probes - p0;
    ++res.neighbor_calls;
    const double ratio = static_cast<double>(dp) / static_cast<double>(nb.size() + 1);
    res.max_probe_ratio = std::max(res.max_probe_ratio, ratio);
    if (dp > 16 * (nb.size() + 1)) ++res.probe_violations;
    const auto& want = oracle.neighbors(u);
    if (!std::equal(nb.begin(), nb.end(), want.begin(), want.end())) {
      diverge("N " + std::to_string(u + 1) + ": got [" + join(nb) + "] want [" +
              join(std::vector<Label>(want.begin(), want.end())) + "]");
      return false;
    }
    if (enc.degree(u) != want.size()) {
      diverge("D " + std::to_string(u + 1) + ": got " + std::to_string(enc.degree(u)) + " want " +
              std::to_string(want.size()));
      return false;
    }
    return true;
  };
  auto compare_adjacent = [&](Label u, Label v) {
    if (enc.adjacent(u, v) == oracle.has_edge(u, v)) return true;
    diverge("A " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    return false;
  };
  auto full_compare = [&]() {
    if (enc.live_vertices() != oracle.vertices()) {
      diverge("live vertex sets differ");
      return false;
    }
    for (Label u : oracle.vertices())
      if (!compare_vertex(u)) return false;
    return true;
  };
  auto check = [&]() {
    ++res.invariant_checks;
    const auto rep = enc.check_invariants();
    if (!rep.ok()) diverge("invariant violated: " + rep.violations.front());
    return rep.ok();
  };

  // Legal op weights; edge deletion needs hashing mode, its share goes to
  // contraction otherwise.
  const bool hashing = opt.enc.hashing;
  const double w_c = hashing ? 0.5 : 0.7, w_dv = w_c + 0.2, w_de = hashing ? w_dv + 0.2 : w_dv;
  try {
    if (opt.check_every_op && !check()) return res;
    for (std::size_t step = 0; step < opt.ops && !live.empty(); ++step) {
      if (opt.inject_fault && step == opt.ops / 2) {
        for (Label u : oracle.vertices()) {
          try {
            enc.corrupt_degree_for_testing(u);
            break;
          } catch (const Error&) {
          }
        }
      }
      const double r = coin(rng);
      Op op{OpKind::Neighbors, live.pick(rng), 0, done.size() + 1};
      if (r >= w_c && r < w_dv) {
        op.kind = OpKind::DeleteVertex;
      } else if (r < w_de) {
        // Needs an edge: a few tries, then fall back to a query.
        bool found = false;
        for (int t = 0; t < 8 && !found; ++t) {
          op.u = live.pick(rng);
          found = oracle.degree(op.u) > 0;
        }
        if (found) {
          op.v = pick_neighbor(oracle, op.u, rng);
          op.kind = r < w_c ? OpKind::Contract : OpKind::DeleteEdge;
        }
      } else {
        const double q = coin(rng);
        op.kind = hashing ? (q < 1.0 / 3 ? OpKind::Neighbors : q < 2.0 / 3 ? OpKind::Degree : OpKind::Adjacent)
                          : (q < 0.5 ? OpKind::Neighbors : OpKind::Degree);
        if (op.kind == OpKind::Adjacent) op.v = live.pick(rng);
      }
      done.push_back(op);
      switch (op.kind) {
        case OpKind::Contract: {
          const Label s = enc.contract(op.u, op.v);
          const bool bu = enc.global_boundary(op.u), bv = enc.global_boundary(op.v);
          const Label want = (bu != bv && bv) ? op.v : op.u;
          if (s != want) {
            diverge("survivor rule broken");
            return res;
          }
          const Label d = s == op.u ? op.v : op.u;
          oracle_contract(oracle, s, d);
          live.erase(d);
          break;
        }
        case OpKind::DeleteVertex:
          enc.delete_vertex(op.u);
          oracle_delete_vertex(oracle, op.u);
          live.erase(op.u);
          break;
        case OpKind::DeleteEdge:
          enc.delete_edge(op.u, op.v);
          oracle_delete_edge(oracle, op.u, op.v);
          break;
        case OpKind::Neighbors:
        case OpKind::Degree:
          if (!compare_vertex(op.u)) return res;
          break;
        case OpKind::Adjacent:
          if (!compare_adjacent(op.u, op.v)) return res;
          break;
      }
      ++res.ops_done;
      for (std::size_t t = 0; t < opt.sample && !live.empty(); ++t) {
        const Label u = live.pick(rng);
        if (!compare_vertex(u)) return res;
        if (hashing) {
          if (oracle.degree(u) > 0 && !compare_adjacent(u, pick_neighbor(oracle, u, rng))) return res;
          if (!compare_adjacent(u, live.pick(rng))) return res;
        }
      }
      if ((step + 1) % opt.full_every == 0 && !full_compare()) return res;
      if (opt.check_every_op && !check()) return res;
    }
    if (!full_compare()) return res;
    if (!check()) return res;
  } catch (const Error& e) {
    diverge(std::string("encoding raised ") + error_kind_name(e.kind()) + ": " + e.what());
  }
  return res;
}

int run_script(const LabeledGraph& g, const std::vector<Op>& ops, const EncodingConfig& cfg,
               bool check_every_op, std::ostream& out, std::ostream& err) {
  std::unique_ptr<DynamicEncoding> enc;
  try {
    enc = std::make_unique<DynamicEncoding>(g, cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  for (const Op& op : ops) {
    try {
      switch (op.kind) {
        case OpKind::Contract: out << enc->contract(op.u, op.v) + 1 << '\n'; break;
        case OpKind::DeleteVertex: enc->delete_vertex(op.u); break;
        case OpKind::DeleteEdge: enc->delete_edge(op.u, op.v); break;
        case OpKind::Neighbors: out << join(enc->neighbors(op.u)) << '\n'; break;
        case OpKind::Degree: out << enc->degree(op.u) << '\n'; break;
        case OpKind::Adjacent: out << (enc->adjacent(op.u, op.v) ? 1 : 0) << '\n'; break;
      }
    } catch (const Error& e) {
      err << "line " << op.line << ": " << e.what() << '\n';
      return 3;
    }
    if (check_every_op) {
      const auto rep = enc->check_invariants();
      if (!rep.ok()) {
        err << "line " << op.line << ": invariant violated: " << rep.violations.front() << '\n';
        return 1;
      }
    }
  }
  return 0;
}

BenchRow bench_contract(std::size_t n, std::uint64_t seed, const EncodingConfig& cfg,
                        std::shared_ptr<const MicroTable> table) {
  BenchRow row;
  row.n = n;
  const LabeledGraph g = generate_planar(n, seed);
  auto t0 = Clock::now();
  DynamicEncoding enc(g, cfg, std::move(table));
  row.build_seconds = seconds_since(t0);

  auto edges = g.edges();
  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<Label> parent(n), rep(n);
  std::iota(parent.begin(), parent.end(), Label{0});
  std::iota(rep.begin(), rep.end(), Label{0});
  auto find = [&](Label x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto w0 = counters().work;
  t0 = Clock::now();
  for (auto [a, b] : edges) {
    const Label ra = find(a), rb = find(b);
    if (ra == rb) continue;
    const Label s = enc.contract(rep[ra], rep[rb]);
    parent[rb] = ra;
    rep[ra] = s;
  }
  row.contract_seconds = seconds_since(t0);
  row.work = counters().work - w0;
  return row;
}

MinorReplay delete_all_replay(std::size_t n, std::uint64_t seed, const EncodingConfig& cfg, bool check_oracle,
                              std::shared_ptr<const MicroTable> table) {
  MinorReplay res;
  const LabeledGraph g = generate_planar(n, seed);
  LabeledGraph oracle = g;
  DynamicEncoding enc(g, cfg, std::move(table));
  std::mt19937_64 rng(seed + 1);
  auto edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  auto verts = g.vertices();
  std::shuffle(verts.begin(), verts.end(), rng);
  auto diverge = [&](const std::string& what) {
    res.ok = false;
    res.transcript = what;
  };
  auto same = [&](Label u) {
    const auto nb = enc.neighbors(u);
    const auto& want = oracle.neighbors(u);
    return std::equal(nb.begin(), nb.end(), want.begin(), want.end()) && enc.degree(u) == want.size();
  };
  try {
    double t = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto [u, v] = edges[k];
      const auto t0 = Clock::now();
      enc.delete_edge(u, v);
      t += seconds_since(t0);
      if (!check_oracle) continue;
      oracle_delete_edge(oracle, u, v);
      if (enc.adjacent(u, v) || !same(u) || !same(v)) {
        diverge("edge deletion " + std::to_string(u + 1) + " " + std::to_string(v + 1));
        return res;
      }
      if (k % 100 == 0 && !enc.check_invariants().ok()) {
        diverge("invariants after edge deletion " + std::to_string(k));
        return res;
      }
    }
    if (check_oracle && !(enc.reconstruct() == oracle)) {
      diverge("graph after deleting all edges");
      return res;
    }
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const auto t0 = Clock::now();
      enc.delete_vertex(verts[k]);
      t += seconds_since(t0);
      if (!check_oracle) continue;
      oracle_delete_vertex(oracle, verts[k]);
      if (enc.live(verts[k])) {
        diverge("vertex " + std::to_string(verts[k] + 1) + " still live");
        return res;
      }
      if (k % 100 == 0 && !enc.check_invariants().ok()) {
        diverge("invariants after vertex deletion " + std::to_string(k));
        return res;
      }
    }
    res.seconds = t;
    if (check_oracle && (!enc.live_vertices().empty() || !enc.check_invariants().ok()))
      diverge("encoding not empty at the end");
  } catch (const Error& e) {
    diverge(std::string("encoding raised ") + error_kind_name(e.kind()) + ": " + e.what());
  }
  return res;
}

}  // namespace planarsucc
