#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "planarsucc/encoding.hpp"
#include "planarsucc/graph.hpp"

namespace planarsucc {

struct VerifyOptions {
  std::size_t n = 300;
  std::size_t ops = 500;
  std::uint64_t seed = 7;
  EncodingConfig enc;
  bool check_every_op = false;
  std::size_t sample = 32;
  std::size_t full_every = 50;
  bool inject_fault = false;  // corrupt one degree entry halfway through
};

struct VerifyResult {
  bool ok = true;
  std::string transcript;  // first divergence, empty on success
  std::size_t ops_done = 0;
  std::size_t invariant_checks = 0;
  std::size_t neighbor_calls = 0;
  std::size_t probe_violations = 0;  // calls with probes > 16 (deg + 1)
  double max_probe_ratio = 0;        // probes / (deg + 1)
};

VerifyResult verify(const VerifyOptions& opt, std::shared_ptr<const MicroTable> table = nullptr);

// Replays a script; writes query answers to out and errors to err.
// Returns the process exit code.
int run_script(const LabeledGraph& g, const std::vector<Op>& ops, const EncodingConfig& cfg,
               bool check_every_op, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t work = 0;
  double build_seconds = 0;
  double contract_seconds = 0;
};

// Builds on generate_planar(n, seed) and contracts along a spanning forest
// until one vertex is left.
BenchRow bench_contract(std::size_t n, std::uint64_t seed, const EncodingConfig& cfg,
                        std::shared_ptr<const MicroTable> table = nullptr);

struct MinorReplay {
  bool ok = true;
  std::string transcript;
  double seconds = 0;
};

// Hashing mode: deletes every edge, then every vertex. With check_oracle
// every step is compared against the oracle (and excluded from timing).
MinorReplay delete_all_replay(std::size_t n, std::uint64_t seed, const EncodingConfig& cfg, bool check_oracle,
                              std::shared_ptr<const MicroTable> table = nullptr);

}  // namespace planarsucc
