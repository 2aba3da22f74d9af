#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "planarsucc/driver.hpp"
#include "planarsucc/encoding.hpp"
#include "planarsucc/errors.hpp"
#include "planarsucc/graph.hpp"

using namespace planarsucc;

namespace {

constexpr int kOk = 0, kVerifyFail = 1, kInputError = 2, kIllegalOp = 3;

struct Flags {
  int r = 64;
  int r_prime = 4;
  std::uint64_t seed = 7;
  bool hashing = false;
  bool check_every_op = false;
};

EncodingConfig make_config(const Flags& f) {
  if (f.r_prime < 2 || f.r_prime > 6) throw Error(ErrorKind::InvalidArgument, "--r-prime must be in [2, 6]");
  if (f.r < f.r_prime) throw Error(ErrorKind::InvalidArgument, "--r must be at least --r-prime");
  EncodingConfig cfg;
  cfg.partition.r = f.r;
  cfg.partition.r_prime = f.r_prime;
  cfg.hashing = f.hashing;
  return cfg;
}

LabeledGraph load_planar(const std::string& path) {
  LabeledGraph g = read_graph_file(path);
  if (!is_planar(g)) throw Error(ErrorKind::InvalidArgument, "input graph is not planar");
  return g;
}

int cmd_build(const std::string& path, const Flags& f) {
  const EncodingConfig cfg = make_config(f);
  const LabeledGraph g = load_planar(path);
  const auto t0 = std::chrono::steady_clock::now();
  DynamicEncoding enc(g, cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Hierarchy& h = enc.core().hierarchy();
  const SpaceReport sp = enc.space();
  std::cout << "n " << g.vertex_count() << "\n"
            << "m " << g.edge_count() << "\n"
            << "mini_graphs " << h.mini.size() << "\n"
            << "micro_graphs " << sp.micro_graphs << "\n"
            << "global_boundary " << h.n - h.n_nb << "\n"
            << "mini_boundary_total " << h.inner_boundary_total << "\n"
            << "micro_index_bits " << sp.micro_index_bits << "\n"
            << "side_bits " << sp.side_bits() << "\n"
            << "side_bits_per_vertex " << std::fixed << std::setprecision(2)
            << static_cast<double>(sp.side_bits()) / static_cast<double>(g.vertex_count()) << "\n"
            << "table_bytes " << sp.table_bytes << "\n"
            << "build_seconds " << std::setprecision(4) << secs << "\n";
  return kOk;
}

int cmd_run(const std::string& path, const std::string& script, const Flags& f) {
  const EncodingConfig cfg = make_config(f);
  const LabeledGraph g = load_planar(path);
  const auto ops = read_script_file(script);
  return run_script(g, ops, cfg, f.check_every_op, std::cout, std::cerr);
}

int cmd_verify(std::size_t n, std::size_t ops, bool fault, const Flags& f) {
  VerifyOptions opt;
  opt.n = n;
  opt.ops = ops;
  opt.seed = f.seed;
  opt.enc = make_config(f);
  opt.check_every_op = f.check_every_op;
  opt.inject_fault = fault;
  const VerifyResult r = verify(opt);
  if (!r.ok) {
    std::cout << "FAIL n=" << n << " seed=" << f.seed << "\n" << r.transcript;
    return kVerifyFail;
  }
  std::cout << "PASS n=" << n << " ops=" << r.ops_done << " seed=" << f.seed
            << " invariant_checks=" << r.invariant_checks << " max_probe_ratio=" << std::fixed
            << std::setprecision(2) << r.max_probe_ratio << "\n";
  return kOk;
}

int cmd_bench(const std::vector<std::size_t>& sizes, const Flags& f) {
  const EncodingConfig cfg = make_config(f);
  std::cout << "n work build_s contract_s\n";
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    rows.push_back(bench_contract(n, f.seed, cfg));
    const auto& b = rows.back();
    std::cout << b.n << ' ' << b.work << ' ' << std::fixed << std::setprecision(4) << b.build_seconds << ' '
              << b.contract_seconds << "\n";
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    std::cout << "ratio " << rows[i - 1].n << "->" << rows[i].n << ' ' << std::setprecision(3)
              << static_cast<double>(rows[i].work) / static_cast<double>(rows[i - 1].work) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Succinct dynamic planar graph encoding"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* c) {
    c->add_option("--r", f.r, "mini graph size");
    c->add_option("--r-prime", f.r_prime, "micro graph size (2..6)");
    c->add_option("--seed", f.seed, "random seed");
    c->add_flag("--hashing", f.hashing, "enable adjacency and edge deletion");
    c->add_flag("--check-every-op", f.check_every_op, "run the invariant checker after every op");
  };

  std::string graph, script;
  std::size_t n = 300, ops = 500;
  bool fault = false;
  std::vector<std::size_t> sizes;

  auto* build = app.add_subcommand("build", "encode a graph and report sizes");
  build->add_option("graph", graph, "edge-list file")->required();
  add_common(build);
  auto* run = app.add_subcommand("run", "replay an op script");
  run->add_option("graph", graph, "edge-list file")->required();
  run->add_option("--script", script, "op script")->required();
  add_common(run);
  auto* ver = app.add_subcommand("verify", "random ops against the oracle");
  ver->add_option("--n", n, "vertex count");
  ver->add_option("--ops", ops, "operation count");
  ver->add_flag("--fault-injection", fault, "corrupt a degree entry halfway through");
  add_common(ver);
  auto* bench = app.add_subcommand("bench", "contraction work scaling");
  bench->add_option("--sizes", sizes, "comma separated sizes")->delimiter(',');
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) return cmd_build(graph, f);
    if (*run) return cmd_run(graph, script, f);
    if (*ver) return cmd_verify(n, ops, fault, f);
    if (*bench) return cmd_bench(sizes, f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
