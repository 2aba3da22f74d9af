// One line per acceptance criterion. Exit status is nonzero if a criterion
// fails that was not listed with --expect-fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "planarsucc/driver.hpp"
#include "planarsucc/succinct.hpp"
#include "table_oracle.hpp"

using namespace planarsucc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int id;
  bool pass;
  std::string text;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& text) {
  lines.push_back({id, pass, text});
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

template <class... T>
std::string fmt(const char* f, T... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

void replay_criteria() {
  std::size_t runs = 0, divergences = 0, invariant_failures = 0, checks = 0, calls = 0, over = 0, ops = 0;
  double worst = 0;
  std::string first;
  const auto t0 = Clock::now();
  for (std::size_t n : {100, 300, 1000})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      VerifyOptions opt;
      opt.n = n;
      opt.ops = 3 * n;
      opt.seed = seed;
      opt.enc.hashing = true;
      opt.check_every_op = true;
      const VerifyResult r = verify(opt);
      ++runs;
      ops += r.ops_done;
      checks += r.invariant_checks;
      calls += r.neighbor_calls;
      over += r.probe_violations;
      worst = std::max(worst, r.max_probe_ratio);
      if (!r.ok) {
        if (r.transcript.find("invariant violated") != std::string::npos) ++invariant_failures;
        else ++divergences;
        if (first.empty()) first = fmt(" first: n=%zu seed=%llu ", n, static_cast<unsigned long long>(seed)) +
                                   r.transcript.substr(0, r.transcript.find('\n'));
      }
    }
  const double secs = since(t0);
  report(1, divergences == 0 && invariant_failures == 0,
         fmt("oracle equivalence: %zu runs, %zu ops, %zu divergences, %.1f s", runs, ops, divergences, secs) + first);
  report(2, invariant_failures == 0 && divergences == 0,
         fmt("invariants after every op: %zu checks, %zu failing runs", checks, invariant_failures));
  report(5, over == 0,
         fmt("probes per neighbors call: %zu calls, %zu over 16(deg+1), worst ratio %.2f", calls, over, worst));
}

void table_criterion() {
  const auto t0 = Clock::now();
  const MicroTable t(4);
  const auto tally = table_oracle::check_table(t);
  const double secs = since(t0);
  report(3, tally.mismatches == 0 && secs < 30,
         fmt("r'=4 table: %zu checks, %zu mismatches, %.1f s", tally.checked, tally.mismatches, secs) +
             (tally.first.empty() ? "" : " first: " + tally.first));
}

void work_criterion() {
  std::vector<BenchRow> rows;
  for (std::size_t n : {1000, 2000, 4000, 8000}) rows.push_back(bench_contract(n, 1, EncodingConfig{}));
  bool ok = rows.back().build_seconds + rows.back().contract_seconds < 30;
  std::string text = "contraction work";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    text += fmt(" n=%zu:%llu", rows[i].n, static_cast<unsigned long long>(rows[i].work));
    if (i) {
      const double q = static_cast<double>(rows[i].work) / static_cast<double>(rows[i - 1].work);
      ok = ok && q >= 1.5 && q <= 2.5;
      text += fmt("(x%.2f)", q);
    }
  }
  text += fmt(", n=8000 in %.2f s", rows.back().build_seconds + rows.back().contract_seconds);
  report(4, ok, text);
}

void dictionary_criterion() {
  std::mt19937_64 rng(2024);
  std::size_t wrong = 0, queries = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t u = 1 + rng() % 5000;
    const unsigned density = static_cast<unsigned>(rng() % 101);
    std::vector<std::uint32_t> s;
    for (std::uint32_t x = 0; x < u; ++x)
      if (rng() % 100 < density) s.push_back(x);
    const IndexableDictionary d(u, s);
    // linear-scan answers
    std::vector<std::size_t> rank(u + 1, 0);
    std::vector<bool> member(u, false);
    for (auto x : s) member[x] = true;
    for (std::size_t x = 0; x < u; ++x) rank[x + 1] = rank[x] + member[x];
    for (std::size_t x = 0; x <= u; ++x) {
      ++queries;
      wrong += d.rank(x) != rank[x];
      if (x < u) wrong += d.member(x) != member[x];
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++queries;
      wrong += d.select(i) != s[i];
    }
  }
  report(6, wrong == 0, fmt("rank/select: 1000 instances, %zu queries, %zu wrong", queries, wrong));
}

void hashing_criterion() {
  EncodingConfig cfg;
  cfg.hashing = true;
  const MinorReplay checked = delete_all_replay(1000, 1, cfg, true);
  double del = 1e9, con = 1e9;
  for (int rep = 0; rep < 7; ++rep) {
    del = std::min(del, delete_all_replay(1000, 1, cfg, false).seconds);
    con = std::min(con, bench_contract(1000, 1, cfg).contract_seconds);
  }
  report(7, checked.ok && del < 3 * con,
         fmt("delete all edges then vertices, n=1000: oracle %s, %.4f s vs contraction %.4f s (x%.2f)",
             checked.ok ? "match" : "MISMATCH", del, con, del / con) +
             (checked.ok ? "" : " " + checked.transcript));
}

void space_criterion() {
  bool bound = true, decreasing = true;
  double prev = 1e18;
  std::string text;
  for (std::size_t n : {1000, 2000, 4000, 8000}) {
    DynamicEncoding e(generate_planar(n, 1), EncodingConfig{});
    const SpaceReport sp = e.space();
    bound = bound && sp.micro_index_bits <= sp.micro_index_bound;
    const double per = static_cast<double>(sp.side_bits()) / static_cast<double>(n);
    decreasing = decreasing && per < prev;
    prev = per;
    text += fmt(" n=%zu: index %zu/%zu bits, side %.1f bits/vertex;", n, sp.micro_index_bits,
                sp.micro_index_bound, per);
  }
  report(8, bound && decreasing,
         std::string("space: index bound ") + (bound ? "holds" : "VIOLATED") + ", side bits/n " +
             (decreasing ? "decreasing" : "NOT decreasing") + ";" + text);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  std::set<int> only;
  for (int a = 1; a < argc; ++a) {
    const std::string s = argv[a];
    if ((s == "--expect-fail" || s == "--only") && a + 1 < argc) {
      std::stringstream ss(argv[++a]);
      std::string item;
      while (std::getline(ss, item, ',')) (s == "--only" ? only : expected).insert(std::stoi(item));
    }
  }
  auto want = [&](int id) { return only.empty() || only.count(id); };
  if (want(1) || want(2) || want(5)) replay_criteria();
  if (want(3)) table_criterion();
  if (want(4)) work_criterion();
  if (want(6)) dictionary_criterion();
  if (want(7)) hashing_criterion();
  if (want(8)) space_criterion();

  int unexpected = 0, passed = 0;
  for (const auto& l : lines) {
    passed += l.pass;
    if (!l.pass && !expected.count(l.id)) ++unexpected;
    if (l.pass && expected.count(l.id)) std::printf("note: criterion %d passed although listed as expected to fail\n", l.id);
  }
  std::printf("summary: %d of %zu criteria pass", passed, lines.size());
  if (!expected.empty()) {
    std::printf("; expected failures:");
    for (int id : expected) std::printf(" %d", id);
  }
  std::printf("\n");
  return unexpected ? EXIT_FAILURE : EXIT_SUCCESS;
}
