#include <doctest.h>

#include <algorithm>
#include <random>

#include "planarsucc/errors.hpp"
#include "planarsucc/succinct.hpp"

using namespace planarsucc;

TEST_CASE("bits_for is the smallest sufficient width") {
  for (std::uint64_t v : {1ULL, 2ULL, 3ULL, 7ULL, 8ULL, 1000ULL, (1ULL << 40) - 1, 1ULL << 40}) {
    const unsigned w = bits_for(v);
    CHECK(w < 64);
    CHECK((v >> w) == 0);
    CHECK((v >> (w - 1)) == 1);
  }
}

TEST_CASE("BitVector fields against a bool vector") {
  std::mt19937_64 rng(3);
  BitVector bv(1000);
  std::vector<bool> ref(1000, false);
  for (int t = 0; t < 5000; ++t) {
    const unsigned w = 1 + rng() % 64;
    const std::size_t pos = rng() % (1000 - w);
    const std::uint64_t val = w == 64 ? rng() : rng() & ((1ULL << w) - 1);
    bv.set_bits(pos, w, val);
    for (unsigned b = 0; b < w; ++b) ref[pos + b] = (val >> b) & 1;
    CHECK(bv.get_bits(pos, w) == val);
  }
  for (std::size_t i = 0; i < 1000; ++i) CHECK(bv[i] == ref[i]);
  std::size_t ones = std::count(ref.begin(), ref.end(), true);
  CHECK(bv.popcount() == ones);
}

TEST_CASE("CompactArray keeps values under its width") {
  std::mt19937_64 rng(5);
  auto a = CompactArray::for_max(777, 12345);
  std::vector<std::uint64_t> ref(777, 0);
  for (int t = 0; t < 4000; ++t) {
    const std::size_t i = rng() % 777;
    ref[i] = rng() % 12346;
    a.set(i, ref[i]);
  }
  for (std::size_t i = 0; i < 777; ++i) CHECK(a.get(i) == ref[i]);
  CHECK(a.bits() == 777 * bits_for(12345));
}

TEST_CASE("IndexableDictionary against a linear scan") {
  std::mt19937_64 rng(11);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t u = 1 + rng() % 3000;
    const double density = (rng() % 100) / 100.0;
    std::vector<std::uint32_t> s;
    for (std::uint32_t x = 0; x < u; ++x)
      if ((rng() % 1000) < density * 1000) s.push_back(x);
    IndexableDictionary d(u, s);
    REQUIRE(d.size() == s.size());
    for (int q = 0; q < 50; ++q) {
      const std::size_t x = rng() % (u + 1);
      const auto want = static_cast<std::size_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin());
      CHECK(d.rank(x) == want);
      if (x < u) CHECK(d.member(x) == std::binary_search(s.begin(), s.end(), x));
    }
    for (std::size_t i = 0; i < s.size(); i += 1 + s.size() / 40) CHECK(d.select(i) == s[i]);
  }
}

TEST_CASE("IndexableDictionary edge cases") {
  IndexableDictionary empty(10, {});
  CHECK(empty.rank(10) == 0);
  CHECK_THROWS_AS(empty.select(0), Error);
  IndexableDictionary full(130, [] {
    std::vector<std::uint32_t> v(130);
    for (std::uint32_t i = 0; i < 130; ++i) v[i] = i;
    return v;
  }());
  CHECK(full.rank(130) == 130);
  CHECK(full.select(129) == 129);
  CHECK_THROWS_AS(full.rank(131), Error);
}
