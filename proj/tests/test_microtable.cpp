#include <doctest.h>

#include <random>
#include <sstream>

#include "planarsucc/errors.hpp"
#include "planarsucc/microtable.hpp"
#include "table_oracle.hpp"

using namespace planarsucc;

TEST_CASE("stratum sizes equal a brute-force planar count") {
  const MicroTable t(5);
  for (unsigned k = 1; k <= 6; ++k) {
    const unsigned pairs = k * (k - 1) / 2;
    std::size_t planar = 0;
    for (std::uint32_t m = 0; m < (1U << pairs); ++m) planar += table_oracle::rows_planar(decode_rows(k, m));
    CHECK(t.count(k) == planar);
    CHECK(t.index_width(k) == bits_for(planar - 1));
  }
}

TEST_CASE("tiny planarity agrees with Boyer-Myrvold on random graphs") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 3000; ++t) {
    const unsigned n = 1 + rng() % 8;
    std::vector<std::uint32_t> rows(n, 0);
    const unsigned p = rng() % 100;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = a + 1; b < n; ++b)
        if (rng() % 100 < p) table_oracle::link(rows, a, b, true);
    CHECK(tiny_planarity(rows) == table_oracle::rows_planar(rows));
  }
  CHECK_THROWS_AS(tiny_planarity(std::vector<std::uint32_t>(9, 0)), Error);
}

TEST_CASE("exhaustive transitions for r' = 3") {
  const MicroTable t(3);
  const auto tally = table_oracle::check_table(t);
  CHECK(tally.checked > 0);
  CHECK_MESSAGE(tally.mismatches == 0, tally.first);
}

TEST_CASE("table operations") {
  const MicroTable t(4);
  // path 0-1-2-3 in stratum 5, dummy 4
  std::vector<std::uint32_t> rows(5, 0);
  table_oracle::link(rows, 0, 1, true);
  table_oracle::link(rows, 1, 2, true);
  table_oracle::link(rows, 2, 3, true);
  const auto idx = t.encode(5, encode_rows(rows));
  CHECK(t.degree(5, idx, 1) == 2);
  CHECK(t.adjacent(5, idx, 2, 3));
  CHECK(t.neighbors(5, idx, 2) == std::vector<unsigned>{1, 3});
  const auto m = t.merge(5, idx, 1, 2);
  CHECK(t.is_deleted(5, m, 2));
  CHECK(t.neighbors(5, m, 1) == std::vector<unsigned>{0, 3});
  CHECK_THROWS_AS(t.row(5, m, 2), Error);
  CHECK_THROWS_AS(t.merge(5, idx, 1, 1), Error);
  const auto d = t.delete_vertex(5, idx, 0);
  CHECK(t.is_deleted(5, d, 0));
  CHECK(t.degree(5, d, 1) == 1);
  CHECK_THROWS_AS(MicroTable(7), Error);
  CHECK_THROWS_AS(MicroTable(1), Error);
}

TEST_CASE("save and load round trip") {
  const MicroTable t(4);
  std::stringstream s;
  t.save(s);
  const MicroTable u = MicroTable::load(s);
  for (unsigned k = 1; k <= 5; ++k) {
    REQUIRE(u.count(k) == t.count(k));
    for (std::uint32_t i = 0; i < t.count(k); i += 7) CHECK(u.mask(k, i) == t.mask(k, i));
  }
  const auto idx = t.encode(5, 0);
  CHECK(u.merge(5, idx, 0, 1) == t.merge(5, idx, 0, 1));
}
