#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "nhdtc/basis.hpp"
#include "nhdtc/errors.hpp"

using namespace nhdtc;
using enum Spin;

namespace {

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("encode follows the a-then-b bit order") {
  const SpinConfig l2{Up, Up, Down, Down};
  CHECK(encode(l2) == 3);
  const SpinConfig l1{Down, Up};
  CHECK(encode(l1) == 2);
  const SpinConfig odd{Up, Down, Up};
  CHECK_THROWS_AS(encode(odd), InvalidConfig);
}

TEST_CASE("decode inverts encode for every L=3 configuration") {
  for (Index idx = 0; idx < 64; ++idx) {
    const SpinConfig c = decode(idx, 3);
    REQUIRE(c.size() == 6);
    CHECK(encode(c) == idx);
  }
  // independent enumeration over labels
  int count = 0;
  for (int mask = 0; mask < 64; ++mask) {
    SpinConfig c(6);
    for (int b = 0; b < 6; ++b) c[b] = (mask >> b) & 1 ? Up : Down;
    CHECK(decode(encode(c), 3) == c);
    ++count;
  }
  CHECK(count == 64);
}

TEST_CASE("descriptor dimensions and limits") {
  CHECK(BasisDescriptor::full(3).dim() == 64);
  CHECK(BasisDescriptor::pair_sector(3).dim() == 8);
  CHECK(BasisDescriptor::full(1).dim() == 4);
  CHECK_THROWS_AS(BasisDescriptor::full(0), InvalidParam);
  CHECK_THROWS_AS(BasisDescriptor::full(kMaxSites + 1), InvalidParam);
  CHECK(BasisDescriptor::full(kMaxSites).dim() == (Index{1} << 62));
  CHECK(BasisDescriptor::full(2) != BasisDescriptor::pair_sector(2));
}

TEST_CASE("total magnetization") {
  const auto d = BasisDescriptor::full(2);
  CHECK(total_magnetization(encode(SpinConfig{Up, Up, Down, Down}), d) == 0);
  CHECK(total_magnetization(encode(SpinConfig{Up, Up, Up, Up}), d) == 4);
  CHECK_THROWS_AS(total_magnetization(16, d), IndexError);
  CHECK_THROWS_AS(total_magnetization(0, BasisDescriptor::pair_sector(2)), InvalidParam);
}

TEST_CASE("magnetization counts are binomial") {
  for (int l = 1; l <= 4; ++l) {
    const auto d = BasisDescriptor::full(l);
    std::map<int, long long> counts;
    for (Index idx = 0; idx < d.dim(); ++idx) ++counts[total_magnetization(idx, d)];
    for (int up = 0; up <= 2 * l; ++up) CHECK(counts[2 * up - 2 * l] == binomial(2 * l, up));
  }
}

TEST_CASE("pair sector embedding") {
  CHECK(pair_sector_embed(0b11, 2) == encode(SpinConfig{Up, Up, Down, Down}));
  CHECK(pair_sector_embed(0b00, 2) == encode(SpinConfig{Down, Down, Up, Up}));
  for (int l = 1; l <= 4; ++l) {
    const auto full = BasisDescriptor::full(l);
    const auto pair = BasisDescriptor::pair_sector(l);
    for (Index r = 0; r < pair.dim(); ++r) {
      const Index f = pair_sector_embed(r, l);
      CHECK(total_magnetization(f, full) == 0);
      Index back = 0;
      REQUIRE(pair_sector_project(f, l, back));
      CHECK(back == r);
      for (int j = 0; j < l; ++j) {
        CHECK(spin_a(r, j) == spin_a(f, j));
        CHECK(spin_b(r, j, pair) == spin_b(f, j, full));
      }
    }
  }
  Index r = 0;
  CHECK_FALSE(pair_sector_project(encode(SpinConfig{Up, Up, Up, Down}), 2, r));
  CHECK_THROWS_AS(pair_sector_embed(4, 2), IndexError);
}

TEST_CASE("embedding image is exactly the antialigned configurations") {
  for (int l = 1; l <= 4; ++l) {
    const auto full = BasisDescriptor::full(l);
    std::vector<bool> hit(full.dim(), false);
    for (Index r = 0; r < (Index{1} << l); ++r) hit[pair_sector_embed(r, l)] = true;
    for (Index f = 0; f < full.dim(); ++f) {
      bool antialigned = true;
      for (int j = 0; j < l; ++j) antialigned = antialigned && spin_a(f, j) != spin_b(f, j, full);
      CHECK(hit[f] == antialigned);
    }
  }
}

TEST_CASE("spin flip is the global inversion in both bases") {
  const auto full = BasisDescriptor::full(3);
  for (Index idx = 0; idx < full.dim(); ++idx) {
    const SpinConfig c = decode(idx, 3), f = decode(spin_flip(idx, full), 3);
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] != f[k]);
  }
  const auto pair = BasisDescriptor::pair_sector(3);
  for (Index r = 0; r < pair.dim(); ++r)
    CHECK(pair_sector_embed(spin_flip(r, pair), 3) == spin_flip(pair_sector_embed(r, 3), full));
}
