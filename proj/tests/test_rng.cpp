#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "sisnet/rng.hpp"

using namespace sisnet;

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST_CASE("philox4x32-10 known answers") {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                            K{0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                            K{0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  std::set<std::uint64_t> seen;
  for (int n = 0; n < 100; ++n) {
    const auto x = a();
    CHECK(x == b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(d());
  }
  CHECK(seen.size() == 300);
}

TEST_CASE("uniform_open01 stays inside (0,1) with mean 1/2") {
  Philox4x32 rng(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open01(rng);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("exponential has the requested mean") {
  Philox4x32 rng(2, 0);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += exponential(rng, 4.0);
  CHECK(std::abs(sum / n - 0.25) < 4.0 * 0.25 / std::sqrt(n));
  CHECK_THROWS(exponential(rng, 0.0));
}

TEST_CASE("uniform_index covers the range evenly") {
  Philox4x32 rng(3, 0);
  std::vector<int> hist(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++hist[uniform_index(rng, 7)];
  for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}
