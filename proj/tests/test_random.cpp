#include <doctest.h>

#include <cmath>
#include <vector>

#include "alphaidx/random.hpp"

using alphaidx::RandomStream;

TEST_SUITE("random") {
  TEST_CASE("streams are reproducible") {
    RandomStream a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) {
      const auto x = a();
      CHECK(x == b());
      (void)c();
    }
    CHECK(RandomStream(123)() != RandomStream(124)());
  }

  TEST_CASE("substreams ignore the parent's position") {
    RandomStream a(7);
    const auto first = a.substream(3)();
    for (int i = 0; i < 10; ++i) (void)a();
    CHECK(a.substream(3)() == first);
    CHECK(a.substream(4)() != first);
    CHECK(a.substream(3).substream(0)() != a.substream(0).substream(3)());
  }

  TEST_CASE("below stays in range and is roughly uniform") {
    RandomStream s(99);
    std::vector<int> hits(6, 0);
    for (int i = 0; i < 60000; ++i) {
      const auto v = s.below(6);
      REQUIRE(v < 6);
      ++hits[v];
    }
    for (int h : hits) CHECK(std::abs(h - 10000) < 500);
    CHECK(s.below(1) == 0);
  }

  TEST_CASE("uniform_open never hits the endpoints") {
    RandomStream s(1);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
      const double u = s.uniform_open();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }
}
