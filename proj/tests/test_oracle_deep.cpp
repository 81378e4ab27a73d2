#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkq/oracle.hpp"

using namespace hkq;

// Longer-running oracle sweeps: wide contexts and a depth-3 digit chain.

TEST_CASE("compare_all: wider contexts (5,7) and even n = 6") {
  for (auto [n, p] : std::vector<std::pair<int, long>>{{5, 7}, {6, 5}}) {
    auto ctx = make_context(n, p);
    Pushforward pf(ctx);
    CHECK(compare_all(pf, 1, 300000).empty());
  }
}

TEST_CASE("compare_all: three chained digits at (3,3), q = 27") {
  auto ctx = make_context(3, 3);
  Pushforward pf(ctx);
  CHECK(compare_all(pf, 3, 300000).empty());
}
