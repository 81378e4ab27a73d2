#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkq/oracle.hpp"

using namespace hkq;

TEST_CASE("bounded monomial counts") {
  CHECK(bounded_monomial_count(5, 5, 0) == 1);
  CHECK(bounded_monomial_count(5, 5, 1) == 5);
  CHECK(bounded_monomial_count(5, 5, 2) == 15);
  CHECK(bounded_monomial_count(5, 5, 21) == 0);   // above 5*(q-1)
  CHECK(bounded_monomial_count(5, 5, -1) == 0);
  // total over all degrees is q^vars
  Int total(0);
  for (long a = 0; a <= 4 * 6; ++a) total += bounded_monomial_count(4, 7, a);
  CHECK(total == pow_int(Int(7), 4));
  // symmetric about the socle degree
  for (long a = 0; a <= 16; ++a)
    CHECK(bounded_monomial_count(4, 5, a) == bounded_monomial_count(4, 5, 16 - a));
}

TEST_CASE("oracle_length basics") {
  CHECK(oracle_length(3, 5, 5, 0) == 1);
  CHECK(oracle_length(3, 5, 5, 1) == 5);   // n+2 variables
  CHECK(oracle_length(4, 5, 5, 1) == 6);
  CHECK(oracle_length(3, 5, 5, 2) == 14);  // 15 monomials minus rank 1
  CHECK(oracle_length(3, 5, 5, 13) == 0);
  CHECK_THROWS_AS(oracle_length(3, 5, 10, 1), std::domain_error);  // q not a power
  CHECK_THROWS_AS(oracle_length(3, 4, 4, 1), std::domain_error);   // p not prime
  CHECK_THROWS_AS(oracle_length(3, 5, 5, -1), std::domain_error);
}

TEST_CASE("hand-computed q=5 profile") {
  std::vector<long> expect{1, 5, 14, 30, 55, 86, 115, 134, 135, 110, 62, 5, 1, 0, 0};
  for (long a = 0; a < 15; ++a) CHECK(oracle_length(3, 5, 5, a) == expect[static_cast<size_t>(a)]);
}

TEST_CASE("structured rank equals the reference elimination") {
  // q = p: all degrees of small cases
  for (auto [vars, p] : std::vector<std::pair<int, long>>{{5, 5}, {5, 7}, {6, 5}}) {
    long D = vars * (p - 1);
    for (long t = 0; t <= D + 2; ++t) {
      auto basic = oracle_rank_basic(vars, p, p, t, 100000);
      auto fast = oracle_rank(vars, p, p, t, 100000);
      CHECK(basic == fast);
    }
  }
  // q = p^2 = 25, low degrees where the reference stays small
  for (long t = 0; t <= 14; ++t)
    CHECK(oracle_rank_basic(5, 5, 25, t, 100000) == oracle_rank(5, 5, 25, t, 100000));
}

TEST_CASE("rank is independent of the pivot order") {
  for (long t = 2; t <= 14; ++t) {
    auto fwd = oracle_rank_basic(5, 5, 5, t, 100000, false);
    auto rev = oracle_rank_basic(5, 5, 5, t, 100000, true);
    CHECK(fwd == rev);
  }
}

TEST_CASE("vanishing degrees match the support predicates") {
  // ell_a can be nonzero only if O(-i) occurs in F_*(O(a-iq)) or
  // S(-i+1) does, where i = floor(a/q).
  for (auto [n, p] : std::vector<std::pair<int, long>>{{3, 5}, {4, 5}}) {
    auto ctx = make_context(n, p);
    for (long a = 0; a < n * p; ++a) {
      long i = a / p;
      bool line_ok = support_line(ctx, 1, Int(a - i * p), Int(-i));
      bool spin_ok = support_spinor(ctx, 1, Int(a - i * p), Int(-i + 1));
      if (!line_ok && !spin_ok) CHECK(oracle_length(n, p, p, a) == 0);
    }
  }
}

TEST_CASE("rank is unchanged under the complement transpose") {
  const int vars = 5;
  const long p = 5, q = 5, D = vars * (q - 1);
  for (long t = 2; t <= D; ++t)
    CHECK(oracle_rank(vars, p, q, t, 100000) == oracle_rank(vars, p, q, D + 2 - t, 100000));
}

TEST_CASE("resource guard refuses oversized instances") {
  CHECK_THROWS_AS(oracle_length(3, 5, 25, 50, 100), std::length_error);
  CHECK_NOTHROW(oracle_length(3, 5, 5, 7, 200));
}

TEST_CASE("compare_all: zero discrepancies at s=1 pairs") {
  for (auto [n, p] : std::vector<std::pair<int, long>>{{3, 5}, {3, 7}, {4, 5}}) {
    auto ctx = make_context(n, p);
    Pushforward pf(ctx);
    auto diffs = compare_all(pf, 1);
    CHECK(diffs.empty());
  }
}

TEST_CASE("compare_all: minimal primes") {
  for (auto [n, p, s] : std::vector<std::tuple<int, long, int>>{{3, 3, 2}, {4, 3, 2}}) {
    auto ctx = make_context(n, p);
    Pushforward pf(ctx);
    CHECK(compare_all(pf, s).empty());
  }
}

TEST_CASE("compare_all: digit chaining at (3,5,2)") {
  auto ctx = make_context(3, 5);
  Pushforward pf(ctx);
  auto diffs = compare_all(pf, 2);
  CHECK(diffs.empty());
}
