#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkq/quadric.hpp"

using namespace hkq;

TEST_CASE("context derived constants") {
  auto c3 = make_context(3, 5);
  CHECK(c3.n0 == 1);
  CHECK(c3.lambda0 == 2);
  CHECK(c3.m0 == 2);
  CHECK(Rat(c3.n0) - c3.delta == make_rat(1 * 4, 10));  // (n-2)(p-1)/2p
  CHECK(!c3.even);
  CHECK(c3.tier_product());
  CHECK(c3.tier_contraction());

  auto c4 = make_context(4, 7);
  CHECK(c4.n0 == 1);
  CHECK(c4.lambda0 == 4);
  CHECK(c4.mtilde0 == 6);
  CHECK(c4.even);
  CHECK(c4.tier_product());
  CHECK(!c4.tier_contraction());  // needs p > 8

  CHECK_THROWS_AS(make_context(3, 4), std::domain_error);   // not prime
  CHECK_THROWS_AS(make_context(5, 3), std::domain_error);   // p <= n-2
  CHECK_THROWS_AS(make_context(2, 5), std::domain_error);   // n too small
  CHECK_THROWS_AS(make_context(3, 2), std::domain_error);   // p = 2
}

TEST_CASE("dim_line matches the n=3 cubic") {
  auto c = make_context(3, 5);
  // L_a = (2a^3 + 9a^2 + 13a + 6)/6
  auto cubic = [](long a) { return make_rat(2 * a * a * a + 9 * a * a + 13 * a + 6, 6); };
  for (long m = -2; m <= 12; ++m) CHECK(Rat(dim_line(c, m)) == cubic(m));
  CHECK(dim_line(c, 0) == 1);
  CHECK(dim_line(c, 1) == 5);
  CHECK(dim_line(c, 2) == 14);
  CHECK(dim_line(c, 7) == 204);
}

TEST_CASE("dim_line vanishing range and domain guard") {
  for (int n : {3, 4, 5, 6}) {
    auto c = make_context(n, 7);
    for (long m = 1 - n; m <= -1; ++m) CHECK(dim_line(c, m) == 0);
    CHECK(dim_line(c, 0) == 1);
    CHECK_THROWS_AS(dim_line(c, -n), std::domain_error);
    CHECK_THROWS_AS(dim_spinor(c, -n), std::domain_error);
  }
}

TEST_CASE("dim_line equals the projective binomial difference") {
  for (int n : {3, 4, 5, 6}) {
    auto c = make_context(n, 7);
    for (long m = 1; m <= 15; ++m) {
      Int expect = binomial(Int(m + n + 1), static_cast<unsigned>(n + 1)) -
                   binomial(Int(m + n - 1), static_cast<unsigned>(n + 1));
      CHECK(dim_line(c, m) == expect);
    }
  }
}

TEST_CASE("Serre duality pairing of evaluation ranges") {
  // h^n(O(m)) = h^0(O(-m-n)): nonzero exactly when -m-n >= 0, i.e. m <= -n.
  for (int n : {3, 4, 5}) {
    auto c = make_context(n, 7);
    for (long m = -n - 8; m <= -n; ++m) CHECK(dim_line(c, -m - n) > 0);
    for (long m = -n + 1; m <= -1; ++m) CHECK(dim_line(c, -m - n) == 0);
  }
}

TEST_CASE("dim_spinor basics") {
  auto c = make_context(3, 5);
  // n=3: Lt_a = (2/3)(a^3 + 3a^2 + 2a)
  for (long a = -2; a <= 12; ++a)
    CHECK(Rat(dim_spinor(c, a)) == make_rat(2 * (a * a * a + 3 * a * a + 2 * a), 3));
  CHECK(dim_spinor(c, 1) == 2 * c.lambda0);
  for (int n : {3, 4, 5, 6}) {
    auto cn = make_context(n, 7);
    CHECK(dim_spinor(cn, 0) == 0);
    CHECK(dim_spinor(cn, 1) == 2 * cn.lambda0);
  }
}

TEST_CASE("dimension counts strictly increase for m >= 1") {
  for (int n : {3, 4, 5, 6}) {
    auto c = make_context(n, 5);
    for (long m = 1; m <= 20; ++m) {
      CHECK(dim_line(c, m + 1) > dim_line(c, m));
      CHECK(dim_spinor(c, m + 1) > dim_spinor(c, m));
    }
  }
}

TEST_CASE("dimension polynomials agree with the integer evaluations") {
  for (int n : {3, 4, 5, 6}) {
    auto c = make_context(n, 7);
    Poly L = dim_line_poly(n, Var::x), Lt = dim_spinor_poly(n, Var::x);
    for (long m = 1 - n; m <= 10; ++m) {
      CHECK(L.eval(Rat(m)) == Rat(dim_line(c, m)));
      CHECK(Lt.eval(Rat(m)) == Rat(dim_spinor(c, m)));
    }
  }
}

TEST_CASE("support predicates") {
  auto c = make_context(3, 5);
  // 13 > n(q-1) = 12: O(0) does not occur in F_*(O(13))
  CHECK(!support_line(c, 1, Int(13), Int(0)));
  CHECK(support_line(c, 1, Int(12), Int(0)));
  // spinor S(1) in F_*(O(8)): (n-2)(p-1)/2 = 2 <= 8-5 = 3 <= upper
  CHECK(support_spinor(c, 1, Int(8), Int(1), Bundle::line));
  // a = t*q hits the left endpoint 0 <= 0
  for (long t : {0L, 1L, 2L}) CHECK(support_line(c, 2, Int(t * 25), Int(t)));
}

TEST_CASE("support ranges match the s=1 decomposition blocks") {
  // For 0 <= a < p the spinor twists allowed at s=1 straddle m0.
  auto c = make_context(3, 7);
  long m0 = rat_floor(c.m0).get_si();
  for (long a = 0; a < 7; ++a) {
    bool lower = support_spinor(c, 1, Int(a), Int(-c.n0));      // S(-n0)
    bool upper = support_spinor(c, 1, Int(a), Int(-c.n0 + 1));  // S(-n0+1)
    CHECK(lower == (a <= m0 - 2));  // S(-n0) occurs only strictly below m0-1
    CHECK(upper == (a >= m0));      // a = m0-1 carries no spinor at all
  }
}
