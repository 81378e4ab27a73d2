#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hkq/matrix.hpp"
#include "hkq/poly.hpp"
#include "hkq/sectan.hpp"

using namespace hkq;

namespace {

Poly cubic_third() {  // x^3/3
  return Poly(Var::x, {Rat(0), Rat(0), Rat(0), make_rat(1, 3)});
}

Poly random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Rat> c(static_cast<size_t>(deg(rng)) + 1);
  for (auto& x : c) x = make_rat(num(rng), den(rng));
  return Poly(Var::x, std::move(c));
}

}  // namespace

TEST_CASE("rational canonical form") {
  Rat a = make_rat(6, -4);
  CHECK(a.get_num() == -3);
  CHECK(a.get_den() == 2);
  CHECK(make_rat(2, 4) == make_rat(1, 2));
  CHECK(rat_floor(make_rat(-3, 2)) == -2);
  CHECK(decimal_string(make_rat(1, 3), 6) == "0.333333");
  CHECK(decimal_string(make_rat(-1, 2), 2) == "-0.50");
  CHECK(parse_rat("29/24") == make_rat(29, 24));
  CHECK(parse_rat("2.5") == make_rat(5, 2));
}

TEST_CASE("poly_eval examples") {
  CHECK(cubic_third().eval(Rat(1)) == make_rat(1, 3));
  CHECK(Poly(Var::x).eval(Rat(7)) == 0);

  // x^3/3 - 5(x-1)^3/3 at 2 -> 8/3 - 5/3 = 1
  Poly f = cubic_third() - make_rat(5, 3) * Poly::affine(Var::x, Rat(1), Rat(-1)).pow(3);
  CHECK(f.eval(Rat(2)) == 1);
}

TEST_CASE("poly ring laws on random instances") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 40; ++trial) {
    Poly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    Rat v = make_rat(3, 7);
    CHECK((a * b).eval(v) == a.eval(v) * b.eval(v));
  }
}

TEST_CASE("poly integral and composition") {
  Poly x = Poly::identity(Var::x);
  CHECK(x.pow(2).integral() == Poly(Var::x, {Rat(0), Rat(0), Rat(0), make_rat(1, 3)}));
  CHECK(x.pow(3).definite_integral(Rat(0), Rat(2)) == 4);
  Poly shifted = cubic_third().compose(Poly::affine(Var::x, Rat(1), Rat(2)));
  CHECK(shifted.eval(Rat(0)) == make_rat(8, 3));
}

TEST_CASE("cofactor_inverse trivial examples") {
  const Rat zero(0), one(1);
  RatMat id = RatMat::identity(3, zero, one);
  auto r = cofactor_inverse(id);
  CHECK(r.determinant == 1);
  CHECK(r.adjugate == id);

  RatMat one_by_one(1, 1, Rat(7));
  auto r1 = cofactor_inverse(one_by_one);
  CHECK(r1.determinant == 7);
  CHECK(r1.adjugate.at(0, 0) == 1);

  RatMat m(2, 2, zero);
  m.at(0, 0) = Rat(2);
  m.at(0, 1) = Rat(3);
  m.at(1, 0) = Rat(5);
  m.at(1, 1) = Rat(7);
  auto r2 = cofactor_inverse(m);
  CHECK(r2.determinant == 2 * 7 - 3 * 5);
  CHECK(r2.adjugate.at(0, 0) == 7);
  CHECK(r2.adjugate.at(0, 1) == -3);
  CHECK(r2.adjugate.at(1, 0) == -5);
  CHECK(r2.adjugate.at(1, 1) == 2);
}

TEST_CASE("cofactor_inverse property on random polynomial matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    int k = 2 + static_cast<int>(trial % 3);
    PolyMat m(k, k, Poly(Var::t));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m.at(i, j) = random_poly(rng, 2).retag(Var::t);
    auto r = cofactor_inverse(m, Var::t);
    PolyMat prod = m * r.adjugate;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        CHECK(prod.at(i, j) == (i == j ? r.determinant : Poly(Var::t)));
  }
}

TEST_CASE("sectan coefficients match the classical zigzag values") {
  ZigzagCoeffs zc = sectan_coeffs(8);
  CHECK(zc.m[1] == 1);
  CHECK(zc.m[2] == make_rat(1, 2));
  CHECK(zc.m[4] == make_rat(5, 24));
  CHECK(zc.m[5] == make_rat(16, 120));
  CHECK(zc.m[6] == make_rat(61, 720));
  std::vector<long> expect{1, 1, 2, 5, 16, 61, 272, 1385};
  for (int k = 1; k <= 8; ++k) CHECK(zc.zigzag[static_cast<size_t>(k)] == expect[static_cast<size_t>(k - 1)]);
}

TEST_CASE("sectan equals exact series division of (1+sin)/cos") {
  const int order = 14;
  std::vector<Rat> sin1(order + 1, Rat(0)), cos(order + 1, Rat(0));
  sin1[0] = 1;
  for (int k = 0; k <= order; ++k) {
    Rat term = make_rat(Int(1), factorial(static_cast<unsigned>(k)));
    if ((k / 2) % 2 == 1) term = -term;
    if (k % 2 == 1) sin1[static_cast<size_t>(k)] = term;
    else cos[static_cast<size_t>(k)] = term;
  }
  std::vector<Rat> quot(order + 1, Rat(0));
  for (int k = 0; k <= order; ++k) {
    Rat acc = sin1[static_cast<size_t>(k)];
    for (int j = 1; j <= k; ++j) acc -= cos[static_cast<size_t>(j)] * quot[static_cast<size_t>(k - j)];
    quot[static_cast<size_t>(k)] = acc;
  }
  ZigzagCoeffs zc = sectan_coeffs(order);
  CHECK(quot[0] == 1);
  for (int k = 1; k <= order; ++k) {
    CHECK(zc.m[static_cast<size_t>(k)] == quot[static_cast<size_t>(k)]);
    Rat ek = zc.m[static_cast<size_t>(k)] * Rat(factorial(static_cast<unsigned>(k)));
    REQUIRE(is_integer(ek));
    CHECK(ek.get_num() > 0);
  }
}
