#ifndef HKQ_DENSITY_POLYS_HPP
#define HKQ_DENSITY_POLYS_HPP

#include <vector>

#include "hkq/poly.hpp"
#include "hkq/quadric.hpp"

namespace hkq {

// Characteristic-free limit polynomials of the rank recursions: Z_i for
// i = 0..n0+1 and Y_i for i = n0+1..n-1, each of degree n, together with
// the rational coefficient tables that define them.
struct LimitPolys {
  int n = 0;
  int n0 = 0;
  std::vector<Poly> Z;                // index i = 0..n0+1
  std::vector<Poly> Y;                // index i, valid for n0+1..n-1
  std::vector<std::vector<Rat>> r;    // r[i][j], j = 0..i with r[i][i] = 1
  std::vector<std::vector<Rat>> s;    // s[i][j], j = 0..n-i-1, last entry 1
};

LimitPolys build_limit_polys(int n);

// Generating polynomials seeding the difficult-range products: l/r for odd
// n (indices 0..n+1), m for even n (indices 0..n+2).
struct GenPolys {
  int n = 0;
  std::vector<Poly> l, r;  // odd n
  std::vector<Poly> m;     // even n
};

GenPolys build_gen_polys(int n);
GenPolys build_gen_polys(const LimitPolys& lp);

// The p -> infinity density; depends on n only.
Rat density_infty(int n, const Rat& x);

// Exact integral of the limit density over [0, n].
Rat integral_f_infty(int n);

// Fully explicit n = 3 density, including the geometric-sum branches on the
// difficult range.  p >= 5.
Rat density_n3(long p, const Rat& x);

// The four positive integers seeding the n = 3 geometric sums.
struct N3Constants {
  Int mu0, mu_1, mubar0, mubar_1;
};
N3Constants n3_constants(long p);

}  // namespace hkq

#endif
