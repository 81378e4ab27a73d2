#ifndef HKQ_QUADRIC_HPP
#define HKQ_QUADRIC_HPP

#include "hkq/poly.hpp"
#include "hkq/rational.hpp"

namespace hkq {

// All derived constants of a pair (n, p): the smooth quadric Q_n of
// dimension n >= 3 over a perfect field of odd characteristic p > n-2,
// i.e. the projective cone data of k[x_0..x_{n+1}]/(sum x_i^2).
struct QuadricContext {
  int n = 0;        // dimension of the quadric
  long p = 0;       // odd prime, p > n-2
  bool even = false;
  int n0 = 0;       // ceil(n/2) - 1
  long lambda0 = 0; // spinor rank 2^floor(n/2)
  Rat delta;        // n0 - delta = (n-2)(p-1)/2p
  Rat m0;           // p/2 - (n-2)/2   (integral when n is odd, p odd)
  long mtilde0 = 0; // p - (n-2)/2     (even n only)

  bool tier_base() const { return p > n - 2; }
  // Threshold for the product formulas on the interval cover.
  bool tier_product() const { return even ? 2 * p >= 3 * n - 4 : p >= 3L * n - 4; }
  // Threshold for the contraction bound behind the closed form.
  bool tier_contraction() const { return p > lambda0 * (n - 2); }
};

QuadricContext make_context(int n, long p);

// h^0(Q_n, O(m)) for m >= 1-n; zero on [1-n, -1].
Int dim_line(const QuadricContext& ctx, const Int& m);

// h^0(Q_n, S(m)) for m >= 1-n; zero on [1-n, 0].
Int dim_spinor(const QuadricContext& ctx, const Int& m);

// The dimension polynomials in the twist, exact rational coefficients.
Poly dim_line_poly(int n, Var v);
Poly dim_spinor_poly(int n, Var v);

enum class Bundle { line, spinor };

// Does F^s_*(source(a)) contain O(t)?
bool support_line(const QuadricContext& ctx, int s, const Int& a, const Int& t,
                  Bundle source = Bundle::line);

// Does F^s_*(source(a)) contain S(t)?
bool support_spinor(const QuadricContext& ctx, int s, const Int& a, const Int& t,
                    Bundle source = Bundle::line);

}  // namespace hkq

#endif
