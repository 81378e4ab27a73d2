#ifndef HKQ_MULTIPLICITY_HPP
#define HKQ_MULTIPLICITY_HPP

#include <string>
#include <vector>

#include "hkq/cover.hpp"
#include "hkq/density_polys.hpp"
#include "hkq/frobenius.hpp"
#include "hkq/matrix.hpp"

namespace hkq {

// One-step transition matrix H^(idx)(t) in Q[t]: p^n * H(1/p) reproduces the
// integer transition matrix at the distinguished digit indexed by idx, for
// every admissible prime.
struct SymbolicTransition {
  int index = 0;   // in [0, n-3]
  PolyMat H;       // (n+2)^2 odd / (n+3)^2 even, entries of degree <= n
};

std::vector<SymbolicTransition> build_symbolic_transitions(int n);

// Integrals of the generating polynomials over the easy ranges, as
// polynomials in t:
//   odd n:  F_i(t) = int_0^{1/2-(n-2)t/2} l_i,  G_i(t) = int_{1/2+(n-2)t/2}^1 r_i
//   even n: Ft_i(t) = int_{(n-2)t/2}^{1-(n-2)t/2} m_i
struct IntegralPolys {
  int n = 0;
  std::vector<Poly> F, G;  // odd
  std::vector<Poly> Ft;    // even
};

IntegralPolys build_integrals(int n);

struct EhkResult {
  Rat value;
  enum class Method { closed, series } method = Method::closed;
  Rat tail_bound;   // series only
  Poly num, den;    // closed only: correction = num/den evaluated at t = 1/p
};

// e_HK via the cofactor closed form.  Requires the product tier; verifies
// det(I - B(1/p)) != 0 at runtime.
EhkResult ehk_closed(const QuadricContext& ctx);

// e_HK via the truncated matrix power series, with a certified tail bound.
EhkResult ehk_series(const QuadricContext& ctx, int depth);

// Exact vector of integrals of all rank functions over one addressed
// interval of the cover.
std::vector<Rat> interval_integral(const QuadricContext& ctx, const IntervalAddress& addr);

// Positivity radius of t*H(t) from the deflated coefficient sequence.
Rat epsilon_H(const Poly& h);

// Minimum of epsilon_H over the generating family (H entries and easy-range
// integrals) of the given dimension; e_HK is strictly decreasing for
// p >= 1/epsilon.
Rat epsilon_bound(int n);

struct ScanRow {
  long p = 0;
  Rat ehk;
  bool decreased = false;  // strictly below the previous row
};

struct ScanTable {
  std::vector<ScanRow> rows;
  Rat epsilon;       // from epsilon_bound
  Rat p_threshold;   // 1/epsilon
};

ScanTable monotonicity_scan(int n, const std::vector<long>& primes);

// Cached per-n symbolic data shared by the evaluators.
struct SymbolicFamily {
  int n = 0;
  std::vector<SymbolicTransition> H;
  IntegralPolys integrals;
  GenPolys gen;
  LimitPolys limit;
};

const SymbolicFamily& symbolic_family(int n);

}  // namespace hkq

#endif
