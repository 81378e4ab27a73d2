#ifndef HKQ_DETAIL_S1_ASSEMBLY_HPP
#define HKQ_DETAIL_S1_ASSEMBLY_HPP

#include <stdexcept>
#include <vector>

#include "hkq/quadric.hpp"

namespace hkq::detail {

// Case split of the one-step decomposition of F_*(O(a)) / F_*(S(a)) by the
// position of the twist a relative to the spinor-support thresholds.
enum class S1Branch {
  OddLow,    // odd n,  a <= m0 - 1
  OddHigh,   // odd n,  a >= m0
  EvenLow,   // even n, a <= -n/2          (line source only)
  EvenMid,   // even n, -n/2 <= a <= mt0-1
  EvenHigh,  // even n, a >= mt0
};

inline S1Branch s1_branch_line(const QuadricContext& c, long a) {
  if (!c.even) return 2 * a <= c.p - c.n ? S1Branch::OddLow : S1Branch::OddHigh;
  if (2 * a <= -c.n) return S1Branch::EvenLow;
  return a <= c.mtilde0 - 1 ? S1Branch::EvenMid : S1Branch::EvenHigh;
}

inline S1Branch s1_branch_spinor(const QuadricContext& c, long a) {
  if (!c.even) return 2 * a <= c.p - c.n ? S1Branch::OddLow : S1Branch::OddHigh;
  if (2 * a <= -c.n) return S1Branch::EvenLow;
  return a <= c.mtilde0 - 1 ? S1Branch::EvenMid : S1Branch::EvenHigh;
}

// Assembles one rank tuple from the Z/Y values of the matching kind.
// Prov supplies zy.Z(i) for 0 <= i <= n0+1 and zy.Y(i) for n0+1 <= i <= n-1;
// half(v) is exact division by 2*lambda0.  Layout:
//   [nu_0 .. nu_{n-1}, mu_{-n0+1}, mu_{-n0} (, mu_{-n0-1})].
template <typename V, typename Prov, typename Half>
std::vector<V> assemble_s1_row(int n, int n0, bool even, S1Branch br,
                               const Prov& zy, const Half& half, const V& zero) {
  std::vector<V> row(static_cast<size_t>(n + (even ? 3 : 2)), zero);
  for (int k = 0; k <= n0 - 1; ++k) row[k] = zy.Z(k);
  for (int k = n0 + 1; k <= n - 1; ++k) row[k] = zy.Y(k);

  V zlo = zy.Z(n0), zhi = zy.Z(n0 + 1), yhi = zy.Y(n0 + 1);
  V& muA = row[n];      // mu_{-n0+1}
  V& muB = row[n + 1];  // mu_{-n0}
  switch (br) {
    case S1Branch::OddLow:
    case S1Branch::EvenMid:
      row[n0] = zlo;
      muB = half(zhi - yhi);
      break;
    case S1Branch::OddHigh:
    case S1Branch::EvenHigh:
      row[n0] = zlo - yhi + zhi;
      muA = half(yhi - zhi);
      break;
    case S1Branch::EvenLow:
      row[n0] = zlo;
      // The extra spinor twist eats into nu_{-n0-1}: the 2*lambda0-fold
      // correction turns the Y value into the Z value exactly.
      row[n0 + 1] = zhi;
      row[n + 2] = half(yhi - zhi);  // mu_{-n0-1}
      break;
  }
  return row;
}

}  // namespace hkq::detail

#endif
