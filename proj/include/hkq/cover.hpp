#ifndef HKQ_COVER_HPP
#define HKQ_COVER_HPP

#include <utility>
#include <vector>

#include "hkq/quadric.hpp"

namespace hkq {

// Branch of the interval family covering the difficult range.  Odd n uses
// I/J (left/right of the midpoint); even n uses M0/M1 (block near 0 resp. 1,
// determined by the first digit).
enum class Branch { I, J, M0, M1 };

struct IntervalAddress {
  Branch branch = Branch::I;
  std::vector<int> digits;  // n_1..n_l, most significant first, each in [0, n-3]
};

// Exact endpoints [lo, hi) of the addressed semi-open interval.
std::pair<Rat, Rat> interval_bounds(const QuadricContext& ctx, const IntervalAddress& addr);

struct LocateResult {
  enum Kind { Easy, Resolved, Unresolved } kind = Easy;
  IntervalAddress addr;  // Resolved only
  Rat residual;          // Resolved only: the rescaled point in the easy range
};

// Classify x in [0,1): outside the difficult range (Easy), inside an
// addressed interval (Resolved, with the rescaled residual), or in the
// measure-zero limit set up to the depth cap (Unresolved).
LocateResult locate(const QuadricContext& ctx, const Rat& x, int max_depth = 32);

// Lebesgue measure of the part of the difficult range not covered by
// intervals of depth <= k.
Rat uncovered_measure(const QuadricContext& ctx, int k);

// Total length of the difficult range, (n-2)/p.
Rat difficult_range_length(const QuadricContext& ctx);

// All addresses of exact depth l (both branches).
std::vector<IntervalAddress> enumerate_addresses(const QuadricContext& ctx, int l);

}  // namespace hkq

#endif
