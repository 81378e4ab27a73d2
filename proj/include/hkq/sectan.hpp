#ifndef HKQ_SECTAN_HPP
#define HKQ_SECTAN_HPP

#include <vector>

#include "hkq/rational.hpp"

namespace hkq {

// Taylor coefficients of sec(x)+tan(x): m[k] = E_k / k! where E_k are the
// zigzag (Euler up/down) numbers.
struct ZigzagCoeffs {
  int order = 0;
  std::vector<Rat> m;        // m[k] for k = 1..order (index 0 unused)
  std::vector<Int> zigzag;   // E_k for k = 0..order
};

// Exact coefficients up to the given order via the boustrophedon triangle.
ZigzagCoeffs sectan_coeffs(int order);

}  // namespace hkq

#endif
