#include "hkq/sectan.hpp"

#include <stdexcept>

namespace hkq {

ZigzagCoeffs sectan_coeffs(int order) {
  if (order < 1) throw std::invalid_argument("sectan_coeffs: order must be >= 1");
  ZigzagCoeffs out;
  out.order = order;
  out.zigzag.resize(order + 1);
  out.m.assign(order + 1, Rat(0));

  // Boustrophedon triangle: T(0,0) = 1, T(k,0) = 0,
  // T(k,j) = T(k,j-1) + T(k-1,k-j); E_k = T(k,k).
  std::vector<Int> prev{Int(1)};
  out.zigzag[0] = 1;
  for (int k = 1; k <= order; ++k) {
    std::vector<Int> row(k + 1);
    row[0] = 0;
    for (int j = 1; j <= k; ++j) row[j] = row[j - 1] + prev[k - j];
    out.zigzag[k] = row[k];
    out.m[k] = make_rat(row[k], factorial(static_cast<unsigned>(k)));
    prev = std::move(row);
  }
  return out;
}

}  // namespace hkq
