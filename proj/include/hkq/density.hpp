#ifndef HKQ_DENSITY_HPP
#define HKQ_DENSITY_HPP

#include <string>
#include <vector>

#include "hkq/multiplicity.hpp"

namespace hkq {

struct DensityValue {
  Rat value;
  bool exact = true;
  std::string note;  // set on approximate results
};

// Evaluator for the Hilbert-Kunz density function of R_{p,n+1}: polynomial
// pieces on the easy range, matrix products over the interval cover on the
// difficult range.
class PiecewiseDensity {
 public:
  explicit PiecewiseDensity(QuadricContext ctx);

  const QuadricContext& ctx() const { return ctx_; }

  DensityValue eval(const Rat& x, int max_depth = 32) const;

  // The pure-characteristic-p correction at a covered point of [0,1).
  Rat mu_correction(const LocateResult& loc) const;

 private:
  QuadricContext ctx_;
  const SymbolicFamily* fam_;
  std::vector<RatMat> h_at_p_;  // H^(i)(1/p)
  Rat half_width_;              // (n-2)/2p
};

// F-threshold c^m(m); returns n after probing that the density is positive
// just below n and vanishes at n.
Rat f_threshold(const PiecewiseDensity& density);

}  // namespace hkq

#endif
