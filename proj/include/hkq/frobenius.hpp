#ifndef HKQ_FROBENIUS_HPP
#define HKQ_FROBENIUS_HPP

#include <map>
#include <mutex>
#include <vector>

#include "hkq/matrix.hpp"
#include "hkq/quadric.hpp"

namespace hkq {

// Multiplicity vector of a Frobenius pushforward, ordered
//   (nu_0, nu_{-1}, ..., nu_{-n+1}, mu_{-n0+1}, mu_{-n0} [, mu_{-n0-1}]).
// Length n+2 for odd n, n+3 for even n.
using RankTuple = std::vector<Int>;

// Integer matrix sending a rank tuple through one Frobenius step at a fixed
// p-adic digit d: row k is the rank tuple of F_*(O(d-k)) for k = 0..n-1 and
// of F_*(S(d-n0+1)), F_*(S(d-n0)) [, F_*(S(d-n0-1))] for the spinor rows.
struct TransitionMatrix {
  int digit = 0;
  Mat<Int> m;
};

enum class ZYKind { Z, Y, Zt, Yt };

// Pushforward decompositions for a fixed context.  All queries are pure;
// internal memo tables are guarded by a mutex.
class Pushforward {
 public:
  explicit Pushforward(QuadricContext ctx) : ctx_(std::move(ctx)) {}

  const QuadricContext& ctx() const { return ctx_; }
  int tuple_dim() const { return ctx_.n + (ctx_.even ? 3 : 2); }

  // The iteratively defined bookkeeping integers behind the decompositions.
  // Z: 0 <= i <= n0+1, Y: n0+1 <= i <= n-1, with 1-n <= a < q = p^s.
  Int zy(ZYKind kind, int i, long a, int s = 1) const;

  // Complete s=1 decompositions of F_*(O(a)) resp. F_*(S(a)), 1-n <= a < p.
  RankTuple decompose_line_s1(long a) const;
  RankTuple decompose_spinor_s1(long a) const;

  const TransitionMatrix& transition(int digit) const;

  // Rank tuple of F^s_*(O(a)) for 0 <= a < p^s, by chaining the base-p
  // digits of a least-significant first.
  RankTuple decompose_line(const Int& a, int s) const;

  // ell(R/m^[q])_a for q = p^s.
  Int graded_length(const Int& a, int s) const;

  // f_s(x) = ell(R/m^[q])_{floor(xq)} / q^n, exact.
  Rat fs_value(const Rat& x, int s) const;

 private:
  std::vector<Int> zy_table(ZYKind kind, long a, int s) const;

  QuadricContext ctx_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, long>, std::vector<Int>> zy_cache_;  // s = 1 only
  mutable std::map<int, TransitionMatrix> transition_cache_;
};

}  // namespace hkq

#endif
