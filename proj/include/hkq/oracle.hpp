#ifndef HKQ_ORACLE_HPP
#define HKQ_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hkq/frobenius.hpp"

namespace hkq {

// Brute-force graded lengths of R/m^[q] by exact linear algebra over F_p,
// independent of the pushforward machinery.

inline constexpr std::size_t kOracleDefaultCap = 200000;

// Number of degree-`deg` monomials in `vars` variables with every exponent
// <= q-1.
Int bounded_monomial_count(int vars, long q, long deg);

// F_p-rank of multiplication by sum of squares of all variables, from the
// bounded monomials of degree `target-2` into degree `target`.  Sparse
// elimination with Markowitz-lite pivoting; reference path.  The rank does
// not depend on the pivot order; `reverse_window` flips the candidate
// ordering to exercise that.
std::size_t oracle_rank_basic(int vars, long p, long q, long target, std::size_t cap,
                              bool reverse_window = false);

// Same rank, with the unit-pivot block in the first variable eliminated
// structurally first (a Schur-complement sweep); the residual cores are
// eliminated densely.  Equal to oracle_rank_basic by construction, much
// smaller working set.
std::size_t oracle_rank(int vars, long p, long q, long target, std::size_t cap);

// ell(R/m^[q])_a for R = k[x_0..x_{n+1}]/(sum x_i^2); q a power of p.
Int oracle_length(int n, long p, long q, long a, std::size_t cap = kOracleDefaultCap);

struct Discrepancy {
  long a = 0;
  Int oracle;
  Int pushforward;
};

// Compare oracle_length against Pushforward::graded_length for every degree
// a in [0, n*p^s).  Expected: empty.
std::vector<Discrepancy> compare_all(const Pushforward& pf, int s,
                                     std::size_t cap = kOracleDefaultCap,
                                     int threads = 0);

}  // namespace hkq

#endif
