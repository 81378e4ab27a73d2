#ifndef HKQ_RATIONAL_HPP
#define HKQ_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace hkq {

// Arbitrary-precision integers and rationals. mpq_class keeps values in
// lowest terms with positive denominator, which is exactly the canonical
// form the rest of the library assumes.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int factorial(unsigned k) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

inline Int binomial(const Int& n, unsigned k) {
  if (n < 0) throw std::domain_error("binomial: negative upper index");
  Int b;
  mpz_bin_ui(b.get_mpz_t(), n.get_mpz_t(), k);
  return b;
}

inline Int pow_int(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned e) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
  return r;
}

// Exact quotient; throws if the division leaves a remainder.
inline Int div_exact(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("div_exact: zero divisor");
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
    throw std::logic_error("div_exact: inexact division");
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline std::string rat_string(const Rat& x) { return x.get_str(); }

// Fixed-point decimal rendering, round half away from zero.
std::string decimal_string(const Rat& x, unsigned digits);

Rat parse_rat(const std::string& text);

bool is_prime(long n);

}  // namespace hkq

#endif
