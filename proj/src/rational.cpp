#include "hkq/rational.hpp"

namespace hkq {

std::string decimal_string(const Rat& x, unsigned digits) {
  const bool neg = x < 0;
  Rat ax = neg ? Rat(-x) : x;
  Int scale = pow_int(Int(10), digits);
  // round(ax * 10^digits), half away from zero
  Int num = ax.get_num() * scale;
  Int den = ax.get_den();
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;
  std::string s = q.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (neg && q != 0) s.insert(0, "-");
  return s;
}

Rat parse_rat(const std::string& text) {
  Rat q;
  if (text.find('/') != std::string::npos) {
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator in '" + text + "'");
  } else if (text.find('.') != std::string::npos) {
    auto dot = text.find('.');
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty()) frac = "0";
    Int num(whole + frac, 10);
    Int den = pow_int(Int(10), static_cast<unsigned>(frac.size()));
    return make_rat(num, den);
  } else {
    if (q.set_str(text + "/1", 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + text + "'");
  }
  q.canonicalize();
  return q;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace hkq
