#include "hkq/quadric.hpp"

#include <stdexcept>
#include <string>

namespace hkq {

QuadricContext make_context(int n, long p) {
  if (n < 3) throw std::domain_error("make_context: n must be >= 3");
  if (p < 3 || !is_prime(p)) throw std::domain_error("make_context: p must be an odd prime");
  if (p <= n - 2) throw std::domain_error("make_context: requires p > n-2");
  QuadricContext c;
  c.n = n;
  c.p = p;
  c.even = n % 2 == 0;
  c.n0 = (n + 1) / 2 - 1;  // ceil(n/2) - 1
  c.lambda0 = 1L << (n / 2);
  c.delta = Rat(c.n0) - make_rat(Int((n - 2)) * (p - 1), Int(2) * p);
  c.m0 = make_rat(p - n + 2, 2);
  if (!c.even && !is_integer(c.m0))
    throw std::logic_error("make_context: m0 not integral for odd n");
  c.mtilde0 = c.even ? p - (n - 2) / 2 : 0;
  return c;
}

Int dim_line(const QuadricContext& ctx, const Int& m) {
  const int n = ctx.n;
  if (m < 1 - n) throw std::domain_error("dim_line: twist below 1-n");
  Int num = 2 * m + n;
  for (long j = 1; j <= n - 1; ++j) num *= m + j;
  return div_exact(num, factorial(static_cast<unsigned>(n)));
}

Int dim_spinor(const QuadricContext& ctx, const Int& m) {
  const int n = ctx.n;
  if (m < 1 - n) throw std::domain_error("dim_spinor: twist below 1-n");
  Int num(2 * ctx.lambda0);
  for (long j = 0; j <= n - 1; ++j) num *= m + j;
  return div_exact(num, factorial(static_cast<unsigned>(n)));
}

Poly dim_line_poly(int n, Var v) {
  Poly prod = Poly::affine(v, Rat(2), Rat(n));
  for (int j = 1; j <= n - 1; ++j) prod *= Poly::affine(v, Rat(1), Rat(j));
  return make_rat(Int(1), factorial(static_cast<unsigned>(n))) * prod;
}

Poly dim_spinor_poly(int n, Var v) {
  long lambda0 = 1L << (n / 2);
  Poly prod = Poly::constant(v, Rat(2 * lambda0));
  for (int j = 0; j <= n - 1; ++j) prod *= Poly::affine(v, Rat(1), Rat(j));
  return make_rat(Int(1), factorial(static_cast<unsigned>(n))) * prod;
}

bool support_line(const QuadricContext& ctx, int s, const Int& a, const Int& t, Bundle source) {
  if (s < 1) throw std::domain_error("support_line: s >= 1");
  Int q = pow_int(Int(ctx.p), static_cast<unsigned>(s));
  Int d = a - t * q;
  Int lo = source == Bundle::line ? Int(0) : Int(1);
  return d >= lo && d <= Int(ctx.n) * (q - 1);
}

bool support_spinor(const QuadricContext& ctx, int s, const Int& a, const Int& t, Bundle source) {
  if (s < 1) throw std::domain_error("support_spinor: s >= 1");
  const int n = ctx.n;
  Int q = pow_int(Int(ctx.p), static_cast<unsigned>(s));
  Rat qp = make_rat(q, Int(ctx.p));
  Rat base = make_rat(Int(n - 2) * (ctx.p - 1), 2);
  Rat lo = base * qp;
  Rat hi = (base + Rat(n - 2 + ctx.p)) * qp - Rat(n);
  if (source == Bundle::spinor) {
    long delta_s1 = s == 1 ? 1 : 0;
    lo += Rat(1 - delta_s1);
    hi += Rat(delta_s1);
  }
  Rat d(a - t * q);
  return d >= lo && d <= hi;
}

}  // namespace hkq
