#include "hkq/density_polys.hpp"

#include <stdexcept>

namespace hkq {

namespace {

// Integer h^0 constants L_1..L_{n-1}; they drive both recursions.
std::vector<Int> line_constants(int n) {
  Poly L = dim_line_poly(n, Var::x);
  std::vector<Int> c(static_cast<size_t>(n), Int(0));
  for (int k = 1; k <= n - 1; ++k) {
    Rat v = L.eval(Rat(k));
    if (!is_integer(v)) throw std::logic_error("line_constants: non-integral dimension");
    c[static_cast<size_t>(k)] = v.get_num();
  }
  return c;
}

Poly shifted_power(int n, const Rat& shift) {  // (x + shift)^n
  return Poly::affine(Var::x, Rat(1), shift).pow(static_cast<unsigned>(n));
}

Poly shifted_power_neg(int n, const Rat& shift) {  // (shift - x)^n
  return Poly::affine(Var::x, Rat(-1), shift).pow(static_cast<unsigned>(n));
}

}  // namespace

LimitPolys build_limit_polys(int n) {
  if (n < 3) throw std::domain_error("build_limit_polys: n >= 3");
  LimitPolys lp;
  lp.n = n;
  lp.n0 = (n + 1) / 2 - 1;
  const int n0 = lp.n0;
  auto Lc = line_constants(n);

  // Unroll the recursions over the symbolic basis: Z_{-i} as a combination
  // of the markers L_{a+jq}, Y_{-i} as a combination of L_{jq-a-n}.
  lp.r.assign(static_cast<size_t>(n0 + 2), {});
  for (int i = 0; i <= n0 + 1; ++i) {
    std::vector<Rat> coeff(static_cast<size_t>(i + 1), Rat(0));
    coeff[static_cast<size_t>(i)] = 1;
    for (int k = 1; k <= i; ++k) {
      const auto& lower = lp.r[static_cast<size_t>(i - k)];
      for (size_t j = 0; j < lower.size(); ++j) coeff[j] -= Rat(Lc[static_cast<size_t>(k)]) * lower[j];
    }
    lp.r[static_cast<size_t>(i)] = std::move(coeff);
  }

  lp.s.assign(static_cast<size_t>(n), {});
  for (int i = n - 1; i >= n0 + 1; --i) {
    std::vector<Rat> coeff(static_cast<size_t>(n - i), Rat(0));  // index j-1 for marker L_{jq-a-n}
    coeff[static_cast<size_t>(n - i - 1)] = 1;
    for (int k = i + 1; k <= n - 1; ++k) {
      const auto& lower = lp.s[static_cast<size_t>(k)];
      for (size_t j = 0; j < lower.size(); ++j) coeff[j] -= Rat(Lc[static_cast<size_t>(k - i)]) * lower[j];
    }
    lp.s[static_cast<size_t>(i)] = std::move(coeff);
  }

  const Rat lead = make_rat(Int(2), factorial(static_cast<unsigned>(n)));
  lp.Z.assign(static_cast<size_t>(n0 + 2), Poly(Var::x));
  for (int i = 0; i <= n0 + 1; ++i) {
    Poly acc(Var::x);
    for (int j = 0; j <= i; ++j)
      acc += lp.r[static_cast<size_t>(i)][static_cast<size_t>(j)] * shifted_power(n, Rat(j - i));
    lp.Z[static_cast<size_t>(i)] = lead * acc;
  }
  lp.Y.assign(static_cast<size_t>(n), Poly(Var::x));
  for (int i = n0 + 1; i <= n - 1; ++i) {
    Poly acc(Var::x);
    for (int j = 1; j <= n - i; ++j)
      acc += lp.s[static_cast<size_t>(i)][static_cast<size_t>(j - 1)] * shifted_power_neg(n, Rat(i + j));
    lp.Y[static_cast<size_t>(i)] = lead * acc;
  }
  return lp;
}

GenPolys build_gen_polys(const LimitPolys& lp) {
  const int n = lp.n, n0 = lp.n0;
  const long lambda0 = 1L << (n / 2);
  const Rat half = make_rat(Int(1), Int(2 * lambda0));
  GenPolys g;
  g.n = n;
  auto shift_eval = [&](const Poly& f, int i) {  // f(x + i)
    return f.compose(Poly::affine(Var::x, Rat(1), Rat(i)));
  };
  Poly zmid = shift_eval(lp.Z[static_cast<size_t>(n0 + 1)], n0 + 1);
  Poly ymid = shift_eval(lp.Y[static_cast<size_t>(n0 + 1)], n0 + 1);

  if (n % 2 == 1) {
    g.l.assign(static_cast<size_t>(n + 2), Poly(Var::x));
    g.r.assign(static_cast<size_t>(n + 2), Poly(Var::x));
    for (int i = 0; i <= n0; ++i) g.l[static_cast<size_t>(i)] = shift_eval(lp.Z[static_cast<size_t>(i)], i);
    for (int i = n0 + 1; i <= n - 1; ++i) g.l[static_cast<size_t>(i)] = shift_eval(lp.Y[static_cast<size_t>(i)], i);
    g.l[static_cast<size_t>(n + 1)] = half * (zmid - ymid);

    for (int i = 0; i < n0; ++i) g.r[static_cast<size_t>(i)] = shift_eval(lp.Z[static_cast<size_t>(i)], i);
    g.r[static_cast<size_t>(n0)] = shift_eval(lp.Z[static_cast<size_t>(n0)], n0) - (ymid - zmid);
    for (int i = n0 + 1; i <= n - 1; ++i) g.r[static_cast<size_t>(i)] = shift_eval(lp.Y[static_cast<size_t>(i)], i);
    g.r[static_cast<size_t>(n)] = half * (ymid - zmid);
  } else {
    g.m.assign(static_cast<size_t>(n + 3), Poly(Var::x));
    for (int i = 0; i <= n0; ++i) g.m[static_cast<size_t>(i)] = shift_eval(lp.Z[static_cast<size_t>(i)], i);
    for (int i = n0 + 1; i <= n - 1; ++i) g.m[static_cast<size_t>(i)] = shift_eval(lp.Y[static_cast<size_t>(i)], i);
    g.m[static_cast<size_t>(n + 1)] = half * (zmid - ymid);
  }
  return g;
}

GenPolys build_gen_polys(int n) { return build_gen_polys(build_limit_polys(n)); }

Rat density_infty(int n, const Rat& x) {
  if (x < 0) throw std::domain_error("density_infty: x >= 0");
  if (x >= n) return Rat(0);
  static thread_local int cached_n = -1;
  static thread_local LimitPolys lp;
  if (cached_n != n) {
    lp = build_limit_polys(n);
    cached_n = n;
  }
  const int n0 = lp.n0;
  long i = rat_floor(x).get_si();
  if (n % 2 == 1) {
    if (i <= n0) return lp.Z[static_cast<size_t>(i)].eval(x);
    if (i == n0 + 1) {
      Rat mid = Rat(n0 + 1) + make_rat(1, 2);
      return x < mid ? lp.Z[static_cast<size_t>(n0 + 1)].eval(x) : lp.Y[static_cast<size_t>(n0 + 1)].eval(x);
    }
    return lp.Y[static_cast<size_t>(i)].eval(x);
  }
  if (i <= n0 + 1) return lp.Z[static_cast<size_t>(i)].eval(x);
  return lp.Y[static_cast<size_t>(i)].eval(x);
}

Rat integral_f_infty(int n) {
  LimitPolys lp = build_limit_polys(n);
  const int n0 = lp.n0;
  Rat total(0);
  if (n % 2 == 1) {
    for (int i = 0; i <= n0; ++i) total += lp.Z[static_cast<size_t>(i)].definite_integral(Rat(i), Rat(i + 1));
    Rat mid = Rat(n0 + 1) + make_rat(1, 2);
    total += lp.Z[static_cast<size_t>(n0 + 1)].definite_integral(Rat(n0 + 1), mid);
    total += lp.Y[static_cast<size_t>(n0 + 1)].definite_integral(mid, Rat(n0 + 2));
    for (int i = n0 + 2; i <= n - 1; ++i) total += lp.Y[static_cast<size_t>(i)].definite_integral(Rat(i), Rat(i + 1));
  } else {
    for (int i = 0; i <= n0 + 1; ++i) total += lp.Z[static_cast<size_t>(i)].definite_integral(Rat(i), Rat(i + 1));
    for (int i = n0 + 2; i <= n - 1; ++i) total += lp.Y[static_cast<size_t>(i)].definite_integral(Rat(i), Rat(i + 1));
  }
  return total;
}

N3Constants n3_constants(long p) {
  if (p < 5 || !is_prime(p)) throw std::domain_error("n3_constants: p >= 5 prime");
  QuadricContext c = make_context(3, p);
  auto L = [&](long m) { return dim_line(c, m); };
  auto Lt = [&](long m) { return dim_spinor(c, m); };
  const Int L1 = L(1), La2 = L(2);
  const Int w = L1 * L1 - La2;  // L_1^2 - L_2

  N3Constants k;
  k.mu0 = div_exact(L((p - 5) / 2) - L((5 * p - 1) / 2) + L1 * L((3 * p - 1) / 2) - w * L((p - 1) / 2), Int(4));
  k.mu_1 = div_exact(L((5 * p - 5) / 2) - L1 * L((3 * p - 5) / 2) + w * L((p - 5) / 2) - L((p - 1) / 2), Int(4));
  k.mubar0 = div_exact(Lt((p - 3) / 2) - Lt((5 * p - 1) / 2) + L1 * Lt((3 * p - 1) / 2) - w * Lt((p - 1) / 2), Int(4));
  k.mubar_1 = div_exact(Lt((5 * p - 3) / 2) - L1 * Lt((3 * p - 3) / 2) + w * Lt((p - 3) / 2) - Lt((p - 1) / 2), Int(4));
  if (k.mu0 <= 0 || k.mu_1 <= 0 || k.mubar0 <= 0 || k.mubar_1 <= 0)
    throw std::logic_error("n3_constants: expected positive integers");
  return k;
}

Rat density_n3(long p, const Rat& x) {
  if (x < 0) throw std::domain_error("density_n3: x >= 0");
  if (p < 5 || !is_prime(p)) throw std::domain_error("density_n3: p >= 5 prime");
  if (x >= 3) return Rat(0);

  auto cube = [](const Rat& v) -> Rat { return Rat(v * v) * v; };
  const Rat third = make_rat(1, 3);
  Rat z0 = third * cube(x);
  if (x < 1) return z0;
  Rat z1 = z0 - make_rat(5, 3) * cube(x - 1);
  if (x < 2) return z1;
  Rat z2 = z1 + make_rat(11, 3) * cube(x - 2);
  Rat y2 = third * cube(Rat(3) - x);

  const Rat half = make_rat(1, 2);
  const Rat halfp = make_rat(Int(1), Int(2 * p));
  if (x < Rat(2) + half - halfp) return z2;
  if (x >= Rat(2) + half + halfp) return y2;

  N3Constants k = n3_constants(p);
  const Rat y = x - 2;
  const Rat fourthirds = make_rat(4, 3);

  if (y == half) {
    // The single uncovered point: the exact limit of the geometric sums.
    Int p3 = pow_int(Int(p), 3);
    Rat sum = make_rat(k.mu0, 8 * p3) / (Rat(1) - make_rat(k.mubar0, p3));
    return z2 + fourthirds * sum;
  }

  Int pj(p);
  if (y < half) {
    // y in [1/2 - 1/2p^j, 1/2 - 1/2p^{j+1})
    int j = 1;
    while (!(y < half - make_rat(Int(1), 2 * pj * p))) {
      pj *= p;
      ++j;
    }
    Rat sum(0);
    Int pi(1), mubar_pow(1);
    for (int i = 1; i <= j; ++i) {
      pi *= p;
      sum += cube(y - half + make_rat(Int(1), 2 * pi)) * Rat(k.mu0 * mubar_pow);
      mubar_pow *= k.mubar0;
    }
    return z2 + fourthirds * sum;
  }
  // y in [1/2 + 1/2p^{j+1}, 1/2 + 1/2p^j)
  int j = 1;
  while (!(y >= half + make_rat(Int(1), 2 * pj * p))) {
    pj *= p;
    ++j;
  }
  Rat sum(0);
  Int pi(1), mubar_pow(1);
  for (int i = 1; i <= j; ++i) {
    pi *= p;
    sum += cube(half + make_rat(Int(1), 2 * pi) - y) * Rat(k.mu_1 * mubar_pow);
    mubar_pow *= k.mubar_1;
  }
  return y2 + fourthirds * sum;
}

}  // namespace hkq
