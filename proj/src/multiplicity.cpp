#include "hkq/multiplicity.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "hkq/detail/s1_assembly.hpp"
#include "hkq/sectan.hpp"

namespace hkq {

namespace {

struct Affine {
  Rat slope, offset;
  Poly poly() const { return Poly::affine(Var::p, slope, offset); }
};

// u <= v for all sufficiently large p.
bool eventually_le(const Affine& u, const Affine& v) {
  if (u.slope != v.slope) return u.slope < v.slope;
  return u.offset <= v.offset;
}

detail::S1Branch sym_branch(int n, bool even, const Affine& a) {
  if (!even) {
    // m0 - 1 = p/2 - (n-2)/2 - 1
    Affine m0m1{make_rat(1, 2), make_rat(-(n - 2), 2) - 1};
    return eventually_le(a, m0m1) ? detail::S1Branch::OddLow : detail::S1Branch::OddHigh;
  }
  Affine minus_half_n{Rat(0), make_rat(-n, 2)};
  if (eventually_le(a, minus_half_n)) return detail::S1Branch::EvenLow;
  Affine mt0m1{Rat(1), make_rat(-(n - 2), 2) - 1};
  return eventually_le(a, mt0m1) ? detail::S1Branch::EvenMid : detail::S1Branch::EvenHigh;
}

// Z/Y tables over Q[p] at an affine twist, mirroring the integer recursion.
struct SymZY {
  std::vector<Poly> z, y;
  const Poly& Z(int i) const { return z[static_cast<size_t>(i)]; }
  const Poly& Y(int i) const { return y[static_cast<size_t>(i)]; }
};

SymZY sym_zy_tables(int n, int n0, const Affine& a, bool tilded, const std::vector<Int>& Lc) {
  const Poly K = (tilded ? dim_spinor_poly(n, Var::x) : dim_line_poly(n, Var::x));
  const Poly q = Poly::identity(Var::p);
  const Poly ap = a.poly();
  auto Kat = [&](const Poly& arg) { return K.compose(arg); };

  SymZY t;
  t.z.assign(static_cast<size_t>(n0 + 2), Poly(Var::p));
  for (int i = 0; i <= n0 + 1; ++i) {
    Poly acc = Kat(ap + Rat(i) * q);
    for (int j = 1; j <= i; ++j) acc -= Rat(Lc[static_cast<size_t>(j)]) * t.z[static_cast<size_t>(i - j)];
    t.z[static_cast<size_t>(i)] = acc;
  }
  t.y.assign(static_cast<size_t>(n), Poly(Var::p));
  const Rat shift = tilded ? Rat(n - 1) : Rat(n);
  for (int i = n - 1; i >= n0 + 1; --i) {
    Poly acc = Kat(Rat(n - i) * q - ap - Poly::constant(Var::p, shift));
    for (int j = i + 1; j <= n - 1; ++j) acc -= Rat(Lc[static_cast<size_t>(j - i)]) * t.y[static_cast<size_t>(j)];
    t.y[static_cast<size_t>(i)] = acc;
  }
  return t;
}

std::vector<Int> line_constants_for(int n) {
  Poly L = dim_line_poly(n, Var::x);
  std::vector<Int> c(static_cast<size_t>(n), Int(0));
  for (int k = 1; k <= n - 1; ++k) c[static_cast<size_t>(k)] = L.eval(Rat(k)).get_num();
  return c;
}

// b(p) = sum c_m p^m (degree <= n) reindexed to H(t) = sum c_m t^{n-m}.
Poly reindex_to_t(const Poly& b, int n) {
  if (b.degree() > n) throw std::logic_error("symbolic transition: entry degree exceeds n");
  std::vector<Rat> coeffs(static_cast<size_t>(n + 1), Rat(0));
  for (int m = 0; m <= b.degree(); ++m) coeffs[static_cast<size_t>(n - m)] = b.coeff(m);
  return Poly(Var::t, std::move(coeffs));
}

struct EhkParts {
  RatMat big;            // B(1/p) or C(1/p)
  RatMat tail_factor_a;  // even: C - C1 at 1/p
  RatMat tail_factor_b;  // even: C1 at 1/p
  std::vector<Rat> seedF, seedG;  // odd: F and G rows; even: seedF = Ft
  PolyMat big_t;         // B(t) / C(t)
  PolyMat part_a_t;      // even: C(t)-C1(t)
  PolyMat part_b_t;      // even: C1(t)
  std::vector<Poly> seedF_t, seedG_t;
};

Poly t_times(const Poly& h) { return Poly::identity(Var::t) * h; }

EhkParts ehk_parts(const QuadricContext& ctx) {
  const SymbolicFamily& fam = symbolic_family(ctx.n);
  const int dim = ctx.n + (ctx.even ? 3 : 2);
  const Rat tp = make_rat(1, ctx.p);

  EhkParts parts;
  parts.big_t = PolyMat(dim, dim, Poly(Var::t));
  parts.part_a_t = PolyMat(dim, dim, Poly(Var::t));
  parts.part_b_t = PolyMat(dim, dim, Poly(Var::t));
  for (const auto& st : fam.H) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Poly th = t_times(st.H.at(i, j));
        parts.big_t.at(i, j) += th;
        if (ctx.even) {
          if (st.index <= ctx.n / 2 - 2)
            parts.part_b_t.at(i, j) += th;
          else
            parts.part_a_t.at(i, j) += th;
        }
      }
  }
  parts.big = eval_mat(parts.big_t, tp);
  if (ctx.even) {
    parts.tail_factor_a = eval_mat(parts.part_a_t, tp);
    parts.tail_factor_b = eval_mat(parts.part_b_t, tp);
  }

  parts.seedF_t.assign(static_cast<size_t>(dim), Poly(Var::t));
  parts.seedG_t.assign(static_cast<size_t>(dim), Poly(Var::t));
  for (int i = 0; i < dim; ++i) {
    parts.seedF_t[static_cast<size_t>(i)] =
        !ctx.even ? fam.integrals.F[static_cast<size_t>(i)] : fam.integrals.Ft[static_cast<size_t>(i)];
    if (!ctx.even) parts.seedG_t[static_cast<size_t>(i)] = fam.integrals.G[static_cast<size_t>(i)];
  }
  parts.seedF.assign(static_cast<size_t>(dim), Rat(0));
  parts.seedG.assign(static_cast<size_t>(dim), Rat(0));
  for (int i = 0; i < dim; ++i) {
    parts.seedF[static_cast<size_t>(i)] = parts.seedF_t[static_cast<size_t>(i)].eval(tp);
    parts.seedG[static_cast<size_t>(i)] = parts.seedG_t[static_cast<size_t>(i)].eval(tp);
  }
  return parts;
}

Rat one_plus_m(const QuadricContext& ctx) {
  return Rat(1) + sectan_coeffs(ctx.n + 1).m[static_cast<size_t>(ctx.n + 1)];
}

Rat max_row_sum(const RatMat& m) {
  Rat best(0);
  for (int i = 0; i < m.rows(); ++i) {
    Rat s(0);
    for (int j = 0; j < m.cols(); ++j) s += abs(m.at(i, j));
    if (s > best) best = s;
  }
  return best;
}

Rat l1_norm(const std::vector<Rat>& v) {
  Rat s(0);
  for (const auto& e : v) s += abs(e);
  return s;
}

}  // namespace

std::vector<SymbolicTransition> build_symbolic_transitions(int n) {
  if (n < 3) throw std::domain_error("build_symbolic_transitions: n >= 3");
  const bool even = n % 2 == 0;
  const int n0 = (n + 1) / 2 - 1;
  const long lambda0 = 1L << (n / 2);
  const Rat inv2lam = make_rat(Int(1), Int(2 * lambda0));
  const int dim = n + (even ? 3 : 2);
  auto Lc = line_constants_for(n);

  std::vector<SymbolicTransition> out;
  for (int label = 0; label <= n - 3; ++label) {
    // Digit carried by this label, as an affine function of p.
    Affine j = even ? (label <= n / 2 - 2 ? Affine{Rat(0), Rat(label)}
                                          : Affine{Rat(1), make_rat(n, 2) - 2 - label})
                    : Affine{make_rat(1, 2), Rat(label) - make_rat(n - 2, 2)};
    SymbolicTransition st;
    st.index = label;
    st.H = PolyMat(dim, dim, Poly(Var::t));
    for (int r = 0; r < dim; ++r) {
      const bool spinor_row = r >= n;
      Affine twist{j.slope, j.offset - Rat(spinor_row ? n0 - 1 + (r - n) : r)};
      SymZY zy = sym_zy_tables(n, n0, twist, spinor_row, Lc);
      auto half = [&](const Poly& v) { return inv2lam * v; };
      auto row = detail::assemble_s1_row<Poly>(n, n0, even, sym_branch(n, even, twist),
                                               zy, half, Poly(Var::p));
      for (int c = 0; c < dim; ++c) st.H.at(r, c) = reindex_to_t(row[static_cast<size_t>(c)], n);
    }
    out.push_back(std::move(st));
  }
  return out;
}

IntegralPolys build_integrals(int n) {
  const GenPolys g = build_gen_polys(n);
  IntegralPolys out;
  out.n = n;
  const Poly t = Poly::identity(Var::t);
  const Rat w = make_rat(n - 2, 2);
  const Poly upper = Poly::affine(Var::t, -w, make_rat(1, 2));  // 1/2 - (n-2)t/2
  const Poly lower = Poly::affine(Var::t, w, make_rat(1, 2));   // 1/2 + (n-2)t/2

  if (n % 2 == 1) {
    for (const Poly& li : g.l) {
      Poly P = li.integral();
      out.F.push_back(P.compose(upper) - Poly::constant(Var::t, P.eval(Rat(0))));
    }
    for (const Poly& ri : g.r) {
      Poly P = ri.integral();
      out.G.push_back(Poly::constant(Var::t, P.eval(Rat(1))) - P.compose(lower));
    }
  } else {
    const Poly lo_e = Poly::affine(Var::t, w, Rat(0));            // (n-2)t/2
    const Poly hi_e = Poly::affine(Var::t, -w, Rat(1));           // 1 - (n-2)t/2
    for (const Poly& mi : g.m) {
      Poly P = mi.integral();
      out.Ft.push_back(P.compose(hi_e) - P.compose(lo_e));
    }
  }
  return out;
}

const SymbolicFamily& symbolic_family(int n) {
  static std::mutex mu;
  static std::map<int, SymbolicFamily> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    SymbolicFamily fam;
    fam.n = n;
    fam.limit = build_limit_polys(n);
    fam.gen = build_gen_polys(fam.limit);
    fam.H = build_symbolic_transitions(n);
    fam.integrals = build_integrals(n);
    it = cache.emplace(n, std::move(fam)).first;
  }
  return it->second;
}

EhkResult ehk_closed(const QuadricContext& ctx) {
  if (!ctx.tier_product())
    throw std::domain_error("ehk_closed: requires p >= 3n-4 (odd n) or p >= (3n-4)/2 (even n)");
  const int dim = ctx.n + (ctx.even ? 3 : 2);
  const Rat tp = make_rat(1, ctx.p);
  const Rat two_lam = Rat(2 * ctx.lambda0);
  EhkParts parts = ehk_parts(ctx);

  const Poly one_t = Poly::constant(Var::t, Rat(1));
  PolyMat eye = PolyMat::identity(dim, Poly(Var::t), one_t);
  auto cof = cofactor_inverse(eye - parts.big_t, Var::t);
  Rat den_at = cof.determinant.eval(tp);
  if (den_at == 0) throw std::logic_error("ehk_closed: det(I - B(1/p)) vanished");

  // Correction = integral of the pure-characteristic-p part of the density:
  // the left family extracts the mu_{-n0+1} component, the right family the
  // mu_{-n0} (odd) resp. mu_{-n0-1} (even) component, scaled back to length
  // units by 2*lambda0.
  Poly num(Var::t);
  if (!ctx.even) {
    auto vF = cof.adjugate.row_times(parts.big_t.row_times(parts.seedF_t));
    auto vG = cof.adjugate.row_times(parts.big_t.row_times(parts.seedG_t));
    num = two_lam * (vF[static_cast<size_t>(ctx.n)] + vG[static_cast<size_t>(ctx.n + 1)]);
  } else {
    auto w = cof.adjugate.row_times(parts.seedF_t);
    auto va = parts.part_a_t.row_times(w);
    auto vb = parts.part_b_t.row_times(w);
    num = two_lam * (va[static_cast<size_t>(ctx.n)] + vb[static_cast<size_t>(ctx.n + 2)]);
  }

  EhkResult res;
  res.method = EhkResult::Method::closed;
  res.num = num;
  res.den = cof.determinant;
  res.value = one_plus_m(ctx) + num.eval(tp) / den_at;

  // Cross-check through plain rational linear algebra at t = 1/p.
  auto rcof = cofactor_inverse(RatMat::identity(dim, Rat(0), Rat(1)) - parts.big);
  Rat corr;
  if (!ctx.even) {
    auto vF = rcof.adjugate.row_times(parts.big.row_times(parts.seedF));
    auto vG = rcof.adjugate.row_times(parts.big.row_times(parts.seedG));
    corr = two_lam * (vF[static_cast<size_t>(ctx.n)] + vG[static_cast<size_t>(ctx.n + 1)]) / rcof.determinant;
  } else {
    auto w = rcof.adjugate.row_times(parts.seedF);
    auto va = parts.tail_factor_a.row_times(w);
    auto vb = parts.tail_factor_b.row_times(w);
    corr = two_lam * (va[static_cast<size_t>(ctx.n)] + vb[static_cast<size_t>(ctx.n + 2)]) / rcof.determinant;
  }
  if (one_plus_m(ctx) + corr != res.value)
    throw std::logic_error("ehk_closed: symbolic and rational paths disagree");
  return res;
}

EhkResult ehk_series(const QuadricContext& ctx, int depth) {
  if (!ctx.tier_product())
    throw std::domain_error("ehk_series: requires p >= 3n-4 (odd n) or p >= (3n-4)/2 (even n)");
  if (depth < 0) throw std::domain_error("ehk_series: depth >= 0");
  EhkParts parts = ehk_parts(ctx);
  const Rat rho_formula = make_rat(ctx.lambda0 * (ctx.n - 2), ctx.p);
  const Rat two_lam = Rat(2 * ctx.lambda0);

  Rat partial(0);
  std::vector<Rat> wF = parts.seedF, wG = parts.seedG;
  auto term = [&]() -> Rat {
    if (!ctx.even)
      return Rat(wF[static_cast<size_t>(ctx.n)] + wG[static_cast<size_t>(ctx.n + 1)]);
    Rat a = parts.tail_factor_a.row_times(wF)[static_cast<size_t>(ctx.n)];
    Rat b = parts.tail_factor_b.row_times(wF)[static_cast<size_t>(ctx.n + 2)];
    return Rat(a + b);
  };

  if (ctx.even) partial += term();  // l = 0 contributes for even n
  for (int l = 1; l <= depth; ++l) {
    wF = parts.big.row_times(wF);
    if (!ctx.even) wG = parts.big.row_times(wG);
    partial += term();
  }

  Rat seed_norm = l1_norm(parts.seedF) + l1_norm(parts.seedG);
  Rat tail;
  if (rho_formula < 1) {
    tail = two_lam * seed_norm * pow_rat(rho_formula, static_cast<unsigned>(depth + 1)) /
           (Rat(1) - rho_formula);
  } else {
    // The one-step norm bound is useless here; certify the tail with a
    // block norm: find m with ||B^m|| < 1 in the max-row-sum norm.
    RatMat power = parts.big;
    int m = 1;
    Rat sigma = max_row_sum(power);
    while (sigma >= 1 && m < 16) {
      power = power * parts.big;
      ++m;
      sigma = max_row_sum(power);
    }
    if (sigma >= 1) throw std::domain_error("ehk_series: no contracting power found; tail bound unavailable");
    Rat kappa = two_lam;
    if (ctx.even) kappa *= max_row_sum(parts.tail_factor_a) + max_row_sum(parts.tail_factor_b);
    Rat sum_norms(0);
    std::vector<Rat> tF = wF, tG = wG;
    for (int r = 1; r <= m; ++r) {
      tF = parts.big.row_times(tF);
      sum_norms += l1_norm(tF);
      if (!ctx.even) {
        tG = parts.big.row_times(tG);
        sum_norms += l1_norm(tG);
      }
    }
    tail = kappa * sum_norms / (Rat(1) - sigma);
  }

  EhkResult res;
  res.method = EhkResult::Method::series;
  res.tail_bound = tail;
  res.value = one_plus_m(ctx) + two_lam * partial;
  return res;
}

std::vector<Rat> interval_integral(const QuadricContext& ctx, const IntervalAddress& addr) {
  interval_bounds(ctx, addr);  // validates the address
  const SymbolicFamily& fam = symbolic_family(ctx.n);
  const int dim = ctx.n + (ctx.even ? 3 : 2);
  const Rat tp = make_rat(1, ctx.p);

  std::vector<Rat> row(static_cast<size_t>(dim), Rat(0));
  for (int i = 0; i < dim; ++i) {
    const Poly& seed = !ctx.even ? (addr.branch == Branch::I ? fam.integrals.F[static_cast<size_t>(i)]
                                                             : fam.integrals.G[static_cast<size_t>(i)])
                                 : fam.integrals.Ft[static_cast<size_t>(i)];
    row[static_cast<size_t>(i)] = seed.eval(tp);
  }
  // Multiply by t*H^(n_l), ..., t*H^(n_1): deepest digit first.
  for (auto it = addr.digits.rbegin(); it != addr.digits.rend(); ++it) {
    const RatMat h = eval_mat(fam.H[static_cast<size_t>(*it)].H, tp);
    row = h.row_times(row);
    for (auto& e : row) e *= tp;
  }
  // Convert the spinor components to the 2*lambda0-weighted rank functions.
  for (int i = ctx.n; i < dim; ++i) row[static_cast<size_t>(i)] *= Rat(2 * ctx.lambda0);
  return row;
}

Rat epsilon_H(const Poly& h) {
  if (h.is_zero()) return Rat(1);
  int i = 0;
  while (h.coeff(i) == 0) ++i;
  Rat b0 = h.coeff(i);
  if (b0 < 0) throw std::domain_error("epsilon_H: leading deflated coefficient must be positive");
  Rat denom(0);
  for (int j = 1; i + j <= h.degree(); ++j) denom += Rat(j + 1) * abs(h.coeff(i + j));
  if (denom == 0) return Rat(1);
  Rat eps = b0 / denom;
  return eps < 1 ? eps : Rat(1);
}

Rat epsilon_bound(int n) {
  const SymbolicFamily& fam = symbolic_family(n);
  Rat eps(1);
  auto fold = [&](const Poly& h) {
    Rat e = epsilon_H(h);
    if (e < eps) eps = e;
  };
  for (const auto& st : fam.H)
    for (const auto& entry : st.H.entries()) fold(entry);
  if (n % 2 == 1) {
    for (const auto& f : fam.integrals.F) fold(f);
    for (const auto& g : fam.integrals.G) fold(g);
  } else {
    for (const auto& f : fam.integrals.Ft) fold(f);
  }
  return eps;
}

ScanTable monotonicity_scan(int n, const std::vector<long>& primes) {
  ScanTable table;
  table.epsilon = epsilon_bound(n);
  table.p_threshold = Rat(1) / table.epsilon;
  long prev = 0;
  for (long p : primes) {
    if (p <= prev) throw std::invalid_argument("monotonicity_scan: primes must be ascending");
    prev = p;
    QuadricContext ctx = make_context(n, p);
    ScanRow row;
    row.p = p;
    row.ehk = ehk_closed(ctx).value;
    row.decreased = !table.rows.empty() && row.ehk < table.rows.back().ehk;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace hkq
