#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hkq/multiplicity.hpp"
#include "hkq/sectan.hpp"
#include "hkq/density_polys.hpp"

using namespace hkq;

namespace {

std::vector<long> admissible_primes(int n, int count) {
  std::vector<long> out;
  long p = 3;
  while (static_cast<int>(out.size()) < count) {
    bool ok = is_prime(p) && p > n - 2 &&
              (n % 2 ? p >= 3L * n - 4 : 2 * p >= 3L * n - 4);
    if (ok) out.push_back(p);
    ++p;
  }
  return out;
}

long digit_of(const QuadricContext& c, int label) {
  if (!c.even) return label + rat_floor(c.m0).get_si();
  return label <= c.n / 2 - 2 ? label : c.p + c.n / 2 - 2 - label;
}

// Exact e_HK for n = 3 by integrating the explicit density: the geometric
// sums collapse to mu/(48(p^4 - mubar)) per side.
Rat ehk_n3_exact(long p) {
  auto k = n3_constants(p);
  Int p4 = pow_int(Int(p), 4);
  return make_rat(29, 24) + make_rat(k.mu0, Int(48) * (p4 - k.mubar0)) +
         make_rat(k.mu_1, Int(48) * (p4 - k.mubar_1));
}

}  // namespace

TEST_CASE("symbolic transitions reproduce the integer matrices") {
  for (int n : {3, 4, 5}) {
    auto fam = build_symbolic_transitions(n);
    for (long p : admissible_primes(n, 4)) {
      auto ctx = make_context(n, p);
      Pushforward pf(ctx);
      Int pn = pow_int(Int(p), static_cast<unsigned>(n));
      for (const auto& st : fam) {
        const auto& integral = pf.transition(static_cast<int>(digit_of(ctx, st.index))).m;
        for (int i = 0; i < st.H.rows(); ++i)
          for (int j = 0; j < st.H.cols(); ++j) {
            CHECK(Rat(pn) * st.H.at(i, j).eval(make_rat(1, p)) == Rat(integral.at(i, j)));
            CHECK(st.H.at(i, j).degree() <= n);
          }
      }
    }
  }
}

TEST_CASE("H entries nonnegative at admissible primes, bounded row sums") {
  for (int n : {3, 4, 5}) {
    long lam = 1L << (n / 2);
    for (long p : admissible_primes(n, 3)) {
      Rat tp = make_rat(1, p);
      for (const auto& st : symbolic_family(n).H) {
        for (int i = 0; i < st.H.rows(); ++i) {
          Rat row_sum(0);
          for (int j = 0; j < st.H.cols(); ++j) {
            Rat v = st.H.at(i, j).eval(tp);
            CHECK(v >= 0);
            row_sum += v;
          }
          CHECK(row_sum <= lam);
        }
      }
    }
  }
}

TEST_CASE("odd-n zero pattern: mu_{-n0} column vanishes when n_i >= k1") {
  for (int n : {3, 5}) {
    for (const auto& st : symbolic_family(n).H) {
      for (int k1 = 0; k1 < n; ++k1) {
        if (st.index >= k1) CHECK(st.H.at(k1, n + 1).is_zero());
        else CHECK(st.H.at(k1, n).is_zero());
      }
    }
  }
}

TEST_CASE("integral polynomials: stated closed forms") {
  for (int n : {3, 5}) {
    auto ip = build_integrals(n);
    // F_{n-1}(t) = int_0^{1/2-(n-2)t/2} 2(1-x)^n/n! dx
    Poly kernel = make_rat(Int(2), factorial(static_cast<unsigned>(n))) *
                  Poly::affine(Var::x, Rat(-1), Rat(1)).pow(static_cast<unsigned>(n));
    Poly P = kernel.integral();
    Poly upper = Poly::affine(Var::t, make_rat(-(n - 2), 2), make_rat(1, 2));
    CHECK(ip.F[static_cast<size_t>(n - 1)] ==
          P.compose(upper) - Poly::constant(Var::t, P.eval(Rat(0))));
    CHECK(ip.F[static_cast<size_t>(n)].is_zero());   // l_n = 0
    CHECK(ip.G[static_cast<size_t>(n + 1)].is_zero());
  }
  for (int n : {4, 6}) {
    auto ip = build_integrals(n);
    // Ft_0(t) = (2/(n+1)!)[(1-(n-2)t/2)^{n+1} - ((n-2)t/2)^{n+1}]
    Rat lead = make_rat(Int(2), factorial(static_cast<unsigned>(n + 1)));
    Poly hi = Poly::affine(Var::t, make_rat(-(n - 2), 2), Rat(1)).pow(static_cast<unsigned>(n + 1));
    Poly lo = Poly::affine(Var::t, make_rat(n - 2, 2), Rat(0)).pow(static_cast<unsigned>(n + 1));
    CHECK(ip.Ft[0] == lead * (hi - lo));
    CHECK(ip.Ft[static_cast<size_t>(n)].is_zero());
    CHECK(ip.Ft[static_cast<size_t>(n + 2)].is_zero());
  }
}

TEST_CASE("integral polynomials nonnegative at admissible primes") {
  for (int n : {3, 4, 5}) {
    auto& fam = symbolic_family(n);
    for (long p : admissible_primes(n, 3)) {
      Rat tp = make_rat(1, p);
      if (n % 2) {
        for (const auto& f : fam.integrals.F) CHECK(f.eval(tp) >= 0);
        for (const auto& g : fam.integrals.G) CHECK(g.eval(tp) >= 0);
      } else {
        for (const auto& f : fam.integrals.Ft) CHECK(f.eval(tp) >= 0);
      }
    }
  }
}

TEST_CASE("ehk_closed equals the exact n=3 density integral") {
  for (long p : {5L, 7L, 11L, 13L}) {
    auto ctx = make_context(3, p);
    CHECK(ehk_closed(ctx).value == ehk_n3_exact(p));
  }
}

TEST_CASE("ehk bracketing and strictness") {
  for (int n : {3, 4, 5}) {
    Rat ref = Rat(1) + sectan_coeffs(n + 1).m[static_cast<size_t>(n + 1)];
    for (long p : admissible_primes(n, 3)) {
      auto ctx = make_context(n, p);
      Rat v = ehk_closed(ctx).value;
      CHECK(v > ref);
      CHECK(v <= ref + make_rat(2 * n - 4, p));
    }
  }
}

TEST_CASE("ehk series: base case and agreement with the closed form") {
  auto c35 = make_context(3, 5);
  Rat ref = Rat(1) + make_rat(5, 24);
  auto s0 = ehk_series(c35, 0);
  CHECK(s0.value == ref);  // empty sum for odd n
  Rat closed = ehk_closed(c35).value;
  CHECK(s0.tail_bound >= closed - ref);

  for (auto [n, p] : std::vector<std::pair<int, long>>{{3, 5}, {3, 7}, {4, 11}, {4, 7}}) {
    auto ctx = make_context(n, p);
    auto cl = ehk_closed(ctx);
    auto se = ehk_series(ctx, 40);
    Rat diff = cl.value - se.value;
    if (diff < 0) diff = -diff;
    CHECK(diff <= se.tail_bound);
    CHECK(diff <= make_rat(Int(1), pow_int(Int(10), 12)));
  }
  // tail bound strictly decreasing in the depth
  Rat prev = ehk_series(c35, 1).tail_bound;
  for (int L : {2, 3, 5, 8}) {
    Rat cur = ehk_series(c35, L).tail_bound;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("ehk degree sanity") {
  for (auto [n, p] : std::vector<std::pair<int, long>>{{3, 5}, {4, 11}}) {
    auto r = ehk_closed(make_context(n, p));
    Int cap = pow_int(Int(n + 1), static_cast<unsigned>(n + 3));
    CHECK(Int(r.num.degree()) <= cap);
    CHECK(Int(r.den.degree()) <= cap);
    CHECK(r.den.eval(make_rat(1, p)) != 0);
  }
}

TEST_CASE("interval integrals: nonnegativity and series consistency") {
  for (auto [n, p] : std::vector<std::pair<int, long>>{{3, 5}, {5, 11}, {4, 7}}) {
    auto ctx = make_context(n, p);
    Rat ref = Rat(1) + sectan_coeffs(n + 1).m[static_cast<size_t>(n + 1)];
    Rat acc(0);
    for (int l = 1; l <= 3; ++l) {
      for (const auto& addr : enumerate_addresses(ctx, l)) {
        auto v = interval_integral(ctx, addr);
        for (const auto& e : v) CHECK(e >= 0);
        if (!ctx.even)
          acc += addr.branch == Branch::I ? v[static_cast<size_t>(n)]
                                          : v[static_cast<size_t>(n + 1)];
        else
          acc += addr.branch == Branch::M1 ? v[static_cast<size_t>(n)]
                                           : v[static_cast<size_t>(n + 2)];
      }
      // partial sums of the series reproduce the covered-interval integrals
      int depth = ctx.even ? l - 1 : l;
      CHECK(ehk_series(ctx, depth).value - ref == acc);
    }
  }
}

TEST_CASE("depth-1 mu integral strictly decreasing in p") {
  for (int n : {3, 4}) {
    int label = n % 2 ? 0 : n - 3;  // a label of the upper block
    Rat prev(-1);
    bool first = true;
    for (long p : admissible_primes(n, 5)) {
      auto ctx = make_context(n, p);
      IntervalAddress addr{n % 2 ? Branch::I : Branch::M1, {label}};
      auto v = interval_integral(ctx, addr);
      Rat mu = v[static_cast<size_t>(n)];
      if (!first) CHECK(mu < prev);
      prev = mu;
      first = false;
    }
  }
}

TEST_CASE("epsilon_H formula cases") {
  CHECK(epsilon_H(Poly(Var::t)) == 1);                              // zero polynomial
  CHECK(epsilon_H(Poly::constant(Var::t, Rat(3))) == 1);            // constant
  Poly t = Poly::identity(Var::t);
  CHECK(epsilon_H(t - t * t) == make_rat(1, 2));                    // t(1 - t)
  CHECK(epsilon_H(Poly(Var::t, {Rat(2), Rat(-1), Rat(1)})) == make_rat(2, 5));
  CHECK(epsilon_H(Poly(Var::t, {Rat(1), Rat(-4)})) == make_rat(1, 8));
  CHECK_THROWS_AS(epsilon_H(Poly(Var::t, {Rat(-1), Rat(1)})), std::domain_error);
}

TEST_CASE("monotonicity scan") {
  auto table = monotonicity_scan(3, {5, 7, 11, 13, 17, 19});
  CHECK(table.epsilon > 0);
  for (size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].decreased);
    CHECK(table.rows[i].ehk < table.rows[i - 1].ehk);
  }
  Rat ref = Rat(1) + make_rat(5, 24);
  for (const auto& row : table.rows) {
    CHECK(row.ehk > ref);
    CHECK(row.ehk <= ref + make_rat(2, row.p));
  }
  CHECK_THROWS_AS(monotonicity_scan(3, {7, 5}), std::invalid_argument);
}
