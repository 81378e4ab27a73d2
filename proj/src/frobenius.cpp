#include "hkq/frobenius.hpp"

#include <stdexcept>

#include "hkq/detail/s1_assembly.hpp"

namespace hkq {

namespace {

struct IntZY {
  const Pushforward* pf;
  long a;
  bool tilded;
  Int Z(int i) const { return pf->zy(tilded ? ZYKind::Zt : ZYKind::Z, i, a, 1); }
  Int Y(int i) const { return pf->zy(tilded ? ZYKind::Yt : ZYKind::Y, i, a, 1); }
};

}  // namespace

std::vector<Int> Pushforward::zy_table(ZYKind kind, long a, int s) const {
  const int n = ctx_.n, n0 = ctx_.n0;
  const Int q = pow_int(Int(ctx_.p), static_cast<unsigned>(s));
  if (a < 1 - n || !(Int(a) < q)) throw std::domain_error("zy: requires 1-n <= a < q");
  const bool tilded = kind == ZYKind::Zt || kind == ZYKind::Yt;
  auto L = [&](const Int& m) { return dim_line(ctx_, m); };
  auto Lk = [&](const Int& m) { return tilded ? dim_spinor(ctx_, m) : dim_line(ctx_, m); };

  std::vector<Int> v;
  if (kind == ZYKind::Z || kind == ZYKind::Zt) {
    v.resize(n0 + 2);
    v[0] = Lk(a);
    for (int i = 1; i <= n0 + 1; ++i) {
      Int acc = Lk(a + i * q);
      for (int j = 1; j <= i; ++j) acc -= L(j) * v[i - j];
      v[i] = acc;
    }
  } else {
    v.resize(n);
    const long base_shift = tilded ? n - 1 : n;  // L_{(n-i)q-a-n} vs Lt_{(n-i)q-a-n+1}
    v[n - 1] = Lk(q - a - base_shift);
    for (int i = n - 2; i >= n0 + 1; --i) {
      Int acc = Lk((n - i) * q - a - base_shift);
      for (int j = i + 1; j <= n - 1; ++j) acc -= L(j - i) * v[j];
      v[i] = acc;
    }
  }
  return v;
}

Int Pushforward::zy(ZYKind kind, int i, long a, int s) const {
  const int n = ctx_.n, n0 = ctx_.n0;
  const bool is_z = kind == ZYKind::Z || kind == ZYKind::Zt;
  if (is_z ? (i < 0 || i > n0 + 1) : (i < n0 + 1 || i > n - 1))
    throw std::out_of_range("zy: index outside the defining range");
  if (s == 1) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(static_cast<int>(kind), a);
    auto it = zy_cache_.find(key);
    if (it == zy_cache_.end()) it = zy_cache_.emplace(key, zy_table(kind, a, 1)).first;
    return it->second[static_cast<size_t>(i)];
  }
  return zy_table(kind, a, s)[static_cast<size_t>(i)];
}

RankTuple Pushforward::decompose_line_s1(long a) const {
  if (a < 1 - ctx_.n || a >= ctx_.p) throw std::domain_error("decompose_line_s1: requires 1-n <= a < p");
  IntZY zy{this, a, false};
  auto half = [&](const Int& v) { return div_exact(v, Int(2 * ctx_.lambda0)); };
  return detail::assemble_s1_row<Int>(ctx_.n, ctx_.n0, ctx_.even, detail::s1_branch_line(ctx_, a), zy, half, Int(0));
}

RankTuple Pushforward::decompose_spinor_s1(long a) const {
  if (a < 1 - ctx_.n || a >= ctx_.p) throw std::domain_error("decompose_spinor_s1: requires 1-n <= a < p");
  IntZY zy{this, a, true};
  auto half = [&](const Int& v) { return div_exact(v, Int(2 * ctx_.lambda0)); };
  return detail::assemble_s1_row<Int>(ctx_.n, ctx_.n0, ctx_.even, detail::s1_branch_spinor(ctx_, a), zy, half, Int(0));
}

const TransitionMatrix& Pushforward::transition(int digit) const {
  if (digit < 0 || digit >= ctx_.p) throw std::domain_error("transition: digit outside [0, p)");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = transition_cache_.find(digit);
    if (it != transition_cache_.end()) return it->second;
  }

  const int n = ctx_.n, n0 = ctx_.n0, dim = tuple_dim();
  TransitionMatrix t;
  t.digit = digit;
  t.m = Mat<Int>(dim, dim, Int(0));
  const Int line_rank = pow_int(Int(ctx_.p), static_cast<unsigned>(n));
  for (int r = 0; r < dim; ++r) {
    const bool spinor_row = r >= n;
    long twist = spinor_row ? digit - n0 + 1 - (r - n) : digit - r;
    RankTuple row = spinor_row ? decompose_spinor_s1(twist) : decompose_line_s1(twist);
    Int weighted(0);
    for (int c = 0; c < dim; ++c) {
      if (row[c] < 0) throw std::logic_error("transition: negative multiplicity");
      weighted += (c < n ? row[c] : ctx_.lambda0 * row[c]);
      t.m.at(r, c) = row[c];
    }
    if (weighted != (spinor_row ? ctx_.lambda0 * line_rank : line_rank))
      throw std::logic_error("transition: rank sum violated");
  }

  std::lock_guard<std::mutex> lock(mu_);
  return transition_cache_.emplace(digit, std::move(t)).first->second;
}

RankTuple Pushforward::decompose_line(const Int& a, int s) const {
  if (s < 1) throw std::domain_error("decompose_line: s >= 1");
  const Int q = pow_int(Int(ctx_.p), static_cast<unsigned>(s));
  if (a < 0 || a >= q) throw std::domain_error("decompose_line: requires 0 <= a < p^s");
  std::vector<long> digits(static_cast<size_t>(s), 0);
  Int rest = a;
  for (int i = 0; i < s; ++i) {
    Int d = rest % ctx_.p;
    digits[static_cast<size_t>(i)] = d.get_si();
    rest = (rest - d) / ctx_.p;
  }
  RankTuple e = decompose_line_s1(digits[0]);
  for (int i = 1; i < s; ++i) e = transition(static_cast<int>(digits[static_cast<size_t>(i)])).m.row_times(e);
  return e;
}

Int Pushforward::graded_length(const Int& a, int s) const {
  if (a < 0) throw std::domain_error("graded_length: a >= 0");
  const int n = ctx_.n, n0 = ctx_.n0;
  const Int q = pow_int(Int(ctx_.p), static_cast<unsigned>(s));
  Int i_big;
  mpz_fdiv_q(i_big.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  if (i_big >= n) return Int(0);
  const int i = static_cast<int>(i_big.get_si());
  RankTuple tup = decompose_line(a - i * q, s);
  Int len = tup[static_cast<size_t>(i)];
  int mu_col = -1;
  if (i == n0) mu_col = n;
  else if (i == n0 + 1) mu_col = n + 1;
  else if (ctx_.even && i == n0 + 2) mu_col = n + 2;
  if (mu_col >= 0) len += 2 * ctx_.lambda0 * tup[static_cast<size_t>(mu_col)];
  return len;
}

Rat Pushforward::fs_value(const Rat& x, int s) const {
  if (x < 0) throw std::domain_error("fs_value: x >= 0");
  const Int q = pow_int(Int(ctx_.p), static_cast<unsigned>(s));
  Int a = rat_floor(Rat(q) * x);
  Int qn = pow_int(Int(ctx_.p), static_cast<unsigned>(s * ctx_.n));
  return make_rat(graded_length(a, s), qn);
}

}  // namespace hkq
