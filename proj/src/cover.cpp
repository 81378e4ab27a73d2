#include "hkq/cover.hpp"

#include <stdexcept>

namespace hkq {

namespace {

// Digit j_i carried by the label n_i of the special digit set.
long digit_of_label(const QuadricContext& c, int label) {
  if (label < 0 || label > c.n - 3) throw std::invalid_argument("interval address: digit label out of range");
  if (!c.even) return label + rat_floor(c.m0).get_si();
  return label <= c.n / 2 - 2 ? label : c.p + c.n / 2 - 2 - label;
}

// Inverse map: -1 when d is not a special digit.
int label_of_digit(const QuadricContext& c, long d) {
  if (!c.even) {
    long m0 = rat_floor(c.m0).get_si();
    return (d >= m0 && d <= m0 + c.n - 3) ? static_cast<int>(d - m0) : -1;
  }
  if (d >= 0 && d <= c.n / 2 - 2) return static_cast<int>(d);
  if (d >= c.mtilde0 && d <= c.p - 1) return static_cast<int>(c.p + c.n / 2 - 2 - d);
  return -1;
}

bool in_difficult_range(const QuadricContext& c, const Rat& x) {
  Rat w = make_rat(c.n - 2, 2 * c.p);
  if (!c.even) {
    Rat half(1, 2);
    return x >= half - w && x < half + w;
  }
  return x < w || x >= Rat(1) - w;
}

}  // namespace

std::pair<Rat, Rat> interval_bounds(const QuadricContext& ctx, const IntervalAddress& addr) {
  if (addr.digits.empty()) throw std::invalid_argument("interval address: empty digit tuple");
  const int l = static_cast<int>(addr.digits.size());
  if (ctx.even) {
    if (addr.branch != Branch::M0 && addr.branch != Branch::M1)
      throw std::invalid_argument("interval address: branch/parity mismatch");
    bool m0_branch = addr.digits[0] <= ctx.n / 2 - 2;
    if (m0_branch != (addr.branch == Branch::M0))
      throw std::invalid_argument("interval address: branch inconsistent with first digit");
  } else if (addr.branch != Branch::I && addr.branch != Branch::J) {
    throw std::invalid_argument("interval address: branch/parity mismatch");
  }

  Rat base(0);
  Int pk(1);
  for (int i = 0; i < l; ++i) {
    pk *= ctx.p;
    base += make_rat(Int(digit_of_label(ctx, addr.digits[static_cast<size_t>(i)])), pk);
  }
  Int pl1 = pk * ctx.p;  // p^(l+1)
  if (!ctx.even) {
    Int m0 = rat_floor(ctx.m0);
    if (addr.branch == Branch::I) return {base, base + make_rat(m0, pl1)};
    return {base + make_rat(m0 + ctx.n - 2, pl1), base + make_rat(Int(ctx.p), pl1)};
  }
  Rat off = make_rat(Int(ctx.n - 2), 2 * pl1);
  return {base + off, base + make_rat(Int(1), pk) - off};
}

LocateResult locate(const QuadricContext& ctx, const Rat& x, int max_depth) {
  if (x < 0 || x >= 1) throw std::domain_error("locate: requires 0 <= x < 1");
  LocateResult res;
  if (!in_difficult_range(ctx, x)) {
    res.kind = LocateResult::Easy;
    return res;
  }
  Rat y = x;
  std::vector<int> labels;
  for (int depth = 0; depth < max_depth; ++depth) {
    Rat scaled = Rat(ctx.p) * y;
    long d = rat_floor(scaled).get_si();
    int label = label_of_digit(ctx, d);
    if (label < 0) {
      // Exited the special digit set: y is the rescaled residual.
      if (labels.empty()) throw std::logic_error("locate: difficult point with no special leading digit");
      res.kind = LocateResult::Resolved;
      if (!ctx.even)
        res.addr.branch = d < rat_floor(ctx.m0).get_si() ? Branch::I : Branch::J;
      else
        res.addr.branch = labels[0] <= ctx.n / 2 - 2 ? Branch::M0 : Branch::M1;
      res.addr.digits = std::move(labels);
      res.residual = y;
      return res;
    }
    labels.push_back(label);
    y = scaled - Rat(d);
  }
  res.kind = LocateResult::Unresolved;
  res.addr.digits = std::move(labels);
  return res;
}

Rat uncovered_measure(const QuadricContext& ctx, int k) {
  if (k < 1) throw std::domain_error("uncovered_measure: k >= 1");
  return pow_rat(make_rat(ctx.n - 2, ctx.p), static_cast<unsigned>(k + 1));
}

Rat difficult_range_length(const QuadricContext& ctx) { return make_rat(ctx.n - 2, ctx.p); }

std::vector<IntervalAddress> enumerate_addresses(const QuadricContext& ctx, int l) {
  if (l < 1) throw std::domain_error("enumerate_addresses: depth >= 1");
  const int base = ctx.n - 2;
  if (pow_rat(Rat(base), static_cast<unsigned>(l)) > 4000000)
    throw std::length_error("enumerate_addresses: address family too large");
  std::vector<IntervalAddress> out;
  std::vector<int> digits(static_cast<size_t>(l), 0);
  while (true) {
    if (ctx.even) {
      IntervalAddress a;
      a.digits = digits;
      a.branch = digits[0] <= ctx.n / 2 - 2 ? Branch::M0 : Branch::M1;
      out.push_back(a);
    } else {
      for (Branch b : {Branch::I, Branch::J}) {
        IntervalAddress a;
        a.digits = digits;
        a.branch = b;
        out.push_back(a);
      }
    }
    int pos = l - 1;
    while (pos >= 0 && digits[static_cast<size_t>(pos)] == base - 1) digits[static_cast<size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++digits[static_cast<size_t>(pos)];
  }
  return out;
}

}  // namespace hkq
