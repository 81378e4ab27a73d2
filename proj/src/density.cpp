#include "hkq/density.hpp"

#include <sstream>
#include <stdexcept>

namespace hkq {

namespace {

long digit_of_label_odd(const QuadricContext& c, int label) {
  return label + rat_floor(c.m0).get_si();
}
long digit_of_label_even(const QuadricContext& c, int label) {
  return label <= c.n / 2 - 2 ? label : c.p + c.n / 2 - 2 - label;
}

}  // namespace

PiecewiseDensity::PiecewiseDensity(QuadricContext ctx)
    : ctx_(std::move(ctx)), fam_(&symbolic_family(ctx_.n)) {
  const Rat tp = make_rat(1, ctx_.p);
  for (const auto& st : fam_->H) h_at_p_.push_back(eval_mat(st.H, tp));
  half_width_ = make_rat(ctx_.n - 2, 2 * ctx_.p);
}

Rat PiecewiseDensity::mu_correction(const LocateResult& loc) const {
  if (loc.kind != LocateResult::Resolved)
    throw std::logic_error("mu_correction: needs a resolved point");
  const int n = ctx_.n;
  const int dim = n + (ctx_.even ? 3 : 2);
  std::vector<Rat> row(static_cast<size_t>(dim), Rat(0));
  for (int i = 0; i < dim; ++i) {
    const Poly& gen = !ctx_.even
                          ? (loc.addr.branch == Branch::I ? fam_->gen.l[static_cast<size_t>(i)]
                                                          : fam_->gen.r[static_cast<size_t>(i)])
                          : fam_->gen.m[static_cast<size_t>(i)];
    row[static_cast<size_t>(i)] = gen.eval(loc.residual);
  }
  for (auto it = loc.addr.digits.rbegin(); it != loc.addr.digits.rend(); ++it)
    row = h_at_p_[static_cast<size_t>(*it)].row_times(row);
  // The product yields raw multiplicity densities; the length contribution
  // of a spinor component carries the factor 2*lambda0.
  int entry = !ctx_.even ? n + 1 : (loc.addr.branch == Branch::M1 ? n : n + 2);
  return Rat(2 * ctx_.lambda0) * row[static_cast<size_t>(entry)];
}

DensityValue PiecewiseDensity::eval(const Rat& x, int max_depth) const {
  if (x < 0) throw std::domain_error("density: x >= 0");
  if (max_depth < 1) throw std::domain_error("density: max_depth >= 1");
  const int n = ctx_.n, n0 = ctx_.n0;
  if (x >= n) return {Rat(0), true, {}};
  const long i = rat_floor(x).get_si();
  const Rat y = x - Rat(i);
  auto Z = [&](int k) { return fam_->limit.Z[static_cast<size_t>(k)].eval(x); };
  auto Y = [&](int k) { return fam_->limit.Y[static_cast<size_t>(k)].eval(x); };

  // Builds the nearest covered point sharing the first L special digits,
  // together with its already-resolved address.
  auto approximate = [&](const LocateResult& failed, const char* side_note) -> DensityValue {
    LocateResult loc;
    loc.kind = LocateResult::Resolved;
    loc.addr.digits = failed.addr.digits;
    Rat frac(0);
    Int pk(1);
    for (int d : loc.addr.digits) {
      pk *= ctx_.p;
      long digit = ctx_.even ? digit_of_label_even(ctx_, d) : digit_of_label_odd(ctx_, d);
      frac += make_rat(Int(digit), pk);
    }
    if (!ctx_.even) {
      loc.addr.branch = Branch::I;
      loc.residual = Rat(0);
    } else {
      loc.addr.branch = loc.addr.digits[0] <= ctx_.n / 2 - 2 ? Branch::M0 : Branch::M1;
      frac += make_rat(Int(ctx_.n - 2), 2 * pk * ctx_.p);
      loc.residual = half_width_;
    }
    Rat xprime = Rat(i) + frac;
    Rat base;
    if (!ctx_.even) {
      base = fam_->limit.Y[static_cast<size_t>(n0 + 1)].eval(xprime);
    } else {
      base = loc.addr.branch == Branch::M1 ? fam_->limit.Z[static_cast<size_t>(n0 + 1)].eval(xprime)
                                           : fam_->limit.Y[static_cast<size_t>(n0 + 2)].eval(xprime);
    }
    std::ostringstream note;
    note << side_note << ": unresolved at depth " << max_depth
         << "; value taken at a covered point within p^-" << loc.addr.digits.size();
    return {base + mu_correction(loc), false, note.str()};
  };

  if (!ctx_.even) {
    if (i <= n0) return {Z(static_cast<int>(i)), true, {}};
    if (i >= n0 + 2) return {Y(static_cast<int>(i)), true, {}};
    LocateResult loc = locate(ctx_, y, max_depth);
    switch (loc.kind) {
      case LocateResult::Easy:
        return {y < make_rat(1, 2) ? Z(n0 + 1) : Y(n0 + 1), true, {}};
      case LocateResult::Resolved:
        return {Y(n0 + 1) + mu_correction(loc), true, {}};
      case LocateResult::Unresolved:
        return approximate(loc, "difficult range");
    }
  }

  if (i <= n0) return {Z(static_cast<int>(i)), true, {}};
  if (i == n0 + 1) {
    if (y < Rat(1) - half_width_) return {Z(n0 + 1), true, {}};
    LocateResult loc = locate(ctx_, y, max_depth);
    if (loc.kind == LocateResult::Resolved) return {Z(n0 + 1) + mu_correction(loc), true, {}};
    return approximate(loc, "upper difficult block");
  }
  if (i == n0 + 2) {
    if (y >= half_width_) return {Y(n0 + 2), true, {}};
    LocateResult loc = locate(ctx_, y, max_depth);
    if (loc.kind == LocateResult::Resolved) return {Y(n0 + 2) + mu_correction(loc), true, {}};
    return approximate(loc, "lower difficult block");
  }
  return {Y(static_cast<int>(i)), true, {}};
}

Rat f_threshold(const PiecewiseDensity& density) {
  const int n = density.ctx().n;
  const Rat probe = make_rat(1, 10);
  DensityValue below = density.eval(Rat(n) - probe);
  Rat expected = make_rat(Int(2), factorial(static_cast<unsigned>(n))) * pow_rat(probe, static_cast<unsigned>(n));
  if (!below.exact || below.value != expected || below.value <= 0)
    throw std::logic_error("f_threshold: probe below n has unexpected value");
  DensityValue at = density.eval(Rat(n));
  if (!at.exact || at.value != 0) throw std::logic_error("f_threshold: density does not vanish at n");
  return Rat(n);
}

}  // namespace hkq
