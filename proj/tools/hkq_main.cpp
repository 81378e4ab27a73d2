#include <algorithm>
#include <atomic>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkq/density.hpp"
#include "hkq/oracle.hpp"
#include "hkq/sectan.hpp"

namespace {

using namespace hkq;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadParams = 2;
constexpr int kExitUnresolved = 3;

std::vector<Rat> parse_points(const std::string& list) {
  std::vector<Rat> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rat(item));
  }
  return out;
}

int cmd_density(int n, long p, int samples, const std::string& points, int depth,
                const std::string& format, unsigned precision) {
  QuadricContext ctx = make_context(n, p);
  PiecewiseDensity density(ctx);

  std::vector<Rat> xs;
  const bool explicit_points = !points.empty();
  if (explicit_points) {
    xs = parse_points(points);
  } else {
    if (samples < 2) throw std::domain_error("density: need --samples >= 2 or --points");
    for (int k = 0; k < samples; ++k) xs.push_back(make_rat(static_cast<long>(n) * k, samples - 1));
  }

  if (format != "csv" && format != "json")
    throw std::domain_error("density: --format must be csv or json");

  // Evaluation is pure; run it in parallel and emit in input order.
  std::vector<DensityValue> values(xs.size());
  unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
  if (xs.size() < 64) workers = 1;
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < xs.size(); i = next.fetch_add(1))
        values[i] = density.eval(xs[i], depth);
    });
  for (auto& th : pool) th.join();

  bool any_unresolved = false;
  for (const auto& v : values) any_unresolved |= !v.exact;

  if (format == "csv") {
    std::cout << "x,f,exact\n";
    for (size_t i = 0; i < xs.size(); ++i)
      std::cout << decimal_string(xs[i], precision) << "," << decimal_string(values[i].value, precision)
                << "," << (values[i].exact ? "true" : "false") << "\n";
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (size_t i = 0; i < xs.size(); ++i) {
      nlohmann::ordered_json row;
      row["x"] = rat_string(xs[i]);
      row["f"] = rat_string(values[i].value);
      row["exact"] = values[i].exact;
      arr.push_back(row);
    }
    std::cout << arr.dump(2) << "\n";
  }
  return explicit_points && any_unresolved ? kExitUnresolved : kExitOk;
}

void print_ehk(const QuadricContext& ctx, const EhkResult& r, unsigned precision) {
  Rat ref = Rat(1) + sectan_coeffs(ctx.n + 1).m[static_cast<size_t>(ctx.n + 1)];
  std::cout << "n = " << ctx.n << ", p = " << ctx.p << "\n";
  std::cout << "e_HK          = " << rat_string(r.value) << "\n";
  std::cout << "              = " << decimal_string(r.value, precision) << "\n";
  std::cout << "method        = " << (r.method == EhkResult::Method::closed ? "closed" : "series") << "\n";
  if (r.method == EhkResult::Method::series)
    std::cout << "tail bound    = " << decimal_string(r.tail_bound, precision) << "\n";
  std::cout << "1 + m_{n+1}   = " << rat_string(ref) << " (" << decimal_string(ref, precision) << ")\n";
  std::cout << "excess        = " << decimal_string(r.value - ref, precision) << "\n";
}

int cmd_ehk(int n, long p, const std::string& primes, const std::string& method, int depth,
            bool table, unsigned precision) {
  if (!primes.empty() || table) {
    std::vector<long> ps;
    std::stringstream ss(primes);
    std::string item;
    while (std::getline(ss, item, ',')) ps.push_back(std::stol(item));
    ScanTable scan = monotonicity_scan(n, ps);
    std::cout << "p,e_HK,e_HK_decimal,strictly_decreasing\n";
    for (const auto& row : scan.rows)
      std::cout << row.p << "," << rat_string(row.ehk) << "," << decimal_string(row.ehk, precision)
                << "," << (row.decreased ? "true" : "false") << "\n";
    std::cout << "# epsilon = " << rat_string(scan.epsilon)
              << ", guaranteed strict decrease for p >= " << decimal_string(scan.p_threshold, 2)
              << "\n";
    return kExitOk;
  }
  QuadricContext ctx = make_context(n, p);
  EhkResult r = method == "series" ? ehk_series(ctx, depth) : ehk_closed(ctx);
  print_ehk(ctx, r, precision);
  return kExitOk;
}

int cmd_sectan(int order) {
  ZigzagCoeffs zc = sectan_coeffs(order);
  std::cout << "zigzag";
  for (int k = 1; k <= order; ++k) std::cout << (k == 1 ? " " : ",") << zc.zigzag[static_cast<size_t>(k)].get_str();
  std::cout << "\n";
  for (int k = 1; k <= order; ++k)
    std::cout << "m_" << k << " = " << rat_string(zc.m[static_cast<size_t>(k)]) << "\n";
  return kExitOk;
}

int verify_sectan(int order) {
  ZigzagCoeffs zc = sectan_coeffs(order);
  // Independent check: divide 1+sin by cos as exact power series.
  std::vector<Rat> sin1(static_cast<size_t>(order + 1), Rat(0)), cos(static_cast<size_t>(order + 1), Rat(0));
  sin1[0] = 1;
  for (int k = 0; k <= order; ++k) {
    Rat term = make_rat(Int(1), factorial(static_cast<unsigned>(k)));
    if ((k / 2) % 2 == 1) term = -term;
    if (k % 2 == 1) sin1[static_cast<size_t>(k)] = term;
    else cos[static_cast<size_t>(k)] = term;
  }
  std::vector<Rat> quot(static_cast<size_t>(order + 1), Rat(0));
  for (int k = 0; k <= order; ++k) {
    Rat acc = sin1[static_cast<size_t>(k)];
    for (int j = 1; j <= k; ++j) acc -= cos[static_cast<size_t>(j)] * quot[static_cast<size_t>(k - j)];
    quot[static_cast<size_t>(k)] = acc;
  }
  int bad = 0;
  for (int k = 1; k <= order; ++k) {
    if (quot[static_cast<size_t>(k)] != zc.m[static_cast<size_t>(k)]) ++bad;
    Rat ek = zc.m[static_cast<size_t>(k)] * Rat(factorial(static_cast<unsigned>(k)));
    if (!is_integer(ek) || ek.get_num() != zc.zigzag[static_cast<size_t>(k)]) ++bad;
  }
  std::cout << "sectan order " << order << ": " << bad << " discrepancies; zigzag ";
  for (int k = 1; k <= order; ++k) std::cout << (k == 1 ? "" : ",") << zc.zigzag[static_cast<size_t>(k)].get_str();
  std::cout << "\n";
  return bad == 0 ? kExitOk : kExitVerifyFailure;
}

int verify_cover(int n, long p, int depth) {
  QuadricContext ctx = make_context(n, p);
  Rat covered(0);
  for (int l = 1; l <= depth; ++l) {
    for (const auto& addr : enumerate_addresses(ctx, l)) {
      auto [lo, hi] = interval_bounds(ctx, addr);
      covered += hi - lo;
    }
  }
  Rat expect = difficult_range_length(ctx);
  Rat uncovered = uncovered_measure(ctx, depth);
  bool ok = covered + uncovered == expect;
  std::cout << "cover n=" << n << " p=" << p << " depth=" << depth << ": covered "
            << rat_string(covered) << " + uncovered " << rat_string(uncovered) << " = "
            << rat_string(covered + uncovered) << " vs " << rat_string(expect) << " -> "
            << (ok ? "exact" : "MISMATCH") << "\n";
  return ok ? kExitOk : kExitVerifyFailure;
}

int verify_main(int n, long p, int s, std::size_t cap) {
  QuadricContext ctx = make_context(n, p);
  Pushforward pf(ctx);
  int failures = 0;

  // Transition rank sums (checked on construction) and symbolic coherence.
  const SymbolicFamily& fam = symbolic_family(n);
  if (ctx.tier_product()) {
    const int dim = pf.tuple_dim();
    Int pn = pow_int(Int(p), static_cast<unsigned>(n));
    for (const auto& st : fam.H) {
      long digit = !ctx.even ? st.index + rat_floor(ctx.m0).get_si()
                             : (st.index <= n / 2 - 2 ? st.index : p + n / 2 - 2 - st.index);
      const auto& integral_matrix = pf.transition(static_cast<int>(digit)).m;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          Rat lhs = Rat(pn) * st.H.at(i, j).eval(make_rat(1, p));
          if (lhs != Rat(integral_matrix.at(i, j))) ++failures;
        }
    }
    std::cout << "symbolic/integer transition check: " << (failures == 0 ? "ok" : "FAILED") << "\n";
  }

  auto diffs = compare_all(pf, s, cap);
  for (const auto& d : diffs)
    std::cout << "  a=" << d.a << ": oracle " << d.oracle.get_str() << " vs pushforward "
              << d.pushforward.get_str() << "\n";
  std::cout << diffs.size() << " discrepancies\n";
  failures += static_cast<int>(diffs.size());
  return failures == 0 ? kExitOk : kExitVerifyFailure;
}

int cmd_fthreshold(int n, long p) {
  QuadricContext ctx = make_context(n, p);
  PiecewiseDensity density(ctx);
  Rat c = f_threshold(density);
  Rat probe = make_rat(1, 10);
  std::cout << "F-threshold c^m(m) = " << rat_string(c) << "\n";
  std::cout << "f(n - 1/10) = " << rat_string(density.eval(Rat(n) - probe).value) << " > 0\n";
  std::cout << "f(n) = " << rat_string(density.eval(Rat(n)).value) << "\n";
  return kExitOk;
}

int cmd_cover(int n, long p, int depth) {
  QuadricContext ctx = make_context(n, p);
  std::cout << "difficult range length = " << rat_string(difficult_range_length(ctx)) << "\n";
  for (int l = 1; l <= depth; ++l) {
    auto addrs = enumerate_addresses(ctx, l);
    Rat len(0);
    for (const auto& addr : addrs) {
      auto [lo, hi] = interval_bounds(ctx, addr);
      len += hi - lo;
    }
    std::cout << "depth " << l << ": " << addrs.size() << " intervals, total length "
              << rat_string(len) << ", uncovered after depth " << l << " = "
              << rat_string(uncovered_measure(ctx, l)) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hilbert-Kunz density and multiplicity tables for quadric hypersurfaces"};
  app.require_subcommand(1);

  int n = 3, s = 1, samples = 0, depth = 32, order = 8;
  long p = 5;
  unsigned precision = 12;
  std::size_t cap = hkq::kOracleDefaultCap;
  std::string points, format = "csv", method = "closed", primes;
  bool table = false, do_sectan = false, do_cover = false;

  auto* d = app.add_subcommand("density", "Tabulate the density function on [0, n]");
  d->add_option("--n", n)->required();
  d->add_option("--p", p)->required();
  d->add_option("--samples", samples);
  d->add_option("--points", points, "comma-separated rationals, e.g. 1/2,5/2");
  d->add_option("--depth", depth);
  d->add_option("--format", format);
  d->add_option("--precision", precision);

  auto* e = app.add_subcommand("ehk", "Hilbert-Kunz multiplicity");
  e->add_option("--n", n)->required();
  e->add_option("--p", p);
  e->add_option("--primes", primes, "comma-separated ascending primes");
  e->add_option("--method", method);
  e->add_option("--depth", depth);
  e->add_flag("--table", table);
  e->add_option("--precision", precision);

  auto* v = app.add_subcommand("verify", "Oracle comparisons and invariant suites");
  v->add_option("--n", n);
  v->add_option("--p", p);
  v->add_option("--s", s);
  v->add_option("--cap", cap);
  v->add_option("--order", order);
  v->add_option("--depth", depth);
  v->add_flag("--sectan", do_sectan);
  v->add_flag("--cover", do_cover);

  auto* sc = app.add_subcommand("sectan", "Series coefficients of sec+tan");
  sc->add_option("--order", order);

  auto* f = app.add_subcommand("fthreshold", "F-threshold of the pair");
  f->add_option("--n", n)->required();
  f->add_option("--p", p)->required();

  auto* c = app.add_subcommand("cover", "Interval cover of the difficult range");
  c->add_option("--n", n)->required();
  c->add_option("--p", p)->required();
  c->add_option("--depth", depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? kExitOk : kExitBadParams;
  }

  try {
    if (d->parsed()) return cmd_density(n, p, samples, points, depth, format, precision);
    if (e->parsed()) return cmd_ehk(n, p, primes, method, depth, table, precision);
    if (v->parsed()) {
      if (do_sectan) return verify_sectan(order);
      if (do_cover) return verify_cover(n, p, depth);
      return verify_main(n, p, s, cap);
    }
    if (sc->parsed()) return cmd_sectan(order);
    if (f->parsed()) return cmd_fthreshold(n, p);
    if (c->parsed()) return cmd_cover(n, p, depth);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitBadParams;
  }
  return kExitBadParams;
}
