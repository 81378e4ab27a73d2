#include "hkq/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace hkq {

namespace {

constexpr int kMaxVars = 8;  // 8 bits per exponent in a packed key

uint64_t pack(const std::vector<int>& e) {
  uint64_t k = 0;
  for (size_t i = 0; i < e.size(); ++i) k |= static_cast<uint64_t>(e[i]) << (8 * i);
  return k;
}

void enumerate_rec(int vars, long q, long deg, std::vector<int>& e, int pos,
                   std::vector<uint64_t>& out) {
  if (pos == vars - 1) {
    if (deg <= q - 1) {
      e[static_cast<size_t>(pos)] = static_cast<int>(deg);
      out.push_back(pack(e));
    }
    return;
  }
  long hi = std::min(q - 1, deg);
  for (long v = 0; v <= hi; ++v) {
    e[static_cast<size_t>(pos)] = static_cast<int>(v);
    enumerate_rec(vars, q, deg - v, e, pos + 1, out);
  }
}

std::vector<uint64_t> enumerate_bounded(int vars, long q, long deg) {
  std::vector<uint64_t> out;
  if (deg < 0 || deg > vars * (q - 1)) return out;
  std::vector<int> e(static_cast<size_t>(vars), 0);
  enumerate_rec(vars, q, deg, e, 0, out);
  return out;
}

std::unordered_map<uint64_t, uint32_t> index_of(const std::vector<uint64_t>& mons) {
  std::unordered_map<uint64_t, uint32_t> idx;
  idx.reserve(mons.size() * 2);
  for (uint32_t i = 0; i < mons.size(); ++i) idx.emplace(mons[i], i);
  return idx;
}

std::size_t checked_size(const Int& c, std::size_t cap, const char* what) {
  if (c > static_cast<unsigned long>(cap))
    throw std::length_error(std::string("oracle: ") + what + " exceeds the resource cap (" +
                            c.get_str() + " > " + std::to_string(cap) + ")");
  return static_cast<std::size_t>(c.get_ui());
}

std::vector<uint16_t> mod_inverses(long p) {
  std::vector<uint16_t> inv(static_cast<size_t>(p), 0);
  inv[1] = 1;
  for (long i = 2; i < p; ++i)
    inv[static_cast<size_t>(i)] =
        static_cast<uint16_t>(p - (p / i) * inv[static_cast<size_t>(p % i)] % p);
  return inv;
}

// Row echelon rank of a dense uint16 matrix mod p with lazy reduction:
// entries are kept unreduced (< 2^16) and renormalized per row when the
// accumulated updates approach overflow.
std::size_t rank_dense_mod_p(std::vector<uint16_t>& m, std::size_t rows, std::size_t cols, long p) {
  if (rows == 0 || cols == 0) return 0;
  const auto inv = mod_inverses(p);
  const unsigned pm1 = static_cast<unsigned>(p - 1);
  const unsigned budget = (65535u - pm1) / (pm1 * pm1);
  std::vector<uint32_t> perm(rows);
  for (std::size_t r = 0; r < rows; ++r) perm[r] = static_cast<uint32_t>(r);
  std::vector<unsigned> dirty(rows, 0);

  auto row_ptr = [&](std::size_t r) { return m.data() + static_cast<std::size_t>(perm[r]) * cols; };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (row_ptr(r)[c] % p != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(perm[rank], perm[pivot]);
    std::swap(dirty[rank], dirty[pivot]);

    uint16_t* pr = row_ptr(rank);
    for (std::size_t j = c; j < cols; ++j) pr[j] = static_cast<uint16_t>(pr[j] % p);
    const uint16_t pinv = inv[pr[c]];
    if (pinv != 1)
      for (std::size_t j = c; j < cols; ++j)
        pr[j] = static_cast<uint16_t>(pr[j] * pinv % p);
    dirty[rank] = 0;

    for (std::size_t r = rank + 1; r < rows; ++r) {
      uint16_t* tr = row_ptr(r);
      const uint16_t v = static_cast<uint16_t>(tr[c] % p);
      if (v == 0) {
        tr[c] = 0;
        continue;
      }
      if (++dirty[r] > budget) {
        for (std::size_t j = c; j < cols; ++j) tr[j] = static_cast<uint16_t>(tr[j] % p);
        dirty[r] = 1;
      }
      const uint16_t coef = static_cast<uint16_t>(p - v);
      for (std::size_t j = c; j < cols; ++j)
        tr[j] = static_cast<uint16_t>(tr[j] + coef * pr[j]);
      tr[c] = 0;
    }
    ++rank;
  }
  return rank;
}

// Increment patterns (2*k, multinomial(K; k) mod p) of (sum of squares)^K
// in `vars` variables, nonzero coefficients only.
struct PowerTerm {
  std::vector<int> inc;
  uint16_t coeff;
};

void power_terms_rec(int vars, int pos, long left, std::vector<int>& k, long p,
                     std::vector<PowerTerm>& out, long K) {
  if (pos == vars - 1) {
    k[static_cast<size_t>(pos)] = static_cast<int>(left);
    Int c = factorial(static_cast<unsigned>(K));
    for (int v : k) c = div_exact(c, factorial(static_cast<unsigned>(v)));
    long cm = mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p));
    if (cm != 0) {
      PowerTerm t;
      t.inc.resize(k.size());
      for (size_t i = 0; i < k.size(); ++i) t.inc[i] = 2 * k[i];
      t.coeff = static_cast<uint16_t>(cm);
      out.push_back(std::move(t));
    }
    return;
  }
  for (long v = 0; v <= left; ++v) {
    k[static_cast<size_t>(pos)] = static_cast<int>(v);
    power_terms_rec(vars, pos + 1, left - v, k, p, out, K);
  }
}

std::vector<PowerTerm> power_terms(int vars, long K, long p) {
  std::vector<PowerTerm> out;
  std::vector<int> k(static_cast<size_t>(vars), 0);
  power_terms_rec(vars, 0, K, k, p, out, K);
  return out;
}

// Rank of (sum of squares in `vars` variables)^K from bounded degree src
// into degree src + 2K, by dense elimination.
std::size_t power_rank(int vars, long p, long q, long src_deg, long K, std::size_t cap) {
  auto rows_m = enumerate_bounded(vars, q, src_deg);
  auto cols_m = enumerate_bounded(vars, q, src_deg + 2 * K);
  if (rows_m.empty() || cols_m.empty()) return 0;
  if (rows_m.size() > cap || cols_m.size() > cap)
    throw std::length_error("oracle: core side exceeds the resource cap");
  auto idx = index_of(cols_m);
  auto terms = power_terms(vars, K, p);

  const std::size_t R = rows_m.size(), C = cols_m.size();
  std::vector<uint16_t> m(R * C, 0);
  std::vector<int> e(static_cast<size_t>(vars), 0);
  std::vector<int> t(static_cast<size_t>(vars), 0);
  for (std::size_t r = 0; r < R; ++r) {
    for (int i = 0; i < vars; ++i) e[static_cast<size_t>(i)] = static_cast<int>((rows_m[r] >> (8 * i)) & 0xff);
    for (const auto& term : terms) {
      bool ok = true;
      for (int i = 0; i < vars; ++i) {
        t[static_cast<size_t>(i)] = e[static_cast<size_t>(i)] + term.inc[static_cast<size_t>(i)];
        if (t[static_cast<size_t>(i)] > q - 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      m[r * C + idx.at(pack(t))] = term.coeff;
    }
  }
  return rank_dense_mod_p(m, R, C, p);
}

}  // namespace

Int bounded_monomial_count(int vars, long q, long deg) {
  if (deg < 0 || vars < 1) return Int(0);
  Int total(0);
  for (int j = 0; j <= vars; ++j) {
    long rem = deg - static_cast<long>(j) * q;
    if (rem < 0) break;
    Int term = binomial(Int(vars), static_cast<unsigned>(j)) *
               binomial(Int(rem + vars - 1), static_cast<unsigned>(vars - 1));
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

std::size_t oracle_rank_basic(int vars, long p, long q, long target, std::size_t cap,
                              bool reverse_window) {
  if (vars > kMaxVars) throw std::invalid_argument("oracle: too many variables");
  auto rows_m = enumerate_bounded(vars, q, target - 2);
  auto cols_m = enumerate_bounded(vars, q, target);
  if (rows_m.empty() || cols_m.empty()) return 0;
  if (rows_m.size() > cap || cols_m.size() > cap)
    throw std::length_error("oracle: matrix side exceeds the resource cap");
  auto idx = index_of(cols_m);

  // Sparse rows: (col, value) sorted by col.
  using SparseRow = std::vector<std::pair<uint32_t, uint16_t>>;
  std::vector<SparseRow> rows;
  rows.reserve(rows_m.size());
  std::vector<int> e(static_cast<size_t>(vars), 0);
  for (uint64_t key : rows_m) {
    SparseRow row;
    for (int v = 0; v < vars; ++v) {
      int exp = static_cast<int>((key >> (8 * v)) & 0xff);
      if (exp + 2 > q - 1) continue;
      uint64_t tkey = key + (2ull << (8 * v));
      row.emplace_back(idx.at(tkey), 1);
    }
    std::sort(row.begin(), row.end());
    if (!row.empty()) rows.push_back(std::move(row));
  }

  auto value_at = [](const SparseRow& row, uint32_t col) -> uint16_t {
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(col, uint16_t(0)));
    return (it != row.end() && it->first == col) ? it->second : 0;
  };
  const auto inv = mod_inverses(p);

  std::size_t rank = 0;
  std::vector<char> used(rows.size(), 0);
  while (true) {
    // Markowitz-lite pivot: among a window of shortest unused rows, take the
    // (row, col) pair with the smallest fill estimate.
    std::size_t best_row = rows.size();
    uint32_t best_col = 0;
    std::size_t best_score = SIZE_MAX;
    std::size_t window = 0;
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && !rows[r].empty()) order.push_back(r);
    if (order.empty()) break;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return reverse_window ? rows[a].size() > rows[b].size() : rows[a].size() < rows[b].size();
    });
    const std::size_t probe = std::min<std::size_t>(order.size(), 64);
    for (std::size_t r : order) {
      if (++window > 64) break;
      for (const auto& [col, val] : rows[r]) {
        std::size_t occupancy = 0;
        for (std::size_t k = 0; k < probe; ++k)
          if (value_at(rows[order[k]], col) % p != 0) ++occupancy;
        std::size_t score = (rows[r].size() - 1) * (occupancy - 1);
        if (score < best_score) {
          best_score = score;
          best_row = r;
          best_col = col;
        }
      }
    }
    if (best_row == rows.size()) break;

    SparseRow piv = rows[best_row];
    uint16_t pval = static_cast<uint16_t>(value_at(piv, best_col) % p);
    uint16_t pinv = inv[pval];
    for (auto& [col, val] : piv) val = static_cast<uint16_t>(val * pinv % p);
    used[best_row] = 1;
    ++rank;

    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || rows[r].empty()) continue;
      uint16_t v = static_cast<uint16_t>(value_at(rows[r], best_col) % p);
      if (v == 0) continue;
      uint16_t c = static_cast<uint16_t>(p - v);
      SparseRow merged;
      merged.reserve(rows[r].size() + piv.size());
      auto it1 = rows[r].begin();
      auto it2 = piv.begin();
      while (it1 != rows[r].end() || it2 != piv.end()) {
        if (it2 == piv.end() || (it1 != rows[r].end() && it1->first < it2->first)) {
          merged.push_back(*it1++);
        } else if (it1 == rows[r].end() || it2->first < it1->first) {
          merged.emplace_back(it2->first, static_cast<uint16_t>(c * it2->second % p));
          ++it2;
        } else {
          uint16_t nv = static_cast<uint16_t>((it1->second + c * it2->second) % p);
          if (nv) merged.emplace_back(it1->first, nv);
          ++it1;
          ++it2;
        }
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(),
                                  [&](const auto& cv) { return cv.second % p == 0; }),
                   merged.end());
      rows[r] = std::move(merged);
    }
  }
  return rank;
}

std::size_t oracle_rank(int vars, long p, long q, long target, std::size_t cap) {
  if (vars > kMaxVars || vars < 2) throw std::invalid_argument("oracle: variable count unsupported");
  if (q < 3) throw std::invalid_argument("oracle: q >= 3");
  const long src = target - 2;
  if (src < 0) return 0;
  if (bounded_monomial_count(vars, q, src) == 0 || bounded_monomial_count(vars, q, target) == 0)
    return 0;

  // Unit pivots: rows with first-variable exponent e <= q-3 map one-to-one
  // onto the columns with first-variable exponent e+2 via the x_0^2 shift;
  // a triangular sweep removes them and leaves two power cores in one fewer
  // variable (rows with e = q-2 and e = q-1).
  Int base(0);
  for (long e = 0; e <= std::min(q - 3, src); ++e) base += bounded_monomial_count(vars - 1, q, src - e);
  std::size_t rank = checked_size(base, SIZE_MAX, "pivot block");

  if (src >= q - 1) rank += power_rank(vars - 1, p, q, src - (q - 1), (q + 1) / 2, cap);
  if (src >= q - 2) rank += power_rank(vars - 1, p, q, src - (q - 2), (q - 1) / 2, cap);
  return rank;
}

Int oracle_length(int n, long p, long q, long a, std::size_t cap) {
  if (n < 3) throw std::domain_error("oracle_length: n >= 3");
  if (!is_prime(p) || p == 2) throw std::domain_error("oracle_length: p must be an odd prime");
  long qq = q;
  while (qq > 1 && qq % p == 0) qq /= p;
  if (qq != 1) throw std::domain_error("oracle_length: q must be a power of p");
  if (a < 0) throw std::domain_error("oracle_length: a >= 0");

  const int d = n + 2;
  Int count = bounded_monomial_count(d, q, a);
  if (count == 0) return Int(0);
  const long D = static_cast<long>(d) * (q - 1);
  const long target = std::min(a, D + 2 - a);  // rank is symmetric under complementation
  return count - Int(static_cast<unsigned long>(oracle_rank(d, p, q, target, cap)));
}

std::vector<Discrepancy> compare_all(const Pushforward& pf, int s, std::size_t cap, int threads) {
  const auto& ctx = pf.ctx();
  const int d = ctx.n + 2;
  Int q_big = pow_int(Int(ctx.p), static_cast<unsigned>(s));
  if (!q_big.fits_slong_p()) throw std::length_error("compare_all: q too large");
  const long q = q_big.get_si();
  const long D = static_cast<long>(d) * (q - 1);
  const long amax = static_cast<long>(ctx.n) * q;

  // Distinct rank targets, largest cores first so the thread pool stays busy.
  std::map<long, std::size_t> rank_of;
  std::vector<long> targets;
  for (long a = 0; a < amax; ++a) {
    if (bounded_monomial_count(d, q, a) == 0) continue;
    long t = std::min(a, D + 2 - a);
    if (rank_of.emplace(t, 0).second) targets.push_back(t);
  }
  std::sort(targets.begin(), targets.end(), [&](long x, long y) {
    return bounded_monomial_count(d - 1, q, x) > bounded_monomial_count(d - 1, q, y);
  });

  int nthreads = threads > 0 ? threads
                             : std::max(1, std::min(6, static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<std::size_t> next{0};
  std::vector<std::size_t> ranks(targets.size(), 0);
  std::atomic<bool> failed{false};
  std::string error_text;
  std::mutex error_mu;
  auto worker = [&]() {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= targets.size()) return;
      try {
        ranks[i] = oracle_rank(d, ctx.p, q, targets[i], cap);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        error_text = e.what();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::length_error(error_text);
  for (std::size_t i = 0; i < targets.size(); ++i) rank_of[targets[i]] = ranks[i];

  std::vector<Discrepancy> out;
  for (long a = 0; a < amax; ++a) {
    Int count = bounded_monomial_count(d, q, a);
    Int oracle = count == 0
                     ? Int(0)
                     : count - Int(static_cast<unsigned long>(rank_of[std::min(a, D + 2 - a)]));
    Int push = pf.graded_length(Int(a), s);
    if (oracle != push) out.push_back({a, oracle, push});
  }
  return out;
}

}  // namespace hkq
