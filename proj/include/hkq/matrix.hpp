#ifndef HKQ_MATRIX_HPP
#define HKQ_MATRIX_HPP

#include <stdexcept>
#include <vector>

#include "hkq/poly.hpp"
#include "hkq/rational.hpp"

namespace hkq {

// Row-major square-or-rectangular matrix over a commutative ring T
// (instantiated with Rat and Poly).
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, const T& fill) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const T& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<T>& entries() const { return e_; }

  friend Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat+: shape mismatch");
    Mat r(a);
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat-: shape mismatch");
    Mat r(a);
    for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat*: shape mismatch");
    Mat r(a.rows_, b.cols_, T{});
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k)
        for (int j = 0; j < b.cols_; ++j) r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
    return r;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  static Mat identity(int k, const T& zero, const T& one) {
    Mat r(k, k, zero);
    for (int i = 0; i < k; ++i) r.at(i, i) = one;
    return r;
  }

  std::vector<T> row_times(const std::vector<T>& v) const {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("row_times: shape mismatch");
    std::vector<T> out(static_cast<size_t>(cols_), T{});
    for (int k = 0; k < rows_; ++k)
      for (int j = 0; j < cols_; ++j) out[j] = out[j] + v[k] * at(k, j);
    return out;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> e_;
};

using RatMat = Mat<Rat>;
using PolyMat = Mat<Poly>;

template <typename T>
struct CofactorResult {
  Mat<T> adjugate;
  T determinant;
};

namespace detail {

// Determinant by expansion along the first remaining row, memoized over
// column subsets.  Exponential in k but fine for the sizes used here
// (k <= 12 enforced by the caller).
template <typename T>
T det_memo(const Mat<T>& m, const std::vector<int>& cols, unsigned mask,
           int row, std::vector<char>& seen, std::vector<T>& cache,
           const T& zero, const T& one) {
  if (mask == 0) return one;
  if (seen[mask]) return cache[mask];
  T acc = zero;
  bool plus = true;
  for (size_t pos = 0; pos < cols.size(); ++pos) {
    if (!(mask & (1u << pos))) continue;
    const T& piv = m.at(row, cols[pos]);
    T sub = det_memo(m, cols, mask & ~(1u << pos), row + 1, seen, cache, zero, one);
    if (plus)
      acc = acc + piv * sub;
    else
      acc = acc - piv * sub;
    plus = !plus;
  }
  seen[mask] = 1;
  cache[mask] = acc;
  return acc;
}

template <typename T>
T det_submatrix(const Mat<T>& m, const std::vector<int>& rows,
                const std::vector<int>& cols, const T& zero, const T& one) {
  // Small helper for minors: rows/cols listed explicitly.
  Mat<T> s(static_cast<int>(rows.size()), static_cast<int>(cols.size()), zero);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) s.at(static_cast<int>(i), static_cast<int>(j)) = m.at(rows[i], cols[j]);
  std::vector<int> all(cols.size());
  for (size_t j = 0; j < cols.size(); ++j) all[j] = static_cast<int>(j);
  std::vector<char> seen(1u << cols.size(), 0);
  std::vector<T> cache(1u << cols.size(), zero);
  unsigned full = static_cast<unsigned>((1u << cols.size()) - 1);
  return det_memo(s, all, full, 0, seen, cache, zero, one);
}

}  // namespace detail

// Adjugate and determinant with M * adj(M) = det(M) * I.  Cofactor
// expansion with subset memoization; capped at 12x12.
template <typename T>
CofactorResult<T> cofactor_inverse(const Mat<T>& m, const T& zero, const T& one) {
  if (m.rows() != m.cols()) throw std::invalid_argument("cofactor_inverse: not square");
  const int k = m.rows();
  if (k > 12) throw std::invalid_argument("cofactor_inverse: size cap exceeded");
  if (k == 0) return {Mat<T>(0, 0, zero), one};

  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  T det = detail::det_submatrix(m, all, all, zero, one);

  Mat<T> adj(k, k, zero);
  if (k == 1) {
    adj.at(0, 0) = one;
  } else {
    for (int i = 0; i < k; ++i) {
      std::vector<int> rows;
      rows.reserve(k - 1);
      for (int r = 0; r < k; ++r)
        if (r != i) rows.push_back(r);
      for (int j = 0; j < k; ++j) {
        std::vector<int> cols;
        cols.reserve(k - 1);
        for (int c = 0; c < k; ++c)
          if (c != j) cols.push_back(c);
        T minor = detail::det_submatrix(m, rows, cols, zero, one);
        adj.at(j, i) = ((i + j) % 2 == 0) ? minor : zero - minor;
      }
    }
  }

#ifndef NDEBUG
  {
    Mat<T> prod = m * adj;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) assert(prod.at(i, j) == (i == j ? det : zero));
  }
#endif
  return {std::move(adj), std::move(det)};
}

inline CofactorResult<Rat> cofactor_inverse(const RatMat& m) {
  return cofactor_inverse<Rat>(m, Rat(0), Rat(1));
}
inline CofactorResult<Poly> cofactor_inverse(const PolyMat& m, Var v) {
  return cofactor_inverse<Poly>(m, Poly(v), Poly::constant(v, Rat(1)));
}

inline RatMat eval_mat(const PolyMat& m, const Rat& v) {
  RatMat r(m.rows(), m.cols(), Rat(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).eval(v);
  return r;
}

}  // namespace hkq

#endif
