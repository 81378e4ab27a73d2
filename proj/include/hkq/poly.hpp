#ifndef HKQ_POLY_HPP
#define HKQ_POLY_HPP

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

#include "hkq/rational.hpp"

namespace hkq {

// Indeterminate tag; documentation only, no arithmetic effect.
enum class Var { x, t, p };

// Dense univariate polynomial over Q.  Trailing zero coefficients are
// stripped; the zero polynomial has degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Var v) : var_(v) {}
  Poly(Var v, std::vector<Rat> coeffs) : c_(std::move(coeffs)), var_(v) { trim(); }
  Poly(Var v, std::initializer_list<long> coeffs) : var_(v) {
    c_.reserve(coeffs.size());
    for (long k : coeffs) c_.emplace_back(k);
    trim();
  }

  static Poly constant(Var v, const Rat& c) { return Poly(v, std::vector<Rat>{c}); }
  static Poly identity(Var v) { return Poly(v, std::vector<Rat>{Rat(0), Rat(1)}); }
  // c1*x + c0
  static Poly affine(Var v, const Rat& c1, const Rat& c0) {
    return Poly(v, std::vector<Rat>{c0, c1});
  }

  Var var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rat(0);
  }

  Rat eval(const Rat& v) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    assert(a.is_zero() || b.is_zero() || a.var_ == b.var_);
    Poly r(a.is_zero() ? b.var_ : a.var_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    assert(a.is_zero() || b.is_zero() || a.var_ == b.var_);
    if (a.is_zero() || b.is_zero()) return Poly(a.is_zero() ? b.var_ : a.var_);
    Poly r(a.var_);
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const Rat& s, const Poly& a) {
    Poly r(a);
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly r = constant(var_, Rat(1));
    Poly base(*this);
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  // Substitution f(g); the result carries g's tag.
  Poly compose(const Poly& g) const {
    Poly acc(g.var_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * g + constant(g.var_, *it);
    return acc;
  }

  // Same coefficients under a different tag.
  Poly retag(Var v) const { return Poly(v, c_); }

  // Antiderivative with zero constant term.
  Poly integral() const {
    Poly r(var_);
    if (is_zero()) return r;
    r.c_.assign(c_.size() + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
    r.trim();
    return r;
  }

  Rat definite_integral(const Rat& lo, const Rat& hi) const {
    Poly F = integral();
    return F.eval(hi) - F.eval(lo);
  }

  std::string str() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
  Var var_ = Var::x;
};

inline Rat poly_eval(const Poly& f, const Rat& v) { return f.eval(v); }

}  // namespace hkq

#endif
