// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "algc/errors.hpp"

namespace algc {

/// Order-2 jet of a scalar quantity at a point of an n-dimensional chart:
/// value, gradient and Hessian. Every field evaluation in the library flows
/// through this type; the arithmetic implements the exact sum, product,
/// quotient and chain rules truncated at second order.
///
/// The Hessian is symmetric bit-exactly: all operations fill the upper
/// triangle and mirror it.
class Jet2 {
 public:
  Jet2() = default;

  explicit Jet2(int dim)
      : n_(dim),
        grad_(static_cast<std::size_t>(dim), 0.0),
        hess_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  static Jet2 constant(double value, int dim) {
    Jet2 j(dim);
    j.v_ = value;
    return j;
  }

  /// Jet of the coordinate function x_a at a point where it takes `value`.
  static Jet2 variable(double value, int coord, int dim) {
    Jet2 j(dim);
    j.v_ = value;
    j.grad_[coord] = 1.0;
    return j;
  }

  int dim() const { return n_; }
  double value() const { return v_; }
  double grad(int a) const { return grad_[a]; }
  double hess(int a, int b) const { return hess_[static_cast<std::size_t>(a) * n_ + b]; }

  void set_value(double v) { v_ = v; }
  void set_grad(int a, double v) { grad_[a] = v; }
  void set_hess(int a, int b, double v) {
    hess_[static_cast<std::size_t>(a) * n_ + b] = v;
    hess_[static_cast<std::size_t>(b) * n_ + a] = v;
  }

  bool finite() const {
    if (!std::isfinite(v_)) return false;
    for (double g : grad_)
      if (!std::isfinite(g)) return false;
    for (double h : hess_)
      if (!std::isfinite(h)) return false;
    return true;
  }

  /// Largest absolute entry across value, gradient and Hessian.
  double max_abs() const {
    double m = std::fabs(v_);
    for (double g : grad_) m = std::max(m, std::fabs(g));
    for (double h : hess_) m = std::max(m, std::fabs(h));
    return m;
  }

 private:
  int n_ = 0;
  double v_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;  // row-major n×n, kept symmetric
};

namespace detail {

inline void require_same_dim(const Jet2& a, const Jet2& b) {
  if (a.dim() != b.dim())
    throw DimensionError("jet dimension mismatch: " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
}

/// Chain rule for a unary function with value f, first derivative df and
/// second derivative ddf at x.value().
inline Jet2 jet_chain(const Jet2& x, double f, double df, double ddf) {
  Jet2 out(x.dim());
  out.set_value(f);
  for (int a = 0; a < x.dim(); ++a) out.set_grad(a, df * x.grad(a));
  for (int a = 0; a < x.dim(); ++a)
    for (int b = a; b < x.dim(); ++b)
      out.set_hess(a, b, df * x.hess(a, b) + ddf * x.grad(a) * x.grad(b));
  return out;
}

}  // namespace detail

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  detail::require_same_dim(a, b);
  Jet2 out(a.dim());
  out.set_value(a.value() + b.value());
  for (int i = 0; i < a.dim(); ++i) out.set_grad(i, a.grad(i) + b.grad(i));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out.set_hess(i, j, a.hess(i, j) + b.hess(i, j));
  return out;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  detail::require_same_dim(a, b);
  Jet2 out(a.dim());
  out.set_value(a.value() - b.value());
  for (int i = 0; i < a.dim(); ++i) out.set_grad(i, a.grad(i) - b.grad(i));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out.set_hess(i, j, a.hess(i, j) - b.hess(i, j));
  return out;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 out(a.dim());
  out.set_value(-a.value());
  for (int i = 0; i < a.dim(); ++i) out.set_grad(i, -a.grad(i));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out.set_hess(i, j, -a.hess(i, j));
  return out;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  detail::require_same_dim(a, b);
  Jet2 out(a.dim());
  out.set_value(a.value() * b.value());
  for (int i = 0; i < a.dim(); ++i)
    out.set_grad(i, a.grad(i) * b.value() + a.value() * b.grad(i));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j)
      out.set_hess(i, j, a.hess(i, j) * b.value() + a.value() * b.hess(i, j) +
                             a.grad(i) * b.grad(j) + a.grad(j) * b.grad(i));
  return out;
}

inline Jet2 operator*(double s, const Jet2& a) {
  Jet2 out(a.dim());
  out.set_value(s * a.value());
  for (int i = 0; i < a.dim(); ++i) out.set_grad(i, s * a.grad(i));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out.set_hess(i, j, s * a.hess(i, j));
  return out;
}

inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

inline Jet2 reciprocal(const Jet2& x) {
  if (x.value() == 0.0) throw DomainError("division by zero");
  const double u = 1.0 / x.value();
  return detail::jet_chain(x, u, -u * u, 2.0 * u * u * u);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }

inline Jet2 sin(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return detail::jet_chain(x, s, c, -s);
}

inline Jet2 cos(const Jet2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return detail::jet_chain(x, c, -s, -c);
}

inline Jet2 exp(const Jet2& x) {
  const double e = std::exp(x.value());
  return detail::jet_chain(x, e, e, e);
}

inline Jet2 log(const Jet2& x) {
  if (x.value() <= 0.0) throw DomainError("log of non-positive value");
  const double u = 1.0 / x.value();
  return detail::jet_chain(x, std::log(x.value()), u, -u * u);
}

inline Jet2 sqrt(const Jet2& x) {
  if (x.value() <= 0.0) throw DomainError("sqrt of non-positive value");
  const double r = std::sqrt(x.value());
  return detail::jet_chain(x, r, 0.5 / r, -0.25 / (r * x.value()));
}

/// Integer power with non-negative exponent. k = 0 yields the constant-one
/// jet, matching the polynomial convention x^0 ≡ 1.
inline Jet2 pow_int(const Jet2& x, int k) {
  if (k < 0) throw Error("pow_int: negative exponent");
  if (k == 0) return Jet2::constant(1.0, x.dim());
  if (k == 1) return x;
  const double v = x.value();
  const double f = std::pow(v, k);
  const double df = k * std::pow(v, k - 1);
  const double ddf = static_cast<double>(k) * (k - 1) * std::pow(v, k - 2);
  return detail::jet_chain(x, f, df, ddf);
}

}  // namespace algc
