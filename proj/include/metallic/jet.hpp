#pragma once

#include <cmath>
#include <stdexcept>

#include "metallic/linalg.hpp"

namespace metallic {

struct MathDomainError : std::runtime_error {
  explicit MathDomainError(const std::string& what) : std::runtime_error(what) {}
};

// Second-order truncated Taylor scalar: value, gradient and Hessian with
// respect to the chart coordinates. Arithmetic follows the exact chain rule.
struct Jet2 {
  double value = 0.0;
  Vector grad;
  Matrix hess;

  Jet2() = default;
  Jet2(double v, Vector g, Matrix h)
      : value(v), grad(std::move(g)), hess(std::move(h)) {}

  static Jet2 constant(double v, int dim) {
    return Jet2(v, Vector::Zero(dim), Matrix::Zero(dim, dim));
  }
  static Jet2 variable(int index, double v, int dim) {
    Jet2 j = constant(v, dim);
    j.grad(index) = 1.0;
    return j;
  }
  int dim() const { return static_cast<int>(grad.size()); }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return Jet2(a.value + b.value, a.grad + b.grad, a.hess + b.hess);
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return Jet2(a.value - b.value, a.grad - b.grad, a.hess - b.hess);
}
inline Jet2 operator-(const Jet2& a) {
  return Jet2(-a.value, -a.grad, -a.hess);
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return Jet2(a.value * b.value, a.value * b.grad + b.value * a.grad,
              a.value * b.hess + b.value * a.hess +
                  a.grad * b.grad.transpose() + b.grad * a.grad.transpose());
}
inline Jet2 operator*(double c, const Jet2& a) {
  return Jet2(c * a.value, c * a.grad, c * a.hess);
}

// Composition with a scalar function given value and first two derivatives.
inline Jet2 compose(const Jet2& a, double f, double df, double ddf) {
  return Jet2(f, df * a.grad,
              df * a.hess + ddf * (a.grad * a.grad.transpose()));
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value == 0.0) throw MathDomainError("division by zero");
  double inv = 1.0 / b.value;
  Jet2 r = compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
  return a * r;
}

inline Jet2 sin(const Jet2& a) {
  return compose(a, std::sin(a.value), std::cos(a.value), -std::sin(a.value));
}
inline Jet2 cos(const Jet2& a) {
  return compose(a, std::cos(a.value), -std::sin(a.value), -std::cos(a.value));
}
inline Jet2 tan(const Jet2& a) {
  double c = std::cos(a.value);
  if (c == 0.0) throw MathDomainError("tan at singular point");
  double t = std::tan(a.value);
  double s2 = 1.0 / (c * c);
  return compose(a, t, s2, 2.0 * t * s2);
}
inline Jet2 sqrt(const Jet2& a) {
  if (a.value <= 0.0) throw MathDomainError("sqrt of non-positive argument");
  double r = std::sqrt(a.value);
  return compose(a, r, 0.5 / r, -0.25 / (r * a.value));
}
inline Jet2 log(const Jet2& a) {
  if (a.value <= 0.0) throw MathDomainError("log of non-positive argument");
  double inv = 1.0 / a.value;
  return compose(a, std::log(a.value), inv, -inv * inv);
}

// Integer power, exponentiation by repeated multiplication.
inline Jet2 pow(const Jet2& a, int n) {
  if (n == 0) return Jet2::constant(1.0, a.dim());
  if (n < 0) return Jet2::constant(1.0, a.dim()) / pow(a, -n);
  Jet2 r = a;
  for (int i = 1; i < n; ++i) r = r * a;
  return r;
}

}  // namespace metallic
