#pragma once

#include <cmath>

namespace stiefel {

// Forward-mode dual number v + d*eps with eps^2 = 0. Nesting Dual<Dual<double>>
// yields exact second directional derivatives.
template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(double x) : v(x), d(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(T value, T deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }
};

template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

template <class T> Dual<T> operator+(const Dual<T>& a, double s) { return {a.v + s, a.d}; }
template <class T> Dual<T> operator+(double s, const Dual<T>& a) { return {s + a.v, a.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, double s) { return {a.v - s, a.d}; }
template <class T> Dual<T> operator-(double s, const Dual<T>& a) { return {s - a.v, -a.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double s) { return {a.v * s, a.d * s}; }
template <class T> Dual<T> operator*(double s, const Dual<T>& a) { return {s * a.v, s * a.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double s) { return {a.v / s, a.d / s}; }
template <class T> Dual<T> operator/(double s, const Dual<T>& a) { return {s / a.v, -s * a.d / (a.v * a.v)}; }

template <class T> Dual<T> sin(const Dual<T>& a) {
  using std::cos, std::sin;
  return {sin(a.v), cos(a.v) * a.d};
}
template <class T> Dual<T> cos(const Dual<T>& a) {
  using std::cos, std::sin;
  return {cos(a.v), -sin(a.v) * a.d};
}
template <class T> Dual<T> tan(const Dual<T>& a) {
  using std::cos, std::tan;
  const T c = cos(a.v);
  return {tan(a.v), a.d / (c * c)};
}

/// Integer power by repeated multiplication; exact for any scalar type.
template <class T>
T ipow(const T& x, int n) {
  T r(1.0);
  for (int i = 0; i < n; ++i) r = r * x;
  return r;
}

inline double primal(double x) { return x; }
template <class T> double primal(const Dual<T>& x) { return primal(x.v); }

}  // namespace stiefel
