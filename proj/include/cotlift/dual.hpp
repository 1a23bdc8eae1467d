#pragma once

// Forward-mode dual numbers. Nesting Dual<Dual<double>> yields exact mixed
// second derivatives; every generic kernel in the library is written against
// the small scalar interface below so that plain doubles, first-order and
// second-order duals all run through one code path.

#include <cmath>
#include <type_traits>

namespace cotlift {

template <class T>
struct Dual {
  T val{};
  T eps{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v), eps(0.0) {}  // NOLINT: implicit by design of scalar promotion
  constexpr Dual(T v, T e) : val(std::move(v)), eps(std::move(e)) {}
};

template <class S>
struct ad_depth : std::integral_constant<int, 0> {};
template <class T>
struct ad_depth<Dual<T>> : std::integral_constant<int, 1 + ad_depth<T>::value> {};
template <class S>
inline constexpr int ad_depth_v = ad_depth<S>::value;

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.val);
}

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.val + b.val, a.eps + b.eps};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.val - b.val, a.eps - b.eps};
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
  return {-a.val, -a.eps};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.val * b.val, a.val * b.eps + a.eps * b.val};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  T inv = T(1.0) / b.val;
  T q = a.val * inv;
  return {q, (a.eps - q * b.eps) * inv};
}

template <class T>
Dual<T> operator+(const Dual<T>& a, double b) { return {a.val + b, a.eps}; }
template <class T>
Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.val, b.eps}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, double b) { return {a.val - b, a.eps}; }
template <class T>
Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.val, -b.eps}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, double b) { return {a.val * b, a.eps * b}; }
template <class T>
Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.val, a * b.eps}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, double b) { return {a.val / b, a.eps / b}; }
template <class T>
Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) { return a = a + b; }
template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) { return a = a - b; }
template <class T>
Dual<T>& operator*=(Dual<T>& a, const Dual<T>& b) { return a = a * b; }
template <class T>
Dual<T>& operator/=(Dual<T>& a, const Dual<T>& b) { return a = a / b; }

using std::exp;
template <class T>
Dual<T> exp(const Dual<T>& a) {
  T e = exp(a.val);
  return {e, e * a.eps};
}

// Seeds a one-direction tangent: the returned dual has eps = 1 when active.
template <class S>
Dual<S> seed(const S& v, bool active) {
  return {v, S(active ? 1.0 : 0.0)};
}

}  // namespace cotlift
