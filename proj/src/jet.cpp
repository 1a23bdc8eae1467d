#include "cotlift/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cotlift {

namespace {

int common_order(const Jet& a, const Jet& b) { return std::min(a.order(), b.order()); }

}  // namespace

Jet Jet::variable(double t0, int order) {
  Jet j(order, t0);
  if (order >= 1) j[1] = 1.0;
  return j;
}

double Jet::derivative_value(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return coeff(k) * f;
}

Jet Jet::differentiate() const {
  if (order() < 1) throw std::logic_error("Jet::differentiate needs order >= 1");
  Jet d(order() - 1);
  for (int k = 0; k <= d.order(); ++k) d[k] = (k + 1) * c_[static_cast<std::size_t>(k + 1)];
  return d;
}

Jet Jet::truncate(int order) const {
  Jet r(order);
  for (int k = 0; k <= order; ++k) r[k] = coeff(k);
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r(common_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r(common_order(a, b));
  for (int k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

Jet operator-(const Jet& a) {
  Jet r(a.order());
  for (int k = 0; k <= r.order(); ++k) r[k] = -a[k];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(common_order(a, b));
  for (int k = 0; k <= r.order(); ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    r[k] = s;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  Jet r(common_order(a, b));
  const double b0 = b[0];
  for (int k = 0; k <= r.order(); ++k) {
    double s = a[k];
    for (int i = 1; i <= k; ++i) s -= b[i] * r[k - i];
    r[k] = s / b0;
  }
  return r;
}

Jet operator+(const Jet& a, double b) {
  Jet r = a;
  r[0] += b;
  return r;
}

Jet operator*(const Jet& a, double b) {
  Jet r(a.order());
  for (int k = 0; k <= r.order(); ++k) r[k] = a[k] * b;
  return r;
}

// e' = a' e  =>  k e_k = sum_{i=1..k} i a_i e_{k-i}
Jet exp(const Jet& a) {
  Jet e(a.order());
  e[0] = std::exp(a[0]);
  for (int k = 1; k <= e.order(); ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * a[i] * e[k - i];
    e[k] = s / k;
  }
  return e;
}

}  // namespace cotlift
