#pragma once

// Univariate truncated Taylor series in a local variable s around a point.
// coeff(k) is the k-th Taylor coefficient, i.e. f^(k)(t0) / k!.

#include <cstddef>
#include <vector>

namespace cotlift {

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, double value = 0.0) : c_(static_cast<std::size_t>(order) + 1, 0.0) {
    c_[0] = value;
  }

  // The independent variable t = t0 + s.
  static Jet variable(double t0, int order);
  static Jet constant(double v, int order) { return Jet(order, v); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double coeff(int k) const { return k <= order() ? c_[static_cast<std::size_t>(k)] : 0.0; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_[0]; }

  // k-th derivative at the expansion point.
  double derivative_value(int k) const;

  // Taylor series of d/dt, one order shorter.
  Jet differentiate() const;

  // Same series cut to a lower order.
  Jet truncate(int order) const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);
  friend Jet operator+(const Jet& a, double b);
  friend Jet operator+(double a, const Jet& b) { return b + a; }
  friend Jet operator-(const Jet& a, double b) { return a + (-b); }
  friend Jet operator-(double a, const Jet& b) { return (-b) + a; }
  friend Jet operator*(const Jet& a, double b);
  friend Jet operator*(double a, const Jet& b) { return b * a; }
  friend Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
  friend Jet operator/(double a, const Jet& b) { return Jet::constant(a, b.order()) / b; }

  friend Jet exp(const Jet& a);

 private:
  std::vector<double> c_;
};

}  // namespace cotlift
