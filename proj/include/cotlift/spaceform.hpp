#pragma once

// Chart models of constant-curvature Riemannian manifolds.
//
// All models share the conformal chart
//     g_ij(x) = w(x) δ_ij / (1 + (c/4)|x|²)²,
// where w ≡ 1 except for PerturbedConformal (w = 1 + strength·x¹), which
// breaks constant curvature and exists to exercise negative tests.
// Derivatives are exact: Christoffel symbols differentiate the metric with
// one dual layer, curvature differentiates Christoffel symbols with another.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cotlift/dense.hpp"
#include "cotlift/errors.hpp"

namespace cotlift {

enum class Model { Flat, ConformalBall, PerturbedConformal };

std::string to_string(Model m);

class SpaceForm {
 public:
  static SpaceForm flat(int n, double chart_radius = 1.0);
  static SpaceForm conformal_ball(int n, double c, double chart_radius = 1.0);
  static SpaceForm perturbed_conformal(int n, double c, double strength = 0.1,
                                       double chart_radius = 1.0);

  int dim() const { return n_; }
  double curvature() const { return c_; }
  Model model() const { return model_; }
  double chart_radius() const { return radius_; }
  double strength() const { return strength_; }

  /// Whether x is in the chart domain (radius bound and positive conformal factor).
  bool contains(std::span<const double> x) const;

  template <class S>
  Mat<S> metric(const Vec<S>& x) const;

  template <class S>
  Mat<S> inverse_metric(const Vec<S>& x) const {
    return inverse(metric(x));
  }

  /// Γ(k, i, j) = Γ^k_ij.
  template <class S>
  Tensor3<S> christoffel(const Vec<S>& x) const;

  /// R(h, k, i, j) = R^h_kij, with R(∂_i, ∂_j)∂_k = R^h_kij ∂_h.
  template <class S>
  Tensor4<S> riemann(const Vec<S>& x) const;

 private:
  SpaceForm(int n, double c, Model m, double strength, double radius);
  void require_domain(std::span<const double> x) const;

  int n_;
  double c_;
  Model model_;
  double strength_;
  double radius_;
};

Mat<double> metric_at(const SpaceForm& m, std::span<const double> x);
Mat<double> inverse_metric_at(const SpaceForm& m, std::span<const double> x);
Tensor3<double> christoffel_at(const SpaceForm& m, std::span<const double> x);
Tensor4<double> curvature_at(const SpaceForm& m, std::span<const double> x);

/// c(δ^h_i g_kj − δ^h_j g_ki): the curvature tensor of a space form of curvature c.
Tensor4<double> space_form_curvature(const Mat<double>& g, double c);

struct SpaceFormResidual {
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t worst_index = 0;
  bool passed = false;
};

/// Max over the sample of ‖R − c(δg − δg)‖∞; passes iff ≤ tol.
SpaceFormResidual check_space_form(const SpaceForm& m, const std::vector<std::vector<double>>& sample,
                                   double tol);

// ---------------------------------------------------------------------------

template <class S>
Mat<S> SpaceForm::metric(const Vec<S>& x) const {
  std::vector<double> xp(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xp[i] = primal(x[i]);
  require_domain(xp);

  S r2(0.0);
  for (const S& xi : x) r2 += xi * xi;
  S denom = 1.0 + (0.25 * c_) * r2;
  S factor = 1.0 / (denom * denom);
  if (model_ == Model::PerturbedConformal) factor = factor * (1.0 + strength_ * x[0]);

  Mat<S> g(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) = factor;
  return g;
}

template <class S>
Tensor3<S> SpaceForm::christoffel(const Vec<S>& x) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<Mat<S>> dg;
  dg.reserve(n);
  for (std::size_t l = 0; l < n; ++l) dg.push_back(tangents(metric(seed_direction(x, l))));
  const Mat<S> ginv = inverse_metric(x);

  Tensor3<S> gamma(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        S s(0.0);
        for (std::size_t l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = 0.5 * s;
        gamma(k, j, i) = gamma(k, i, j);
      }
  return gamma;
}

template <class S>
Tensor4<S> SpaceForm::riemann(const Vec<S>& x) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  const Tensor3<S> gamma = christoffel(x);
  // dgamma[m](h, i, j) = ∂_m Γ^h_ij
  std::vector<Tensor3<S>> dgamma;
  dgamma.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    const Tensor3<Dual<S>> gd = christoffel(seed_direction(x, m));
    Tensor3<S> d(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) d(a, b, c) = gd(a, b, c).eps;
    dgamma.push_back(std::move(d));
  }

  Tensor4<S> r(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          S s = dgamma[i](h, j, k) - dgamma[j](h, i, k);
          for (std::size_t m = 0; m < n; ++m) s += gamma(h, i, m) * gamma(m, j, k) - gamma(h, j, m) * gamma(m, i, k);
          r(h, k, i, j) = s;
          r(h, k, j, i) = -s;
        }
  return r;
}

}  // namespace cotlift
