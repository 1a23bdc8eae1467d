#include "cotlift/spaceform.hpp"

#include <cmath>
#include <stdexcept>

namespace cotlift {

std::string to_string(Model m) {
  switch (m) {
    case Model::Flat: return "flat";
    case Model::ConformalBall: return "conformal_ball";
    case Model::PerturbedConformal: return "perturbed_conformal";
  }
  return "unknown";
}

SpaceForm::SpaceForm(int n, double c, Model m, double strength, double radius)
    : n_(n), c_(c), model_(m), strength_(strength), radius_(radius) {
  if (n < 2) throw std::invalid_argument("SpaceForm: dimension must be at least 2");
  if (!(radius > 0.0)) throw std::invalid_argument("SpaceForm: chart radius must be positive");
}

SpaceForm SpaceForm::flat(int n, double chart_radius) {
  return SpaceForm(n, 0.0, Model::Flat, 0.0, chart_radius);
}

SpaceForm SpaceForm::conformal_ball(int n, double c, double chart_radius) {
  return SpaceForm(n, c, Model::ConformalBall, 0.0, chart_radius);
}

SpaceForm SpaceForm::perturbed_conformal(int n, double c, double strength, double chart_radius) {
  return SpaceForm(n, c, Model::PerturbedConformal, strength, chart_radius);
}

bool SpaceForm::contains(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) return false;
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  if (r2 > radius_ * radius_) return false;
  if (1.0 + 0.25 * c_ * r2 <= 0.0) return false;
  if (model_ == Model::PerturbedConformal && 1.0 + strength_ * x[0] <= 0.0) return false;
  return true;
}

void SpaceForm::require_domain(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_))
    throw ChartDomainError("chart point has dimension " + std::to_string(x.size()) + ", expected " +
                           std::to_string(n_));
  if (!contains(x)) throw ChartDomainError("chart point outside the domain of the " + to_string(model_) + " chart");
}

Mat<double> metric_at(const SpaceForm& m, std::span<const double> x) {
  return m.metric(Vec<double>(x.begin(), x.end()));
}

Mat<double> inverse_metric_at(const SpaceForm& m, std::span<const double> x) {
  return m.inverse_metric(Vec<double>(x.begin(), x.end()));
}

Tensor3<double> christoffel_at(const SpaceForm& m, std::span<const double> x) {
  return m.christoffel(Vec<double>(x.begin(), x.end()));
}

Tensor4<double> curvature_at(const SpaceForm& m, std::span<const double> x) {
  return m.riemann(Vec<double>(x.begin(), x.end()));
}

Tensor4<double> space_form_curvature(const Mat<double>& g, double c) {
  const std::size_t n = g.rows();
  Tensor4<double> r(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          r(h, k, i, j) = c * ((h == i ? g(k, j) : 0.0) - (h == j ? g(k, i) : 0.0));
  return r;
}

SpaceFormResidual check_space_form(const SpaceForm& m, const std::vector<std::vector<double>>& sample,
                                   double tol) {
  if (sample.empty()) throw std::invalid_argument("check_space_form: empty sample");
  SpaceFormResidual out;
  out.tolerance = tol;
  for (std::size_t s = 0; s < sample.size(); ++s) {
    const auto& x = sample[s];
    const Tensor4<double> r = curvature_at(m, x);
    const Tensor4<double> ref = space_form_curvature(metric_at(m, x), m.curvature());
    double res = 0.0;
    for (std::size_t i = 0; i < r.data().size(); ++i) res = std::max(res, std::abs(r.data()[i] - ref.data()[i]));
    if (std::isnan(res) || res > out.max_residual) {
      out.max_residual = res;
      out.worst_index = s;
    }
  }
  out.passed = out.max_residual <= tol;
  return out;
}

}  // namespace cotlift
