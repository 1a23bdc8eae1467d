#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "cotlift/coefficients.hpp"
#include "cotlift/dense.hpp"

namespace testing {

inline std::vector<double> random_in_ball(std::mt19937_64& rng, std::size_t n, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<double> x(n);
    double r2 = 0;
    for (auto& v : x) {
      v = radius * u(rng);
      r2 += v * v;
    }
    if (r2 <= radius * radius) return x;
  }
}

inline Eigen::MatrixXd to_eigen(const cotlift::Mat<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

inline cotlift::Mat<double> mat_from_eigen(const Eigen::MatrixXd& e) {
  cotlift::Mat<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// Fills c1, d1, c2, d2 from the compatibility rule.
inline void complete_metric(cotlift::StructureSpec& s) {
  const auto m = cotlift::compatible_metric_coeffs({s.a1, s.b1, s.a2, s.b2}, s.lambda, s.mu, s.epsilon, s.t_max,
                                                   s.provenance.require_positive);
  s.c1 = m.c1;
  s.d1 = m.d1;
  s.c2 = m.c2;
  s.d2 = m.d2;
  s.provenance.compatible = true;
}

// The cited cotangent construction: a1 = 1/beta, b1 = u/(alpha beta), a2 = beta, b2 = −u beta/(alpha + 2tu).
inline cotlift::StructureSpec cited_spec(double c, cotlift::ScalarFamily u, cotlift::ScalarFamily lambda,
                                         cotlift::ScalarFamily mu, int epsilon = -1, double alpha = 1.0,
                                         double beta = 2.0, double t_max = 2.0) {
  cotlift::StructureSpec s;
  const auto p = cotlift::peyghan_heydari(alpha, beta, u);
  s.a1 = p.a1;
  s.b1 = p.b1;
  s.a2 = p.a2;
  s.b2 = p.b2;
  s.lambda = std::move(lambda);
  s.mu = std::move(mu);
  s.epsilon = epsilon;
  s.curvature = c;
  s.t_max = t_max;
  s.provenance.almost_product = true;
  complete_metric(s);
  return s;
}

// a1 given; b1, b2 from the integrability rule for curvature c; a2 = 1/a1.
inline cotlift::StructureSpec integrable_spec(double c, cotlift::ScalarFamily a1, cotlift::ScalarFamily lambda,
                                              cotlift::ScalarFamily mu, int epsilon = -1, double t_max = 2.0) {
  cotlift::StructureSpec s;
  s.a1 = std::move(a1);
  std::tie(s.b1, s.b2) = cotlift::integrable_b_coeffs(s.a1, c, t_max);
  s.a2 = cotlift::complete_almost_product(s.a1, s.b1, t_max).first;
  s.lambda = std::move(lambda);
  s.mu = std::move(mu);
  s.epsilon = epsilon;
  s.curvature = c;
  s.t_max = t_max;
  s.provenance.almost_product = true;
  s.provenance.integrable = true;
  complete_metric(s);
  return s;
}

}  // namespace testing
