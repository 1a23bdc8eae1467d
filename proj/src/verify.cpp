#include "cotlift/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cotlift {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

template <class S>
std::pair<Vec<S>, Vec<S>> split(const Vec<S>& x) {
  const std::size_t n = x.size() / 2;
  return {Vec<S>(x.begin(), x.begin() + static_cast<long>(n)), Vec<S>(x.begin() + static_cast<long>(n), x.end())};
}

std::vector<double> joined(const CotangentPoint& pt) {
  std::vector<double> x = pt.q;
  x.insert(x.end(), pt.p.begin(), pt.p.end());
  return x;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return d;
    m = std::max(m, d);
  }
  return m;
}

std::vector<double> flatten(const Mat<double>& m) { return m.data(); }

double worst_relative(const Mat<double>& ad, const Mat<double>& fd) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ad.data().size(); ++i) {
    const double e = relative_error(ad.data()[i], fd.data()[i]);
    if (std::isnan(e)) return e;
    worst = std::max(worst, e);
  }
  return worst;
}

// Builds the AD Jacobian J(out, axis) from per-axis tangent vectors.
Mat<double> jacobian_from_tangents(const std::vector<std::vector<double>>& cols) {
  Mat<double> j(cols.empty() ? 0 : cols.front().size(), cols.size());
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t k = 0; k < cols[a].size(); ++k) j(k, a) = cols[a][k];
  return j;
}

}  // namespace

double relative_error(double ad, double fd) { return std::abs(ad - fd) / std::max(1.0, std::abs(ad)); }

Sample sample_points(const SpaceForm& m, const SamplingOptions& opts, double t_max) {
  if (opts.count == 0) throw std::invalid_argument("sample_points: count must be positive");
  const std::size_t n = static_cast<std::size_t>(m.dim());
  const double qr = opts.q_fraction * m.chart_radius();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  auto draw_ball = [&](double radius) {
    std::vector<double> v(n);
    for (;;) {
      double r2 = 0.0;
      for (auto& x : v) {
        x = radius * unit(rng);
        r2 += x * x;
      }
      if (r2 <= radius * radius) return v;
    }
  };

  Sample s;
  s.seed = opts.seed;
  s.points.reserve(opts.count);
  {
    std::vector<double> q;
    do q = draw_ball(qr);
    while (!m.contains(q));
    s.points.push_back(make_point(m, q, std::vector<double>(n, 0.0)));
  }
  std::size_t attempts = 0;
  const std::size_t max_attempts = 10000 * opts.count;
  while (s.points.size() < opts.count) {
    if (++attempts > max_attempts)
      throw std::runtime_error("sample_points: rejection sampling cannot reach t <= t_max; lower p_max");
    const std::vector<double> q = draw_ball(qr);
    if (!m.contains(q)) continue;
    const std::vector<double> p = draw_ball(opts.p_max);
    CotangentPoint pt = make_point(m, q, p);
    if (pt.t > t_max) continue;
    s.points.push_back(std::move(pt));
  }
  return s;
}

CheckReport make_report(std::string name, const Sample& sample, const std::vector<double>& residuals, double tol) {
  CheckReport r;
  r.check_name = std::move(name);
  r.points_sampled = residuals.size();
  r.tolerance = tol;
  r.seed = sample.seed;

  std::vector<double> res = residuals;
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!std::isfinite(res[i])) {
      r.notes.push_back("non-finite residual at sample point " + std::to_string(i));
      res[i] = std::numeric_limits<double>::max();
    }

  std::vector<std::size_t> order(res.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return res[a] > res[b]; });
  for (std::size_t k = 0; k < std::min<std::size_t>(3, order.size()); ++k) {
    const auto& pt = sample.points[order[k]];
    r.witnesses.push_back({pt.q, pt.p, res[order[k]]});
  }
  r.max_residual = order.empty() ? 0.0 : res[order.front()];
  r.passed = r.notes.empty() && r.max_residual <= tol;
  return r;
}

CheckReport check_almost_product(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  const auto res = map_points(
      sample.points.size(),
      [&](std::size_t i) {
        const Mat<double> p = p_adapted(ls, sample.points[i]);
        return max_abs(p * p - Mat<double>::identity(p.rows()));
      },
      exec);
  return make_report("almost_product", sample, res, tol);
}

Tensor3<double> nijenhuis_at(const LiftedStructure& ls, const CotangentPoint& pt) {
  const std::vector<double> x = joined(pt);
  const std::size_t dim = x.size();
  const Mat<double> p = ls.p_coordinate(pt.q, pt.p);
  std::vector<Mat<double>> dp;  // dp[D](C, B) = ∂_D P^C_B
  dp.reserve(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const auto [q, pp] = split(seed_direction(x, d));
    dp.push_back(tangents(ls.p_coordinate(q, pp)));
  }

  Tensor3<double> nij(dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          s += p(d, a) * dp[d](c, b) - p(d, b) * dp[d](c, a);
          s -= p(c, d) * (dp[a](d, b) - dp[b](d, a));
        }
        nij(c, a, b) = s;
        nij(c, b, a) = -s;
      }
  return nij;
}

CheckReport check_integrability(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  const auto res = map_points(
      sample.points.size(), [&](std::size_t i) { return max_abs(nijenhuis_at(ls, sample.points[i])); }, exec);
  CheckReport r = make_report("integrability", sample, res, tol);
  if (ls.dim() < 3) r.notes.push_back("n = 2: the integrability characterization assumes n > 2");
  return r;
}

CheckReport check_compatibility(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  const double eps = ls.spec().epsilon;
  const auto res = map_points(
      sample.points.size(),
      [&](std::size_t i) {
        const Mat<double> p = p_adapted(ls, sample.points[i]);
        const Mat<double> g = g_adapted(ls, sample.points[i]);
        return max_abs(transpose(p) * g * p - eps * g);
      },
      exec);
  return make_report("compatibility", sample, res, tol);
}

Tensor3<double> exterior_derivative_omega(const LiftedStructure& ls, const CotangentPoint& pt) {
  ls.require_para_hermitian();
  return exterior_derivative_2form(
      [&](const Vec<Dual<double>>& x) {
        const auto [q, p] = split(x);
        return ls.omega_coordinate(q, p);
      },
      joined(pt));
}

Tensor3<double> analytic_domega(const LiftedStructure& ls, const CotangentPoint& pt) {
  ls.require_para_hermitian();
  ls.require_range(pt.t);
  const std::size_t n = pt.dim();
  const std::size_t dim = 2 * n;
  const double k = 0.5 * (ls.spec().mu.value(pt.t) - ls.spec().lambda.deriv(pt.t));
  // Rows i < n are dq^i, rows n + h are Dp_h, in coordinate components.
  const Mat<double> coframe = coordinate_to_adapted(pt.gamma0);

  Tensor3<double> out(dim);
  if (k == 0.0) return out;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const double coef = k * (pt.g0[h] * (j == i ? 1.0 : 0.0) - pt.g0[j] * (h == i ? 1.0 : 0.0));
        if (coef == 0.0) continue;
        const std::size_t r0 = n + h, r1 = n + j, r2 = i;
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c) {
              // det of the 3×3 matrix [θ_r(e_a), θ_r(e_b), θ_r(e_c)] over the three covectors
              const double det = coframe(r0, a) * (coframe(r1, b) * coframe(r2, c) - coframe(r1, c) * coframe(r2, b)) -
                                 coframe(r0, b) * (coframe(r1, a) * coframe(r2, c) - coframe(r1, c) * coframe(r2, a)) +
                                 coframe(r0, c) * (coframe(r1, a) * coframe(r2, b) - coframe(r1, b) * coframe(r2, a));
              out(a, b, c) += coef * det;
            }
      }
  return out;
}

CheckReport check_closure(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  ls.require_para_hermitian();
  const auto res = map_points(
      sample.points.size(), [&](std::size_t i) { return max_abs(exterior_derivative_omega(ls, sample.points[i])); },
      exec);
  return make_report("closure", sample, res, tol);
}

CheckReport check_closure_formula(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  ls.require_para_hermitian();
  const auto res = map_points(
      sample.points.size(),
      [&](std::size_t i) {
        return max_abs_diff(exterior_derivative_omega(ls, sample.points[i]).data(),
                            analytic_domega(ls, sample.points[i]).data());
      },
      exec);
  return make_report("closure_formula", sample, res, tol);
}

CheckReport check_para_kahler(const LiftedStructure& ls, const Sample& sample, double tol, Execution exec) {
  ls.require_para_hermitian();
  const std::size_t count = sample.points.size();
  const double eps = ls.spec().epsilon;
  const auto compat = map_points(
      count,
      [&](std::size_t i) {
        const Mat<double> p = p_adapted(ls, sample.points[i]);
        const Mat<double> g = g_adapted(ls, sample.points[i]);
        return max_abs(transpose(p) * g * p - eps * g);
      },
      exec);
  const auto integ =
      map_points(count, [&](std::size_t i) { return max_abs(nijenhuis_at(ls, sample.points[i])); }, exec);
  const auto closed = map_points(
      count, [&](std::size_t i) { return max_abs(exterior_derivative_omega(ls, sample.points[i])); }, exec);

  std::vector<double> combined(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r[] = {compat[i], integ[i], closed[i]};
    combined[i] = *std::max_element(std::begin(r), std::end(r));
    for (double v : r)
      if (std::isnan(v)) combined[i] = v;
  }
  CheckReport r = make_report("para_kahler", sample, combined, tol);
  const CheckReport subs[] = {make_report("compatibility", sample, compat, tol),
                              make_report("integrability", sample, integ, tol),
                              make_report("closure", sample, closed, tol)};
  for (const auto& sub : subs) {
    r.sub_residuals.emplace_back(sub.check_name, sub.max_residual);
    for (const auto& note : sub.notes) r.notes.push_back(sub.check_name + ": " + note);
  }
  if (ls.dim() < 3) r.notes.push_back("n = 2: the integrability characterization assumes n > 2");
  r.passed = subs[0].passed && subs[1].passed && subs[2].passed;
  return r;
}

CheckReport check_space_form(const SpaceForm& m, const Sample& sample, double tol, Execution exec) {
  const auto res = map_points(
      sample.points.size(),
      [&](std::size_t i) {
        const auto& q = sample.points[i].q;
        const Tensor4<double> r = curvature_at(m, q);
        return max_abs_diff(r.data(), space_form_curvature(metric_at(m, q), m.curvature()).data());
      },
      exec);
  return make_report("space_form", sample, res, tol);
}

CheckReport check_oracle(const LiftedStructure& ls, const Sample& sample, double tol, double step, Execution exec) {
  const SpaceForm& m = ls.base();
  const std::size_t n = static_cast<std::size_t>(m.dim());
  const bool with_omega = ls.spec().epsilon == -1;
  const StructureSpec& sp = ls.spec();
  const std::vector<const ScalarFamily*> families = {&sp.a1, &sp.b1, &sp.a2, &sp.b2, &sp.c1,
                                                     &sp.d1, &sp.c2, &sp.d2, &sp.lambda, &sp.mu};

  const auto res = map_points(
      sample.points.size(),
      [&](std::size_t idx) {
        const CotangentPoint& pt = sample.points[idx];
        double worst = 0.0;

        // metric
        {
          std::vector<std::vector<double>> cols;
          for (std::size_t l = 0; l < n; ++l) cols.push_back(tangents(m.metric(seed_direction(pt.q, l))).data());
          const Mat<double> fd =
              fd_jacobian([&](const std::vector<double>& q) { return flatten(metric_at(m, q)); }, pt.q, step);
          worst = std::max(worst, worst_relative(jacobian_from_tangents(cols), fd));
        }
        // Christoffel symbols
        {
          std::vector<std::vector<double>> cols;
          for (std::size_t l = 0; l < n; ++l) {
            const Tensor3<Dual<double>> g = m.christoffel(seed_direction(pt.q, l));
            std::vector<double> col;
            for (const auto& v : g.data()) col.push_back(v.eps);
            cols.push_back(std::move(col));
          }
          const Mat<double> fd =
              fd_jacobian([&](const std::vector<double>& q) { return christoffel_at(m, q).data(); }, pt.q, step);
          worst = std::max(worst, worst_relative(jacobian_from_tangents(cols), fd));
        }
        // P and Ω in coordinates
        const std::vector<double> x = joined(pt);
        auto coordinate_oracle = [&](auto&& eval_dual, auto&& eval_double) {
          std::vector<std::vector<double>> cols;
          for (std::size_t a = 0; a < x.size(); ++a) {
            const auto [q, p] = split(seed_direction(x, a));
            cols.push_back(tangents(eval_dual(q, p)).data());
          }
          const Mat<double> fd = fd_jacobian(
              [&](const std::vector<double>& y) {
                const auto [q, p] = split(y);
                return flatten(eval_double(q, p));
              },
              x, step);
          return worst_relative(jacobian_from_tangents(cols), fd);
        };
        worst = std::max(worst, coordinate_oracle(
                                    [&](const Vec<Dual<double>>& q, const Vec<Dual<double>>& p) {
                                      return ls.p_coordinate(q, p);
                                    },
                                    [&](const Vec<double>& q, const Vec<double>& p) { return ls.p_coordinate(q, p); }));
        if (with_omega)
          worst = std::max(worst, coordinate_oracle(
                                      [&](const Vec<Dual<double>>& q, const Vec<Dual<double>>& p) {
                                        return ls.omega_coordinate(q, p);
                                      },
                                      [&](const Vec<double>& q, const Vec<double>& p) {
                                        return ls.omega_coordinate(q, p);
                                      }));
        // coefficient families
        for (const ScalarFamily* f : families) {
          const double fd = (f->value(pt.t + step) - f->value(pt.t - step)) / (2.0 * step);
          const double e = relative_error(f->deriv(pt.t), fd);
          if (std::isnan(e)) return e;
          worst = std::max(worst, e);
        }
        return worst;
      },
      exec);
  return make_report("oracle", sample, res, tol);
}

std::pair<int, int> metric_signature(const LiftedStructure& ls, const CotangentPoint& pt) {
  const Mat<double> g = g_adapted(ls, pt);
  const Eigen::Index d = static_cast<Eigen::Index>(g.rows());
  Eigen::MatrixXd e(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) e(i, j) = g(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double v = solver.eigenvalues()(i);
    if (v > 0) ++pos;
    if (v < 0) ++neg;
  }
  return {pos, neg};
}

std::pair<int, int> structure_eigen_counts(const LiftedStructure& ls, const CotangentPoint& pt, double tol) {
  const Mat<double> p = p_adapted(ls, pt);
  const Eigen::Index d = static_cast<Eigen::Index>(p.rows());
  Eigen::MatrixXd e(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) e(i, j) = p(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(e, false);
  int plus = 0, minus = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const std::complex<double> v = solver.eigenvalues()(i);
    if (std::abs(v - 1.0) <= tol) ++plus;
    if (std::abs(v + 1.0) <= tol) ++minus;
  }
  return {plus, minus};
}

}  // namespace cotlift
