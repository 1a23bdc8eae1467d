#pragma once

// Theorem checkers. Each check evaluates a residual at every sample point and
// reports the worst one; a check passes iff max_residual <= tolerance.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cotlift/lifted.hpp"
#include "cotlift/parallel.hpp"

namespace cotlift {

namespace tolerance {
inline constexpr double kAlgebraic = 1e-10;
inline constexpr double kFirstDerivative = 1e-8;
inline constexpr double kOracle = 1e-6;
inline constexpr double kFdStep = 1e-5;
}  // namespace tolerance

struct Witness {
  std::vector<double> q;
  std::vector<double> p;
  double residual = 0.0;
};

struct CheckReport {
  std::string check_name;
  std::size_t points_sampled = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::vector<Witness> witnesses;                             // worst first, at most 3
  std::vector<std::pair<std::string, double>> sub_residuals;  // composite checks only
  std::vector<std::string> notes;
};

struct SamplingOptions {
  std::size_t count = 100;
  std::uint64_t seed = 0x5eed'c07a'11f7ULL;
  double p_max = 2.0;
  double q_fraction = 0.8;  // q is drawn from |q| <= q_fraction * chart_radius
};

struct Sample {
  std::vector<CotangentPoint> points;
  std::uint64_t seed = 0;
};

/// Uniform q in the inner ball, uniform p in |p| <= p_max, rejecting t > t_max.
/// The first point always has p = 0.
Sample sample_points(const SpaceForm& m, const SamplingOptions& opts, double t_max);

/// Assembles a report from per-point residuals. Non-finite residuals fail the
/// check and are replaced by the largest finite double with a note.
CheckReport make_report(std::string name, const Sample& sample, const std::vector<double>& residuals,
                        double tol);

CheckReport check_almost_product(const LiftedStructure& ls, const Sample& sample,
                                 double tol = tolerance::kAlgebraic, Execution exec = Execution::Parallel);

/// N^C_AB = P^D_A ∂_D P^C_B − P^D_B ∂_D P^C_A − P^C_D (∂_A P^D_B − ∂_B P^D_A), indexed N(C, A, B),
/// in the coordinates (q, p). Derivatives by forward-mode AD.
Tensor3<double> nijenhuis_at(const LiftedStructure& ls, const CotangentPoint& pt);

CheckReport check_integrability(const LiftedStructure& ls, const Sample& sample,
                                double tol = tolerance::kFirstDerivative, Execution exec = Execution::Parallel);

/// max ‖Pᵀ G P − ε G‖ in the adapted frame.
CheckReport check_compatibility(const LiftedStructure& ls, const Sample& sample,
                                double tol = tolerance::kAlgebraic, Execution exec = Execution::Parallel);

/// (dΩ)_ABC = ∂_A Ω_BC + ∂_B Ω_CA + ∂_C Ω_AB for a coordinate 2-form given as
/// a callable on first-order dual vectors of length 2n.
template <class Form>
Tensor3<double> exterior_derivative_2form(Form&& omega, const std::vector<double>& x) {
  const std::size_t dim = x.size();
  std::vector<Mat<double>> d;
  d.reserve(dim);
  for (std::size_t a = 0; a < dim; ++a) d.push_back(tangents(omega(seed_direction(x, a))));
  Tensor3<double> out(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t c = 0; c < dim; ++c) out(a, b, c) = d[a](b, c) + d[b](c, a) + d[c](a, b);
  return out;
}

/// Numeric dΩ of the structure's 2-form at a point.
Tensor3<double> exterior_derivative_omega(const LiftedStructure& ls, const CotangentPoint& pt);

/// Closed form dΩ = ½(μ − λ')(g0^h δ^j_i − g0^j δ^h_i) Dp_h ∧ Dp_j ∧ dq^i in coordinate components.
Tensor3<double> analytic_domega(const LiftedStructure& ls, const CotangentPoint& pt);

/// max ‖dΩ‖ from the numeric exterior derivative.
CheckReport check_closure(const LiftedStructure& ls, const Sample& sample,
                          double tol = tolerance::kFirstDerivative, Execution exec = Execution::Parallel);

/// max ‖dΩ_numeric − dΩ_analytic‖.
CheckReport check_closure_formula(const LiftedStructure& ls, const Sample& sample,
                                  double tol = tolerance::kFirstDerivative, Execution exec = Execution::Parallel);

/// Compatibility, integrability and closure at one tolerance; carries the three sub-residuals.
CheckReport check_para_kahler(const LiftedStructure& ls, const Sample& sample,
                              double tol = tolerance::kFirstDerivative, Execution exec = Execution::Parallel);

/// Curvature residual against the constant-curvature form at the sample's base points.
CheckReport check_space_form(const SpaceForm& m, const Sample& sample, double tol = 1e-9,
                             Execution exec = Execution::Parallel);

/// Worst relative disagreement between AD and central differences over every
/// derivative the checks consume: metric, Christoffel symbols, P and Ω in
/// coordinates, and the coefficient families at the point's t.
CheckReport check_oracle(const LiftedStructure& ls, const Sample& sample, double tol = tolerance::kOracle,
                         double step = tolerance::kFdStep, Execution exec = Execution::Parallel);

/// Number of positive and negative eigenvalues of G_adapted.
std::pair<int, int> metric_signature(const LiftedStructure& ls, const CotangentPoint& pt);

/// Eigenvalues of P_adapted within `tol` of +1 and of −1.
std::pair<int, int> structure_eigen_counts(const LiftedStructure& ls, const CotangentPoint& pt, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Finite-difference oracle, kept independent of the AD path.

/// Central differences (f(x + h e_a) − f(x − h e_a)) / 2h; J(out, a).
template <class F>
Mat<double> fd_jacobian(F&& f, const std::vector<double>& x, double h) {
  std::vector<std::vector<double>> cols;
  for (std::size_t a = 0; a < x.size(); ++a) {
    std::vector<double> xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    const std::vector<double> fp = f(xp), fm = f(xm);
    std::vector<double> col(fp.size());
    for (std::size_t k = 0; k < fp.size(); ++k) col[k] = (fp[k] - fm[k]) / (2.0 * h);
    cols.push_back(std::move(col));
  }
  Mat<double> j(cols.empty() ? 0 : cols.front().size(), x.size());
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t k = 0; k < cols[a].size(); ++k) j(k, a) = cols[a][k];
  return j;
}

/// |ad − fd| / max(1, |ad|).
double relative_error(double ad, double fd);

}  // namespace cotlift
