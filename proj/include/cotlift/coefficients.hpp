#pragma once

// Scalar coefficient functions of the energy density t and the derivation
// rules that tie them together:
//   almost product     a1·a2 = 1,  (a1 + 2t b1)(a2 + 2t b2) = 1
//   integrability      b1 = (a1 a1' + c)/(a1 − 2t a1'),  b2 = (a1 a2' − a2² c)/(a1 + 2c t a2)
//   compatibility      c1/a1 = ε c2/a2 = λ,  (c1 + 2t d1)/(a1 + 2t b1) = ε(c2 + 2t d2)/(a2 + 2t b2) = λ + 2tμ
//   closure            μ = λ'

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cotlift/dual.hpp"
#include "cotlift/errors.hpp"
#include "cotlift/jet.hpp"

namespace cotlift {

/// A smooth function of t, evaluated through its Taylor expansion so that
/// derivatives of any order are exact. Cheap to copy; immutable.
class ScalarFamily {
 public:
  /// Taylor coefficients up to `order` at t0.
  using Rule = std::function<Jet(double t0, int order)>;

  ScalarFamily();  // identically zero
  ScalarFamily(std::string description, Rule rule);

  static ScalarFamily constant(double v);
  static ScalarFamily affine(double intercept, double slope);
  /// Σ coefficients[k] t^k.
  static ScalarFamily polynomial(std::vector<double> coefficients);
  /// scale · exp(rate · t).
  static ScalarFamily exponential(double scale, double rate);

  double value(double t) const { return rule_->operator()(t, 0)[0]; }
  double deriv(double t) const { return rule_->operator()(t, 1)[1]; }
  Jet taylor(double t0, int order) const { return (*rule_)(t0, order); }
  const std::string& description() const { return description_; }

  ScalarFamily derivative() const;
  ScalarFamily scaled(double factor) const;

  /// Evaluation on plain or dual scalars; exact through the nesting depth of S.
  template <class S>
  S operator()(const S& t) const {
    constexpr int depth = ad_depth_v<S>;
    if constexpr (depth == 0) {
      return value(t);
    } else {
      const double t0 = primal(t);
      const Jet j = taylor(t0, depth);
      const S d = t - t0;
      S r(j[depth]);
      for (int k = depth - 1; k >= 0; --k) r = r * d + j[k];
      return r;
    }
  }

 private:
  std::string description_;
  std::shared_ptr<const Rule> rule_;
};

struct AlmostProductCoeffs {
  ScalarFamily a1, b1, a2, b2;
};

struct MetricCoeffs {
  ScalarFamily c1, d1, c2, d2;
};

/// Which derivation rules produced which coefficients.
struct Provenance {
  bool almost_product = false;     // a2, b2 from the P² = I completion
  bool integrable = false;         // b1, b2 from the integrability formulas
  bool compatible = false;         // c1, d1, c2, d2 from the proportionality rule
  bool para_kahler_mu = false;     // μ = λ'
  bool require_positive = true;    // enforce a1, a1 + 2t b1, λ, λ + 2tμ > 0
};

struct StructureSpec {
  ScalarFamily a1, b1, a2, b2;
  ScalarFamily c1, d1, c2, d2;
  ScalarFamily lambda, mu;
  int epsilon = -1;
  double curvature = 0.0;
  double t_max = 2.0;
  Provenance provenance;
};

inline constexpr int kValidationGridSize = 64;
inline constexpr double kDenominatorThreshold = 1e-8;

/// 64 uniformly spaced t values in [0, t_max].
std::vector<double> validation_grid(double t_max);

/// Throws DegenerateCoefficient if f comes within the threshold of zero or
/// changes sign on the validation grid.
void require_nonvanishing(const std::string& what, const ScalarFamily& f, double t_max);

AlmostProductCoeffs peyghan_heydari(double alpha, double beta, const ScalarFamily& u);

/// (a2, b2) with a2 = 1/a1 and b2 = −b1/(a1(a1 + 2t b1)).
std::pair<ScalarFamily, ScalarFamily> complete_almost_product(const ScalarFamily& a1, const ScalarFamily& b1,
                                                              double t_max);

/// (b1, b2) making the structure integrable over a base of curvature c, with a2 = 1/a1.
std::pair<ScalarFamily, ScalarFamily> integrable_b_coeffs(const ScalarFamily& a1, double c, double t_max);

/// Metric coefficients compatible with the P part under the given ε.
/// The t = 0 singularity of the second ratio is removed algebraically:
///   d1 = μ a1 + λ b1 + 2t μ b1,  d2 = ε(μ a2 + λ b2 + 2t μ b2).
MetricCoeffs compatible_metric_coeffs(const AlmostProductCoeffs& p, const ScalarFamily& lambda,
                                      const ScalarFamily& mu, int epsilon, double t_max,
                                      bool require_positive = true);

ScalarFamily para_kahler_mu(const ScalarFamily& lambda);

/// Worst deviation of a1·a2 and (a1 + 2t b1)(a2 + 2t b2) from 1 on the grid.
double almost_product_defect(const StructureSpec& spec);

/// Worst violation of both proportionality chains on the grid.
double compatibility_defect(const StructureSpec& spec);

/// Checks the tagged invariants; returns human-readable violations (empty when valid).
std::vector<std::string> validate(const StructureSpec& spec);

struct FamilyPreset {
  std::string name;
  std::vector<std::string> parameters;
  std::string summary;
};

const std::vector<FamilyPreset>& family_presets();

}  // namespace cotlift
