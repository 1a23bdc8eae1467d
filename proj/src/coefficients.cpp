#include "cotlift/coefficients.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace cotlift {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Taylor series of the family's derivative at t0, to `order`.
Jet derivative_series(const ScalarFamily& f, double t0, int order) {
  return f.taylor(t0, order + 1).differentiate();
}

}  // namespace

ScalarFamily::ScalarFamily() : ScalarFamily(constant(0.0)) {}

ScalarFamily::ScalarFamily(std::string description, Rule rule)
    : description_(std::move(description)), rule_(std::make_shared<const Rule>(std::move(rule))) {}

ScalarFamily ScalarFamily::constant(double v) {
  return {"const(" + fmt(v) + ")", [v](double, int order) { return Jet::constant(v, order); }};
}

ScalarFamily ScalarFamily::affine(double intercept, double slope) {
  return {"affine(" + fmt(intercept) + " + " + fmt(slope) + " t)", [intercept, slope](double t0, int order) {
            return intercept + slope * Jet::variable(t0, order);
          }};
}

ScalarFamily ScalarFamily::polynomial(std::vector<double> coefficients) {
  std::string desc = "poly(";
  for (std::size_t k = 0; k < coefficients.size(); ++k) desc += (k ? ", " : "") + fmt(coefficients[k]);
  desc += ")";
  return {desc, [c = std::move(coefficients)](double t0, int order) {
            const Jet t = Jet::variable(t0, order);
            Jet r = Jet::constant(0.0, order);
            for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
            return r;
          }};
}

ScalarFamily ScalarFamily::exponential(double scale, double rate) {
  return {"exp(" + fmt(scale) + ", " + fmt(rate) + ")", [scale, rate](double t0, int order) {
            return scale * exp(rate * Jet::variable(t0, order));
          }};
}

ScalarFamily ScalarFamily::derivative() const {
  return {"d/dt[" + description_ + "]", [self = *this](double t0, int order) {
            return derivative_series(self, t0, order);
          }};
}

ScalarFamily ScalarFamily::scaled(double factor) const {
  return {fmt(factor) + "*" + description_, [self = *this, factor](double t0, int order) {
            return factor * self.taylor(t0, order);
          }};
}

std::vector<double> validation_grid(double t_max) {
  std::vector<double> g(kValidationGridSize);
  for (int i = 0; i < kValidationGridSize; ++i) g[i] = t_max * i / (kValidationGridSize - 1);
  return g;
}

void require_nonvanishing(const std::string& what, const ScalarFamily& f, double t_max) {
  double prev = 0.0;
  bool first = true;
  for (double t : validation_grid(t_max)) {
    const double v = f.value(t);
    if (!std::isfinite(v) || std::abs(v) < kDenominatorThreshold)
      throw DegenerateCoefficient(what + " vanishes", t);
    if (!first && (v > 0) != (prev > 0)) throw DegenerateCoefficient(what + " changes sign", t);
    prev = v;
    first = false;
  }
}

AlmostProductCoeffs peyghan_heydari(double alpha, double beta, const ScalarFamily& u) {
  AlmostProductCoeffs out;
  out.a1 = ScalarFamily::constant(1.0 / beta);
  out.a2 = ScalarFamily::constant(beta);
  out.b1 = ScalarFamily("u/(alpha beta)", [u, alpha, beta](double t0, int k) { return u.taylor(t0, k) / (alpha * beta); });
  out.b2 = ScalarFamily("-u beta/(alpha + 2 t u)", [u, alpha, beta](double t0, int k) {
    const Jet uu = u.taylor(t0, k);
    const Jet t = Jet::variable(t0, k);
    return -beta * uu / (alpha + 2.0 * t * uu);
  });
  return out;
}

std::pair<ScalarFamily, ScalarFamily> complete_almost_product(const ScalarFamily& a1, const ScalarFamily& b1,
                                                              double t_max) {
  require_nonvanishing("a1", a1, t_max);
  const ScalarFamily h1("a1 + 2t b1", [a1, b1](double t0, int k) {
    return a1.taylor(t0, k) + 2.0 * Jet::variable(t0, k) * b1.taylor(t0, k);
  });
  require_nonvanishing("a1 + 2t b1", h1, t_max);

  ScalarFamily a2("1/a1", [a1](double t0, int k) { return 1.0 / a1.taylor(t0, k); });
  ScalarFamily b2("-b1/(a1 (a1 + 2t b1))", [a1, b1, h1](double t0, int k) {
    return -b1.taylor(t0, k) / (a1.taylor(t0, k) * h1.taylor(t0, k));
  });
  return {a2, b2};
}

std::pair<ScalarFamily, ScalarFamily> integrable_b_coeffs(const ScalarFamily& a1, double c, double t_max) {
  require_nonvanishing("a1", a1, t_max);
  const ScalarFamily den1("a1 - 2t a1'", [a1](double t0, int k) {
    return a1.taylor(t0, k) - 2.0 * Jet::variable(t0, k) * derivative_series(a1, t0, k);
  });
  const ScalarFamily den2("a1 + 2 c t a2", [a1, c](double t0, int k) {
    const Jet a = a1.taylor(t0, k);
    return a + 2.0 * c * Jet::variable(t0, k) / a;
  });
  require_nonvanishing("a1 - 2t a1'", den1, t_max);
  require_nonvanishing("a1 + 2c t a2", den2, t_max);

  ScalarFamily b1("(a1 a1' + c)/(a1 - 2t a1')", [a1, c, den1](double t0, int k) {
    return (a1.taylor(t0, k) * derivative_series(a1, t0, k) + c) / den1.taylor(t0, k);
  });
  ScalarFamily b2("(a1 a2' - a2^2 c)/(a1 + 2c t a2)", [a1, c, den2](double t0, int k) {
    // a2 = 1/a1; its derivative needs one extra order of a1.
    const Jet a_ext = a1.taylor(t0, k + 1);
    const Jet a2_ext = 1.0 / a_ext;
    const Jet a = a_ext.truncate(k);
    const Jet a2 = a2_ext.truncate(k);
    const Jet a2p = a2_ext.differentiate();
    return (a * a2p - a2 * a2 * c) / den2.taylor(t0, k);
  });
  return {b1, b2};
}

MetricCoeffs compatible_metric_coeffs(const AlmostProductCoeffs& p, const ScalarFamily& lambda,
                                      const ScalarFamily& mu, int epsilon, double t_max, bool require_positive) {
  if (epsilon != 1 && epsilon != -1) throw ContractError("epsilon must be +1 or -1");
  const ScalarFamily lam2("lambda + 2t mu", [lambda, mu](double t0, int k) {
    return lambda.taylor(t0, k) + 2.0 * Jet::variable(t0, k) * mu.taylor(t0, k);
  });
  if (require_positive) {
    for (double t : validation_grid(t_max)) {
      if (!(lambda.value(t) > 0.0)) throw DegenerateCoefficient("lambda is not positive", t);
      if (!(lam2.value(t) > 0.0)) throw DegenerateCoefficient("lambda + 2t mu is not positive", t);
    }
  }
  const double eps = epsilon;
  MetricCoeffs m;
  m.c1 = ScalarFamily("lambda a1", [lambda, a1 = p.a1](double t0, int k) {
    return lambda.taylor(t0, k) * a1.taylor(t0, k);
  });
  m.c2 = ScalarFamily("eps lambda a2", [lambda, a2 = p.a2, eps](double t0, int k) {
    return eps * lambda.taylor(t0, k) * a2.taylor(t0, k);
  });
  m.d1 = ScalarFamily("mu a1 + lambda b1 + 2t mu b1", [lambda, mu, a1 = p.a1, b1 = p.b1](double t0, int k) {
    const Jet u = mu.taylor(t0, k);
    const Jet b = b1.taylor(t0, k);
    return u * a1.taylor(t0, k) + lambda.taylor(t0, k) * b + 2.0 * Jet::variable(t0, k) * u * b;
  });
  m.d2 = ScalarFamily("eps (mu a2 + lambda b2 + 2t mu b2)", [lambda, mu, a2 = p.a2, b2 = p.b2, eps](double t0, int k) {
    const Jet u = mu.taylor(t0, k);
    const Jet b = b2.taylor(t0, k);
    return eps * (u * a2.taylor(t0, k) + lambda.taylor(t0, k) * b + 2.0 * Jet::variable(t0, k) * u * b);
  });

  // Checked factor by factor: a product like −(1 − 2t)² touches zero without changing sign.
  require_nonvanishing("c1", m.c1, t_max);
  require_nonvanishing("c2", m.c2, t_max);
  require_nonvanishing("c1 + 2t d1", ScalarFamily("c1 + 2t d1", [m](double t0, int k) {
                         return m.c1.taylor(t0, k) + 2.0 * Jet::variable(t0, k) * m.d1.taylor(t0, k);
                       }),
                       t_max);
  require_nonvanishing("c2 + 2t d2", ScalarFamily("c2 + 2t d2", [m](double t0, int k) {
                         return m.c2.taylor(t0, k) + 2.0 * Jet::variable(t0, k) * m.d2.taylor(t0, k);
                       }),
                       t_max);
  return m;
}

ScalarFamily para_kahler_mu(const ScalarFamily& lambda) { return lambda.derivative(); }

double almost_product_defect(const StructureSpec& s) {
  double worst = 0.0;
  for (double t : validation_grid(s.t_max)) {
    const double first = s.a1.value(t) * s.a2.value(t) - 1.0;
    const double second =
        (s.a1.value(t) + 2 * t * s.b1.value(t)) * (s.a2.value(t) + 2 * t * s.b2.value(t)) - 1.0;
    worst = std::max({worst, std::abs(first), std::abs(second)});
    if (std::isnan(first) || std::isnan(second)) return first + second;
  }
  return worst;
}

double compatibility_defect(const StructureSpec& s) {
  double worst = 0.0;
  const double eps = s.epsilon;
  for (double t : validation_grid(s.t_max)) {
    const double lam = s.lambda.value(t);
    const double lam2 = lam + 2 * t * s.mu.value(t);
    const double h1 = s.a1.value(t) + 2 * t * s.b1.value(t);
    const double h2 = s.a2.value(t) + 2 * t * s.b2.value(t);
    const double r[] = {
        s.c1.value(t) - lam * s.a1.value(t),
        eps * s.c2.value(t) - lam * s.a2.value(t),
        (s.c1.value(t) + 2 * t * s.d1.value(t)) - lam2 * h1,
        eps * (s.c2.value(t) + 2 * t * s.d2.value(t)) - lam2 * h2,
    };
    for (double x : r) {
      if (std::isnan(x)) return x;
      worst = std::max(worst, std::abs(x));
    }
  }
  return worst;
}

std::vector<std::string> validate(const StructureSpec& s) {
  std::vector<std::string> out;
  if (!(s.t_max > 0.0)) out.push_back("t_max must be positive");
  if (s.epsilon != 1 && s.epsilon != -1) out.push_back("epsilon must be +1 or -1");
  if (!out.empty()) return out;

  if (s.provenance.almost_product || s.provenance.integrable) {
    const double d = almost_product_defect(s);
    if (!(d <= 1e-10)) out.push_back("almost product relations violated (defect " + fmt(d) + ")");
  }
  if (s.provenance.compatible) {
    const double d = compatibility_defect(s);
    if (!(d <= 1e-10)) out.push_back("proportionality relations violated (defect " + fmt(d) + ")");
  }
  std::array<double, 4> prev{};
  for (double t : validation_grid(s.t_max)) {
    if (s.provenance.require_positive) {
      const double a1 = s.a1.value(t);
      const double h1 = a1 + 2 * t * s.b1.value(t);
      const double lam = s.lambda.value(t);
      const double lam2 = lam + 2 * t * s.mu.value(t);
      if (!(a1 > 0 && h1 > 0 && lam > 0 && lam2 > 0)) {
        out.push_back("positivity of a1, a1 + 2t b1, lambda, lambda + 2t mu fails at t = " + fmt(t));
        break;
      }
    }
    const std::array<double, 4> f = {s.c1.value(t), s.c2.value(t), s.c1.value(t) + 2 * t * s.d1.value(t),
                                     s.c2.value(t) + 2 * t * s.d2.value(t)};
    bool degenerate = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
      degenerate = degenerate || !(std::abs(f[i]) >= kDenominatorThreshold) || (t > 0 && (f[i] > 0) != (prev[i] > 0));
      prev[i] = f[i];
    }
    if (degenerate) {
      out.push_back("metric degenerate at t = " + fmt(t));
      break;
    }
  }
  return out;
}

const std::vector<FamilyPreset>& family_presets() {
  static const std::vector<FamilyPreset> presets = {
      {"constant", {"value"}, "f(t) = value"},
      {"affine", {"intercept", "slope"}, "f(t) = intercept + slope t"},
      {"polynomial", {"coefficients"}, "f(t) = sum_k coefficients[k] t^k"},
      {"exponential", {"scale", "rate"}, "f(t) = scale exp(rate t)"},
  };
  return presets;
}

}  // namespace cotlift
