// One line per acceptance criterion, n = 3 and 100 points per check unless a
// criterion names another count. Exit status is nonzero if any criterion fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "cotlift/cli/run.hpp"

using namespace cotlift;
using namespace cotlift::cli;
using F = ScalarFamily;

namespace {

constexpr int kDim = 3;
constexpr std::size_t kPoints = 100;
constexpr double kAlgebraicTol = 1e-11;
constexpr double kDerivativeTol = 1e-8;
constexpr double kNecessityFloor = 1e-6;
constexpr double kCruceanuCurvedFloor = 1e-3;
constexpr double kOracleTol = 1e-6;
constexpr double kFdStep = 1e-5;
constexpr double kPerturbation = 1.1;
constexpr double kSuiteBudgetSeconds = 60.0;
// With a1 ≡ 1 and c = −1 the integrable coefficients are singular at t = 1/2.
constexpr double kHyperbolicTMax = 0.4;
constexpr double kHyperbolicPMax = 0.8;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3e", detail.empty() ? "" : ", ", what.c_str(), value);
    detail += buf;
    if (!ok) {
      pass = false;
      detail += "(!)";
    }
  }
};

SpaceForm base(double c) { return c == 0 ? SpaceForm::flat(kDim) : SpaceForm::conformal_ball(kDim, c); }
double t_max_for(double c) { return c < 0 ? kHyperbolicTMax : 2.0; }
double p_max_for(double c) { return c < 0 ? kHyperbolicPMax : 2.0; }

Sample draw(const LiftedStructure& ls, std::size_t count, double p_max, std::uint64_t seed = SamplingOptions{}.seed) {
  SamplingOptions o;
  o.count = count;
  o.p_max = p_max;
  o.seed = seed;
  return sample_points(ls.base(), o, ls.spec().t_max);
}

StructureSpec with_metric(StructureSpec s) {
  const auto m = compatible_metric_coeffs({s.a1, s.b1, s.a2, s.b2}, s.lambda, s.mu, s.epsilon, s.t_max);
  s.c1 = m.c1;
  s.d1 = m.d1;
  s.c2 = m.c2;
  s.d2 = m.d2;
  s.provenance.compatible = true;
  return s;
}

StructureSpec cited(double c, F u, int epsilon = -1) {
  StructureSpec s;
  const auto p = peyghan_heydari(1.0, 2.0, u);
  s.a1 = p.a1;
  s.b1 = p.b1;
  s.a2 = p.a2;
  s.b2 = p.b2;
  s.lambda = F::constant(1);
  s.mu = F::constant(0);
  s.epsilon = epsilon;
  s.curvature = c;
  s.provenance.almost_product = true;
  return with_metric(s);
}

StructureSpec integrable(double c, double t_max, F lambda, F mu, int epsilon = -1) {
  StructureSpec s;
  s.a1 = F::constant(1);
  std::tie(s.b1, s.b2) = integrable_b_coeffs(s.a1, c, t_max);
  s.a2 = complete_almost_product(s.a1, s.b1, t_max).first;
  s.lambda = lambda;
  s.mu = mu;
  s.epsilon = epsilon;
  s.curvature = c;
  s.t_max = t_max;
  s.provenance.almost_product = s.provenance.integrable = true;
  return with_metric(s);
}

StructureSpec scaled(StructureSpec s, F StructureSpec::*field) {
  s.*field = (s.*field).scaled(kPerturbation);
  return s;
}

double max_abs3(const Tensor3<double>& t) {
  const std::size_t d = 2 * kDim;
  double m = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) m = std::max(m, std::abs(t(a, b, c)));
  return m;
}

Outcome almost_product() {
  Outcome o;
  for (double c : {-1.0, 0.0, 1.0}) {
    const auto m = SpaceForm::conformal_ball(kDim, c);
    const auto spec = cited(c, F::affine(0, 1));
    const LiftedStructure ls(spec, m);
    const Sample s = draw(ls, kPoints, 2.0);
    o.require(check_almost_product(ls, s, kAlgebraicTol).max_residual <= kAlgebraicTol,
              "c=" + std::to_string(int(c)) + " |P^2-I|", check_almost_product(ls, s, kAlgebraicTol).max_residual);
    const auto broken = LiftedStructure::unchecked(scaled(spec, &StructureSpec::b2), m);
    const double r = check_almost_product(broken, s, kNecessityFloor).max_residual;
    o.require(r > kNecessityFloor, "b2*1.1", r);
  }
  return o;
}

Outcome integrability() {
  Outcome o;
  const F one = F::constant(1), zero = F::constant(0);
  for (double c : {-1.0, 0.0, 1.0}) {
    const LiftedStructure ls(integrable(c, t_max_for(c), one, zero), base(c));
    const double r = check_integrability(ls, draw(ls, 30, p_max_for(c)), kDerivativeTol).max_residual;
    o.require(r <= kDerivativeTol, "c=" + std::to_string(int(c)) + " |N|", r);
  }
  const auto spec = integrable(1.0, 2.0, one, zero);
  const auto b1 = LiftedStructure::unchecked(scaled(spec, &StructureSpec::b1), base(1.0));
  const double rb = check_integrability(b1, draw(b1, 30, 2.0), kNecessityFloor).max_residual;
  o.require(rb > kNecessityFloor, "b1*1.1", rb);
  const LiftedStructure wrong_c(integrable(1.0, kHyperbolicTMax, one, zero), base(-1.0));
  const double rc = check_integrability(wrong_c, draw(wrong_c, 30, kHyperbolicPMax), kNecessityFloor).max_residual;
  o.require(rc > kNecessityFloor, "mismatched c", rc);
  const auto pert = LiftedStructure::unchecked(spec, SpaceForm::perturbed_conformal(kDim, 1.0, 0.1));
  const double rp = check_integrability(pert, draw(pert, 30, 2.0), kNecessityFloor).max_residual;
  o.require(rp > kNecessityFloor, "perturbed base", rp);
  return o;
}

Outcome cruceanu() {
  Outcome o;
  const StructureSpec any = integrable(0.0, 2.0, F::constant(1), F::constant(0));
  const LiftedStructure flat(any, base(0.0), StructureKind::CruceanuP);
  const LiftedStructure curved(any, base(1.0), StructureKind::CruceanuP);
  const double rf = check_integrability(flat, draw(flat, kPoints, 2.0)).max_residual;
  const double rc = check_integrability(curved, draw(curved, kPoints, 2.0)).max_residual;
  o.require(rf <= kAlgebraicTol, "flat |N|", rf);
  o.require(rc > kCruceanuCurvedFloor, "c=1 |N|", rc);
  return o;
}

Outcome compatibility() {
  Outcome o;
  for (int eps : {-1, 1}) {
    const auto spec = integrable(1.0, 2.0, F::affine(1, 0.5), F::constant(0.25), eps);
    const LiftedStructure ls(spec, base(1.0));
    const Sample s = draw(ls, kPoints, 2.0);
    const double r = check_compatibility(ls, s, kAlgebraicTol).max_residual;
    o.require(r <= kAlgebraicTol, "eps=" + std::to_string(eps) + " |PtGP-eG|", r);
    if (eps == -1) {
      int neutral = 0;
      for (const auto& pt : s.points) neutral += metric_signature(ls, pt) == std::pair{kDim, kDim};
      o.require(neutral == static_cast<int>(s.points.size()), "neutral points", neutral);
    }
    const auto broken = LiftedStructure::unchecked(scaled(spec, &StructureSpec::c1), base(1.0));
    const double rb = check_compatibility(broken, s, kNecessityFloor).max_residual;
    o.require(rb > kNecessityFloor, "c1*1.1", rb);
  }
  return o;
}

Outcome closure() {
  Outcome o;
  const F lam = F::affine(1, 1);
  for (double c : {-1.0, 1.0}) {
    const std::string tag = "c=" + std::to_string(int(c));
    for (bool closed : {true, false}) {
      const LiftedStructure ls(integrable(c, t_max_for(c), lam, closed ? para_kahler_mu(lam) : F::constant(0)),
                               base(c));
      double agree = 0, num_max = 0, ana_max = 0;
      for (const auto& pt : draw(ls, 20, p_max_for(c)).points) {
        const Tensor3<double> num = exterior_derivative_omega(ls, pt), ana = analytic_domega(ls, pt);
        Tensor3<double> diff(2 * kDim);
        for (int a = 0; a < 2 * kDim; ++a)
          for (int b = 0; b < 2 * kDim; ++b)
            for (int d = 0; d < 2 * kDim; ++d) diff(a, b, d) = num(a, b, d) - ana(a, b, d);
        agree = std::max(agree, max_abs3(diff));
        num_max = std::max(num_max, max_abs3(num));
        ana_max = std::max(ana_max, max_abs3(ana));
      }
      const std::string kind = closed ? " mu=lambda'" : " mu=0";
      o.require(agree <= kDerivativeTol, tag + kind + " |num-ana|", agree);
      if (closed) {
        o.require(num_max <= kDerivativeTol, tag + kind + " |dOmega|", num_max);
        o.require(ana_max <= kDerivativeTol, tag + kind + " |analytic|", ana_max);
      } else {
        o.require(num_max > kNecessityFloor, tag + kind + " |dOmega|", num_max);
      }
    }
  }
  return o;
}

Outcome para_kahler() {
  Outcome o;
  for (const char* name : {"para_kahler_affine_lambda.json", "peyghan_heydari_para_kahler.json"}) {
    RunConfig cfg = load_config(std::string(COTLIFT_CONFIG_DIR) + "/" + name);
    override_samples(cfg, kPoints);
    const LiftedStructure ls = build_structure(cfg);
    const CheckReport r = check_para_kahler(ls, draw(ls, kPoints, cfg.sampling.p_max), kDerivativeTol);
    for (const auto& [sub, value] : r.sub_residuals) o.require(value <= kDerivativeTol, std::string(name, 4) + ":" + sub, value);
    if (!r.passed) o.pass = false;
  }
  return o;
}

Outcome oracle() {
  Outcome o;
  const std::vector<std::pair<std::string, LiftedStructure>> cases = {
      {"c=1", LiftedStructure(integrable(1.0, 2.0, F::affine(1, 1), F::constant(1)), base(1.0))},
      {"c=-1", LiftedStructure(integrable(-1.0, kHyperbolicTMax, F::exponential(1, 0.5), F::constant(0.3)), base(-1.0))},
      {"flat", LiftedStructure(integrable(0.0, 2.0, F::affine(1, 1), F::constant(0)), base(0.0))},
      {"cited", LiftedStructure(cited(1.0, F::affine(0, 1)), base(1.0))},
  };
  for (const auto& [tag, ls] : cases) {
    const double r = check_oracle(ls, draw(ls, 10, p_max_for(ls.spec().curvature)), kOracleTol, kFdStep).max_residual;
    o.require(r <= kOracleTol, tag + " rel", r);
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig cfg = load_config(std::string(COTLIFT_CONFIG_DIR) + "/para_kahler_affine_lambda.json");
  auto stable = [&](const RunConfig& c) {
    auto j = emit_report(c, run(c));
    j.erase("timing");
    return j.dump(2);
  };
  const bool same = stable(cfg) == stable(cfg);
  o.require(same, "identical reports", same);
  RunConfig negative = load_config(std::string(COTLIFT_CONFIG_DIR) + "/negative/mu_mismatch.json");
  std::vector<bool> ref, neg_ref;
  int stable_seeds = 0;
  for (std::uint64_t seed : {11ULL, 22ULL, 33ULL, 44ULL, 55ULL}) {
    override_seed(cfg, seed);
    override_seed(negative, seed);
    std::vector<bool> v, nv;
    for (const auto& r : run(cfg).reports) v.push_back(r.passed);
    for (const auto& r : run(negative).reports) nv.push_back(r.passed);
    if (ref.empty()) {
      ref = v;
      neg_ref = nv;
    }
    stable_seeds += (v == ref && nv == neg_ref);
  }
  o.require(stable_seeds == 5, "seeds with equal verdicts", stable_seeds);
  return o;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 almost product structure (sufficiency and necessity)", almost_product},
      {"2 integrability over space forms (sufficiency and three necessity cases)", integrability},
      {"3 Cruceanu P integrable exactly on the flat base", cruceanu},
      {"4 compatibility for both signs, neutral signature, broken chain", compatibility},
      {"5 numeric and closed-form exterior derivative agree", closure},
      {"6 para-Kahler composite on both bundled configs", para_kahler},
      {"7 AD derivatives against central differences", oracle},
      {"8 byte-identical reports and seed-invariant verdicts", determinism},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool fast = seconds < kSuiteBudgetSeconds;
  std::printf("[%s] suite wall time %.2f s (budget %.0f s)\n", fast ? "PASS" : "FAIL", seconds, kSuiteBudgetSeconds);
  return all && fast ? 0 : 1;
}
