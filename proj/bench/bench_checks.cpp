// Serial reference against the OpenMP path for each check on one integrable
// para-Kahler structure. Usage: bench_checks [points] [dimension] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "cotlift/verify.hpp"

using namespace cotlift;
using F = ScalarFamily;

namespace {

StructureSpec para_kahler_spec(double c) {
  StructureSpec s;
  s.a1 = F::constant(1);
  std::tie(s.b1, s.b2) = integrable_b_coeffs(s.a1, c, s.t_max);
  s.a2 = complete_almost_product(s.a1, s.b1, s.t_max).first;
  s.lambda = F::affine(1, 1);
  s.mu = para_kahler_mu(s.lambda);
  s.curvature = c;
  const auto m = compatible_metric_coeffs({s.a1, s.b1, s.a2, s.b2}, s.lambda, s.mu, s.epsilon, s.t_max);
  s.c1 = m.c1;
  s.d1 = m.d1;
  s.c2 = m.c2;
  s.d2 = m.d2;
  s.provenance = {true, true, true, true, true};
  return s;
}

double best_of(int repeats, const std::function<double()>& fn, double& residual) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    residual = fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t points = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200;
  const int dim = argc > 2 ? std::atoi(argv[2]) : 3;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

  const LiftedStructure ls(para_kahler_spec(1.0), SpaceForm::conformal_ball(dim, 1.0));
  SamplingOptions opts;
  opts.count = points;
  const Sample sample = sample_points(ls.base(), opts, ls.spec().t_max);

  using Check = std::function<CheckReport(Execution)>;
  const std::pair<const char*, Check> checks[] = {
      {"almost_product", [&](Execution e) { return check_almost_product(ls, sample, tolerance::kAlgebraic, e); }},
      {"integrability", [&](Execution e) { return check_integrability(ls, sample, tolerance::kFirstDerivative, e); }},
      {"compatibility", [&](Execution e) { return check_compatibility(ls, sample, tolerance::kAlgebraic, e); }},
      {"closure", [&](Execution e) { return check_closure(ls, sample, tolerance::kFirstDerivative, e); }},
      {"oracle", [&](Execution e) {
         return check_oracle(ls, sample, tolerance::kOracle, tolerance::kFdStep, e);
       }},
  };

  std::printf("n=%d points=%zu threads=%d repeats=%d\n", dim, points, max_threads(), repeats);
  std::printf("%-16s %12s %12s %8s %s\n", "check", "serial_s", "openmp_s", "speedup", "same_residual");
  bool all_same = true;
  for (const auto& [name, check] : checks) {
    double rs = 0, rp = 0;
    const double ts = best_of(repeats, [&] { return check(Execution::Serial).max_residual; }, rs);
    const double tp = best_of(repeats, [&] { return check(Execution::Parallel).max_residual; }, rp);
    const bool same = rs == rp;
    all_same = all_same && same;
    std::printf("%-16s %12.4f %12.4f %8.2f %s\n", name, ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return all_same ? 0 : 1;
}
