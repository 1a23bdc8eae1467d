#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cotlift/cli/run.hpp"

using namespace cotlift;
using namespace cotlift::cli;
using nlohmann::json;

namespace {

const std::string kConfigs = COTLIFT_CONFIG_DIR;

json without_timing(json report) {
  report.erase("timing");
  return report;
}

void require_finite(const json& j) {
  if (j.is_number()) CHECK(std::isfinite(j.get<double>()));
  if (j.is_structured())
    for (const auto& v : j) require_finite(v);
}

}  // namespace

TEST_CASE("bundled para-Kahler config passes every check") {
  const RunConfig cfg = load_config(kConfigs + "/peyghan_heydari_para_kahler.json");
  const RunResult r = run(cfg);
  CHECK(r.exit_code() == kAllPassed);
  CHECK(r.reports.size() == 5);
  for (const auto& rep : r.reports) CHECK(rep.passed);
}

TEST_CASE("negative configs fail the intended check") {
  const RunResult mu = run(load_config(kConfigs + "/negative/mu_mismatch.json"));
  CHECK(mu.exit_code() == kCheckFailed);
  REQUIRE(mu.reports.front().check_name == "closure");
  CHECK_FALSE(mu.reports.front().passed);
  CHECK(mu.reports.front().max_residual > 1e-3);

  const RunResult base = run(load_config(kConfigs + "/negative/perturbed_base.json"));
  CHECK(base.exit_code() == kCheckFailed);
  for (const auto& rep : base.reports) CHECK_FALSE(rep.passed);

  CHECK(run(load_config(kConfigs + "/negative/mismatched_curvature.json")).exit_code() == kCheckFailed);
}

TEST_CASE("reports are deterministic and round-trip") {
  const RunConfig cfg = load_config(kConfigs + "/para_kahler_affine_lambda.json");
  const json a = emit_report(cfg, run(cfg));
  const json b = emit_report(cfg, run(cfg, Execution::Serial));
  CHECK(without_timing(a).dump(2) == without_timing(b).dump(2));
  CHECK(a.at("schema_version") == kReportSchemaVersion);
  CHECK(a.at("library_version") == COTLIFT_VERSION);
  CHECK(a.at("config") == cfg.document);
  CHECK(a.at("all_passed") == true);
  CHECK(a.at("timing").contains("wall_seconds"));
  require_finite(a);

  const json reparsed = json::parse(a.dump(2));
  const RunResult r = run(cfg);
  REQUIRE(reparsed.at("checks").size() == r.reports.size());
  for (std::size_t k = 0; k < r.reports.size(); ++k) {
    const CheckReport back = report_from_json(reparsed.at("checks")[k]);
    const CheckReport& orig = r.reports[k];
    CHECK(back.check_name == orig.check_name);
    CHECK(back.max_residual == orig.max_residual);
    CHECK(back.tolerance == orig.tolerance);
    CHECK(back.passed == orig.passed);
    CHECK(back.seed == orig.seed);
    CHECK(back.points_sampled == orig.points_sampled);
    CHECK(back.notes == orig.notes);
    CHECK(back.witnesses.size() <= 3);
    REQUIRE(back.witnesses.size() == orig.witnesses.size());
    for (std::size_t w = 0; w < back.witnesses.size(); ++w) {
      CHECK(back.witnesses[w].residual == orig.witnesses[w].residual);
      CHECK(back.witnesses[w].q == orig.witnesses[w].q);
      CHECK(back.witnesses[w].p == orig.witnesses[w].p);
    }
    auto subs = orig.sub_residuals;
    std::sort(subs.begin(), subs.end());
    CHECK(back.sub_residuals == subs);
  }
}

TEST_CASE("verify_command: output, summary and exit codes") {
  namespace fs = std::filesystem;
  RunConfig cfg = load_config(kConfigs + "/peyghan_heydari_para_hermitian.json");
  const fs::path out_path = fs::temp_directory_path() / "cotlift_test_report.json";
  override_output(cfg, out_path.string());
  std::ostringstream out, err;
  CHECK(verify_command(cfg, out, err) == kAllPassed);
  CHECK(out.str().find("[PASS] almost_product") != std::string::npos);
  std::ifstream in(out_path);
  const json report = json::parse(in);
  CHECK(report.at("all_passed") == true);
  fs::remove(out_path);

  override_output(cfg, "-");
  std::ostringstream json_out, summary;
  CHECK(verify_command(cfg, json_out, summary) == kAllPassed);
  CHECK(json::parse(json_out.str()).at("checks").size() == 4);
  CHECK(summary.str().find("all checks passed") != std::string::npos);

  RunConfig failing = load_config(kConfigs + "/negative/mu_mismatch.json");
  override_output(failing, "-");
  std::ostringstream o2, e2;
  CHECK(verify_command(failing, o2, e2) == kCheckFailed);
  CHECK(e2.str().find("[FAIL] closure") != std::string::npos);
}

TEST_CASE("degenerate coefficients map to exit code 2") {
  json doc = json::parse(R"({
    "manifold": {"model": "conformal_ball", "n": 3, "c": -1},
    "coefficients": {"a1": 1, "lambda": 1, "derive": "all"},
    "checks": ["integrability"]
  })");
  RunConfig cfg = parse_config(doc);
  CHECK_THROWS_AS(run(cfg), DegenerateCoefficient);
  override_output(cfg, "-");
  std::ostringstream out, err;
  CHECK(verify_command(cfg, out, err) == kConfigOrDomainError);
  CHECK(err.str().find("degenerate") != std::string::npos);
  CHECK(out.str().empty());
}

TEST_CASE("seed override changes witnesses but not verdicts") {
  RunConfig cfg = load_config(kConfigs + "/hyperbolic_para_kahler.json");
  const RunResult base = run(cfg);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    override_seed(cfg, seed);
    const RunResult r = run(cfg);
    for (std::size_t k = 0; k < r.reports.size(); ++k) {
      CHECK(r.reports[k].passed == base.reports[k].passed);
      CHECK(r.reports[k].seed == seed);
    }
  }
}
