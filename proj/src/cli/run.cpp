#include "cotlift/cli/run.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace cotlift::cli {

using nlohmann::json;

namespace {

CheckReport run_check(const std::string& name, const LiftedStructure& ls, const Sample& sample, double tol,
                      Execution exec) {
  if (name == "space_form") return check_space_form(ls.base(), sample, tol, exec);
  if (name == "almost_product") return check_almost_product(ls, sample, tol, exec);
  if (name == "integrability") return check_integrability(ls, sample, tol, exec);
  if (name == "compatibility") return check_compatibility(ls, sample, tol, exec);
  if (name == "closure") return check_closure(ls, sample, tol, exec);
  if (name == "closure_formula") return check_closure_formula(ls, sample, tol, exec);
  if (name == "para_kahler") return check_para_kahler(ls, sample, tol, exec);
  if (name == "oracle") return check_oracle(ls, sample, tol, tolerance::kFdStep, exec);
  throw ConfigError("checks", "unknown check '" + name + "'");
}

}  // namespace

RunResult run(const RunConfig& cfg, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  const LiftedStructure ls = build_structure(cfg);
  SamplingOptions opts;
  opts.count = cfg.sampling.count;
  opts.seed = cfg.sampling.seed;
  opts.p_max = cfg.sampling.p_max;
  const Sample sample = sample_points(ls.base(), opts, ls.spec().t_max);

  RunResult result;
  result.all_passed = true;
  for (const auto& name : cfg.checks) {
    result.reports.push_back(run_check(name, ls, sample, cfg.tolerance_for(name), exec));
    result.all_passed = result.all_passed && result.reports.back().passed;
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

json report_to_json(const CheckReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back({{"q", w.q}, {"p", w.p}, {"residual", w.residual}});
  json subs = json::object();
  for (const auto& [k, v] : r.sub_residuals) subs[k] = v;
  return {{"check_name", r.check_name},
          {"points_sampled", r.points_sampled},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"seed", r.seed},
          {"witnesses", witnesses},
          {"sub_residuals", subs},
          {"notes", r.notes}};
}

CheckReport report_from_json(const json& j) {
  CheckReport r;
  r.check_name = j.at("check_name").get<std::string>();
  r.points_sampled = j.at("points_sampled").get<std::size_t>();
  r.max_residual = j.at("max_residual").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& w : j.at("witnesses"))
    r.witnesses.push_back({w.at("q").get<std::vector<double>>(), w.at("p").get<std::vector<double>>(),
                           w.at("residual").get<double>()});
  // nlohmann orders object keys, so sub-residuals come back sorted by name.
  for (const auto& [k, v] : j.at("sub_residuals").items()) r.sub_residuals.emplace_back(k, v.get<double>());
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

json emit_report(const RunConfig& cfg, const RunResult& result) {
  json checks = json::array();
  for (const auto& r : result.reports) checks.push_back(report_to_json(r));
  return {{"schema_version", kReportSchemaVersion},
          {"library_version", COTLIFT_VERSION},
          {"config", cfg.document},
          {"checks", checks},
          {"all_passed", result.all_passed},
          {"timing", {{"wall_seconds", result.wall_seconds}}}};
}

int verify_command(RunConfig cfg, std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    result = run(cfg);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigOrDomainError;
  } catch (const DegenerateCoefficient& e) {
    err << "degenerate coefficient: " << e.what() << '\n';
    return kConfigOrDomainError;
  } catch (const ChartDomainError& e) {
    err << "chart domain error: " << e.what() << '\n';
    return kConfigOrDomainError;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kConfigOrDomainError;
  } catch (const ContractError& e) {
    err << "contract violation: " << e.what() << '\n';
    return kConfigOrDomainError;
  }

  const std::string text = emit_report(cfg, result).dump(2) + "\n";
  const bool to_stdout = cfg.output == "-";
  if (to_stdout) {
    out << text;
  } else {
    const std::string path = cfg.output.empty() ? kDefaultReportPath : cfg.output;
    std::ofstream file(path);
    if (!file || !(file << text)) {
      err << "cannot write report to " << path << '\n';
      return kConfigOrDomainError;
    }
  }

  std::ostream& summary = to_stdout ? err : out;
  for (const auto& r : result.reports)
    summary << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(16) << r.check_name << " max_residual "
            << std::scientific << std::setprecision(3) << r.max_residual << " tol " << r.tolerance << '\n';
  summary << (result.all_passed ? "all checks passed" : "some checks failed") << '\n';
  return result.exit_code();
}

}  // namespace cotlift::cli
