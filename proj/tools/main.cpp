#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"

#include "cotlift/cli/run.hpp"

namespace fs = std::filesystem;
using namespace cotlift;
using namespace cotlift::cli;

namespace {

void print_presets(std::ostream& out) {
  out << "coefficient families:\n";
  for (const auto& p : family_presets()) {
    out << "  " << p.name << " (";
    for (std::size_t i = 0; i < p.parameters.size(); ++i) out << (i ? ", " : "") << p.parameters[i];
    out << ")  " << p.summary << '\n';
  }
  out << "  a bare number is shorthand for a constant family\n";
  out << "structures:\n";
  for (auto k : {StructureKind::NaturalDiagonal, StructureKind::CruceanuP, StructureKind::CruceanuQ})
    out << "  " << to_string(k) << '\n';
  out << "P families:\n";
  out << "  peyghan_heydari (alpha, beta, u)  a1 = 1/beta, b1 = u/(alpha beta), a2 = beta, "
         "b2 = -u beta/(alpha + 2t u)\n";
  out << "base models:\n";
  for (auto m : {Model::Flat, Model::ConformalBall, Model::PerturbedConformal}) out << "  " << to_string(m) << '\n';
  out << "checks:\n";
  for (const auto& c : check_names()) out << "  " << c << " (default tolerance " << default_tolerance(c) << ")\n";

  const fs::path dir = COTLIFT_CONFIG_DIR;
  if (!fs::is_directory(dir)) return;
  std::set<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.insert(e.path());
  out << "configs in " << dir.string() << ":\n";
  for (const auto& f : files) {
    std::string description;
    try {
      std::ifstream in(f);
      const auto doc = nlohmann::json::parse(in);
      description = doc.value("description", "");
    } catch (const std::exception&) {
      description = "(unreadable)";
    }
    out << "  " << fs::relative(f, dir).string() << "  " << description << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks lifted almost product and para-Kahler structures on cotangent bundles of space forms"};
  app.set_version_flag("--version", std::string(COTLIFT_VERSION));
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the checks listed in a JSON configuration");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<std::string> tol_overrides;
  std::string out_path;
  verify->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  verify->add_option("--seed", seed, "override sampling.seed");
  verify->add_option("--samples", samples, "override sampling.count");
  verify->add_option("--tol-override", tol_overrides, "override a tolerance, as check=value")->take_all();
  verify->add_option("--out", out_path, "report path (default report.json, - for stdout)");

  auto* presets = app.add_subcommand("presets", "list presets, structures and bundled configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigOrDomainError;
  }

  if (presets->parsed()) {
    print_presets(std::cout);
    return 0;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (seed) override_seed(cfg, *seed);
    if (samples) override_samples(cfg, *samples);
    for (const auto& o : tol_overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol-override", "expected check=value, got '" + o + "'");
      double value = 0.0;
      try {
        value = std::stod(o.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--tol-override", "not a number in '" + o + "'");
      }
      override_tolerance(cfg, o.substr(0, eq), value);
    }
    if (!out_path.empty()) override_output(cfg, out_path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigOrDomainError;
  }
  return verify_command(std::move(cfg), std::cout, std::cerr);
}
