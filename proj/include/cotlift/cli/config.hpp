#pragma once

// JSON run configuration: which base manifold, which coefficient families and
// derivation rules, how to sample, which checks to run. The schema lives in
// schema/config.schema.json.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cotlift/lifted.hpp"
#include "cotlift/verify.hpp"

namespace cotlift::cli {

struct FamilyConfig {
  std::string preset;
  std::map<std::string, double> params;
  std::vector<double> coefficients;  // polynomial only
};

ScalarFamily make_family(const FamilyConfig& f);

struct ManifoldConfig {
  Model model = Model::ConformalBall;
  int n = 3;
  double c = 0.0;
  double chart_radius = 1.0;
  double strength = 0.1;
};

struct PFamilyConfig {
  std::string name;  // "peyghan_heydari"
  double alpha = 1.0;
  double beta = 1.0;
  FamilyConfig u;
};

struct DeriveFlags {
  bool almost_product = false;
  bool integrable = false;
  bool compatible = false;
  bool para_kahler_mu = false;
};

struct Perturbation {
  std::string target;
  double factor = 1.1;
};

struct CoefficientsConfig {
  StructureKind structure = StructureKind::NaturalDiagonal;
  std::optional<FamilyConfig> a1, b1, a2, b2, c1, d1, c2, d2, lambda, mu;
  std::optional<PFamilyConfig> p_family;
  int epsilon = -1;
  double t_max = 2.0;
  std::optional<double> curvature;  // defaults to manifold.c
  bool allow_mismatched_c = false;
  bool require_positive = true;
  DeriveFlags derive;
  std::vector<Perturbation> perturb;
};

struct SamplingConfig {
  std::size_t count = 100;
  std::uint64_t seed = SamplingOptions{}.seed;
  double p_max = 2.0;
};

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"space_form", "almost_product", "integrability", "compatibility",
                                                 "closure",    "closure_formula", "para_kahler",  "oracle"};
  return names;
}

/// Default tolerance per check name.
double default_tolerance(const std::string& check);

struct RunConfig {
  ManifoldConfig manifold;
  CoefficientsConfig coefficients;
  SamplingConfig sampling;
  std::vector<std::string> checks;
  std::map<std::string, double> tolerances;
  std::string output;
  nlohmann::json document;  // the parsed document, with command-line overrides applied

  double tolerance_for(const std::string& check) const;
};

/// Validates the whole document and throws ConfigError listing every problem.
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::filesystem::path& path);

/// Command-line overrides; each one is also written into RunConfig::document.
void override_seed(RunConfig& cfg, std::uint64_t seed);
void override_samples(RunConfig& cfg, std::size_t count);
void override_tolerance(RunConfig& cfg, const std::string& check, double value);
void override_output(RunConfig& cfg, const std::string& path);

SpaceForm build_space_form(const ManifoldConfig& m);

/// Runs the derivation chain. Throws DegenerateCoefficient on singular denominators.
StructureSpec build_spec(const RunConfig& cfg);

/// Validated LiftedStructure, or an unchecked one when the config perturbs coefficients.
LiftedStructure build_structure(const RunConfig& cfg);

}  // namespace cotlift::cli
