#include "cotlift/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace cotlift::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kCoefficientNames = {"a1", "b1", "a2", "b2", "c1", "d1", "c2", "d2", "lambda", "mu"};

class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

  void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items())
      if (!allowed.count(key)) fail(join(path, key), "unknown field");
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(join(path, key), "expected a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(join(path, key), "must be finite");
      return std::nullopt;
    }
    return d;
  }

  double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    return number(obj, key, path).value_or(fallback);
  }

  std::optional<bool> boolean(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_boolean()) {
      fail(join(path, key), "expected true or false");
      return std::nullopt;
    }
    return obj.at(key).get<bool>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj.at(key).is_string()) {
      fail(join(path, key), "expected a string");
      return std::nullopt;
    }
    return obj.at(key).get<std::string>();
  }

  bool object(const json& v, const std::string& path) {
    if (!v.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    return true;
  }

  std::optional<FamilyConfig> family(const json& v, const std::string& path) {
    if (v.is_number()) return FamilyConfig{"constant", {{"value", v.get<double>()}}, {}};
    if (!object(v, path)) return std::nullopt;
    const auto preset = string(v, "preset", path);
    if (!preset) {
      fail(join(path, "preset"), "missing preset name");
      return std::nullopt;
    }
    const auto& presets = family_presets();
    const auto it = std::find_if(presets.begin(), presets.end(), [&](const auto& p) { return p.name == *preset; });
    if (it == presets.end()) {
      fail(join(path, "preset"), "unknown preset '" + *preset + "'");
      return std::nullopt;
    }
    std::set<std::string> allowed = {"preset"};
    allowed.insert(it->parameters.begin(), it->parameters.end());
    reject_unknown(v, path, allowed);

    FamilyConfig f;
    f.preset = *preset;
    for (const auto& param : it->parameters) {
      const std::string p = join(path, param);
      if (!v.contains(param)) {
        fail(p, "missing parameter");
        continue;
      }
      if (param == "coefficients") {
        const json& arr = v.at(param);
        if (!arr.is_array() || arr.empty()) {
          fail(p, "expected a non-empty array of numbers");
          continue;
        }
        for (const auto& x : arr) {
          if (!x.is_number()) {
            fail(p, "expected a non-empty array of numbers");
            break;
          }
          f.coefficients.push_back(x.get<double>());
        }
      } else if (const auto d = number(v, param, path)) {
        f.params[param] = *d;
      }
    }
    return f;
  }
};

Model parse_model(Reader& r, const std::string& s, const std::string& path) {
  if (s == "flat") return Model::Flat;
  if (s == "conformal_ball") return Model::ConformalBall;
  if (s == "perturbed_conformal") return Model::PerturbedConformal;
  r.fail(path, "unknown model '" + s + "'");
  return Model::ConformalBall;
}

StructureKind parse_structure(Reader& r, const std::string& s, const std::string& path) {
  if (s == "natural_diagonal") return StructureKind::NaturalDiagonal;
  if (s == "cruceanu_p") return StructureKind::CruceanuP;
  if (s == "cruceanu_q") return StructureKind::CruceanuQ;
  r.fail(path, "unknown structure '" + s + "'");
  return StructureKind::NaturalDiagonal;
}

void parse_manifold(Reader& r, const json& v, ManifoldConfig& m) {
  const std::string path = "manifold";
  if (!r.object(v, path)) return;
  r.reject_unknown(v, path, {"model", "n", "c", "chart_radius", "strength"});
  if (const auto s = r.string(v, "model", path))
    m.model = parse_model(r, *s, "manifold.model");
  else
    r.fail("manifold.model", "missing model");
  if (v.contains("n")) {
    if (!v.at("n").is_number_integer() || v.at("n").get<long>() < 2)
      r.fail("manifold.n", "expected an integer >= 2");
    else
      m.n = v.at("n").get<int>();
  }
  m.c = r.number_or(v, "c", path, 0.0);
  m.chart_radius = r.number_or(v, "chart_radius", path, 1.0);
  m.strength = r.number_or(v, "strength", path, 0.1);
  if (!(m.chart_radius > 0)) r.fail("manifold.chart_radius", "must be positive");
  if (m.model == Model::Flat && m.c != 0.0) r.fail("manifold.c", "the flat model requires c = 0");
  if (m.model != Model::Flat && m.c < 0 && m.chart_radius * m.chart_radius >= -4.0 / m.c)
    r.fail("manifold.chart_radius", "must satisfy chart_radius^2 < -4/c for negative curvature");
  if (m.model == Model::PerturbedConformal && std::abs(m.strength) * m.chart_radius >= 1.0)
    r.fail("manifold.strength", "|strength| * chart_radius must be below 1");
}

void parse_coefficients(Reader& r, const json& v, CoefficientsConfig& c) {
  const std::string path = "coefficients";
  if (!r.object(v, path)) return;
  std::set<std::string> allowed = {"structure",       "p_family",         "epsilon", "t_max",  "curvature",
                                   "allow_mismatched_c", "require_positive", "derive",  "perturb"};
  allowed.insert(kCoefficientNames.begin(), kCoefficientNames.end());
  r.reject_unknown(v, path, allowed);

  if (const auto s = r.string(v, "structure", path)) c.structure = parse_structure(r, *s, "coefficients.structure");

  auto fam = [&](const char* key) -> std::optional<FamilyConfig> {
    if (!v.contains(key)) return std::nullopt;
    return r.family(v.at(key), Reader::join(path, key));
  };
  c.a1 = fam("a1");
  c.b1 = fam("b1");
  c.a2 = fam("a2");
  c.b2 = fam("b2");
  c.c1 = fam("c1");
  c.d1 = fam("d1");
  c.c2 = fam("c2");
  c.d2 = fam("d2");
  c.lambda = fam("lambda");
  bool mu_derived = false;
  if (v.contains("mu")) {
    if (v.at("mu").is_string()) {
      if (v.at("mu").get<std::string>() == "derived")
        mu_derived = true;
      else
        r.fail("coefficients.mu", "expected a family or \"derived\"");
    } else {
      c.mu = fam("mu");
    }
  }

  if (v.contains("p_family")) {
    const json& pf = v.at("p_family");
    const std::string pp = "coefficients.p_family";
    if (r.object(pf, pp)) {
      r.reject_unknown(pf, pp, {"name", "alpha", "beta", "u"});
      PFamilyConfig p;
      p.name = r.string(pf, "name", pp).value_or("");
      if (p.name != "peyghan_heydari") r.fail(pp + ".name", "unknown P family '" + p.name + "'");
      p.alpha = r.number_or(pf, "alpha", pp, 1.0);
      p.beta = r.number_or(pf, "beta", pp, 1.0);
      if (p.alpha == 0.0) r.fail(pp + ".alpha", "must be nonzero");
      if (p.beta == 0.0) r.fail(pp + ".beta", "must be nonzero");
      if (!pf.contains("u"))
        r.fail(pp + ".u", "missing family");
      else if (auto u = r.family(pf.at("u"), pp + ".u"))
        p.u = *u;
      c.p_family = p;
    }
  }

  if (v.contains("epsilon")) {
    const auto e = r.number(v, "epsilon", path);
    if (e && *e != 1.0 && *e != -1.0) r.fail("coefficients.epsilon", "must be 1 or -1");
    if (e) c.epsilon = static_cast<int>(*e);
  }
  c.t_max = r.number_or(v, "t_max", path, 2.0);
  if (!(c.t_max > 0)) r.fail("coefficients.t_max", "must be positive");
  c.curvature = r.number(v, "curvature", path);
  c.allow_mismatched_c = r.boolean(v, "allow_mismatched_c", path).value_or(false);
  c.require_positive = r.boolean(v, "require_positive", path).value_or(true);

  if (v.contains("derive")) {
    const json& d = v.at("derive");
    if (d.is_string()) {
      if (d.get<std::string>() == "all")
        c.derive = {true, true, true, true};
      else if (d.get<std::string>() != "none")
        r.fail("coefficients.derive", "expected \"all\", \"none\" or an object of flags");
    } else if (r.object(d, "coefficients.derive")) {
      r.reject_unknown(d, "coefficients.derive", {"almost_product", "integrable", "compatible", "para_kahler_mu"});
      c.derive.almost_product = r.boolean(d, "almost_product", "coefficients.derive").value_or(false);
      c.derive.integrable = r.boolean(d, "integrable", "coefficients.derive").value_or(false);
      c.derive.compatible = r.boolean(d, "compatible", "coefficients.derive").value_or(false);
      c.derive.para_kahler_mu = r.boolean(d, "para_kahler_mu", "coefficients.derive").value_or(false);
    }
  }
  if (mu_derived) c.derive.para_kahler_mu = true;

  if (v.contains("perturb")) {
    const json& arr = v.at("perturb");
    if (!arr.is_array()) {
      r.fail("coefficients.perturb", "expected an array");
    } else {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ip = "coefficients.perturb[" + std::to_string(i) + "]";
        if (!r.object(arr[i], ip)) continue;
        r.reject_unknown(arr[i], ip, {"target", "factor"});
        Perturbation p;
        p.target = r.string(arr[i], "target", ip).value_or("");
        if (!kCoefficientNames.count(p.target)) r.fail(ip + ".target", "unknown coefficient '" + p.target + "'");
        p.factor = r.number_or(arr[i], "factor", ip, 1.1);
        c.perturb.push_back(p);
      }
    }
  }

  // Consistency of the derivation chain.
  const bool natural = c.structure == StructureKind::NaturalDiagonal;
  if (natural) {
    if (c.p_family && c.a1) r.fail("coefficients.a1", "give either a1 or p_family, not both");
    if (c.p_family && c.derive.integrable)
      r.fail("coefficients.derive.integrable", "conflicts with p_family, which fixes b1 and b2");
    if (!c.p_family && !c.a1) r.fail("coefficients.a1", "missing family");
    if (!c.p_family) {
      if (c.derive.integrable) {
        if (c.b1) r.fail("coefficients.b1", "b1 is derived by the integrability rule");
        if (c.b2) r.fail("coefficients.b2", "b2 is derived by the integrability rule");
        if (c.a2) r.fail("coefficients.a2", "a2 is derived as 1/a1 by the integrability rule");
      } else {
        if (!c.b1) r.fail("coefficients.b1", "missing family (or enable derive.integrable)");
        if (c.derive.almost_product) {
          if (c.a2) r.fail("coefficients.a2", "a2 is derived by the almost product rule");
          if (c.b2) r.fail("coefficients.b2", "b2 is derived by the almost product rule");
        } else {
          if (!c.a2) r.fail("coefficients.a2", "missing family (or enable derive.almost_product)");
          if (!c.b2) r.fail("coefficients.b2", "missing family (or enable derive.almost_product)");
        }
      }
    }
  }
  if (c.derive.para_kahler_mu && c.mu) r.fail("coefficients.mu", "mu is derived as lambda'");
  if (c.derive.compatible) {
    if (!c.lambda) r.fail("coefficients.lambda", "missing family");
    if (!c.mu && !c.derive.para_kahler_mu) r.fail("coefficients.mu", "missing family (or \"derived\")");
    for (const char* k : {"c1", "d1", "c2", "d2"})
      if (v.contains(k)) r.fail(Reader::join(path, k), std::string(k) + " is derived by the compatibility rule");
  } else {
    if (!c.c1) r.fail("coefficients.c1", "missing family (or enable derive.compatible)");
    if (!c.d1) r.fail("coefficients.d1", "missing family (or enable derive.compatible)");
    if (!c.c2) r.fail("coefficients.c2", "missing family (or enable derive.compatible)");
    if (!c.d2) r.fail("coefficients.d2", "missing family (or enable derive.compatible)");
  }
}

FamilyConfig constant_family(double v) { return {"constant", {{"value", v}}, {}}; }

}  // namespace

ScalarFamily make_family(const FamilyConfig& f) {
  auto param = [&](const char* k) { return f.params.at(k); };
  if (f.preset == "constant") return ScalarFamily::constant(param("value"));
  if (f.preset == "affine") return ScalarFamily::affine(param("intercept"), param("slope"));
  if (f.preset == "polynomial") return ScalarFamily::polynomial(f.coefficients);
  if (f.preset == "exponential") return ScalarFamily::exponential(param("scale"), param("rate"));
  throw ConfigError("preset", "unknown preset '" + f.preset + "'");
}

double default_tolerance(const std::string& check) {
  if (check == "space_form") return 1e-9;
  if (check == "almost_product" || check == "compatibility") return tolerance::kAlgebraic;
  if (check == "oracle") return tolerance::kOracle;
  return tolerance::kFirstDerivative;
}

double RunConfig::tolerance_for(const std::string& check) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? default_tolerance(check) : it->second;
}

RunConfig parse_config(const json& doc) {
  Reader r;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigError("", "the configuration must be a JSON object");
  r.reject_unknown(doc, "", {"description", "manifold", "coefficients", "sampling", "checks", "tolerances", "output"});

  if (doc.contains("description") && !doc.at("description").is_string())
    r.fail("description", "expected a string");

  if (doc.contains("manifold"))
    parse_manifold(r, doc.at("manifold"), cfg.manifold);
  else
    r.fail("manifold", "missing section");

  if (doc.contains("coefficients"))
    parse_coefficients(r, doc.at("coefficients"), cfg.coefficients);
  else
    r.fail("coefficients", "missing section");

  if (doc.contains("sampling")) {
    const json& s = doc.at("sampling");
    if (r.object(s, "sampling")) {
      r.reject_unknown(s, "sampling", {"count", "seed", "p_max"});
      if (s.contains("count")) {
        if (!s.at("count").is_number_integer() || s.at("count").get<long long>() < 1)
          r.fail("sampling.count", "expected a positive integer");
        else
          cfg.sampling.count = s.at("count").get<std::size_t>();
      }
      if (s.contains("seed")) {
        if (!s.at("seed").is_number_unsigned() && !(s.at("seed").is_number_integer() && s.at("seed").get<long long>() >= 0))
          r.fail("sampling.seed", "expected a non-negative integer");
        else
          cfg.sampling.seed = s.at("seed").get<std::uint64_t>();
      }
      cfg.sampling.p_max = r.number_or(s, "p_max", "sampling", 2.0);
      if (!(cfg.sampling.p_max > 0)) r.fail("sampling.p_max", "must be positive");
    }
  }

  const auto& names = check_names();
  if (!doc.contains("checks") || !doc.at("checks").is_array() || doc.at("checks").empty()) {
    r.fail("checks", "expected a non-empty array of check names");
  } else {
    for (std::size_t i = 0; i < doc.at("checks").size(); ++i) {
      const json& c = doc.at("checks")[i];
      const std::string p = "checks[" + std::to_string(i) + "]";
      if (!c.is_string() || std::find(names.begin(), names.end(), c.get<std::string>()) == names.end()) {
        r.fail(p, "unknown check " + c.dump());
        continue;
      }
      const std::string name = c.get<std::string>();
      if ((name == "closure" || name == "closure_formula" || name == "para_kahler") && cfg.coefficients.epsilon != -1)
        r.fail(p, name + " needs epsilon = -1 (the 2-form is only defined for para-Hermitian structures)");
      cfg.checks.push_back(name);
    }
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (r.object(t, "tolerances"))
      for (const auto& [k, val] : t.items()) {
        const std::string p = "tolerances." + k;
        if (std::find(names.begin(), names.end(), k) == names.end())
          r.fail(p, "unknown check");
        else if (!val.is_number() || !(val.get<double>() > 0))
          r.fail(p, "expected a positive number");
        else
          cfg.tolerances[k] = val.get<double>();
      }
  }
  cfg.output = r.string(doc, "output", "").value_or("");

  // (3.7)-style derivation must use the base curvature unless mismatch is explicitly allowed.
  const auto& co = cfg.coefficients;
  if (co.derive.integrable && co.curvature && *co.curvature != cfg.manifold.c && !co.allow_mismatched_c)
    r.fail("coefficients.curvature",
           "differs from manifold.c; set allow_mismatched_c to true for deliberate mismatch tests");

  if (!r.issues.empty()) throw ConfigError(std::move(r.issues));
  cfg.document = doc;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

void override_seed(RunConfig& cfg, std::uint64_t seed) {
  cfg.sampling.seed = seed;
  cfg.document["sampling"]["seed"] = seed;
}

void override_samples(RunConfig& cfg, std::size_t count) {
  if (count == 0) throw ConfigError("--samples", "must be positive");
  cfg.sampling.count = count;
  cfg.document["sampling"]["count"] = count;
}

void override_tolerance(RunConfig& cfg, const std::string& check, double value) {
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), check) == names.end())
    throw ConfigError("--tol-override", "unknown check '" + check + "'");
  if (!(value > 0)) throw ConfigError("--tol-override", "tolerance must be positive");
  cfg.tolerances[check] = value;
  cfg.document["tolerances"][check] = value;
}

void override_output(RunConfig& cfg, const std::string& path) {
  cfg.output = path;
  cfg.document["output"] = path;
}

SpaceForm build_space_form(const ManifoldConfig& m) {
  switch (m.model) {
    case Model::Flat: return SpaceForm::flat(m.n, m.chart_radius);
    case Model::ConformalBall: return SpaceForm::conformal_ball(m.n, m.c, m.chart_radius);
    case Model::PerturbedConformal: return SpaceForm::perturbed_conformal(m.n, m.c, m.strength, m.chart_radius);
  }
  throw std::logic_error("unreachable");
}

StructureSpec build_spec(const RunConfig& cfg) {
  const CoefficientsConfig& c = cfg.coefficients;
  StructureSpec s;
  s.epsilon = c.epsilon;
  s.t_max = c.t_max;
  s.curvature = c.curvature.value_or(cfg.manifold.c);
  s.provenance.require_positive = c.require_positive;

  auto perturbed = [&](const std::string& name, ScalarFamily f) {
    for (const auto& p : c.perturb)
      if (p.target == name) f = f.scaled(p.factor);
    return f;
  };

  // P part. Cruceanu structures ignore it; they get the identity-like defaults.
  if (c.p_family) {
    const AlmostProductCoeffs ph = peyghan_heydari(c.p_family->alpha, c.p_family->beta, make_family(c.p_family->u));
    s.a1 = perturbed("a1", ph.a1);
    s.b1 = perturbed("b1", ph.b1);
    s.a2 = perturbed("a2", ph.a2);
    s.b2 = perturbed("b2", ph.b2);
    if (c.derive.almost_product) {
      std::tie(s.a2, s.b2) = complete_almost_product(s.a1, s.b1, s.t_max);
      s.a2 = perturbed("a2", s.a2);
      s.b2 = perturbed("b2", s.b2);
    }
    s.provenance.almost_product = true;
  } else {
    s.a1 = perturbed("a1", make_family(c.a1.value_or(constant_family(1.0))));
    if (c.derive.integrable) {
      auto [b1, b2] = integrable_b_coeffs(s.a1, s.curvature, s.t_max);
      s.b1 = perturbed("b1", b1);
      if (c.derive.almost_product) {
        std::tie(s.a2, s.b2) = complete_almost_product(s.a1, s.b1, s.t_max);
      } else {
        s.a2 = complete_almost_product(s.a1, s.b1, s.t_max).first;
        s.b2 = b2;
      }
      s.a2 = perturbed("a2", s.a2);
      s.b2 = perturbed("b2", s.b2);
      s.provenance.integrable = true;
      s.provenance.almost_product = true;
    } else {
      s.b1 = perturbed("b1", make_family(c.b1.value_or(constant_family(0.0))));
      if (c.derive.almost_product) {
        std::tie(s.a2, s.b2) = complete_almost_product(s.a1, s.b1, s.t_max);
        s.provenance.almost_product = true;
      } else {
        s.a2 = make_family(c.a2.value_or(constant_family(1.0)));
        s.b2 = make_family(c.b2.value_or(constant_family(0.0)));
      }
      s.a2 = perturbed("a2", s.a2);
      s.b2 = perturbed("b2", s.b2);
    }
  }

  s.lambda = perturbed("lambda", make_family(c.lambda.value_or(constant_family(1.0))));
  if (c.derive.para_kahler_mu) {
    s.mu = perturbed("mu", para_kahler_mu(s.lambda));
    s.provenance.para_kahler_mu = true;
  } else {
    s.mu = perturbed("mu", make_family(c.mu.value_or(constant_family(0.0))));
  }

  if (c.derive.compatible) {
    const MetricCoeffs mc =
        compatible_metric_coeffs({s.a1, s.b1, s.a2, s.b2}, s.lambda, s.mu, s.epsilon, s.t_max, c.require_positive);
    s.c1 = perturbed("c1", mc.c1);
    s.d1 = perturbed("d1", mc.d1);
    s.c2 = perturbed("c2", mc.c2);
    s.d2 = perturbed("d2", mc.d2);
    s.provenance.compatible = true;
  } else {
    s.c1 = perturbed("c1", make_family(*c.c1));
    s.d1 = perturbed("d1", make_family(*c.d1));
    s.c2 = perturbed("c2", make_family(*c.c2));
    s.d2 = perturbed("d2", make_family(*c.d2));
  }
  return s;
}

LiftedStructure build_structure(const RunConfig& cfg) {
  StructureSpec spec = build_spec(cfg);
  SpaceForm m = build_space_form(cfg.manifold);
  if (!cfg.coefficients.perturb.empty())
    return LiftedStructure::unchecked(std::move(spec), std::move(m), cfg.coefficients.structure);
  return LiftedStructure(std::move(spec), std::move(m), cfg.coefficients.structure);
}

}  // namespace cotlift::cli
