#include "tauberlab/json_io.hpp"

#include <sstream>

#include "tauberlab/errors.hpp"

namespace tauberlab {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(std::string(what) + ": cannot parse number '" + s + "'");
  }
}

Vec to_vec(const Json& j) {
  if (!j.is_array()) throw DomainError("spec: expected a number array");
  Vec v;
  for (const auto& x : j) v.push_back(x.get<double>());
  return v;
}

}  // namespace

WeightSequence parse_weight_spec(const Json& spec) {
  if (spec.is_string()) {
    const auto parts = split(spec.get<std::string>(), ':');
    if (parts.size() >= 2 && parts[0] == "gevrey") {
      const double s = to_double(parts[1], "weight spec");
      const std::size_t depth =
          parts.size() > 2
              ? std::size_t(to_double(parts[2], "weight spec"))
              : 64;
      return WeightSequence::gevrey(s, depth);
    }
    throw DomainError("weight spec: expected gevrey:<s>[:depth], got '" +
                      spec.get<std::string>() + "'");
  }
  if (spec.is_object()) {
    const std::string kind = spec.value("kind", "");
    if (kind == "gevrey")
      return WeightSequence::gevrey(spec.at("s").get<double>(),
                                    spec.value("depth", std::size_t(64)));
    if (kind == "table") return WeightSequence::table(to_vec(spec.at("values")));
    throw DomainError("weight spec: unknown kind '" + kind + "'");
  }
  throw DomainError("weight spec: expected string or object");
}

RSequence parse_rseq_spec(const Json& spec) {
  if (spec.is_number()) return RSequence::beurling(spec.get<double>());
  if (spec.is_string()) {
    const auto parts = split(spec.get<std::string>(), ':');
    if (parts[0] == "beurling" && parts.size() == 2)
      return RSequence::beurling(to_double(parts[1], "R spec"));
    if (parts[0] == "roumieu-log")
      return RSequence::roumieu_log(
          parts.size() > 1 ? to_double(parts[1], "R spec") : 1.0);
    if (parts[0] == "roumieu-pow" && parts.size() == 3)
      return RSequence::roumieu_pow(to_double(parts[1], "R spec"),
                                    to_double(parts[2], "R spec"));
    throw DomainError("R spec: unknown family '" + spec.get<std::string>() +
                      "'");
  }
  throw DomainError("R spec: expected number or string");
}

Cone parse_cone_spec(const Json& spec) {
  if (spec.is_string()) {
    const auto parts = split(spec.get<std::string>(), ':');
    if (parts.size() == 2) {
      const std::size_t n = std::size_t(to_double(parts[1], "cone spec"));
      if (parts[0] == "orthant") return Cone::orthant(n);
      if (parts[0] == "lorentz") return Cone::lorentz(n);
    }
    throw DomainError("cone spec: expected orthant:<n> or lorentz:<n>");
  }
  if (spec.is_object() && spec.value("kind", "") == "polyhedral") {
    std::vector<Vec> gens;
    for (const auto& g : spec.at("generators")) gens.push_back(to_vec(g));
    return Cone::polyhedral(gens);
  }
  throw DomainError("cone spec: expected string or polyhedral object");
}

CatalogElement parse_catalog_spec(const Json& spec) {
  if (spec.is_string()) {
    const auto parts = split(spec.get<std::string>(), ':');
    if (parts[0] == "delta") {
      MultiIndex a = {0};
      if (parts.size() > 1) a[0] = int(to_double(parts[1], "catalog spec"));
      return CatalogElement::point({0.0}, a);
    }
    if (parts[0] == "heaviside") return CatalogElement::heaviside();
    if (parts[0] == "xiplus") return CatalogElement::density({1.0}, {0.0});
    if (parts[0] == "cube")  // 0.5 xi^2 e^{-xi}, transform 1/(1-iz)^3
      return CatalogElement::density({2.0}, {1.0}, 0.5);
    if (parts[0] == "const2")  // 2-D orthant indicator
      return CatalogElement::density({0.0, 0.0}, {0.0, 0.0});
    throw DomainError("catalog spec: unknown shorthand '" +
                      spec.get<std::string>() + "'");
  }
  if (spec.is_object()) {
    const std::string kind = spec.value("kind", "");
    if (kind == "point") {
      MultiIndex alpha;
      for (const auto& a : spec.at("alpha")) alpha.push_back(a.get<int>());
      return CatalogElement::point(to_vec(spec.at("loc")), alpha,
                                   spec.value("coef", 1.0));
    }
    if (kind == "density")
      return CatalogElement::density(to_vec(spec.at("a")),
                                     to_vec(spec.at("c")),
                                     spec.value("coef", 1.0));
    if (kind == "sum") {
      const auto& terms = spec.at("terms");
      if (terms.empty()) throw DomainError("catalog spec: empty sum");
      CatalogElement out = parse_catalog_spec(terms[0]);
      for (std::size_t i = 1; i < terms.size(); ++i)
        out += parse_catalog_spec(terms[i]);
      return out;
    }
    throw DomainError("catalog spec: unknown kind '" + kind + "'");
  }
  throw DomainError("catalog spec: expected string or object");
}

RegularlyVarying parse_rho_spec(const Json& spec) {
  if (spec.is_number())
    return RegularlyVarying::power(spec.get<double>());
  if (spec.is_string())
    return RegularlyVarying::power(
        to_double(spec.get<std::string>(), "rho spec"));
  if (spec.is_object()) {
    const double alpha = spec.at("alpha").get<double>();
    const std::string slow = spec.value("slow", "none");
    const double exponent = spec.value("exponent", 0.0);
    if (slow == "none") return RegularlyVarying::power(alpha);
    if (slow == "log") return RegularlyVarying::log_factor(alpha, exponent);
    if (slow == "loglog")
      return RegularlyVarying::loglog_factor(alpha, exponent);
    throw DomainError("rho spec: unknown slow factor '" + slow + "'");
  }
  throw DomainError("rho spec: expected number, string or object");
}

Json to_json(const BoundReport& rep) {
  Json j;
  j["bound_id"] = rep.bound_id;
  j["pass"] = rep.pass;
  j["log_constant"] = rep.log_constant;
  j["worst_residual"] = rep.worst_residual;
  j["attaining_point"] = rep.attaining_point;
  j["refinement_stable"] = rep.refinement_stable;
  j["grid"] = rep.grid_description;
  Json params = Json::object();
  for (const auto& [k, v] : rep.params) params[k] = v;
  j["params"] = params;
  j["residual_count"] = rep.residuals.size();
  return j;
}

Json to_json(const ConditionReport& rep) {
  auto fit = [](const ConditionFit& f) {
    Json j;
    j["flag"] = f.flag;
    j["A"] = f.A;
    j["H"] = f.H;
    j["c0"] = f.c0;
    return j;
  };
  Json j;
  j["depth"] = rep.depth;
  j["M1"] = fit(rep.m1);
  j["M1_star"] = fit(rep.m1_star);
  j["M2_prime"] = fit(rep.m2_prime);
  j["M2"] = fit(rep.m2);
  j["M3_prime"] = fit(rep.m3_prime);
  j["M3"] = fit(rep.m3);
  j["sum_inverse_ratios"] = rep.sum_inverse_ratios;
  return j;
}

Json to_json(const LimitTable& table) {
  Json entries = Json::array();
  for (const auto& e : table.entries) {
    Json je;
    je["label"] = e.label;
    je["limit"] = {e.limit.real(), e.limit.imag()};
    je["drift"] = e.drift;
    je["converged"] = e.converged;
    entries.push_back(je);
  }
  Json j;
  j["entries"] = entries;
  j["all_converged"] = table.all_converged();
  return j;
}

Json to_json(const QuasiVerdict& verdict) {
  Json j;
  j["pass"] = verdict.pass;
  j["summary"] = verdict.summary;
  j["degree"] = verdict.degree;
  j["g_identified"] = verdict.g_identified;
  if (verdict.g_identified) {
    Json g;
    g["describe"] = verdict.g.describe();
    Json points = Json::array();
    for (const auto& p : verdict.g.points()) {
      Json jp;
      jp["loc"] = p.loc;
      jp["alpha"] = p.alpha;
      jp["coef"] = p.coef;
      points.push_back(jp);
    }
    Json densities = Json::array();
    for (const auto& d : verdict.g.densities()) {
      Json jd;
      jd["a"] = d.a;
      jd["c"] = d.c;
      jd["coef"] = d.coef;
      densities.push_back(jd);
    }
    g["points"] = points;
    g["densities"] = densities;
    j["g"] = g;
  } else {
    j["g"] = "ray-limit table only";
  }
  j["ray_limits"] = to_json(verdict.ray_limits);
  j["hemisphere_limsup"] = verdict.hemisphere_limsup;
  j["hemisphere_stable"] = verdict.hemisphere_stable;
  j["oracle_errors"] = verdict.oracle_errors;
  return j;
}

Json make_report(Json payload, const Json& scenario, std::uint64_t seed) {
  std::ostringstream hash;
  hash << std::hex << fnv1a64(scenario.dump());
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["scenario_hash"] = hash.str();
  j["seed"] = seed;
  j["scenario"] = scenario;
  for (auto& [k, v] : payload.items()) j[k] = v;
  return j;
}

std::string residuals_csv(const BoundReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "point,residual\n";
  for (const auto& [point, residual] : rep.residuals) {
    for (std::size_t i = 0; i < point.size(); ++i)
      os << (i ? " " : "") << point[i];
    os << "," << residual << "\n";
  }
  return os.str();
}

}  // namespace tauberlab
