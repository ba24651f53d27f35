// tauberlab: batch front end for the verification library.  Subcommands
// mirror the library modules; every JSON report embeds the schema version,
// the scenario hash and the seed, and reruns with the same scenario + seed
// are byte-identical regardless of --jobs.
#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tauberlab/bounds.hpp"
#include "tauberlab/errors.hpp"
#include "tauberlab/json_io.hpp"
#include "tauberlab/laplace.hpp"
#include "tauberlab/rng.hpp"
#include "tauberlab/tauberian.hpp"
#include "tauberlab/ultrapoly.hpp"

using namespace tauberlab;

namespace {

struct Common {
  std::string out;
  bool csv = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "write the report to this path");
  cmd->add_flag("--csv", c.csv, "emit CSV instead of JSON where applicable");
  cmd->add_option("--jobs", c.jobs, "parallelism degree (results independent)")
      ->check(CLI::PositiveNumber);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw DomainError("cannot open output path: " + c.out);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
  }
}

std::uint64_t effective_seed(std::uint64_t scenario_seed) {
  if (const char* env = std::getenv("TAUBERLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("TAUBERLAB_SEED: cannot parse seed");
    }
  }
  return scenario_seed;
}

Vec parse_numbers(const std::string& s) {
  Vec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw DomainError("cannot parse number list: " + s);
    }
  }
  if (out.empty()) throw DomainError("empty number list");
  return out;
}

Vec log_range(double lo, double hi, std::size_t count) {
  Vec g;
  for (std::size_t k = 0; k < count; ++k)
    g.push_back(lo * std::pow(hi / lo, count == 1
                                           ? 0.0
                                           : double(k) / double(count - 1)));
  return g;
}

std::string dump(const Json& j) { return j.dump(2); }

// Default Beurling ell grid of the bound checks.
const std::vector<double> kEllGrid = {0.25, 0.5, 1.0, 2.0, 4.0};

LaplaceFunction make_transform(const std::string& f_spec, const Cone& gamma) {
  if (f_spec == "violator")  // synthetic non-transform: e^{1/Im z}
    return LaplaceFunction::external(
        [](const CVec& z) { return Cplx(std::exp(1.0 / z[0].imag())); },
        conjugate(gamma), "exp(1/Im z)");
  return LaplaceFunction::closed_form(parse_catalog_spec(f_spec), gamma);
}

std::vector<CVec> sandwich_grid(const Cone& gamma, double radius) {
  const auto C = conjugate(gamma);
  const Vec w = C.interior_witness();
  const std::size_t n = gamma.dim();
  std::vector<CVec> grid;
  for (double ang : {0.39269908169872414, 0.7853981633974483,
                     1.1780972450961724, 1.5707963267948966}) {
    for (double r : log_range(1e-1, radius, 60)) {
      CVec z(n);
      for (std::size_t i = 0; i < n; ++i)
        z[i] = r * Cplx(std::cos(ang) * (i == 0 ? 1.0 : 0.0),
                        std::sin(ang) * w[i]);
      grid.push_back(z);
    }
  }
  return grid;
}

int exit_code(bool pass) { return pass ? 0 : 1; }

// ---------------------------------------------------------------------------
// Subcommand actions
// ---------------------------------------------------------------------------

int run_weights_analyze(const Common& common, const std::string& m_spec,
                        std::size_t depth) {
  const auto W = parse_weight_spec(m_spec);
  Json scenario;
  scenario["command"] = "weights analyze";
  scenario["M"] = m_spec;
  scenario["depth"] = depth;

  const auto cond = check_conditions(W, depth);
  Json payload;
  payload["sequence"] = W.describe();
  payload["conditions"] = to_json(cond);
  Json samples = Json::array();
  for (double t : log_range(1e-2, 1e6, 17)) {
    Json s;
    s["t"] = t;
    s["M"] = associated(W, t);
    samples.push_back(s);
  }
  payload["associated"] = samples;
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return 0;
}

int run_cone_info(const Common& common, const std::string& cone_spec) {
  const auto gamma = parse_cone_spec(cone_spec);
  const auto C = conjugate(gamma);
  Json scenario;
  scenario["command"] = "cone info";
  scenario["cone"] = cone_spec;
  Json payload;
  payload["cone"] = gamma.describe();
  payload["dim"] = gamma.dim();
  payload["solid"] = gamma.is_solid();
  payload["conjugate"] = C.describe();
  payload["interior_witness"] = C.interior_witness();
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return 0;
}

int run_laplace_eval(const Common& common, const std::string& f_spec,
                     const std::string& cone_spec, const Vec& x_range,
                     const Vec& y_range) {
  const auto f = parse_catalog_spec(f_spec);
  const auto gamma = cone_spec.empty() ? Cone::orthant(f.dim())
                                       : parse_cone_spec(cone_spec);
  const auto F = LaplaceFunction::closed_form(f, gamma);
  const Vec w = F.domain_cone().interior_witness();
  const std::size_t n = f.dim();

  std::ostringstream os;
  os.precision(17);
  if (common.csv) os << "x,y,re,im\n";
  for (double x : x_range) {
    for (double y : y_range) {
      CVec z(n);
      for (std::size_t i = 0; i < n; ++i)
        z[i] = Cplx(i == 0 ? x : 0.0, y * w[i]);
      const Cplx v = F(z);
      if (common.csv) {
        os << x << "," << y << "," << v.real() << "," << v.imag() << "\n";
      } else {
        Json line;
        Json zj = Json::array();
        for (const auto& zi : z) zj.push_back({zi.real(), zi.imag()});
        line["z"] = zj;
        line["value"] = {v.real(), v.imag()};
        os << line.dump() << "\n";
      }
    }
  }
  emit(common, os.str());
  return 0;
}

int run_laplace_invert(const Common& common, const std::string& f_spec,
                       double y, const Vec& xi_spec) {
  const auto f = parse_catalog_spec(f_spec);
  if (f.dim() != 1) throw CapabilityError("invert: 1-D only");
  const auto F = LaplaceFunction::closed_form(f, Cone::orthant(1));
  Vec xi_grid;
  const auto count = std::size_t(xi_spec[2]);
  for (std::size_t k = 0; k < count; ++k)
    xi_grid.push_back(xi_spec[0] +
                      (xi_spec[1] - xi_spec[0]) * double(k) /
                          double(count - 1));
  const auto rec = inverse_laplace(F, {y}, xi_grid);

  if (common.csv) {
    std::ostringstream os;
    os.precision(17);
    os << "xi,re,im\n";
    for (std::size_t k = 0; k < rec.xi.size(); ++k)
      os << rec.xi[k] << "," << rec.values[k].real() << ","
         << rec.values[k].imag() << "\n";
    emit(common, os.str());
    return 0;
  }
  Json scenario;
  scenario["command"] = "laplace invert";
  scenario["f"] = f_spec;
  scenario["y"] = y;
  scenario["xi"] = xi_spec;
  Json payload;
  payload["xi"] = rec.xi;
  Json vals = Json::array();
  for (const auto& v : rec.values) vals.push_back({v.real(), v.imag()});
  payload["values"] = vals;
  payload["step"] = rec.step;
  payload["step_check_error"] = rec.step_check_error;
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return 0;
}

int run_verify_tube(const Common& common, const std::string& which,
                    const std::string& f_spec, const std::string& m_spec,
                    const std::string& n_spec, const std::string& cone_spec,
                    const std::vector<double>& ells, double eps) {
  const auto WM = parse_weight_spec(m_spec);
  const auto WN = parse_weight_spec(n_spec.empty() ? m_spec : n_spec);
  const auto gamma = parse_cone_spec(cone_spec);
  const auto F = make_transform(f_spec, gamma);
  const auto spec = default_tube_grid(F.domain_cone());
  const auto& grid = ells.empty() ? kEllGrid : ells;

  Json scenario;
  scenario["command"] = "verify " + which;
  scenario["f"] = f_spec;
  scenario["M"] = m_spec;
  scenario["N"] = n_spec.empty() ? m_spec : n_spec;
  scenario["cone"] = cone_spec;
  scenario["ell_grid"] = grid;
  if (which == "bound31i") scenario["eps"] = eps;

  bool all_pass = true;
  Json reports = Json::array();
  std::string csv;
  for (double ell : grid) {
    const auto R = RSequence::beurling(ell);
    const auto rep = which == "bound31i"
                         ? verify_bound_3_1_i(F, WM, WN, R, eps, spec)
                         : verify_bound_strong(F, WM, WN, R, spec);
    all_pass = all_pass && rep.pass;
    Json jr = to_json(rep);
    jr["ell"] = ell;
    reports.push_back(jr);
    if (common.csv) csv += residuals_csv(rep);
  }
  if (common.csv) {
    emit(common, csv);
    return exit_code(all_pass);
  }
  Json payload;
  payload["pass"] = all_pass;
  payload["reports"] = reports;
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return exit_code(all_pass);
}

int run_verify_slice(const Common& common, const std::string& f_spec,
                     const std::string& m_spec, const std::string& n_spec,
                     const std::string& cone_spec, const std::string& omega_s,
                     double sigma0, const std::vector<double>& ells) {
  const auto WM = parse_weight_spec(m_spec);
  const auto WN = parse_weight_spec(n_spec.empty() ? m_spec : n_spec);
  const auto gamma = parse_cone_spec(cone_spec);
  const auto F = make_transform(f_spec, gamma);
  const Vec omega = omega_s.empty() ? F.domain_cone().interior_witness()
                                    : parse_numbers(omega_s);
  const auto& grid = ells.empty() ? kEllGrid : ells;
  SliceGridSpec spec;

  Json scenario;
  scenario["command"] = "verify bound31ii";
  scenario["f"] = f_spec;
  scenario["M"] = m_spec;
  scenario["N"] = n_spec.empty() ? m_spec : n_spec;
  scenario["cone"] = cone_spec;
  scenario["omega"] = omega;
  scenario["sigma0"] = sigma0;
  scenario["ell_grid"] = grid;

  bool all_pass = true;
  Json reports = Json::array();
  std::string csv;
  for (double ell : grid) {
    const auto rep = verify_bound_3_1_ii(F, WM, WN, RSequence::beurling(ell),
                                         omega, sigma0, spec);
    all_pass = all_pass && rep.pass;
    Json jr = to_json(rep);
    jr["ell"] = ell;
    reports.push_back(jr);
    if (common.csv) csv += residuals_csv(rep);
  }
  if (common.csv) {
    emit(common, csv);
    return exit_code(all_pass);
  }
  Json payload;
  payload["pass"] = all_pass;
  payload["reports"] = reports;
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return exit_code(all_pass);
}

int run_verify_lemma34(const Common& common, const std::string& m_spec,
                       const std::string& n_spec, const std::string& cone_spec,
                       double eps) {
  const auto WM = parse_weight_spec(m_spec);
  const auto WN = parse_weight_spec(n_spec.empty() ? m_spec : n_spec);
  const auto gamma = parse_cone_spec(cone_spec);
  if (gamma.dim() != 1)
    throw CapabilityError("lemma34: mollifier grids are 1-D here");
  const auto eta = build_mollifier(gamma, eps, {-4.0, 6.0, 81});
  const auto one = RSequence::beurling(1.0);
  const std::vector<CVec> zs = {{Cplx(0.0, 1.0)},
                                {Cplx(0.5, 1.0)},
                                {Cplx(0.0, 3.0)},
                                {Cplx(-1.0, 0.4)}};
  const auto rep = verify_lemma_3_4(eta, WM, WN, one, one, zs, 2, 2);

  Json scenario;
  scenario["command"] = "verify lemma34";
  scenario["M"] = m_spec;
  scenario["N"] = n_spec.empty() ? m_spec : n_spec;
  scenario["cone"] = cone_spec;
  scenario["eps"] = eps;
  if (common.csv) {
    emit(common, residuals_csv(rep));
    return exit_code(rep.pass);
  }
  emit(common,
       dump(make_report(to_json(rep), scenario,
                        effective_seed(Rng::kDefaultSeed))));
  return exit_code(rep.pass);
}

int run_verify_lemma53(const Common& common, const std::string& n_spec,
                       double ell, const std::string& cone_spec,
                       const std::string& y_s) {
  const auto WN = parse_weight_spec(n_spec);
  const auto gamma = parse_cone_spec(cone_spec);
  const Vec y = y_s.empty() ? conjugate(gamma).interior_witness()
                            : parse_numbers(y_s);
  const auto rep = verify_sup_diff(WN, RSequence::beurling(ell), gamma, y,
                                   log_range(1e-3, 1e3, 121));

  Json scenario;
  scenario["command"] = "verify lemma53";
  scenario["N"] = n_spec;
  scenario["ell"] = ell;
  scenario["cone"] = cone_spec;
  scenario["y"] = y;
  if (common.csv) {
    emit(common, residuals_csv(rep));
    return exit_code(rep.pass);
  }
  emit(common,
       dump(make_report(to_json(rep), scenario,
                        effective_seed(Rng::kDefaultSeed))));
  return exit_code(rep.pass);
}

int run_tauber(const Common& common, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open scenario file: " + path);
  Json scenario;
  try {
    scenario = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("scenario JSON: ") + e.what());
  }

  const auto f = parse_catalog_spec(scenario.at("f"));
  const auto rho = parse_rho_spec(scenario.at("rho"));
  const auto WM = parse_weight_spec(scenario.value("M", Json("gevrey:2")));
  const auto WN = parse_weight_spec(scenario.value("N", Json("gevrey:2")));
  const auto R = RSequence::beurling(scenario.value("ell", 1.0));
  auto cfg = default_pipeline_config_1d();
  if (scenario.contains("omega"))
    cfg.omega = scenario["omega"].get<Vec>();
  if (scenario.contains("rays")) {
    cfg.rays.clear();
    for (const auto& ray : scenario["rays"])
      cfg.rays.push_back(ray.get<Vec>());
  }
  if (scenario.contains("theta_min"))
    cfg.theta_min = scenario["theta_min"].get<double>();
  const auto seed =
      effective_seed(scenario.value("seed", Rng::kDefaultSeed));

  const auto verdict = tauberian_pipeline(f, rho, WM, WN, R, cfg);
  emit(common, dump(make_report(to_json(verdict), scenario, seed)));
  return exit_code(verdict.pass);
}

int run_ultrapoly_build(const Common& common, const std::string& m_spec,
                        double ell, double radius) {
  const auto WM = parse_weight_spec(m_spec);
  const auto P = build_tilde(WM, RSequence::beurling(ell), radius);

  Json scenario;
  scenario["command"] = "ultrapoly build";
  scenario["M"] = m_spec;
  scenario["ell"] = ell;
  scenario["radius"] = radius;
  Json payload;
  payload["dim"] = P.dim();
  payload["disc_radius"] = P.disc_radius();
  payload["truncation_index"] = P.truncation_index();
  payload["tail_bound"] = P.tail_bound();
  Json samples = Json::array();
  for (double r : log_range(1e-1, radius, 9)) {
    const Cplx v = P.log_value({Cplx(r, 0.0)});
    Json s;
    s["z"] = r;
    s["log_value"] = {v.real(), v.imag()};
    samples.push_back(s);
  }
  payload["samples"] = samples;
  emit(common, dump(make_report(payload, scenario, effective_seed(
                                                       Rng::kDefaultSeed))));
  return 0;
}

int run_ultrapoly_check(const Common& common, const std::string& m_spec,
                        double ell, const std::string& cone_spec,
                        double radius) {
  const auto WM = parse_weight_spec(m_spec);
  const auto R = RSequence::beurling(ell);
  const auto gamma = parse_cone_spec(cone_spec);
  const auto P = build_cone_poly(WM, R, gamma, radius);
  const auto rep = verify_sandwich(P, WM, R, sandwich_grid(gamma, radius));

  Json scenario;
  scenario["command"] = "ultrapoly check";
  scenario["M"] = m_spec;
  scenario["ell"] = ell;
  scenario["cone"] = cone_spec;
  scenario["radius"] = radius;
  if (common.csv) {
    emit(common, residuals_csv(rep));
    return exit_code(rep.pass);
  }
  emit(common,
       dump(make_report(to_json(rep), scenario,
                        effective_seed(Rng::kDefaultSeed))));
  return exit_code(rep.pass);
}

// Recursively checks every "pass" field of a stored report.
bool all_pass_fields(const Json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "pass" && v.is_boolean() && !v.get<bool>()) return false;
      if (!all_pass_fields(v)) return false;
    }
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (!all_pass_fields(v)) return false;
  }
  return true;
}

int run_report(const Common& common, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open report file: " + path);
  Json rep;
  try {
    rep = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("report JSON: ") + e.what());
  }
  std::ostringstream os;
  os << "schema:        " << rep.value("schema", std::string("?")) << "\n";
  os << "tool version:  " << rep.value("tool_version", std::string("?"))
     << "\n";
  os << "scenario hash: " << rep.value("scenario_hash", std::string("?"))
     << "\n";
  if (rep.contains("scenario") && rep["scenario"].contains("command"))
    os << "command:       "
       << rep["scenario"]["command"].get<std::string>() << "\n";
  const bool ok = all_pass_fields(rep);
  os << "verdict:       " << (ok ? "pass" : "FAIL") << "\n";
  if (rep.contains("summary"))
    os << "summary:       " << rep["summary"].get<std::string>() << "\n";
  emit(common, os.str());
  return exit_code(ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tauberlab: desk-scale verification of Laplace-transform "
               "growth bounds and the Tauberian pipeline"};
  app.require_subcommand(1);
  Common common;
  std::function<int()> action;

  // weights analyze
  auto* weights = app.add_subcommand("weights", "weight sequence calculus");
  weights->require_subcommand(1);
  {
    auto* cmd = weights->add_subcommand("analyze",
                                        "condition flags and M(t) samples");
    auto m_spec = std::make_shared<std::string>();
    auto depth = std::make_shared<std::size_t>(64);
    cmd->add_option("--M", *m_spec, "weight spec, e.g. gevrey:2")->required();
    cmd->add_option("--depth", *depth, "check depth");
    add_common(cmd, common);
    cmd->callback([&, m_spec, depth] {
      action = [&, m_spec, depth] {
        return run_weights_analyze(common, *m_spec, *depth);
      };
    });
  }

  // cone info
  auto* cone = app.add_subcommand("cone", "cone geometry");
  cone->require_subcommand(1);
  {
    auto* cmd = cone->add_subcommand("info", "cone and conjugate summary");
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--cone", *spec, "cone spec, e.g. orthant:2")->required();
    add_common(cmd, common);
    cmd->callback([&, spec] {
      action = [&, spec] { return run_cone_info(common, *spec); };
    });
  }

  // laplace eval | invert
  auto* lap = app.add_subcommand("laplace", "transform evaluation");
  lap->require_subcommand(1);
  {
    auto* cmd = lap->add_subcommand("eval", "closed-form values on a grid");
    auto f = std::make_shared<std::string>();
    auto cone_s = std::make_shared<std::string>();
    auto xs = std::make_shared<std::string>("-3,-1,0,1,3");
    auto ys = std::make_shared<std::string>("0.5,1,2");
    cmd->add_option("--f", *f, "catalog element")->required();
    cmd->add_option("--cone", *cone_s, "support cone (default orthant)");
    cmd->add_option("--x", *xs, "comma list of Re z offsets");
    cmd->add_option("--y", *ys, "comma list of Im z heights");
    add_common(cmd, common);
    cmd->callback([&, f, cone_s, xs, ys] {
      action = [&, f, cone_s, xs, ys] {
        return run_laplace_eval(common, *f, *cone_s, parse_numbers(*xs),
                                parse_numbers(*ys));
      };
    });
  }
  {
    auto* cmd = lap->add_subcommand("invert", "slice recovery (1-D)");
    auto f = std::make_shared<std::string>();
    auto y = std::make_shared<double>(1.0);
    auto xi = std::make_shared<std::string>("-2,10,121");
    cmd->add_option("--f", *f, "catalog element")->required();
    cmd->add_option("--y", *y, "slice height");
    cmd->add_option("--xi", *xi, "grid lo,hi,count");
    add_common(cmd, common);
    cmd->callback([&, f, y, xi] {
      action = [&, f, y, xi] {
        const Vec spec = parse_numbers(*xi);
        if (spec.size() != 3 || spec[2] < 2)
          throw DomainError("--xi expects lo,hi,count");
        return run_laplace_invert(common, *f, *y, spec);
      };
    });
  }

  // verify ...
  auto* verify = app.add_subcommand("verify", "growth bound checks");
  verify->require_subcommand(1);
  auto vf = std::make_shared<std::string>("delta");
  auto vm = std::make_shared<std::string>("gevrey:2");
  auto vn = std::make_shared<std::string>();
  auto vcone = std::make_shared<std::string>("orthant:1");
  auto vells = std::make_shared<std::vector<double>>();
  auto veps = std::make_shared<double>(0.1);
  auto vomega = std::make_shared<std::string>();
  auto vsigma0 = std::make_shared<double>(1.0);
  auto vy = std::make_shared<std::string>();
  auto vell = std::make_shared<double>(1.0);
  for (const std::string which : {"bound31i", "strong"}) {
    auto* cmd = verify->add_subcommand(
        which, which == "strong" ? "tube bound without the eps slack"
                                 : "tube bound with eps |Im z| slack");
    cmd->add_option("--f", *vf, "catalog element or 'violator'");
    cmd->add_option("--M", *vm, "weight spec");
    cmd->add_option("--N", *vn, "weight spec (default --M)");
    cmd->add_option("--cone", *vcone, "support cone");
    cmd->add_option("--ell", *vells, "Beurling ell values (default grid)");
    if (which == "bound31i") cmd->add_option("--eps", *veps, "slack rate");
    add_common(cmd, common);
    cmd->callback([&, which] {
      action = [&, which] {
        return run_verify_tube(common, which, *vf, *vm, *vn, *vcone, *vells,
                               *veps);
      };
    });
  }
  {
    auto* cmd = verify->add_subcommand("bound31ii", "slice bound along omega");
    cmd->add_option("--f", *vf, "catalog element or 'violator'");
    cmd->add_option("--M", *vm, "weight spec");
    cmd->add_option("--N", *vn, "weight spec (default --M)");
    cmd->add_option("--cone", *vcone, "support cone");
    cmd->add_option("--omega", *vomega, "slice direction (comma list)");
    cmd->add_option("--sigma0", *vsigma0, "slice height cap");
    cmd->add_option("--ell", *vells, "Beurling ell values (default grid)");
    add_common(cmd, common);
    cmd->callback([&] {
      action = [&] {
        return run_verify_slice(common, *vf, *vm, *vn, *vcone, *vomega,
                                *vsigma0, *vells);
      };
    });
  }
  {
    auto* cmd = verify->add_subcommand("lemma34", "mollifier wave norms");
    cmd->add_option("--M", *vm, "weight spec");
    cmd->add_option("--N", *vn, "weight spec (default --M)");
    cmd->add_option("--cone", *vcone, "support cone");
    cmd->add_option("--eps", *veps, "mollifier layer width");
    add_common(cmd, common);
    cmd->callback([&] {
      action = [&] {
        return run_verify_lemma34(common, *vm, *vn, *vcone, *veps);
      };
    });
  }
  {
    auto* cmd = verify->add_subcommand("lemma53", "cone sup estimate");
    cmd->add_option("--N", *vm, "weight spec");
    cmd->add_option("--ell", *vell, "Beurling ell");
    cmd->add_option("--cone", *vcone, "support cone");
    cmd->add_option("--y", *vy, "point of C (default interior witness)");
    add_common(cmd, common);
    cmd->callback([&] {
      action = [&] {
        return run_verify_lemma53(common, *vm, *vell, *vcone, *vy);
      };
    });
  }

  // tauber run
  auto* tauber = app.add_subcommand("tauber", "Tauberian pipeline");
  tauber->require_subcommand(1);
  {
    auto* cmd = tauber->add_subcommand("run", "run a scenario file");
    auto path = std::make_shared<std::string>();
    cmd->add_option("scenario", *path, "scenario JSON path")->required();
    add_common(cmd, common);
    cmd->callback([&, path] {
      action = [&, path] { return run_tauber(common, *path); };
    });
  }

  // ultrapoly build | check
  auto* up = app.add_subcommand("ultrapoly", "ultrapolynomial products");
  up->require_subcommand(1);
  auto um = std::make_shared<std::string>("gevrey:2");
  auto uell = std::make_shared<double>(1.0);
  auto uradius = std::make_shared<double>(1e3);
  auto ucone = std::make_shared<std::string>("orthant:1");
  {
    auto* cmd = up->add_subcommand("build", "truncated product on a disc");
    cmd->add_option("--M", *um, "weight spec");
    cmd->add_option("--ell", *uell, "Beurling ell");
    cmd->add_option("--radius", *uradius, "disc radius");
    add_common(cmd, common);
    cmd->callback([&] {
      action = [&] {
        return run_ultrapoly_build(common, *um, *uell, *uradius);
      };
    });
  }
  {
    auto* cmd = up->add_subcommand("check", "sandwich bound on a tube grid");
    cmd->add_option("--M", *um, "weight spec");
    cmd->add_option("--ell", *uell, "Beurling ell");
    cmd->add_option("--cone", *ucone, "support cone");
    cmd->add_option("--radius", *uradius, "disc radius");
    add_common(cmd, common);
    cmd->callback([&] {
      action = [&] {
        return run_ultrapoly_check(common, *um, *uell, *ucone, *uradius);
      };
    });
  }

  // report
  {
    auto* cmd = app.add_subcommand("report", "summarize a stored report");
    auto path = std::make_shared<std::string>();
    cmd->add_option("file", *path, "report JSON path")->required();
    add_common(cmd, common);
    cmd->callback([&, path] {
      action = [&, path] { return run_report(common, *path); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2; --help stays 0
  }

  try {
    return action ? action() : 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // library-level failure: structured cause, exit 1
    Json err;
    err["error"]["type"] = [&]() -> std::string {
      if (dynamic_cast<const DivergentProductError*>(&e))
        return "divergent-product";
      if (dynamic_cast<const IntegrabilityError*>(&e))
        return "integrability";
      if (dynamic_cast<const InvariantViolation*>(&e))
        return "invariant-violation";
      if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
      if (dynamic_cast<const CapabilityError*>(&e)) return "capability";
      return "library";
    }();
    err["error"]["message"] = e.what();
    if (const auto* iv = dynamic_cast<const InvariantViolation*>(&e))
      err["error"]["witness"] = iv->witness;
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
