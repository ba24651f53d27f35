#include "tauberlab/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "tauberlab/errors.hpp"
#include "tauberlab/laplace.hpp"
#include "tauberlab/rng.hpp"

namespace tauberlab {

namespace {

const Cplx kI(0.0, 1.0);

Vec log_spaced(double lo, double hi, std::size_t count) {
  Vec out;
  out.reserve(count);
  const double la = std::log(lo);
  const double lb = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.0 : double(k) / double(count - 1);
    out.push_back(std::exp(la + (lb - la) * t));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Regularly varying comparison functions
// ---------------------------------------------------------------------------

RegularlyVarying RegularlyVarying::power(double alpha) {
  RegularlyVarying r;
  r.alpha_ = alpha;
  return r;
}

RegularlyVarying RegularlyVarying::log_factor(double alpha, double beta) {
  RegularlyVarying r;
  r.alpha_ = alpha;
  r.slow_ = Slow::kLog;
  r.exponent_ = beta;
  return r;
}

RegularlyVarying RegularlyVarying::loglog_factor(double alpha, double gamma) {
  RegularlyVarying r;
  r.alpha_ = alpha;
  r.slow_ = Slow::kLogLog;
  r.exponent_ = gamma;
  return r;
}

std::string RegularlyVarying::describe() const {
  std::ostringstream os;
  os << "lambda^" << alpha_;
  if (slow_ == Slow::kLog)
    os << " * log^" << exponent_ << "(e + lambda)";
  else if (slow_ == Slow::kLogLog)
    os << " * loglog^" << exponent_ << "(e^e + lambda)";
  return os.str();
}

double rho_eval(const RegularlyVarying& rho, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rho_eval: lambda must be positive");
  double v = std::pow(lambda, rho.alpha());
  switch (rho.slow()) {
    case RegularlyVarying::Slow::kNone:
      break;
    case RegularlyVarying::Slow::kLog:
      v *= std::pow(std::log(std::exp(1.0) + lambda), rho.slow_exponent());
      break;
    case RegularlyVarying::Slow::kLogLog:
      v *= std::pow(std::log(std::log(std::exp(std::exp(1.0)) + lambda)),
                    rho.slow_exponent());
      break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Potter's estimate
// ---------------------------------------------------------------------------

namespace {

// Largest deviation of rho(2 lambda) / (2^alpha rho(lambda)) from 1 over the
// grid; tends to 0 for regularly varying rho, stays order one for the
// oscillating counterexamples.
double ratio_deviation(const std::function<double(double)>& rho, double alpha,
                       const Vec& lambda_grid) {
  double dev = 0.0;
  const double scale = std::pow(2.0, alpha);
  for (double lam : lambda_grid) {
    const double q = rho(2.0 * lam) / (scale * rho(lam));
    dev = std::max(dev, std::abs(q - 1.0));
  }
  return dev;
}

}  // namespace

BoundReport potter_check(const std::function<double(double)>& rho,
                         double alpha, const Vec& lambda_grid,
                         const Vec& t_grid) {
  if (lambda_grid.empty() || t_grid.empty())
    throw DomainError("potter_check: empty grid");
  for (double lam : lambda_grid)
    if (!(lam > 0.0)) throw DomainError("potter_check: lambda must be > 0");
  for (double t : t_grid)
    if (!(t > 0.0)) throw DomainError("potter_check: t must be > 0");

  BoundReport rep;
  rep.bound_id = "potter";
  rep.log_constant = -INFINITY;
  for (double t : t_grid) {
    double worst = -INFINITY;
    double worst_lam = lambda_grid.front();
    for (double lam : lambda_grid) {
      const double res = std::log(rho(lam * t) / rho(lam)) -
                         alpha * std::log(t) -
                         std::log(std::max(t, 1.0 / t));
      if (res > worst) {
        worst = res;
        worst_lam = lam;
      }
    }
    rep.residuals.push_back({{worst_lam, t}, worst});
    if (worst > rep.log_constant) {
      rep.log_constant = worst;
      rep.attaining_point = {worst_lam, t};
    }
  }

  const double dev = ratio_deviation(rho, alpha, lambda_grid);
  Vec wide = lambda_grid;
  for (double& lam : wide) lam *= 100.0;
  const double dev_wide = ratio_deviation(rho, alpha, wide);
  rep.refinement_stable = dev_wide <= std::max(0.01, 0.7 * dev);

  rep.params["L3"] = std::exp(rep.log_constant);
  rep.params["alpha"] = alpha;
  rep.params["ratio_dev"] = dev;
  rep.params["ratio_dev_wide"] = dev_wide;
  rep.pass = rep.refinement_stable && std::isfinite(rep.log_constant);
  std::ostringstream os;
  os << lambda_grid.size() << " lambda x " << t_grid.size() << " t points";
  rep.grid_description = os.str();
  return rep;
}

BoundReport potter_check(const RegularlyVarying& rho, const Vec& lambda_grid,
                         const Vec& t_grid) {
  return potter_check([&rho](double lam) { return rho_eval(rho, lam); },
                      rho.alpha(), lambda_grid, t_grid);
}

// ---------------------------------------------------------------------------
// Limit tables
// ---------------------------------------------------------------------------

bool LimitTable::all_converged() const {
  for (const auto& e : entries)
    if (!e.converged) return false;
  return !entries.empty();
}

namespace {

// Fills limit/drift/converged from the sampled sequence, where `octave` marks
// the tail entries over which the drift is measured.
void finish_entry(LimitEntry& e, std::size_t octave_begin, double rel_tol) {
  e.limit = e.sequence.back();
  double drift = 0.0;
  for (std::size_t k = octave_begin; k < e.sequence.size(); ++k)
    drift = std::max(drift, std::abs(e.sequence[k] - e.limit));
  e.drift = drift;
  e.converged = drift <= rel_tol * std::max(std::abs(e.limit), 1e-12);
}

}  // namespace

LimitTable scaled_laplace_limit(const CatalogElement& f,
                                const RegularlyVarying& rho,
                                const std::vector<Vec>& y_rays,
                                const Vec& r_grid) {
  if (y_rays.empty()) throw DomainError("scaled_laplace_limit: no rays");
  if (r_grid.size() < 2)
    throw DomainError("scaled_laplace_limit: need at least two r values");
  for (std::size_t k = 1; k < r_grid.size(); ++k)
    if (!(r_grid[k] < r_grid[k - 1]) || !(r_grid[k] > 0.0))
      throw DomainError("scaled_laplace_limit: r_grid must decrease to 0+");

  const std::size_t n = f.dim();
  const double r_min = r_grid.back();
  std::size_t octave = 0;
  while (r_grid[octave] > 2.0 * r_min * (1.0 + 1e-12)) ++octave;

  LimitTable table;
  for (const auto& y : y_rays) {
    if (y.size() != n)
      throw DomainError("scaled_laplace_limit: ray dimension mismatch");
    LimitEntry e;
    e.label = y;
    for (double r : r_grid) {
      CVec z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = Cplx(0.0, r * y[i]);
      e.sequence.push_back(std::pow(r, double(n)) * laplace(f, z) /
                           rho_eval(rho, 1.0 / r));
    }
    finish_entry(e, octave, 1e-6);
    table.entries.push_back(std::move(e));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Hemisphere bound (the Tauberian hypothesis)
// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> hemisphere_directions(std::size_t n) {
  std::vector<Vec> dirs;
  if (n == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    dirs.push_back(e);
    e[j] = -1.0;
    dirs.push_back(e);
  }
  Rng rng(Rng::kDefaultSeed);
  for (int k = 0; k < 8; ++k) {
    Vec d(n);
    double nn = 0.0;
    while (nn < 1e-6) {
      for (auto& di : d) di = rng.normal();
      nn = norm2(d);
    }
    dirs.push_back(scaled(d, 1.0 / nn));
  }
  return dirs;
}

// sup over the hemisphere parametrization at fixed r.
double hemisphere_sup(const CatalogElement& f, const RegularlyVarying& rho,
                      const Vec& omega, const WeightSequence& WA,
                      const RSequence& R, const Vec& thetas,
                      const std::vector<Vec>& dirs, double r) {
  const std::size_t n = f.dim();
  const double rn = std::pow(r, double(n));
  const double rho_val = rho_eval(rho, 1.0 / r);
  double sup = 0.0;
  for (double theta : thetas) {
    const double s = std::sin(theta);
    const double weight = std::exp(-scaled_star_associated(WA, R, 1.0 / s));
    const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    for (const auto& d : dirs) {
      CVec z(n);
      for (std::size_t i = 0; i < n; ++i)
        z[i] = r * Cplx(c * d[i], s * omega[i]);
      sup = std::max(sup, rn * weight * std::abs(laplace(f, z)) / rho_val);
    }
  }
  return sup;
}

double octave_limsup(const CatalogElement& f, const RegularlyVarying& rho,
                     const Vec& omega, const WeightSequence& WA,
                     const RSequence& R, const Vec& thetas,
                     const std::vector<Vec>& dirs, const Vec& r_grid) {
  const double r_min = r_grid.back();
  double limsup = 0.0;
  for (double r : r_grid)
    if (r <= 2.0 * r_min * (1.0 + 1e-12))
      limsup = std::max(
          limsup, hemisphere_sup(f, rho, omega, WA, R, thetas, dirs, r));
  return limsup;
}

}  // namespace

BoundReport hemisphere_bound_check(const CatalogElement& f,
                                   const RegularlyVarying& rho,
                                   const Vec& omega, const WeightSequence& WA,
                                   const RSequence& R, double theta_min,
                                   const Vec& r_grid) {
  if (omega.size() != f.dim())
    throw DomainError("hemisphere_bound_check: omega dimension mismatch");
  const double on = norm2(omega);
  if (!(on > 0.0)) throw DomainError("hemisphere_bound_check: omega = 0");
  if (!(theta_min > 0.0) || !(theta_min < 1.5))
    throw DomainError("hemisphere_bound_check: theta_min out of range");
  if (r_grid.size() < 2 || !(r_grid.back() < r_grid.front()))
    throw DomainError("hemisphere_bound_check: r_grid must decrease");
  const Vec w = scaled(omega, 1.0 / on);

  const std::size_t theta_count = 24;
  const auto dirs = hemisphere_directions(f.dim());
  const Vec thetas = log_spaced(theta_min, 1.5707963267948966, theta_count);
  const double limsup =
      octave_limsup(f, rho, w, WA, R, thetas, dirs, r_grid);

  // Refine: push r_min down by 4 along the same geometric progression and
  // theta_min down by 4 at the same per-decade density.
  Vec r2 = r_grid;
  const double ratio = r_grid.back() / r_grid[r_grid.size() - 2];
  double r = r_grid.back();
  while (r > 0.25 * r_grid.back() * (1.0 + 1e-12)) {
    r *= ratio;
    r2.push_back(r);
  }
  const Vec thetas2 =
      log_spaced(0.25 * theta_min, 1.5707963267948966, theta_count + 8);
  const double limsup2 =
      octave_limsup(f, rho, w, WA, R, thetas2, dirs, r2);

  BoundReport rep;
  rep.bound_id = "hemisphere-4.4";
  rep.log_constant = std::log(std::max(limsup, 1e-300));
  rep.refinement_stable =
      std::isfinite(limsup) && limsup2 <= limsup * 1.05 + 1e-12;
  rep.pass = rep.refinement_stable;
  rep.params["limsup"] = limsup;
  rep.params["limsup_refined"] = limsup2;
  rep.params["theta_min"] = theta_min;
  rep.params["r_min"] = r_grid.back();
  std::ostringstream os;
  os << r_grid.size() << " r x " << theta_count << " theta x " << dirs.size()
     << " directions";
  rep.grid_description = os.str();
  return rep;
}

// ---------------------------------------------------------------------------
// Direct dilation limits
// ---------------------------------------------------------------------------

LimitTable quasiasymptotic_direct(const CatalogElement& f,
                                  const RegularlyVarying& rho,
                                  const std::vector<TestFunction>& battery,
                                  const Vec& lambda_grid) {
  if (battery.empty()) throw DomainError("quasiasymptotic_direct: no battery");
  if (lambda_grid.size() < 2)
    throw DomainError("quasiasymptotic_direct: need at least two lambdas");
  for (std::size_t k = 1; k < lambda_grid.size(); ++k)
    if (!(lambda_grid[k] > lambda_grid[k - 1]) || !(lambda_grid[0] > 0.0))
      throw DomainError("quasiasymptotic_direct: lambda_grid must increase");

  const std::size_t n = f.dim();
  const double lam_max = lambda_grid.back();
  std::size_t octave = 0;
  while (lambda_grid[octave] < 0.5 * lam_max * (1.0 - 1e-12)) ++octave;

  LimitTable table;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    if (battery[i].dim() != n)
      throw DomainError("quasiasymptotic_direct: battery dimension mismatch");
    LimitEntry e;
    e.label = {double(i)};
    for (double lam : lambda_grid)
      e.sequence.push_back(std::pow(lam, -double(n)) *
                           pair(f, battery[i].scaled_arg(lam)) /
                           rho_eval(rho, lam));
    finish_entry(e, octave, 1e-4);
    table.entries.push_back(std::move(e));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Abelian direction
// ---------------------------------------------------------------------------

double abelian_residual(const CatalogElement& f, const RegularlyVarying& rho,
                        const CatalogElement& g,
                        const std::vector<CVec>& z_patch, double r) {
  if (!(r > 0.0)) throw DomainError("abelian_residual: r must be positive");
  if (z_patch.empty()) throw DomainError("abelian_residual: empty patch");
  const std::size_t n = f.dim();
  const double rn = std::pow(r, double(n));
  const double rho_val = rho_eval(rho, 1.0 / r);
  double worst = 0.0;
  for (const auto& z : z_patch) {
    CVec rz(n);
    for (std::size_t i = 0; i < n; ++i) rz[i] = r * z[i];
    worst = std::max(
        worst, std::abs(rn * laplace(f, rz) / rho_val - laplace(g, z)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Tauberian pipeline
// ---------------------------------------------------------------------------

WeightSequence product_sequence(const WeightSequence& WM,
                                const WeightSequence& WN, std::size_t depth) {
  if (depth > WM.max_index() || depth > WN.max_index())
    throw TruncationError("product_sequence: depth beyond the factors");
  std::vector<double> logs(depth + 1);
  for (std::size_t p = 0; p <= depth; ++p)
    logs[p] = WM.log_value(p) + WN.log_value(p);
  return WeightSequence::from_logs(std::move(logs));
}

PipelineConfig default_pipeline_config_1d() {
  PipelineConfig cfg;
  cfg.omega = {1.0};
  cfg.rays = {{0.5}, {1.0}, {2.0}};
  for (int k = 0; k <= 40; ++k)
    cfg.r_grid.push_back(std::pow(10.0, -1.0 - 5.0 * double(k) / 40.0));
  for (int k = 0; k <= 20; ++k)
    cfg.lambda_grid.push_back(std::pow(10.0, 6.0 * double(k) / 20.0));
  cfg.battery = {TestFunction::gaussian({0.0}, 1.0),
                 TestFunction::gaussian({0.3}, 1.7),
                 TestFunction::bump({0.0}, 2.0)};
  return cfg;
}

namespace {

struct CandidateFit {
  bool ok = false;
  double coef = 0.0;
  double residual = INFINITY;
};

// Fits the coefficient of a candidate g whose transform at i y is
// coef * shape(y), from the ray-limit table.
CandidateFit fit_coefficient(const LimitTable& rays,
                             const std::function<double(const Vec&)>& shape) {
  CandidateFit fit;
  Cplx sum = 0.0;
  std::vector<Cplx> cs;
  for (const auto& e : rays.entries) {
    const double s = shape(e.label);
    if (!(std::abs(s) > 0.0)) return fit;
    cs.push_back(e.limit / s);
    sum += cs.back();
  }
  const Cplx mean = sum / double(cs.size());
  double res = 0.0;
  for (const auto& c : cs) res = std::max(res, std::abs(c - mean));
  const double scale = std::max(std::abs(mean), 1e-12);
  fit.residual = res / scale;
  fit.ok = fit.residual <= 1e-6 && std::abs(mean) > 1e-9 &&
           std::abs(mean.imag()) <= 1e-6 * scale;
  fit.coef = mean.real();
  return fit;
}

}  // namespace

QuasiVerdict tauberian_pipeline(const CatalogElement& f,
                                const RegularlyVarying& rho,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const PipelineConfig& config) {
  // Hypothesis flags of Theorem 4.1.
  const std::size_t depth =
      std::min<std::size_t>(64, std::min(WM.max_index(), WN.max_index()));
  const auto cm = check_conditions(WM, depth);
  const auto cn = check_conditions(WN, depth);
  std::string failed;
  if (!cm.m1.flag) failed += " W_M:(M.1)";
  if (!cm.m2.flag) failed += " W_M:(M.2)";
  if (!cm.m3_prime.flag) failed += " W_M:(M.3)'";
  if (!cn.m1_star.flag) failed += " W_N:(M.1)*";
  if (!failed.empty())
    throw PreconditionError("tauberian_pipeline: hypothesis fails:" + failed);

  QuasiVerdict v;
  v.degree = rho.alpha();

  // Leg 1: ray limits of the scaled transform.
  v.ray_limits = scaled_laplace_limit(f, rho, config.rays, config.r_grid);
  double limit_scale = 0.0;
  for (const auto& e : v.ray_limits.entries)
    limit_scale = std::max(limit_scale, std::abs(e.limit));
  const bool rays_ok = v.ray_limits.all_converged() && limit_scale > 1e-9;

  // Leg 2: hemisphere bound with A_p = M_p N_p.
  const auto WA = product_sequence(WM, WN, depth);
  const auto hem = hemisphere_bound_check(f, rho, config.omega, WA, R,
                                          config.theta_min, config.r_grid);
  v.hemisphere_limsup = hem.params.at("limsup");
  v.hemisphere_stable = hem.refinement_stable;

  // Identification of g from the homogeneous catalog.  A degree alpha
  // quasiasymptotic has g = c delta^(k) when alpha = -n - k and g = c xi^a
  // (one dimensional) when alpha = a > -1.
  const std::size_t n = f.dim();
  const double alpha = rho.alpha();
  if (rays_ok) {
    const double kf = -alpha - double(n);
    const long k = std::lround(kf);
    if (k >= 0 && std::abs(kf - double(k)) < 1e-6 && (k == 0 || n == 1)) {
      const auto fit = fit_coefficient(v.ray_limits, [&](const Vec& y) {
        double s = 1.0;
        for (long j = 0; j < k; ++j) s *= y[0];
        return s;
      });
      if (fit.ok) {
        v.g_identified = true;
        v.g = CatalogElement::point(Vec(n, 0.0),
                                    [&] {
                                      MultiIndex a(n, 0);
                                      if (k > 0) a[0] = int(k);
                                      return a;
                                    }(),
                                    fit.coef);
      }
    }
    if (!v.g_identified && n == 1 && alpha > -1.0 + 1e-9) {
      const double gamma_a = std::tgamma(alpha + 1.0);
      const auto fit = fit_coefficient(v.ray_limits, [&](const Vec& y) {
        return gamma_a * std::pow(y[0], -(alpha + 1.0));
      });
      if (fit.ok) {
        v.g_identified = true;
        v.g = CatalogElement::density({alpha}, {0.0}, fit.coef);
      }
    }
  }

  // Leg 3: direct dilation cross-check against the identified g.
  bool oracle_ok = true;
  if (v.g_identified) {
    const auto direct =
        quasiasymptotic_direct(f, rho, config.battery, config.lambda_grid);
    oracle_ok = direct.all_converged();
    for (std::size_t i = 0; i < config.battery.size(); ++i) {
      const Cplx expected = pair(v.g, config.battery[i]);
      const double err = std::abs(direct.entries[i].limit - expected) /
                         std::max(std::abs(expected), 1e-12);
      v.oracle_errors.push_back(err);
      oracle_ok = oracle_ok && err <= 1e-4;
    }
  }

  v.pass = rays_ok && hem.pass && oracle_ok;

  std::ostringstream os;
  if (!rays_ok)
    os << "ray limits " << (v.ray_limits.all_converged()
                                ? "degenerate to zero"
                                : "do not converge");
  else if (!hem.pass)
    os << "hemisphere bound unstable (limsup " << v.hemisphere_limsup << ")";
  else if (!oracle_ok)
    os << "direct dilation check disagrees with the identified g";
  else if (v.g_identified)
    os << "quasiasymptotic of degree " << v.degree << " with g = "
       << v.g.describe();
  else
    os << "quasiasymptotic verified; g reported as the ray-limit table only";
  v.summary = os.str();
  return v;
}

}  // namespace tauberlab
