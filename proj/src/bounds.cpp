#include "tauberlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "tauberlab/errors.hpp"
#include "tauberlab/rng.hpp"

namespace tauberlab {

TubeGridSpec default_tube_grid(const Cone& domain) {
  TubeGridSpec s;
  const std::size_t n = domain.dim();
  s.omega = domain.interior_witness();
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    s.x_directions.push_back(e);
    e[j] = -1.0;
    s.x_directions.push_back(e);
  }
  return s;
}

TubeGridSpec refined_grid(const TubeGridSpec& spec) {
  TubeGridSpec r = spec;
  r.x_hi *= 2.0;
  r.sigma_lo /= 4.0;
  r.x_count *= 2;
  r.sigma_count *= 2;
  return r;
}

std::vector<CVec> tube_points(const TubeGridSpec& spec) {
  std::vector<CVec> pts;
  const std::size_t n = spec.omega.size();
  for (std::size_t si = 0; si < spec.sigma_count; ++si) {
    const double ts = spec.sigma_count == 1
                          ? 0.0
                          : double(si) / double(spec.sigma_count - 1);
    const double sigma =
        spec.sigma_lo * std::pow(spec.sigma_hi / spec.sigma_lo, ts);
    const Vec y = scaled(spec.omega, sigma);
    pts.push_back(to_cvec(Vec(n, 0.0), y));
    for (const auto& d : spec.x_directions) {
      for (std::size_t xi = 0; xi < spec.x_count; ++xi) {
        const double tx =
            spec.x_count == 1 ? 0.0 : double(xi) / double(spec.x_count - 1);
        const double r = spec.x_lo * std::pow(spec.x_hi / spec.x_lo, tx);
        pts.push_back(to_cvec(scaled(d, r), y));
      }
    }
  }
  return pts;
}

namespace {

Vec flatten(const CVec& z) {
  Vec w = real_part(z);
  const Vec im = imag_part(z);
  w.insert(w.end(), im.begin(), im.end());
  return w;
}

template <typename Expo>
double grid_fit(const LaplaceFunction& F, const std::vector<CVec>& pts,
                const Expo& expo, BoundReport* rep) {
  double logL = -INFINITY;
  for (const auto& z : pts) {
    const double lf = std::log(std::abs(F(z)));
    const double resid = lf - expo(z);
    if (rep) rep->residuals.push_back({flatten(z), resid});
    if (resid > logL) {
      logL = resid;
      if (rep) rep->attaining_point = flatten(z);
    }
  }
  return logL;
}

BoundReport tube_bound_report(const LaplaceFunction& F,
                              const WeightSequence& WM,
                              const WeightSequence& WN, const RSequence& R,
                              double eps, const TubeGridSpec& spec,
                              const char* id) {
  const Cone& C = F.domain_cone();
  auto expo = [&](const CVec& z) {
    const Vec y = imag_part(z);
    const double delta = C.boundary_distance(y);
    return eps * norm2(y) + scaled_associated(WM, R, norm2(z)) +
           scaled_star_associated(WN, R, 1.0 / delta);
  };
  BoundReport rep;
  rep.bound_id = id;
  rep.grid_description = "tube grid, sigma in [" +
                         std::to_string(spec.sigma_lo) + ", " +
                         std::to_string(spec.sigma_hi) + "]";
  rep.params["eps"] = eps;
  const double logL = grid_fit(F, tube_points(spec), expo, &rep);
  const double logL2 = grid_fit(F, tube_points(refined_grid(spec)), expo,
                                nullptr);
  rep.log_constant = logL;
  rep.worst_residual = logL;
  rep.params["logL_refined"] = logL2;
  rep.refinement_stable = stable_drift(logL, logL2);
  rep.pass = rep.refinement_stable && std::isfinite(logL);
  return rep;
}

}  // namespace

BoundReport verify_bound_3_1_i(const LaplaceFunction& F,
                               const WeightSequence& WM,
                               const WeightSequence& WN, const RSequence& R,
                               double eps, const TubeGridSpec& spec) {
  if (!(eps >= 0.0)) throw DomainError("verify_bound_3_1_i: eps must be >= 0");
  return tube_bound_report(F, WM, WN, R, eps, spec, "bound-3.1.i");
}

BoundReport verify_bound_strong(const LaplaceFunction& F,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const TubeGridSpec& spec) {
  return tube_bound_report(F, WM, WN, R, 0.0, spec, "bound-5.4");
}

BoundReport verify_bound_3_1_ii(const LaplaceFunction& F,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const Vec& omega, double sigma0,
                                const SliceGridSpec& spec) {
  const Cone& C = F.domain_cone();
  if (omega.size() != C.dim() || !(C.boundary_distance(omega) > 0.0))
    throw DomainError("verify_bound_3_1_ii: omega must lie in the open cone");
  if (!(sigma0 > 0.0))
    throw DomainError("verify_bound_3_1_ii: sigma0 must be positive");
  const std::size_t n = C.dim();

  auto fit = [&](const SliceGridSpec& s, BoundReport* rep) {
    double logL = -INFINITY;
    for (std::size_t si = 0; si < s.sigma_count; ++si) {
      const double ts =
          s.sigma_count == 1 ? 0.0 : double(si) / double(s.sigma_count - 1);
      const double sigma = s.sigma_lo * std::pow(sigma0 / s.sigma_lo, ts);
      const Vec y = scaled(omega, sigma);
      const double nstar = scaled_star_associated(WN, R, 1.0 / sigma);
      auto probe = [&](const Vec& x) {
        const double resid = std::log(std::abs(F(to_cvec(x, y)))) -
                             scaled_associated(WM, R, norm2(x)) - nstar;
        if (rep) rep->residuals.push_back({x, resid});
        if (resid > logL) {
          logL = resid;
          if (rep) rep->attaining_point = flatten(to_cvec(x, y));
        }
      };
      probe(Vec(n, 0.0));
      for (std::size_t j = 0; j < n; ++j) {
        for (double sgn : {1.0, -1.0}) {
          for (std::size_t xi = 0; xi < s.x_count; ++xi) {
            const double tx =
                s.x_count == 1 ? 0.0 : double(xi) / double(s.x_count - 1);
            Vec x(n, 0.0);
            x[j] = sgn * s.x_lo * std::pow(s.x_hi / s.x_lo, tx);
            probe(x);
          }
        }
      }
    }
    return logL;
  };

  BoundReport rep;
  rep.bound_id = "bound-3.1.ii";
  rep.grid_description = "slice grid along omega";
  rep.params["sigma0"] = sigma0;
  const double logL = fit(spec, &rep);
  SliceGridSpec wide = spec;
  wide.x_hi *= 2.0;
  wide.sigma_lo /= 4.0;
  wide.x_count *= 2;
  wide.sigma_count *= 2;
  const double logL2 = fit(wide, nullptr);
  rep.log_constant = logL;
  rep.worst_residual = logL;
  rep.params["logL_refined"] = logL2;
  rep.refinement_stable = stable_drift(logL, logL2);
  rep.pass = rep.refinement_stable && std::isfinite(logL);
  return rep;
}

double o_ell_norm(const LaplaceFunction& F, const WeightSequence& WM,
                  const WeightSequence& WN, double ell,
                  const std::vector<CVec>& z_grid) {
  if (!(ell > 0.0)) throw DomainError("o_ell_norm: ell must be positive");
  if (z_grid.empty()) throw DomainError("o_ell_norm: empty grid");
  const Cone& C = F.domain_cone();
  double sup = 0.0;
  for (const auto& z : z_grid) {
    const double delta = C.boundary_distance(imag_part(z));
    const double lg = std::log(std::abs(F(z))) -
                      associated(WM, ell * norm2(z)) -
                      star_associated(WN, ell / delta);
    sup = std::max(sup, std::exp(lg));
  }
  return sup;
}

BoundReport verify_sup_diff(const WeightSequence& WN, const RSequence& R,
                            const Cone& gamma, const Vec& y,
                            const Vec& t_grid) {
  const Cone C = conjugate(gamma);
  const double delta = C.boundary_distance(y);
  if (!(delta > 0.0))
    throw DomainError("verify_sup_diff: y must lie in the open dual cone");

  std::vector<Vec> dirs;
  dirs.push_back(gamma.interior_witness());
  Rng rng(Rng::kDefaultSeed);
  for (int k = 0; k < 32; ++k) {
    Vec v = gamma.sample(rng, 1.0);
    const double nv = norm2(v);
    if (nv > 1e-12) dirs.push_back(scaled(v, 1.0 / nv));
  }

  const double rhs = scaled_star_associated(WN, R, 1.0 / delta);
  BoundReport rep;
  rep.bound_id = "sup-diff-5.3";
  rep.grid_description =
      std::to_string(dirs.size()) + " rays x " +
      std::to_string(t_grid.size()) + " radii";
  double worst = -INFINITY;
  for (const auto& d : dirs) {
    for (double t : t_grid) {
      const Vec xi = scaled(d, t);
      const double lhs = scaled_associated(WN, R, norm2(xi)) - dot(y, xi);
      rep.residuals.push_back({xi, lhs - rhs});
      if (lhs - rhs > worst) {
        worst = lhs - rhs;
        rep.attaining_point = xi;
      }
      if (lhs > rhs + 1e-9)
        throw InvariantViolation("sup-diff: bound (5.3) violated", xi);
    }
  }
  rep.worst_residual = worst;
  rep.log_constant = rhs;
  rep.params["delta"] = delta;
  rep.params["slack"] = -worst;
  rep.refinement_stable = true;
  rep.pass = true;
  return rep;
}

namespace {

// xi -> eta(xi) e^{i z.xi}
class WaveFn final : public SmoothFn {
 public:
  WaveFn(const Mollifier& eta, CVec z) : eta_(eta), z_(std::move(z)) {}

  std::size_t dim() const override { return eta_.dim(); }
  int max_order() const override { return 8; }

  Cplx derivative(const Vec& t, const MultiIndex& alpha) const override {
    const std::size_t n = dim();
    Cplx kernel = 0.0;
    for (std::size_t j = 0; j < n; ++j) kernel += z_[j] * t[j];
    kernel = std::exp(Cplx(0.0, 1.0) * kernel);
    Cplx total = 0.0;
    MultiIndex beta(n, 0);
    while (true) {
      double binom = 1.0;
      Cplx zp = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        for (int r = 0; r < beta[j]; ++r)
          binom *= double(alpha[j] - r) / double(r + 1);
        for (int r = 0; r < alpha[j] - beta[j]; ++r)
          zp *= Cplx(0.0, 1.0) * z_[j];
      }
      total += binom * zp * eta_.derivative(t, beta);
      std::size_t j = 0;
      for (; j < n; ++j) {
        if (++beta[j] <= alpha[j]) break;
        beta[j] = 0;
      }
      if (j == n) break;
    }
    return total * kernel;
  }

  double decay_radius(double) const override {
    const auto& g = eta_.grid();
    return std::sqrt(double(dim())) * std::max(std::abs(g.lo),
                                               std::abs(g.hi));
  }

 private:
  const Mollifier& eta_;
  CVec z_;
};

}  // namespace

BoundReport verify_lemma_3_4(const Mollifier& eta, const WeightSequence& WM,
                             const WeightSequence& WN, const RSequence& a,
                             const RSequence& b,
                             const std::vector<CVec>& z_list, int alpha_max,
                             int beta_max) {
  if (z_list.empty()) throw DomainError("verify_lemma_3_4: empty z list");
  const Cone C = conjugate(eta.cone());
  const double half_width =
      std::max(std::abs(eta.grid().lo), std::abs(eta.grid().hi));

  std::vector<double> log_norms;
  for (const auto& z : z_list) {
    if (!(C.boundary_distance(imag_part(z)) > 0.0))
      throw DomainError("verify_lemma_3_4: Im z not interior to the dual");
    const WaveFn f(eta, z);
    const auto r =
        gs_norm(f, WM, WN, a, b, alpha_max, beta_max, half_width, 61);
    log_norms.push_back(std::log(r.value));
  }

  BoundReport rep;
  rep.bound_id = "lemma-3.4";
  rep.grid_description = std::to_string(z_list.size()) + " tube points";
  double best_h = INFINITY, best_ell = 0.0;
  for (double ell : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const auto R = RSequence::beurling(ell);
    double h = -INFINITY;
    for (std::size_t i = 0; i < z_list.size(); ++i) {
      const Vec y = imag_part(z_list[i]);
      const double expo =
          4.0 * eta.eps() * norm2(y) +
          scaled_associated(WM, R, norm2(z_list[i])) +
          scaled_star_associated(WN, R, 1.0 / C.boundary_distance(y));
      h = std::max(h, log_norms[i] - expo);
    }
    if (h < best_h) {
      best_h = h;
      best_ell = ell;
    }
  }
  for (std::size_t i = 0; i < z_list.size(); ++i)
    rep.residuals.push_back({flatten(z_list[i]), log_norms[i]});
  rep.log_constant = best_h;
  rep.worst_residual = best_h;
  rep.params["ell"] = best_ell;
  rep.params["H"] = std::exp(best_h);
  rep.params["eps"] = eta.eps();
  rep.refinement_stable = true;
  rep.pass = std::isfinite(best_h);
  return rep;
}

}  // namespace tauberlab
