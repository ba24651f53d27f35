#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tauberlab/cones.hpp"
#include "tauberlab/gelfand.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/vec.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// lambda^alpha times an optional slowly varying factor.
class RegularlyVarying {
 public:
  enum class Slow { kNone, kLog, kLogLog };

  static RegularlyVarying power(double alpha);
  static RegularlyVarying log_factor(double alpha, double beta);
  static RegularlyVarying loglog_factor(double alpha, double gamma);

  double alpha() const { return alpha_; }
  Slow slow() const { return slow_; }
  double slow_exponent() const { return exponent_; }
  std::string describe() const;

 private:
  double alpha_ = 0.0;
  Slow slow_ = Slow::kNone;
  double exponent_ = 0.0;
};

double rho_eval(const RegularlyVarying& rho, double lambda);

// rho(lambda t) / rho(lambda) <= L3 t^alpha max(t, 1/t): log-space fit of L3
// plus a ratio-convergence stability leg that flags non-regularly-varying
// inputs.  The generic overload takes a raw evaluator and its claimed index.
BoundReport potter_check(const std::function<double(double)>& rho,
                         double alpha, const Vec& lambda_grid,
                         const Vec& t_grid);
BoundReport potter_check(const RegularlyVarying& rho, const Vec& lambda_grid,
                         const Vec& t_grid);

struct LimitEntry {
  Vec label;       // ray y, or {lambda} / test-function index
  CVec sequence;   // sampled values in grid order
  Cplx limit;      // last sampled value
  double drift;    // relative drift over the last octave
  bool converged;  // drift below tolerance
};

struct LimitTable {
  std::vector<LimitEntry> entries;
  bool all_converged() const;
};

// Ray limits r^n L{f}(r i y) / rho(1/r) along each y for r in r_grid
// (decreasing); convergence = last-octave relative drift < 1e-6.
LimitTable scaled_laplace_limit(const CatalogElement& f,
                                const RegularlyVarying& rho,
                                const std::vector<Vec>& y_rays,
                                const Vec& r_grid);

// limsup over small r of the weighted hemisphere sup
// r^n e^{-A*_{lp}(1/sin theta)} |L{f}(r(x + i sin(theta) omega))| / rho(1/r)
// with |x|^2 + sin^2 theta = 1; A_p = M_p N_p enters through WA.
BoundReport hemisphere_bound_check(const CatalogElement& f,
                                   const RegularlyVarying& rho,
                                   const Vec& omega, const WeightSequence& WA,
                                   const RSequence& R, double theta_min,
                                   const Vec& r_grid);

// lambda^{-n} <f, phi(./lambda)> / rho(lambda) per test function, tabulated
// over lambda_grid (increasing); convergence tolerance 1e-4.
LimitTable quasiasymptotic_direct(const CatalogElement& f,
                                  const RegularlyVarying& rho,
                                  const std::vector<TestFunction>& battery,
                                  const Vec& lambda_grid);

// max over the patch of |r^n L{f}(r z) / rho(1/r) - L{g}(z)|.
double abelian_residual(const CatalogElement& f, const RegularlyVarying& rho,
                        const CatalogElement& g,
                        const std::vector<CVec>& z_patch, double r);

// log A_p = log M_p + log N_p up to depth.
WeightSequence product_sequence(const WeightSequence& WM,
                                const WeightSequence& WN, std::size_t depth);

struct PipelineConfig {
  Vec omega;                          // interior point of C
  std::vector<Vec> rays;              // probe rays in the subcone
  Vec r_grid;                         // decreasing to ~1e-6
  Vec lambda_grid;                    // increasing to ~1e6
  double theta_min = 1e-3;
  std::vector<TestFunction> battery;  // cross-validation test functions
};

PipelineConfig default_pipeline_config_1d();

struct QuasiVerdict {
  bool pass = false;
  bool g_identified = false;
  double degree = 0.0;
  CatalogElement g = CatalogElement::delta(1);  // valid only when identified
  LimitTable ray_limits;
  double hemisphere_limsup = 0.0;
  bool hemisphere_stable = false;
  Vec oracle_errors;  // per battery entry, relative
  std::string summary;
};

// Theorem 4.1 pipeline: hypothesis flags on (WM, WN), ray limits, hemisphere
// bound, identification of g from the homogeneous catalog, direct-dilation
// cross-check.  Throws PreconditionError when the condition flags fail.
QuasiVerdict tauberian_pipeline(const CatalogElement& f,
                                const RegularlyVarying& rho,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const PipelineConfig& config);

}  // namespace tauberlab
