#pragma once

#include <cstddef>
#include <vector>

#include "tauberlab/cones.hpp"
#include "tauberlab/gelfand.hpp"
#include "tauberlab/laplace.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/vec.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// Tube grid z = r d + i sigma omega with r, sigma log-spaced.  Verifiers take
// the spec (not a point list) so they can refine it: x-range x2, sigma_min /4,
// density x2.
struct TubeGridSpec {
  std::vector<Vec> x_directions;  // unit vectors
  Vec omega;                      // unit vector interior to the domain cone
  double x_lo = 1e-2;
  double x_hi = 1e3;
  std::size_t x_count = 40;
  double sigma_lo = 1e-4;
  double sigma_hi = 1.0;
  std::size_t sigma_count = 25;
};

TubeGridSpec default_tube_grid(const Cone& domain);
TubeGridSpec refined_grid(const TubeGridSpec& spec);
std::vector<CVec> tube_points(const TubeGridSpec& spec);

// |F(z)| <= L exp(eps |Im z| + M_{lp}(|z|) + N*_{lp}(1 / Delta_C(Im z))):
// fits log L as the grid max residual; pass iff the fit moves < 5% under
// refinement.
BoundReport verify_bound_3_1_i(const LaplaceFunction& F,
                               const WeightSequence& WM,
                               const WeightSequence& WN, const RSequence& R,
                               double eps, const TubeGridSpec& spec);

// Same with the eps term removed (the strengthened bound).
BoundReport verify_bound_strong(const LaplaceFunction& F,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const TubeGridSpec& spec);

struct SliceGridSpec {
  double x_lo = 1e-2;
  double x_hi = 1e3;
  std::size_t x_count = 40;
  double sigma_lo = 1e-4;
  std::size_t sigma_count = 25;
};

// |F(x + i sigma omega)| <= L exp(M_{lp}(|x|) + N*_{lp}(1/sigma)) on
// sigma in (0, sigma0].
BoundReport verify_bound_3_1_ii(const LaplaceFunction& F,
                                const WeightSequence& WM,
                                const WeightSequence& WN, const RSequence& R,
                                const Vec& omega, double sigma0,
                                const SliceGridSpec& spec);

// Grid sup of |F(z)| exp(-M(l |z|) - N*(l / Delta_C(Im z))); nonincreasing
// in l on a fixed grid.
double o_ell_norm(const LaplaceFunction& F, const WeightSequence& WM,
                  const WeightSequence& WN, double ell,
                  const std::vector<CVec>& z_grid);

// sup_{xi in Gamma} exp(N_{lp}(|xi|) - y.xi) <= exp(N*_{lp}(1/Delta_C(y))),
// sampled along deterministic rays at the radii of t_grid.  Violations throw
// InvariantViolation with the witness xi.
BoundReport verify_sup_diff(const WeightSequence& WN, const RSequence& R,
                            const Cone& gamma, const Vec& y,
                            const Vec& t_grid);

// For each z checks the truncated norm of xi -> eta(xi) e^{i z.xi} against
// H exp(4 eps |Im z| + M_{lp}(|z|) + N*_{lp}(1/Delta_C(Im z))), fitting H and
// the best Beurling ell from {1/4, 1/2, 1, 2, 4}.
BoundReport verify_lemma_3_4(const Mollifier& eta, const WeightSequence& WM,
                             const WeightSequence& WN, const RSequence& a,
                             const RSequence& b, const std::vector<CVec>& z_list,
                             int alpha_max, int beta_max);

}  // namespace tauberlab
