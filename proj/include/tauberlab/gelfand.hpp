#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tauberlab/cones.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/vec.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// ---------------------------------------------------------------------------
// Catalog of concretely representable cone-supported generalized functions.
// Two atom kinds: derivatives of point masses, and power-exponential
// densities xi^a e^{-c.xi} on the positive orthant.
// ---------------------------------------------------------------------------

struct PointAtom {
  Vec loc;
  MultiIndex alpha;
  double coef = 1.0;
};

// coef * xi^a * exp(-c.xi) restricted to the positive orthant; every a_i > -1
// (local integrability) and c_i >= 0.
struct DensityAtom {
  Vec a;
  Vec c;
  double coef = 1.0;
};

class CatalogElement {
 public:
  static CatalogElement point(Vec loc, MultiIndex alpha, double coef = 1.0);
  static CatalogElement density(Vec a, Vec c, double coef = 1.0);
  static CatalogElement delta(std::size_t dim);  // point mass at the origin
  static CatalogElement heaviside();             // 1-D: a = 0, c = 0

  CatalogElement& operator+=(const CatalogElement& other);
  friend CatalogElement operator+(CatalogElement a, const CatalogElement& b) {
    a += b;
    return a;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<PointAtom>& points() const { return points_; }
  const std::vector<DensityAtom>& densities() const { return densities_; }
  int max_derivative_order() const;

  // Degree d with f(lambda .) = lambda^d f for every lambda > 0, when all
  // atoms are homogeneous (point atoms at 0, densities with c = 0) and agree.
  std::optional<double> homogeneity_degree() const;

  std::string describe() const;

 private:
  std::size_t dim_ = 0;
  std::vector<PointAtom> points_;
  std::vector<DensityAtom> densities_;
};

// Catalog form of f(lambda .): point atoms move to loc/lambda with the
// coefficient scaled by lambda^{-n-|alpha|}; densities keep a, scale c by
// lambda and the coefficient by lambda^{sum a}.
CatalogElement dilate(const CatalogElement& f, double lambda);

// ---------------------------------------------------------------------------
// Smooth pairing partners.
// ---------------------------------------------------------------------------

class SmoothFn {
 public:
  virtual ~SmoothFn() = default;
  virtual std::size_t dim() const = 0;
  virtual int max_order() const { return 64; }
  virtual Cplx derivative(const Vec& t, const MultiIndex& alpha) const = 0;
  Cplx value(const Vec& t) const {
    return derivative(t, MultiIndex(dim(), 0));
  }
  // Radius beyond which the function (and the derivatives in use) stay
  // below tol in magnitude.
  virtual double decay_radius(double tol) const = 0;
};

class TestFunction {
 public:
  // prod_i exp(-((t_i - center_i)/width)^2)
  static TestFunction gaussian(Vec center, double width);
  // prod_i profile((t_i - center_i)/radius) with profile(x) = exp(-1/(1-x^2))
  static TestFunction bump(Vec center, double radius);
  // 1-D samples on a uniform grid; derivatives up to order 2 by differences.
  static TestFunction grid_sampled(std::vector<double> values, double spacing,
                                   double origin);

  TestFunction scaled_arg(double lambda) const;  // t -> phi(t / lambda)

  std::size_t dim() const { return fn_->dim(); }
  double value(const Vec& t) const { return fn_->value(t).real(); }
  double derivative(const Vec& t, const MultiIndex& alpha) const {
    return fn_->derivative(t, alpha).real();
  }
  const SmoothFn& fn() const { return *fn_; }
  std::shared_ptr<const SmoothFn> shared() const { return fn_; }

 private:
  std::shared_ptr<const SmoothFn> fn_;
};

// <f, phi>: point atoms contribute (-1)^{|alpha|} coef phi^{(alpha)}(loc),
// densities integrate by adaptive quadrature (relative tolerance 1e-8).
Cplx pair(const CatalogElement& f, const SmoothFn& phi);
inline Cplx pair(const CatalogElement& f, const TestFunction& phi) {
  return pair(f, phi.fn());
}

// ---------------------------------------------------------------------------
// Truncated Gelfand-Shilov norm.
// ---------------------------------------------------------------------------

struct GsNormResult {
  double value = 0.0;
  MultiIndex alpha, beta;
  Vec attaining_t;
};

// sup over |alpha| <= alpha_max, |beta| <= beta_max and t in the box
// [-half_width, half_width]^n of |t^beta phi^{(alpha)}(t)| /
// (A_|alpha| M_|alpha| B_|beta| N_|beta|), sampled on a uniform grid.
GsNormResult gs_norm(const SmoothFn& phi, const WeightSequence& WM,
                     const WeightSequence& WN, const RSequence& a,
                     const RSequence& b, int alpha_max, int beta_max,
                     double half_width, std::size_t points_per_dim = 241);

// ---------------------------------------------------------------------------
// Cone mollifier eta_eps = phi_eps * chi (smoothed indicator of the enlarged
// cone), with the plateau / support structure of the cutoffs used to define
// Laplace transforms.
// ---------------------------------------------------------------------------

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;  // per-dimension sample count
};

class Mollifier {
 public:
  double eps() const { return eps_; }
  const Cone& cone() const { return cone_; }
  std::size_t dim() const { return cone_.dim(); }
  const GridSpec& grid() const { return grid_; }
  const std::vector<double>& sampled_values() const { return samples_; }

  double value(const Vec& x) const;
  double derivative(const Vec& x, const MultiIndex& alpha) const;

 private:
  friend Mollifier build_mollifier(const Cone& gamma, double eps,
                                   const GridSpec& spec);
  Cone cone_;
  double eps_ = 0.0;
  GridSpec grid_;
  std::vector<double> samples_;  // row-major over the tensor grid
  // 2-D path: fixed tensor rule over the bump support, nodes cached.
  std::vector<Vec> conv_nodes_;
  std::vector<double> conv_base_;  // phi_eps at the nodes
  double conv_weight_ = 0.0;
  double norm_ = 1.0;  // discrete integral of phi_eps by the same rule
};

// Supported for dimension 1 and 2.  Throws ResolutionError when the grid
// spacing exceeds eps/8, and InvariantViolation when a sampled point breaks
// the plateau/support structure.
Mollifier build_mollifier(const Cone& gamma, double eps, const GridSpec& spec);

// Fits H = max over the mollifier grid and |alpha| <= k_max of
// |eta^{(alpha)}(x)| / (L_|alpha| M_|alpha|); per-order maxima land in the
// report params ("order_k").
BoundReport mollifier_check(const Mollifier& eta, const WeightSequence& WM,
                            const RSequence& R, int k_max);

}  // namespace tauberlab
