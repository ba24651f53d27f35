#pragma once

#include <functional>
#include <memory>
#include <string>

#include "tauberlab/cones.hpp"
#include "tauberlab/gelfand.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/vec.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// Closed-form Laplace transform with kernel e^{i z.xi}: point atoms give
// coef (-i z)^alpha e^{i z.loc}, orthant densities give
// coef prod_j Gamma(a_j+1) / (c_j - i z_j)^{a_j+1}.
Cplx laplace(const CatalogElement& f, const CVec& z);

// Independent quadrature path (density atoms only): tensorized adaptive
// integration of xi^a e^{-c.xi} e^{i z.xi} with the truncation radius taken
// from the e^{-y.xi} decay.  Relative tolerance 1e-8.
Cplx laplace_quadrature(const CatalogElement& f, const CVec& z);

// Holomorphic function on the tube over C (an open cone interior).  Wraps a
// closed-form catalog transform, the quadrature path, or external data.
class LaplaceFunction {
 public:
  // gamma is the support cone of f; the domain cone is C = int(conjugate).
  static LaplaceFunction closed_form(CatalogElement f, const Cone& gamma);
  static LaplaceFunction quadrature_backed(CatalogElement f, const Cone& gamma);
  static LaplaceFunction external(std::function<Cplx(const CVec&)> eval,
                                  const Cone& domain, std::string name);

  // Throws DomainError when Im z is not interior to the domain cone.
  // Evaluations with Delta_C(Im z) < 1e-12 go through but bump the
  // conditioning counter.
  Cplx operator()(const CVec& z) const;

  const Cone& domain_cone() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }
  std::size_t conditioning_warnings() const { return *warnings_; }
  const std::string& describe() const { return name_; }

 private:
  std::function<Cplx(const CVec&)> eval_;
  Cone domain_ = Cone::orthant(1);
  std::string name_;
  std::shared_ptr<std::size_t> warnings_ = std::make_shared<std::size_t>(0);
};

// Slice recovery f(xi) = (2 pi)^{-n} e^{xi.y} int F(x+iy) e^{-i x.xi} dx
// (1-D implementation).  Trapezoid sum with spectral aliasing control, a
// cancellation-aware truncation cutoff, and a step-halving check.
struct SampledFunction {
  Vec xi;
  CVec values;
  Vec slice_y;
  double step = 0.0;
  double step_check_error = 0.0;  // max change under halving the step
};

SampledFunction inverse_laplace(const LaplaceFunction& F, const Vec& y,
                                const Vec& xi_grid);

// Window adapter conj^c(base(reflect(t) - shift)) e^{2 pi i freq.t} used by
// the STFT and the convolution identities.
std::shared_ptr<const SmoothFn> windowed(std::shared_ptr<const SmoothFn> base,
                                         const Vec& shift, const Vec& freq,
                                         bool reflect, bool conjugate);

// V_psi f(x, xi) = <f(t), conj(psi(t - x)) e^{-2 pi i xi.t}>
Cplx stft(const CatalogElement& f, const TestFunction& psi, const Vec& x,
          const Vec& xi);

// (f * psi)(x) = <f(t), psi(x - t)>
Cplx convolve(const CatalogElement& f, const TestFunction& psi, const Vec& x);
Cplx convolve(const CatalogElement& f,
              const std::shared_ptr<const SmoothFn>& window, const Vec& x);

// sup over x_grid of e^{-N_{lp}(|x|)} |(f * psi)(x)|; the refinement flag
// compares against the sup on a range-doubled grid.
BoundReport convolution_bounded_check(const CatalogElement& f,
                                      const TestFunction& psi,
                                      const WeightSequence& WN,
                                      const RSequence& R,
                                      const std::vector<Vec>& x_grid);

}  // namespace tauberlab
