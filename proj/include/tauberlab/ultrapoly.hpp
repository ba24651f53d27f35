#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "tauberlab/cones.hpp"
#include "tauberlab/report.hpp"
#include "tauberlab/vec.hpp"
#include "tauberlab/weights.hpp"

namespace tauberlab {

// Entire product prod_p (1 + w / (l_p m_p)), truncated with a certified tail
// correction, optionally composed with the cone rotations w_j = -i lambda
// sqrt(n) e_j . z.  Values are handled in log scale; the roots sit at
// w = -l_p m_p, off the rotated half planes.
class Ultrapolynomial {
 public:
  std::size_t dim() const { return dim_; }
  double disc_radius() const { return radius_; }
  // certified bound on the neglected part of log P on the declared disc
  double tail_bound() const;
  std::size_t truncation_index() const;
  double lambda() const { return lambda_; }

  Cplx log_value(const CVec& z) const;  // real part -inf at a root
  Cplx value(const CVec& z) const;
  double log_abs(const CVec& z) const { return log_value(z).real(); }

  // Multiplication concatenates the factor lists (dimensions must agree).
  friend Ultrapolynomial operator*(const Ultrapolynomial& a,
                                   const Ultrapolynomial& b);

 private:
  friend Ultrapolynomial build_tilde(const WeightSequence& WM,
                                     const RSequence& R, double disc_radius);
  friend Ultrapolynomial build_cone_poly(const WeightSequence& WM,
                                         const RSequence& R, const Cone& gamma,
                                         double disc_radius);

  struct FactorSet {
    std::vector<double> lm;        // l_p m_p for p = 1..P
    std::vector<double> tail;      // log remainder ~ sum_k tail[k-1] w^k
    double remainder_bound = 0.0;  // on |w| <= w_radius
    double w_radius = 0.0;
  };
  struct Leg {
    Vec e;
    Cplx rotation;  // w = rotation * (e . z)
    std::shared_ptr<const FactorSet> factors;
  };

  static std::shared_ptr<const FactorSet> make_factors(
      const WeightSequence& WM, const RSequence& R, double w_radius);

  std::size_t dim_ = 1;
  double radius_ = 0.0;
  double lambda_ = 1.0;
  std::vector<Leg> legs_;
};

// prod_p (1 + z / (l_p m_p)) evaluated on |z| <= disc_radius.  Requires
// (M.3)' (summable inverse ratios); throws DivergentProductError otherwise.
Ultrapolynomial build_tilde(const WeightSequence& WM, const RSequence& R,
                            double disc_radius);

// P(z) = prod_j Ptilde(-i lambda sqrt(n) e_j . z) for a solid cone, with the
// basis e_j taken interior to gamma and lambda calibrated on sampled unit
// vectors of the tube so that |w_j| >= |z|.
Ultrapolynomial build_cone_poly(const WeightSequence& WM, const RSequence& R,
                                const Cone& gamma, double disc_radius = 1e3);

// Checks e^{M_{lp}(|z|)} <= |P(z)| at every grid point (throwing
// InvariantViolation with the witness on failure) and fits minimal L, L' with
// |P(z)| <= L' e^{M_{lp}(L |z|)}; stability compares the fit on a stride-2
// subgrid.
BoundReport verify_sandwich(const Ultrapolynomial& P, const WeightSequence& WM,
                            const RSequence& R, const std::vector<CVec>& z_grid);

}  // namespace tauberlab
