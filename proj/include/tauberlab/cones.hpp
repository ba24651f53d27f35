#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tauberlab/report.hpp"
#include "tauberlab/rng.hpp"
#include "tauberlab/vec.hpp"

namespace tauberlab {

// Closed convex acute cone in one of three exact families.  Polyhedral cones
// are supported up to dimension 4; their facet description (generators of the
// conjugate cone) is computed on construction.
class Cone {
 public:
  enum class Kind { kOrthant, kLorentz, kPolyhedral };

  static Cone orthant(std::size_t dim);
  static Cone lorentz(std::size_t dim);  // { x : x_n >= |(x_1..x_{n-1})| }
  static Cone polyhedral(const std::vector<Vec>& generators);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& generators() const { return generators_; }

  // Membership in Gamma + B(0, eps); eps = 0 tests the closed cone itself.
  bool contains(const Vec& xi, double eps = 0.0) const;

  // Euclidean distance from xi to the cone (0 inside).
  double distance(const Vec& xi) const;

  // Distance from y to the boundary of the open interior of this cone;
  // zero for y on the boundary or outside the closure.  With C = int Gamma*
  // this is the Delta_C of the Laplace estimates.
  double boundary_distance(const Vec& y) const;

  // Strictly interior unit vector (exists for solid cones; the conjugate of
  // an acute cone is always solid).
  Vec interior_witness() const;
  bool is_solid() const;

  // Deterministic samples: a point of the cone / of its interior.
  Vec sample(Rng& rng, double scale = 1.0) const;
  Vec sample_interior(Rng& rng, double scale = 1.0) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::kOrthant;
  std::size_t dim_ = 0;
  std::vector<Vec> generators_;    // extreme rays (polyhedral; unit length)
  std::vector<Vec> facet_normals_; // generators of the conjugate (polyhedral)
  friend Cone conjugate(const Cone& cone);
};

// Conjugate cone Gamma* = { y : y.u >= 0 for all u in Gamma }, in the same
// representation family.  Throws AcutenessError when the interior is empty.
Cone conjugate(const Cone& cone);

// Checks y.u >= Delta_C(y) |u| on seeded random pairs (u in Gamma, y in C
// with C the interior of the conjugate).  Throws InvariantViolation with the
// witness pair on a violation beyond tolerance.
BoundReport verify_dot_estimate(const Cone& gamma, std::size_t sample_count,
                                std::uint64_t seed = Rng::kDefaultSeed);

}  // namespace tauberlab
