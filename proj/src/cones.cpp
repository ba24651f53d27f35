#include "tauberlab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tauberlab/errors.hpp"

namespace tauberlab {

namespace {

constexpr double kRayTol = 1e-12;

Vec unit(const Vec& v) {
  const double n = norm2(v);
  if (n <= 0.0) throw DomainError("cone: zero generator");
  return scaled(v, 1.0 / n);
}

// Determinant of a k x k matrix (k <= 3), by expansion / elimination.
double det_small(std::vector<Vec> m) {
  const std::size_t k = m.size();
  if (k == 0) return 1.0;
  double d = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return d;
}

// Null vector of n-1 row vectors in R^n (generalized cross product); zero
// vector when the rows are dependent.
Vec null_direction(const std::vector<Vec>& rows, std::size_t n) {
  Vec v(n, 0.0);
  if (n == 1) {
    v[0] = 1.0;
    return v;
  }
  double sign = 1.0;
  for (std::size_t skip = 0; skip < n; ++skip) {
    std::vector<Vec> minor(rows.size(), Vec(n - 1));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (c != skip) minor[r][cc++] = rows[r][c];
    }
    v[skip] = sign * det_small(minor);
    sign = -sign;
  }
  return v;
}

// Solve the symmetric positive system G c = b by Gaussian elimination;
// returns false when G is numerically singular.
bool solve_gram(std::vector<Vec> g, Vec b, Vec& c) {
  const std::size_t k = b.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) < 1e-12) return false;
    std::swap(g[piv], g[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = g[r][col] / g[col][col];
      for (std::size_t cc = col; cc < k; ++cc) g[r][cc] -= f * g[col][cc];
      b[r] -= f * b[col];
    }
  }
  c.assign(k, 0.0);
  for (std::size_t col = k; col-- > 0;) {
    double s = b[col];
    for (std::size_t cc = col + 1; cc < k; ++cc) s -= g[col][cc] * c[cc];
    c[col] = s / g[col][col];
  }
  return true;
}

// Distance from x to the conic hull of `gens` (exact: the projection lies in
// the span of some linearly independent subset with nonnegative weights, and
// every all-nonnegative subset solution is a feasible point).
double polyhedral_distance(const std::vector<Vec>& gens, const Vec& x) {
  const std::size_t m = gens.size();
  const std::size_t n = x.size();
  double best = norm2(x);  // empty subset: projection onto the vertex
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<const Vec*> sel;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sel.push_back(&gens[i]);
    if (sel.size() > n) continue;
    const std::size_t k = sel.size();
    std::vector<Vec> gram(k, Vec(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      rhs[i] = dot(*sel[i], x);
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(*sel[i], *sel[j]);
    }
    Vec coef;
    if (!solve_gram(gram, rhs, coef)) continue;
    bool ok = true;
    for (double ci : coef)
      if (ci < -1e-10) ok = false;
    if (!ok) continue;
    Vec p(n, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t d = 0; d < n; ++d) p[d] += coef[i] * (*sel[i])[d];
    best = std::min(best, norm2(sub(x, p)));
  }
  return best;
}

// Extreme rays of { y : y.g >= 0 for all g in gens }: null directions of
// (n-1)-subsets of generators, kept when feasible.
std::vector<Vec> dual_rays(const std::vector<Vec>& gens, std::size_t n) {
  std::vector<Vec> rays;
  auto push_unique = [&](const Vec& v) {
    for (const auto& r : rays)
      if (norm2(sub(r, v)) < 1e-9) return;
    rays.push_back(v);
  };
  auto feasible = [&](const Vec& v) {
    for (const auto& g : gens)
      if (dot(v, g) < -1e-10) return false;
    return true;
  };
  if (n == 1) {
    Vec plus{1.0}, minus{-1.0};
    if (feasible(plus)) push_unique(plus);
    if (feasible(minus)) push_unique(minus);
    return rays;
  }
  const std::size_t m = gens.size();
  // Iterate (n-1)-combinations of generator indices.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
    if (std::uint32_t(__builtin_popcount(mask)) == n - 1) masks.push_back(mask);
  for (std::uint32_t mask : masks) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) rows.push_back(gens[i]);
    Vec v = null_direction(rows, n);
    const double nv = norm2(v);
    if (nv < 1e-9) continue;
    v = scaled(v, 1.0 / nv);
    Vec w = scaled(v, -1.0);
    if (feasible(v)) push_unique(v);
    if (feasible(w)) push_unique(w);
  }
  return rays;
}

}  // namespace

Cone Cone::orthant(std::size_t dim) {
  if (dim < 1) throw DomainError("cone: dimension must be >= 1");
  Cone c;
  c.kind_ = Kind::kOrthant;
  c.dim_ = dim;
  return c;
}

Cone Cone::lorentz(std::size_t dim) {
  if (dim < 2) throw DomainError("cone: lorentz needs dimension >= 2");
  Cone c;
  c.kind_ = Kind::kLorentz;
  c.dim_ = dim;
  return c;
}

Cone Cone::polyhedral(const std::vector<Vec>& generators) {
  if (generators.empty()) throw DomainError("cone: no generators");
  const std::size_t n = generators.front().size();
  if (n < 1 || n > 4)
    throw DomainError("cone: polyhedral supported for dimension 1..4");
  if (generators.size() > 12) throw DomainError("cone: too many generators");
  Cone c;
  c.kind_ = Kind::kPolyhedral;
  c.dim_ = n;
  for (const auto& g : generators) {
    if (g.size() != n) throw DomainError("cone: generator dimension mismatch");
    c.generators_.push_back(unit(g));
  }
  // Acute (pointed): no generator's negation lies back in the conic hull
  // (equivalently, no nontrivial nonnegative combination vanishes).
  for (const auto& g : c.generators_)
    if (polyhedral_distance(c.generators_, scaled(g, -1.0)) < 1e-9)
      throw AcutenessError("cone: conjugate interior is empty");
  // Solid: generators span the space (we restrict the polyhedral family to
  // cones that are both pointed and full dimensional so conjugation stays
  // inside the family).
  {
    std::vector<Vec> rows = c.generators_;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      for (std::size_t r = rank + 1; r < rows.size(); ++r)
        if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
      if (std::abs(rows[piv][col]) < 1e-10) continue;
      std::swap(rows[piv], rows[rank]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == rank) continue;
        const double f = rows[r][col] / rows[rank][col];
        for (std::size_t cc = 0; cc < n; ++cc) rows[r][cc] -= f * rows[rank][cc];
      }
      ++rank;
    }
    if (rank < n)
      throw SolidityError("cone: generators do not span the space");
  }
  c.facet_normals_ = dual_rays(c.generators_, n);
  // Sanity: pointed and solid give a facet description with a strictly
  // interior dual witness.
  Vec wy(n, 0.0);
  for (const auto& r : c.facet_normals_) wy = add(wy, r);
  for (const auto& g : c.generators_)
    if (dot(wy, g) <= kRayTol)
      throw AcutenessError("cone: conjugate interior is empty");
  return c;
}

bool Cone::contains(const Vec& xi, double eps) const {
  if (xi.size() != dim_) throw DomainError("cone: point dimension mismatch");
  if (eps < 0.0) throw DomainError("cone: negative margin");
  return distance(xi) <= eps + kRayTol;
}

double Cone::distance(const Vec& xi) const {
  if (xi.size() != dim_) throw DomainError("cone: point dimension mismatch");
  switch (kind_) {
    case Kind::kOrthant: {
      double s = 0.0;
      for (double v : xi)
        if (v < 0.0) s += v * v;
      return std::sqrt(s);
    }
    case Kind::kLorentz: {
      double a2 = 0.0;
      for (std::size_t i = 0; i + 1 < dim_; ++i) a2 += xi[i] * xi[i];
      const double a = std::sqrt(a2);
      const double b = xi.back();
      if (b >= a) return 0.0;
      if (a <= -b) return norm2(xi);  // projects to the vertex
      return (a - b) / std::sqrt(2.0);
    }
    case Kind::kPolyhedral:
      return polyhedral_distance(generators_, xi);
  }
  return 0.0;
}

double Cone::boundary_distance(const Vec& y) const {
  if (y.size() != dim_) throw DomainError("cone: point dimension mismatch");
  switch (kind_) {
    case Kind::kOrthant: {
      double m = std::numeric_limits<double>::infinity();
      for (double v : y) m = std::min(m, v);
      return std::max(0.0, m);
    }
    case Kind::kLorentz: {
      double a2 = 0.0;
      for (std::size_t i = 0; i + 1 < dim_; ++i) a2 += y[i] * y[i];
      const double d = (y.back() - std::sqrt(a2)) / std::sqrt(2.0);
      return std::max(0.0, d);
    }
    case Kind::kPolyhedral: {
      // Interior points: nearest boundary point lies on a facet hyperplane.
      double m = std::numeric_limits<double>::infinity();
      for (const auto& nu : facet_normals_) m = std::min(m, dot(y, nu));
      return std::max(0.0, m);
    }
  }
  return 0.0;
}

Vec Cone::interior_witness() const {
  switch (kind_) {
    case Kind::kOrthant:
      return Vec(dim_, 1.0 / std::sqrt(double(dim_)));
    case Kind::kLorentz: {
      Vec w(dim_, 0.0);
      w.back() = 1.0;
      return w;
    }
    case Kind::kPolyhedral: {
      Vec w(dim_, 0.0);
      for (const auto& g : generators_) w = add(w, g);
      w = unit(w);
      for (const auto& nu : facet_normals_)
        if (dot(w, nu) <= kRayTol)
          throw SolidityError("cone: no strictly interior direction");
      return w;
    }
  }
  return {};
}

bool Cone::is_solid() const {
  if (kind_ != Kind::kPolyhedral) return true;
  try {
    interior_witness();
    return true;
  } catch (const SolidityError&) {
    return false;
  }
}

Vec Cone::sample(Rng& rng, double scale) const {
  switch (kind_) {
    case Kind::kOrthant: {
      Vec x(dim_);
      for (auto& v : x) v = scale * rng.uniform();
      return x;
    }
    case Kind::kLorentz: {
      // Unit direction at angle theta <= pi/4 from the axis, random radius.
      Vec d(dim_, 0.0);
      double n2 = 0.0;
      for (std::size_t i = 0; i + 1 < dim_; ++i) {
        d[i] = rng.normal();
        n2 += d[i] * d[i];
      }
      const double theta = rng.uniform(0.0, 0.25 * 3.14159265358979323846);
      const double r = scale * rng.uniform();
      const double nn = std::sqrt(n2);
      for (std::size_t i = 0; i + 1 < dim_; ++i)
        d[i] = nn > 0.0 ? r * std::sin(theta) * d[i] / nn : 0.0;
      d.back() = r * std::cos(theta);
      return d;
    }
    case Kind::kPolyhedral: {
      Vec x(dim_, 0.0);
      for (const auto& g : generators_) {
        const double c = scale * rng.uniform();
        for (std::size_t i = 0; i < dim_; ++i) x[i] += c * g[i];
      }
      return x;
    }
  }
  return {};
}

Vec Cone::sample_interior(Rng& rng, double scale) const {
  Vec x = sample(rng, scale);
  const Vec w = interior_witness();
  const double push = scale * (0.01 + 0.2 * rng.uniform());
  for (std::size_t i = 0; i < dim_; ++i) x[i] += push * w[i];
  return x;
}

std::string Cone::describe() const {
  char buf[64];
  switch (kind_) {
    case Kind::kOrthant:
      std::snprintf(buf, sizeof buf, "orthant(%zu)", dim_);
      return buf;
    case Kind::kLorentz:
      std::snprintf(buf, sizeof buf, "lorentz(%zu)", dim_);
      return buf;
    case Kind::kPolyhedral:
      std::snprintf(buf, sizeof buf, "polyhedral(dim %zu, %zu rays)", dim_,
                    generators_.size());
      return buf;
  }
  return "";
}

Cone conjugate(const Cone& cone) {
  switch (cone.kind()) {
    case Cone::Kind::kOrthant:
      return Cone::orthant(cone.dim());
    case Cone::Kind::kLorentz:
      return Cone::lorentz(cone.dim());
    case Cone::Kind::kPolyhedral:
      return Cone::polyhedral(cone.facet_normals_);
  }
  throw DomainError("cone: unknown kind");
}

BoundReport verify_dot_estimate(const Cone& gamma, std::size_t sample_count,
                                std::uint64_t seed) {
  const Cone dual = conjugate(gamma);
  Rng rng(seed);
  BoundReport rep;
  rep.bound_id = "dot-estimate";
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu seeded pairs, seed %llu", sample_count,
                  static_cast<unsigned long long>(seed));
    rep.grid_description = buf;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sample_count; ++k) {
    const double su = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const double sy = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const Vec u = gamma.sample(rng, su);
    const Vec y = dual.sample_interior(rng, sy);
    // Residual Delta_C(y)|u| - y.u must be <= 0 (up to roundoff).
    const double res = dual.boundary_distance(y) * norm2(u) - dot(y, u);
    if (res > worst) {
      worst = res;
      rep.attaining_point = u;
      rep.attaining_point.insert(rep.attaining_point.end(), y.begin(), y.end());
    }
    const double tol = 1e-9 * (1.0 + norm2(u) * norm2(y));
    if (res > tol) {
      Vec witness = u;
      witness.insert(witness.end(), y.begin(), y.end());
      throw InvariantViolation("cone: dot estimate violated", witness);
    }
  }
  rep.pass = true;
  rep.refinement_stable = true;
  rep.worst_residual = worst;
  rep.params["samples"] = double(sample_count);
  rep.params["seed"] = double(seed);
  return rep;
}

}  // namespace tauberlab
