#include "tauberlab/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "tauberlab/errors.hpp"
#include "tauberlab/jet.hpp"
#include "tauberlab/quadrature.hpp"

namespace tauberlab {

// ---------------------------------------------------------------------------
// CatalogElement
// ---------------------------------------------------------------------------

CatalogElement CatalogElement::point(Vec loc, MultiIndex alpha, double coef) {
  if (loc.empty() || loc.size() != alpha.size())
    throw DomainError("catalog: location/alpha dimension mismatch");
  for (int k : alpha)
    if (k < 0) throw DomainError("catalog: negative derivative order");
  for (double v : loc)
    if (v < 0.0) throw DomainError("catalog: point atom outside the cone");
  CatalogElement e;
  e.dim_ = loc.size();
  e.points_.push_back({std::move(loc), std::move(alpha), coef});
  return e;
}

CatalogElement CatalogElement::density(Vec a, Vec c, double coef) {
  if (a.empty() || a.size() != c.size())
    throw DomainError("catalog: exponent/decay dimension mismatch");
  for (double ai : a)
    if (!(ai > -1.0)) throw DomainError("catalog: exponent must exceed -1");
  for (double ci : c)
    if (ci < 0.0) throw DomainError("catalog: decay must be nonnegative");
  CatalogElement e;
  e.dim_ = a.size();
  e.densities_.push_back({std::move(a), std::move(c), coef});
  return e;
}

CatalogElement CatalogElement::delta(std::size_t dim) {
  return point(Vec(dim, 0.0), MultiIndex(dim, 0), 1.0);
}

CatalogElement CatalogElement::heaviside() {
  return density({0.0}, {0.0}, 1.0);
}

CatalogElement& CatalogElement::operator+=(const CatalogElement& other) {
  if (dim_ == 0) dim_ = other.dim_;
  if (dim_ != other.dim_)
    throw DomainError("catalog: dimension mismatch in sum");
  points_.insert(points_.end(), other.points_.begin(), other.points_.end());
  densities_.insert(densities_.end(), other.densities_.begin(),
                    other.densities_.end());
  return *this;
}

int CatalogElement::max_derivative_order() const {
  int m = 0;
  for (const auto& p : points_) m = std::max(m, order(p.alpha));
  return m;
}

std::optional<double> CatalogElement::homogeneity_degree() const {
  std::optional<double> deg;
  auto merge = [&](double d) {
    if (!deg) {
      deg = d;
      return true;
    }
    return std::abs(*deg - d) < 1e-12;
  };
  for (const auto& p : points_) {
    if (norm2(p.loc) != 0.0) return std::nullopt;
    if (!merge(-double(dim_) - order(p.alpha))) return std::nullopt;
  }
  for (const auto& d : densities_) {
    if (norm2(d.c) != 0.0) return std::nullopt;
    double s = 0.0;
    for (double ai : d.a) s += ai;
    if (!merge(s)) return std::nullopt;
  }
  return deg;
}

std::string CatalogElement::describe() const {
  return "catalog(dim " + std::to_string(dim_) + ", " +
         std::to_string(points_.size()) + " point / " +
         std::to_string(densities_.size()) + " density atoms)";
}

CatalogElement dilate(const CatalogElement& f, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("dilate: lambda must be positive");
  CatalogElement out;
  for (const auto& p : f.points()) {
    const double c =
        p.coef * std::pow(lambda, -double(f.dim()) - order(p.alpha));
    out += CatalogElement::point(scaled(p.loc, 1.0 / lambda), p.alpha, c);
  }
  for (const auto& d : f.densities()) {
    double s = 0.0;
    for (double ai : d.a) s += ai;
    out += CatalogElement::density(d.a, scaled(d.c, lambda),
                                   d.coef * std::pow(lambda, s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

namespace {

class GaussianFn final : public SmoothFn {
 public:
  GaussianFn(Vec center, double width)
      : center_(std::move(center)), width_(width) {
    if (!(width > 0.0)) throw DomainError("gaussian: width must be positive");
  }
  std::size_t dim() const override { return center_.size(); }
  Cplx derivative(const Vec& t, const MultiIndex& alpha) const override {
    double v = 1.0;
    for (std::size_t i = 0; i < center_.size(); ++i) {
      const double u = (t[i] - center_[i]) / width_;
      // d^k/du^k e^{-u^2} = (-1)^k H_k(u) e^{-u^2}
      double h0 = 1.0, h1 = 2.0 * u;
      double h = alpha[i] == 0 ? 1.0 : h1;
      for (int k = 1; k < alpha[i]; ++k) {
        h = 2.0 * u * h1 - 2.0 * double(k) * h0;
        h0 = h1;
        h1 = h;
      }
      const double sign = alpha[i] % 2 == 0 ? 1.0 : -1.0;
      v *= sign * h * std::exp(-u * u) * std::pow(1.0 / width_, alpha[i]);
    }
    return v;
  }
  double decay_radius(double tol) const override {
    const double r = width_ * (std::sqrt(std::log(1.0 / tol)) + 8.0);
    return norm2(center_) + r;
  }

 private:
  Vec center_;
  double width_;
};

// k-th derivative of exp(-1/(1-x^2)), zero off (-1, 1).
double bump_profile_derivative(double x, int k) {
  const double u = 1.0 - x * x;
  if (u < 1e-12) return 0.0;  // flat-zero tail; magnitudes below e^{-1e12}
  Jet X = Jet::variable(std::size_t(k) + 1, x);
  const Jet inner = (-1.0) * (1.0 - X * X).reciprocal();
  return inner.exp().derivative(std::size_t(k));
}

class BumpFn final : public SmoothFn {
 public:
  BumpFn(Vec center, double radius)
      : center_(std::move(center)), radius_(radius) {
    if (!(radius > 0.0)) throw DomainError("bump: radius must be positive");
  }
  std::size_t dim() const override { return center_.size(); }
  Cplx derivative(const Vec& t, const MultiIndex& alpha) const override {
    double v = 1.0;
    for (std::size_t i = 0; i < center_.size(); ++i) {
      const double x = (t[i] - center_[i]) / radius_;
      v *= bump_profile_derivative(x, alpha[i]) *
           std::pow(1.0 / radius_, alpha[i]);
      if (v == 0.0) return 0.0;
    }
    return v;
  }
  double decay_radius(double) const override {
    return norm2(center_) + radius_ * std::sqrt(double(center_.size())) + 1.0;
  }

 private:
  Vec center_;
  double radius_;
};

class GridFn final : public SmoothFn {
 public:
  GridFn(std::vector<double> values, double spacing, double origin)
      : values_(std::move(values)), h_(spacing), origin_(origin) {
    if (!(spacing > 0.0)) throw DomainError("grid: spacing must be positive");
    if (values_.size() < 5) throw DomainError("grid: need at least 5 samples");
  }
  std::size_t dim() const override { return 1; }
  int max_order() const override { return 2; }
  Cplx derivative(const Vec& t, const MultiIndex& alpha) const override {
    const int k = alpha[0];
    if (k > 2)
      throw CapabilityError("grid function: derivative order beyond 2");
    const double s = (t[0] - origin_) / h_;
    const long i0 = long(std::floor(s));
    const double frac = s - double(i0);
    return (1.0 - frac) * node_deriv(i0, k) + frac * node_deriv(i0 + 1, k);
  }
  double decay_radius(double) const override {
    return std::max(std::abs(origin_),
                    std::abs(origin_ + h_ * double(values_.size() - 1))) +
           h_;
  }

 private:
  double at(long i) const {
    if (i < 0 || i >= long(values_.size())) return 0.0;
    return values_[std::size_t(i)];
  }
  double node_deriv(long i, int k) const {
    switch (k) {
      case 0:
        return at(i);
      case 1:
        return (at(i + 1) - at(i - 1)) / (2.0 * h_);
      default:
        return (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h_ * h_);
    }
  }
  std::vector<double> values_;
  double h_, origin_;
};

class ScaledArgFn final : public SmoothFn {
 public:
  ScaledArgFn(std::shared_ptr<const SmoothFn> base, double lambda)
      : base_(std::move(base)), lambda_(lambda) {
    if (!(lambda > 0.0)) throw DomainError("scaled_arg: lambda must be > 0");
  }
  std::size_t dim() const override { return base_->dim(); }
  int max_order() const override { return base_->max_order(); }
  Cplx derivative(const Vec& t, const MultiIndex& alpha) const override {
    return base_->derivative(scaled(t, 1.0 / lambda_), alpha) *
           std::pow(1.0 / lambda_, order(alpha));
  }
  double decay_radius(double tol) const override {
    return lambda_ * base_->decay_radius(tol);
  }

 private:
  std::shared_ptr<const SmoothFn> base_;
  double lambda_;
};

}  // namespace

TestFunction TestFunction::gaussian(Vec center, double width) {
  TestFunction t;
  t.fn_ = std::make_shared<GaussianFn>(std::move(center), width);
  return t;
}

TestFunction TestFunction::bump(Vec center, double radius) {
  TestFunction t;
  t.fn_ = std::make_shared<BumpFn>(std::move(center), radius);
  return t;
}

TestFunction TestFunction::grid_sampled(std::vector<double> values,
                                        double spacing, double origin) {
  TestFunction t;
  t.fn_ = std::make_shared<GridFn>(std::move(values), spacing, origin);
  return t;
}

TestFunction TestFunction::scaled_arg(double lambda) const {
  TestFunction t;
  t.fn_ = std::make_shared<ScaledArgFn>(fn_, lambda);
  return t;
}

// ---------------------------------------------------------------------------
// Pairing
// ---------------------------------------------------------------------------

namespace {

Cplx density_integral(const DensityAtom& d, const SmoothFn& phi) {
  const std::size_t n = phi.dim();
  const double radius = phi.decay_radius(1e-18) * 1.5;
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  Vec xi(n, 0.0);
  std::function<Cplx(std::size_t)> level = [&](std::size_t k) -> Cplx {
    auto f = [&, k](double x) -> Cplx {
      xi[k] = x;
      if (k + 1 < n) return level(k + 1);
      Cplx w = phi.value(xi);
      for (std::size_t i = 0; i < n; ++i) {
        if (d.a[i] != 0.0) w *= std::pow(xi[i], d.a[i]);
        if (d.c[i] != 0.0) w *= std::exp(-d.c[i] * xi[i]);
      }
      return w;
    };
    return integrate_to<Cplx>(f, radius, opt);
  };
  return d.coef * level(0);
}

}  // namespace

Cplx pair(const CatalogElement& f, const SmoothFn& phi) {
  if (f.dim() != phi.dim())
    throw DomainError("pair: dimension mismatch");
  if (f.max_derivative_order() > phi.max_order())
    throw CapabilityError("pair: derivative order beyond the test function");
  Cplx total = 0.0;
  for (const auto& p : f.points()) {
    const double sign = order(p.alpha) % 2 == 0 ? 1.0 : -1.0;
    total += p.coef * sign * phi.derivative(p.loc, p.alpha);
  }
  for (const auto& d : f.densities()) total += density_integral(d, phi);
  return total;
}

// ---------------------------------------------------------------------------
// Gelfand-Shilov norm
// ---------------------------------------------------------------------------

GsNormResult gs_norm(const SmoothFn& phi, const WeightSequence& WM,
                     const WeightSequence& WN, const RSequence& a,
                     const RSequence& b, int alpha_max, int beta_max,
                     double half_width, std::size_t points_per_dim) {
  if (alpha_max < 0 || beta_max < 0 || !(half_width > 0.0))
    throw DomainError("gs_norm: bad truncation parameters");
  if (alpha_max > phi.max_order())
    throw CapabilityError("gs_norm: derivative order beyond the function");
  const std::size_t n = phi.dim();
  GsNormResult best;
  best.alpha.assign(n, 0);
  best.beta.assign(n, 0);
  best.attaining_t.assign(n, 0.0);

  std::vector<Vec> axes(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < points_per_dim; ++j)
      axes[i].push_back(-half_width +
                        2.0 * half_width * double(j) /
                            double(points_per_dim - 1));

  MultiIndex alpha(n, 0);
  do {
    const int oa = order(alpha);
    const double wa =
        std::exp(a.log_cumulative(std::size_t(oa)) + WM.log_value(oa));
    MultiIndex beta(n, 0);
    do {
      const int ob = order(beta);
      const double wb =
          std::exp(b.log_cumulative(std::size_t(ob)) + WN.log_value(ob));
      // Tensor sweep over the box.
      Vec t(n, 0.0);
      std::vector<std::size_t> ix(n, 0);
      while (true) {
        for (std::size_t i = 0; i < n; ++i) t[i] = axes[i][ix[i]];
        double tb = 1.0;
        for (std::size_t i = 0; i < n; ++i)
          if (beta[i] != 0) tb *= std::pow(std::abs(t[i]), beta[i]);
        const double cand =
            tb * std::abs(phi.derivative(t, alpha)) / (wa * wb);
        if (cand > best.value) {
          best.value = cand;
          best.alpha = alpha;
          best.beta = beta;
          best.attaining_t = t;
        }
        std::size_t d = 0;
        while (d < n && ++ix[d] == points_per_dim) ix[d++] = 0;
        if (d == n) break;
      }
    } while (next_multi_index(beta, beta_max, beta_max));
  } while (next_multi_index(alpha, alpha_max, alpha_max));
  return best;
}

// ---------------------------------------------------------------------------
// Mollifier
// ---------------------------------------------------------------------------

namespace {

// Integral of the raw profile over [-1, 1], computed once.
double bump_profile_integral() {
  static const double n = [] {
    auto p = [](double x) { return bump_profile_derivative(x, 0); };
    return integrate<double>(p, -1.0, 1.0);
  }();
  return n;
}

// k-th derivative of the unit-mass 1-D bump with support [-h, h].  The base
// bump of an n-dimensional mollifier is the product of these with
// h = eps/(2 sqrt(n)), so its support box sits inside B(0, eps/2).
double bump1d(double v, double h, int k) {
  return bump_profile_derivative(v / h, k) /
         (std::pow(h, k + 1) * bump_profile_integral());
}

// Orientation of a 1-D cone: +1 for [0, inf), -1 for (-inf, 0].
double halfline_direction(const Cone& c) {
  const bool plus = c.contains({1.0}, 0.0);
  const bool minus = c.contains({-1.0}, 0.0);
  if (plus == minus) throw DomainError("mollifier: degenerate 1-D cone");
  return plus ? 1.0 : -1.0;
}

}  // namespace

double Mollifier::value(const Vec& x) const {
  return derivative(x, MultiIndex(dim(), 0));
}

double Mollifier::derivative(const Vec& x, const MultiIndex& alpha) const {
  if (x.size() != dim() || alpha.size() != dim())
    throw DomainError("mollifier: dimension mismatch");
  const double e = eps_;
  if (dim() == 1) {
    const double half = 0.5 * e;
    const double d = halfline_direction(cone_);
    // chi(x - v) = 1 iff d v < d x + 3 eps/2; clip the bump support.
    double lo = -half, hi = half;
    if (d > 0.0)
      hi = std::min(hi, x[0] + 1.5 * e);
    else
      lo = std::max(lo, x[0] - 1.5 * e);
    if (hi <= lo) return 0.0;
    const int k = alpha[0];
    auto f = [&](double v) { return bump1d(v, half, k); };
    // k = 0 uses the defaults so the uncut integral reproduces norm_ exactly
    // (plateau value 1.0 bit for bit).  Integrals of odd derivatives over the
    // full support vanish exactly, so for k >= 1 a purely relative tolerance
    // can never be met; anchor the absolute tolerance to the integrand scale.
    QuadOptions opt;
    if (k >= 1) {
      double peak = 0.0;
      for (int j = 0; j <= 16; ++j)
        peak = std::max(peak,
                        std::abs(f(lo + (hi - lo) * double(j) / 16.0)));
      opt.abs_tol = std::max(1e-300, 1e-11 * peak * (hi - lo));
    }
    return integrate<double>(f, lo, hi, opt) / norm_;
  }
  // 2-D: masked fixed-rule sum over the cached convolution nodes.
  const double half = 0.5 * e / std::sqrt(2.0);
  const auto* vals = &conv_base_;
  std::vector<double> deriv_vals;
  if (order(alpha) > 0) {
    deriv_vals.resize(conv_nodes_.size());
    for (std::size_t j = 0; j < conv_nodes_.size(); ++j)
      deriv_vals[j] = bump1d(conv_nodes_[j][0], half, alpha[0]) *
                      bump1d(conv_nodes_[j][1], half, alpha[1]);
    vals = &deriv_vals;
  }
  double s = 0.0;
  Vec shifted(2);
  for (std::size_t j = 0; j < conv_nodes_.size(); ++j) {
    shifted[0] = x[0] - conv_nodes_[j][0];
    shifted[1] = x[1] - conv_nodes_[j][1];
    if (cone_.contains(shifted, 1.5 * e)) s += (*vals)[j] * conv_weight_;
  }
  return s / norm_;
}

Mollifier build_mollifier(const Cone& gamma, double eps, const GridSpec& spec) {
  if (!(eps > 0.0)) throw DomainError("mollifier: eps must be positive");
  const std::size_t n = gamma.dim();
  if (n > 2)
    throw CapabilityError("mollifier: dimensions 1 and 2 supported");
  if (spec.count < 2 || !(spec.hi > spec.lo))
    throw DomainError("mollifier: bad grid spec");
  const double spacing = (spec.hi - spec.lo) / double(spec.count - 1);
  if (spacing > eps / 8.0 + 1e-15)
    throw ResolutionError("mollifier: grid spacing exceeds eps/8");

  Mollifier m;
  m.cone_ = gamma;
  m.eps_ = eps;
  m.grid_ = spec;
  if (n == 1) {
    const double half = 0.5 * eps;
    auto f = [&](double v) { return bump1d(v, half, 0); };
    m.norm_ = integrate<double>(f, -half, half);
  } else {
    const double half = 0.5 * eps / std::sqrt(2.0);
    const std::size_t nodes = 64;
    const double w = 2.0 * half / double(nodes);
    m.conv_weight_ = w * w;
    for (std::size_t i = 0; i < nodes; ++i)
      for (std::size_t j = 0; j < nodes; ++j) {
        const Vec v{-half + (double(i) + 0.5) * w,
                    -half + (double(j) + 0.5) * w};
        m.conv_nodes_.push_back(v);
        m.conv_base_.push_back(bump1d(v[0], half, 0) * bump1d(v[1], half, 0));
      }
    double z = 0.0;
    for (double b : m.conv_base_) z += b * m.conv_weight_;
    m.norm_ = z;
  }

  // Sample and check the plateau / support invariants.
  std::vector<std::size_t> ix(n, 0);
  Vec x(n, 0.0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = spec.lo + spacing * double(ix[i]);
    const double v = m.value(x);
    m.samples_.push_back(v);
    const double dist = gamma.distance(x);
    if (v < -1e-12 || v > 1.0 + 1e-12)
      throw InvariantViolation("mollifier: value outside [0, 1]", x);
    if (dist < eps - 1e-9 && v != 1.0)
      throw InvariantViolation("mollifier: plateau broken", x);
    if (dist > 2.0 * eps + 1e-9 && v != 0.0)
      throw InvariantViolation("mollifier: support exceeded", x);
    std::size_t d = 0;
    while (d < n && ++ix[d] == spec.count) ix[d++] = 0;
    if (d == n) break;
  }
  return m;
}

BoundReport mollifier_check(const Mollifier& eta, const WeightSequence& WM,
                            const RSequence& R, int k_max) {
  if (k_max < 0 || k_max > 16)
    throw CapabilityError("mollifier_check: order out of the supported range");
  const std::size_t n = eta.dim();
  const auto& spec = eta.grid();
  const double spacing = (spec.hi - spec.lo) / double(spec.count - 1);

  BoundReport rep;
  rep.bound_id = "mollifier/derivative-bound";
  rep.grid_description =
      "tensor grid " + std::to_string(spec.count) + "^" + std::to_string(n) +
      " on [" + std::to_string(spec.lo) + ", " + std::to_string(spec.hi) + "]";
  std::map<int, double> per_order;

  auto sweep = [&](std::size_t stride) {
    double h = 0.0;
    MultiIndex alpha(n, 0);
    do {
      const int k = order(alpha);
      if (k > k_max) continue;
      const double weight =
          std::exp(R.log_cumulative(std::size_t(k)) + WM.log_value(k));
      std::vector<std::size_t> ix(n, 0);
      Vec x(n, 0.0);
      while (true) {
        for (std::size_t i = 0; i < n; ++i)
          x[i] = spec.lo + spacing * double(ix[i] * stride);
        // Derivatives vanish identically away from the transition band
        // dist in (eps, 2 eps); sweep a safety margin around it.
        const double dist = eta.cone().distance(x);
        if (k == 0 ||
            (dist >= 0.5 * eta.eps() && dist <= 2.5 * eta.eps())) {
          const double cand = std::abs(eta.derivative(x, alpha)) / weight;
          h = std::max(h, cand);
          if (stride == 1) per_order[k] = std::max(per_order[k], cand);
        }
        std::size_t d = 0;
        while (d < n && (ix[d] += 1) * stride >= spec.count) ix[d++] = 0;
        if (d == n) break;
      }
    } while (next_multi_index(alpha, k_max, k_max));
    return h;
  };

  const double h_full = sweep(1);
  const double h_half = sweep(2);
  rep.pass = true;
  rep.log_constant = std::log(std::max(h_full, 1e-300));
  rep.worst_residual = 0.0;
  rep.refinement_stable =
      stable_drift(std::log(std::max(h_half, 1e-300)), rep.log_constant);
  for (const auto& [k, v] : per_order)
    rep.params["order_" + std::to_string(k)] = v;
  rep.params["H"] = h_full;
  rep.params["eps"] = eta.eps();
  return rep;
}

}  // namespace tauberlab
