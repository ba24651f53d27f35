#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "tauberlab/errors.hpp"
#include "tauberlab/laplace.hpp"
#include "tauberlab/tauberian.hpp"

using namespace tauberlab;

namespace {

const Cplx I(0.0, 1.0);

CatalogElement xi_plus() { return CatalogElement::density({1.0}, {0.0}); }

Vec log_grid(double lo, double hi, int count) {
  Vec g;
  for (int k = 0; k < count; ++k)
    g.push_back(lo * std::pow(hi / lo, double(k) / double(count - 1)));
  return g;
}

}  // namespace

TEST_CASE("regular variation of the rho families") {
  // slow-factor deviation at lambda = 1e6 is ~ exponent * log(a)/log(lambda),
  // so the 1% window constrains the exponent
  const auto fams = {RegularlyVarying::power(1.3),
                     RegularlyVarying::log_factor(1.3, 0.15),
                     RegularlyVarying::loglog_factor(-0.7, 0.25)};
  for (const auto& rho : fams) {
    for (double a : {0.5, 2.0}) {
      const double lhs =
          rho_eval(rho, 1e6 * a) / rho_eval(rho, 1e6);
      CHECK(std::abs(lhs / std::pow(a, rho.alpha()) - 1.0) < 0.01);
    }
  }
  CHECK(rho_eval(RegularlyVarying::power(2.0), 3.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(rho_eval(RegularlyVarying::power(1.0), 0.0), DomainError);
}

TEST_CASE("potter estimate fit") {
  const auto lambdas = log_grid(1e2, 1e6, 25);
  const Vec ts = {0.1, 0.3, 1.0, 3.0, 10.0};

  const auto r1 = potter_check(RegularlyVarying::power(1.3), lambdas, ts);
  CHECK(r1.pass);
  CHECK(r1.params.at("L3") == doctest::Approx(1.0));  // exact power law

  const auto r2 =
      potter_check(RegularlyVarying::log_factor(0.5, 1.0), lambdas, ts);
  CHECK(r2.pass);
  CHECK(r2.params.at("L3") >= 1.0 - 1e-12);

  // bounded but not regularly varying: the doubling ratio never settles
  const auto osc = [](double lam) {
    return lam * (std::sin(std::log(lam)) + 2.0);
  };
  const auto r3 = potter_check(osc, 1.0, lambdas, ts);
  CHECK_FALSE(r3.refinement_stable);
  CHECK_FALSE(r3.pass);

  CHECK_THROWS_AS(potter_check(RegularlyVarying::power(1.0), {}, ts),
                  DomainError);
  CHECK_THROWS_AS(
      potter_check(RegularlyVarying::power(1.0), lambdas, {-1.0}),
      DomainError);
}

TEST_CASE("scaled transform ray limits") {
  Vec r_grid;
  for (int k = 0; k <= 40; ++k)
    r_grid.push_back(std::pow(10.0, -1.0 - 5.0 * double(k) / 40.0));

  // Heaviside with rho = 1: r L{H}(r i y) = 1/y
  const auto t1 = scaled_laplace_limit(
      CatalogElement::heaviside(), RegularlyVarying::power(0.0),
      {{2.0}, {1.0}}, r_grid);
  REQUIRE(t1.all_converged());
  CHECK(std::abs(t1.entries[0].limit - Cplx(0.5)) < 1e-12);
  CHECK(std::abs(t1.entries[1].limit - Cplx(1.0)) < 1e-12);

  // xi_+ with rho = lambda: limit 1/y^2
  const auto t2 = scaled_laplace_limit(xi_plus(), RegularlyVarying::power(1.0),
                                       {{1.0}}, r_grid);
  REQUIRE(t2.all_converged());
  CHECK(std::abs(t2.entries[0].limit - Cplx(1.0)) < 1e-12);

  // delta' with rho = lambda^{-2}: limit y
  const auto t3 = scaled_laplace_limit(
      CatalogElement::point({0.0}, {1}), RegularlyVarying::power(-2.0),
      {{1.0}}, r_grid);
  REQUIRE(t3.all_converged());
  CHECK(std::abs(t3.entries[0].limit - Cplx(1.0)) < 1e-12);

  // wrong index: the scaled values drain to zero and never settle
  const auto t4 = scaled_laplace_limit(
      CatalogElement::delta(1), RegularlyVarying::power(0.0), {{1.0}}, r_grid);
  CHECK_FALSE(t4.all_converged());
  const auto t5 = scaled_laplace_limit(xi_plus(), RegularlyVarying::power(2.0),
                                       {{1.0}}, r_grid);
  CHECK_FALSE(t5.all_converged());

  CHECK_THROWS_AS(scaled_laplace_limit(xi_plus(),
                                       RegularlyVarying::power(1.0), {{1.0}},
                                       {1e-3, 1e-2}),
                  DomainError);
}

TEST_CASE("hemisphere bound") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto wa = product_sequence(wm, wm, 64);
  const auto one = RSequence::beurling(1.0);
  Vec r_grid;
  for (int k = 0; k <= 40; ++k)
    r_grid.push_back(std::pow(10.0, -1.0 - 5.0 * double(k) / 40.0));

  const auto r1 = hemisphere_bound_check(CatalogElement::heaviside(),
                                         RegularlyVarying::power(0.0), {1.0},
                                         wa, one, 1e-3, r_grid);
  CHECK(r1.pass);
  CHECK(r1.params.at("limsup") <= 1.0 + 1e-9);

  const auto r2 = hemisphere_bound_check(CatalogElement::delta(1),
                                         RegularlyVarying::power(-1.0), {1.0},
                                         wa, one, 1e-3, r_grid);
  CHECK(r2.pass);

  // rho decaying below the true degree: sup grows like r^{-3}
  const auto r3 = hemisphere_bound_check(xi_plus(),
                                         RegularlyVarying::power(-2.0), {1.0},
                                         wa, one, 1e-3, r_grid);
  CHECK_FALSE(r3.pass);
  CHECK(r3.params.at("limsup_refined") > 10.0 * r3.params.at("limsup"));

  CHECK_THROWS_AS(hemisphere_bound_check(xi_plus(),
                                         RegularlyVarying::power(1.0), {0.0},
                                         wa, one, 1e-3, r_grid),
                  DomainError);
}

TEST_CASE("direct dilation limits") {
  Vec lambdas;
  for (int k = 0; k <= 20; ++k)
    lambdas.push_back(std::pow(10.0, 6.0 * double(k) / 20.0));
  const std::vector<TestFunction> battery = {
      TestFunction::gaussian({0.0}, 1.0)};
  const double half_sqrt_pi = 0.5 * std::sqrt(M_PI);

  // delta with rho = lambda^{-1}: limit phi(0) at every lambda
  const auto t1 = quasiasymptotic_direct(CatalogElement::delta(1),
                                         RegularlyVarying::power(-1.0),
                                         battery, lambdas);
  REQUIRE(t1.all_converged());
  CHECK(std::abs(t1.entries[0].limit - Cplx(1.0)) < 1e-10);

  // Heaviside with rho = 1: limit int_0^inf e^{-u^2} du
  const auto t2 = quasiasymptotic_direct(CatalogElement::heaviside(),
                                         RegularlyVarying::power(0.0),
                                         battery, lambdas);
  REQUIRE(t2.all_converged());
  CHECK(std::abs(t2.entries[0].limit - Cplx(half_sqrt_pi)) < 1e-8);

  // xi_+ with rho = lambda: limit int_0^inf u e^{-u^2} du = 1/2
  const auto t3 = quasiasymptotic_direct(xi_plus(),
                                         RegularlyVarying::power(1.0),
                                         battery, lambdas);
  REQUIRE(t3.all_converged());
  CHECK(std::abs(t3.entries[0].limit - Cplx(0.5)) < 1e-8);

  CHECK_THROWS_AS(quasiasymptotic_direct(CatalogElement::delta(1),
                                         RegularlyVarying::power(0.0), {},
                                         lambdas),
                  DomainError);
}

TEST_CASE("abelian direction") {
  // f = xi_+ + delta has quasiasymptotic xi_+ w.r.t. rho = lambda; the
  // delta contribution enters the scaled transform at order r^2
  const auto f = xi_plus() + CatalogElement::delta(1);
  std::vector<CVec> patch;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double y : {0.5, 0.875, 1.25, 1.625, 2.0})
      patch.push_back({Cplx(x, y)});
  const double res = abelian_residual(f, RegularlyVarying::power(1.0),
                                      xi_plus(), patch, 1e-4);
  CHECK(res < 1e-5);
  CHECK(res > 0.0);

  // identical f and g: the residual is the pure scaling error, exactly 0
  CHECK(abelian_residual(xi_plus(), RegularlyVarying::power(1.0), xi_plus(),
                         patch, 1e-4) < 1e-14);

  CHECK_THROWS_AS(abelian_residual(f, RegularlyVarying::power(1.0), xi_plus(),
                                   patch, 0.0),
                  DomainError);
}

TEST_CASE("product sequence") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto wn = WeightSequence::gevrey(1.5, 64);
  const auto wa = product_sequence(wm, wn, 64);
  for (std::size_t p : {0u, 1u, 7u, 40u, 64u})
    CHECK(wa.log_value(p) ==
          doctest::Approx(wm.log_value(p) + wn.log_value(p)));
  const std::vector<double> short_table(10, 1.0);
  CHECK_THROWS_AS(product_sequence(wm, WeightSequence::table(short_table), 64),
                  TruncationError);
}

TEST_CASE("tauberian pipeline on the catalog") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  const auto cfg = default_pipeline_config_1d();

  struct Case {
    CatalogElement f;
    double alpha;
    bool point;   // expected g kind
    int order;    // derivative order / density power
  };
  const std::vector<Case> good = {
      {CatalogElement::heaviside(), 0.0, false, 0},
      {CatalogElement::delta(1), -1.0, true, 0},
      {CatalogElement::point({0.0}, {1}), -2.0, true, 1},
      {xi_plus(), 1.0, false, 1},
  };
  for (const auto& c : good) {
    const auto v = tauberian_pipeline(c.f, RegularlyVarying::power(c.alpha),
                                      wm, wm, one, cfg);
    CHECK(v.pass);
    CHECK(v.g_identified);
    CHECK(v.degree == doctest::Approx(c.alpha));
    if (c.point) {
      REQUIRE(v.g.points().size() == 1);
      CHECK(v.g.points()[0].alpha[0] == c.order);
      CHECK(v.g.points()[0].coef == doctest::Approx(1.0));
    } else {
      REQUIRE(v.g.densities().size() == 1);
      CHECK(v.g.densities()[0].a[0] == doctest::Approx(double(c.order)));
      CHECK(v.g.densities()[0].coef == doctest::Approx(1.0));
    }
    REQUIRE(v.oracle_errors.size() == cfg.battery.size());
    for (double err : v.oracle_errors) CHECK(err <= 1e-4);
  }

  // wrong-index pairs fail at the ray-limit leg
  const auto bad1 = tauberian_pipeline(xi_plus(), RegularlyVarying::power(2.0),
                                       wm, wm, one, cfg);
  CHECK_FALSE(bad1.pass);
  CHECK_FALSE(bad1.g_identified);
  const auto bad2 = tauberian_pipeline(CatalogElement::delta(1),
                                       RegularlyVarying::power(0.0), wm, wm,
                                       one, cfg);
  CHECK_FALSE(bad2.pass);

  // hypothesis violations are reported before any numerics
  const auto ws = WeightSequence::gevrey(0.5, 64);
  CHECK_THROWS_AS(tauberian_pipeline(CatalogElement::delta(1),
                                     RegularlyVarying::power(-1.0), ws, ws,
                                     one, cfg),
                  PreconditionError);
}
