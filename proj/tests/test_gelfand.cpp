#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tauberlab/errors.hpp"
#include "tauberlab/gelfand.hpp"

using namespace tauberlab;

namespace {

// central difference of order k (k <= 2) for cross-checking closed forms
double fd(const TestFunction& phi, double t, int k, double h) {
  auto v = [&](double x) { return phi.value({x}); };
  if (k == 0) return v(t);
  if (k == 1) return (v(t + h) - v(t - h)) / (2.0 * h);
  return (v(t + h) - 2.0 * v(t) + v(t - h)) / (h * h);
}

}  // namespace

TEST_CASE("catalog construction and dilation") {
  const auto d = CatalogElement::delta(1);
  CHECK(d.homogeneity_degree() == -1.0);
  const auto dp = CatalogElement::point({0.0}, {1}, 1.0);
  CHECK(dp.homogeneity_degree() == -2.0);
  CHECK(CatalogElement::heaviside().homogeneity_degree() == 0.0);
  CHECK(CatalogElement::density({1.0}, {0.0}).homogeneity_degree() == 1.0);
  CHECK_FALSE((d + CatalogElement::heaviside()).homogeneity_degree());
  CHECK_FALSE(CatalogElement::point({1.0}, {0}, 1.0).homogeneity_degree());

  CHECK(dilate(d, 10.0).points()[0].coef == doctest::Approx(0.1));
  CHECK(dilate(dp, 10.0).points()[0].coef == doctest::Approx(0.01));
  const auto h10 = dilate(CatalogElement::heaviside(), 7.0);
  CHECK(h10.densities()[0].coef == 1.0);
  CHECK(h10.densities()[0].c[0] == 0.0);

  CHECK_THROWS_AS(CatalogElement::point({-1.0}, {0}, 1.0), DomainError);
  CHECK_THROWS_AS(CatalogElement::density({-1.5}, {0.0}), DomainError);
  CHECK_THROWS_AS(dilate(d, 0.0), DomainError);
}

TEST_CASE("test function derivatives match finite differences") {
  const auto g = TestFunction::gaussian({0.3}, 1.7);
  const auto b = TestFunction::bump({0.0}, 2.0);
  for (double t : {-1.2, -0.4, 0.0, 0.9, 1.8}) {
    for (int k : {0, 1, 2}) {
      const double h = 1e-4;
      CHECK(g.derivative({t}, {k}) ==
            doctest::Approx(fd(g, t, k, h)).epsilon(1e-4));
      CHECK(b.derivative({t}, {k}) ==
            doctest::Approx(fd(b, t, k, h)).epsilon(1e-4));
    }
  }
  // bump support
  CHECK(b.value({2.0}) == 0.0);
  CHECK(b.value({2.5}) == 0.0);
  CHECK(b.derivative({2.0}, {3}) == 0.0);
  CHECK(b.value({0.0}) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("grid sampled functions") {
  std::vector<double> vals;
  const double h = 0.01, origin = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = origin + h * i;
    vals.push_back(t * t);
  }
  const auto g = TestFunction::grid_sampled(vals, h, origin);
  CHECK(g.value({0.25}) == doctest::Approx(0.0625).epsilon(1e-3));
  CHECK(g.derivative({0.25}, {1}) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(g.derivative({0.25}, {2}) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK_THROWS_AS(g.derivative({0.25}, {3}), CapabilityError);
}

TEST_CASE("pairing closed forms") {
  const auto gauss = TestFunction::gaussian({0.0}, 1.0);  // e^{-t^2}

  CHECK(pair(CatalogElement::delta(1), gauss).real() == 1.0);
  CHECK(pair(CatalogElement::point({0.0}, {1}, 1.0), gauss).real() ==
        doctest::Approx(0.0));

  // Heaviside density against int_0^inf e^{-t^2} = sqrt(pi)/2.
  CHECK(pair(CatalogElement::heaviside(), gauss).real() ==
        doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-9));

  // e^{-xi} density: int_0^inf e^{-xi - xi^2} = e^{1/4} sqrt(pi)/2 erfc(1/2).
  const double closed =
      std::exp(0.25) * std::sqrt(M_PI) / 2.0 * std::erfc(0.5);
  CHECK(pair(CatalogElement::density({0.0}, {1.0}), gauss).real() ==
        doctest::Approx(closed).epsilon(1e-9));

  // 2-D product structure.
  const auto g2 = TestFunction::gaussian({0.0, 0.0}, 1.0);
  CHECK(pair(CatalogElement::density({0.0, 0.0}, {1.0, 1.0}), g2).real() ==
        doctest::Approx(closed * closed).epsilon(1e-8));

  // additivity in f
  const auto f1 = CatalogElement::delta(1);
  const auto f2 = CatalogElement::heaviside();
  CHECK(pair(f1 + f2, gauss).real() ==
        doctest::Approx(pair(f1, gauss).real() + pair(f2, gauss).real())
            .epsilon(1e-12));
}

TEST_CASE("pairing dilation identity") {
  const auto phi = TestFunction::gaussian({0.5}, 1.0);
  const auto atoms = {CatalogElement::point({0.5}, {1}, 1.0),
                      CatalogElement::heaviside(),
                      CatalogElement::density({1.0}, {1.0})};
  for (const auto& f : atoms) {
    for (double lam : {0.5, 3.0, 10.0}) {
      const double lhs = pair(dilate(f, lam), phi).real();
      const double rhs =
          std::pow(lam, -1.0) * pair(f, phi.scaled_arg(lam).fn()).real();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("gs norm") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  const auto gauss = TestFunction::gaussian({0.0}, 1.0);

  const auto r0 = gs_norm(gauss.fn(), wm, wm, one, one, 0, 0, 10.0);
  CHECK(r0.value == 1.0);  // sup |phi| = phi(0) = 1, all weights 1

  const auto r2 = gs_norm(gauss.fn(), wm, wm, one, one, 2, 2, 10.0);
  CHECK(r2.value >= 1.0);
  CHECK(std::isfinite(r2.value));
  // stable under box enlargement (sup attained well inside)
  const auto r2b = gs_norm(gauss.fn(), wm, wm, one, one, 2, 2, 14.0, 337);
  CHECK(r2.value == doctest::Approx(r2b.value).epsilon(1e-2));

  // homogeneity in the function argument, via a scaled sample grid
  std::vector<double> vals, vals3;
  for (int i = 0; i <= 400; ++i) {
    const double t = -2.0 + 0.01 * i;
    vals.push_back(std::exp(-t * t));
    vals3.push_back(3.0 * std::exp(-t * t));
  }
  const auto g1 = TestFunction::grid_sampled(vals, 0.01, -2.0);
  const auto g3 = TestFunction::grid_sampled(vals3, 0.01, -2.0);
  const auto n1 = gs_norm(g1.fn(), wm, wm, one, one, 1, 1, 1.5);
  const auto n3 = gs_norm(g3.fn(), wm, wm, one, one, 1, 1, 1.5);
  CHECK(n3.value == doctest::Approx(3.0 * n1.value).epsilon(1e-12));

  // zero function
  const auto z = TestFunction::grid_sampled(std::vector<double>(9, 0.0), 0.1,
                                            -0.4);
  CHECK(gs_norm(z.fn(), wm, wm, one, one, 1, 1, 1.0).value == 0.0);
}

TEST_CASE("mollifier on the half line") {
  const auto gamma = Cone::orthant(1);
  const auto m = build_mollifier(gamma, 1.0, {-4.0, 6.0, 81});

  CHECK(m.value({0.0}) == 1.0);    // plateau, exactly
  CHECK(m.value({3.0}) == 1.0);
  CHECK(m.value({-0.5}) == 1.0);   // still within Gamma^eps
  CHECK(m.value({-2.5}) == 0.0);   // outside Gamma^{2 eps}
  const double mid = m.value({-1.5});
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  // monotone through the transition
  CHECK(m.value({-1.2}) > m.value({-1.5}));
  CHECK(m.value({-1.5}) > m.value({-1.8}));

  CHECK_THROWS_AS(build_mollifier(gamma, 1.0, {-4.0, 6.0, 21}),
                  ResolutionError);
  CHECK_THROWS_AS(build_mollifier(gamma, -1.0, {-4.0, 6.0, 81}), DomainError);
}

TEST_CASE("mollifier in the plane") {
  const auto gamma = Cone::orthant(2);
  const auto m = build_mollifier(gamma, 1.0, {-3.0, 4.0, 57});

  CHECK(m.value({1.0, 2.0}) == 1.0);
  CHECK(m.value({-0.5, 3.0}) == 1.0);     // distance 1/2 < eps
  CHECK(m.value({-3.0, -3.0}) == 0.0);
  const double v = m.value({-1.2, -1.2});  // distance ~1.7, transition band
  CHECK(v > 0.0);
  CHECK(v < 1.0);
}

TEST_CASE("mollifier derivative bound report") {
  const auto gamma = Cone::orthant(1);
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);

  const auto m1 = build_mollifier(gamma, 1.0, {-4.0, 6.0, 81});
  const auto rep1 = mollifier_check(m1, wm, one, 3);
  CHECK(rep1.pass);
  CHECK(rep1.params.at("H") >= 1.0);  // order 0 alone gives sup eta = 1
  CHECK(rep1.params.at("order_0") == 1.0);
  CHECK(std::isfinite(rep1.params.at("order_3")));

  // sharper transition: eps halved raises the fitted constant
  const auto m2 = build_mollifier(gamma, 0.5, {-4.0, 6.0, 161});
  const auto rep2 = mollifier_check(m2, wm, one, 3);
  CHECK(rep2.params.at("H") > rep1.params.at("H"));

  CHECK_THROWS_AS(mollifier_check(m1, wm, one, 99), CapabilityError);
}
