#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "tauberlab/errors.hpp"
#include "tauberlab/laplace.hpp"

using namespace tauberlab;

namespace {

const Cplx I(0.0, 1.0);

CatalogElement xi_plus() { return CatalogElement::density({1.0}, {0.0}); }
CatalogElement half_xi2_exp() {
  return CatalogElement::density({2.0}, {1.0}, 0.5);  // xi^2 e^{-xi} / 2
}

}  // namespace

TEST_CASE("closed forms at reference points") {
  CHECK(laplace(CatalogElement::delta(1), {Cplx(0.7, 2.0)}) == 1.0);
  // delta' picks up -iz
  const auto dp = CatalogElement::point({0.0}, {1}, 1.0);
  CHECK(laplace(dp, {I}).real() == doctest::Approx(1.0));
  CHECK(laplace(dp, {I}).imag() == doctest::Approx(0.0));

  CHECK(laplace(CatalogElement::heaviside(), {I}).real() ==
        doctest::Approx(1.0));
  CHECK(laplace(CatalogElement::heaviside(), {2.0 * I}).real() ==
        doctest::Approx(0.5));
  CHECK(laplace(xi_plus(), {I}).real() == doctest::Approx(1.0));

  // 2-D orthant constant at (i, 2i): (1/1) * (1/2)
  const auto c2 = CatalogElement::density({0.0, 0.0}, {0.0, 0.0});
  CHECK(laplace(c2, {I, 2.0 * I}).real() == doctest::Approx(0.5));

  // shifted point mass carries the phase e^{i z.loc}
  const auto sh = CatalogElement::point({2.0}, {0}, 3.0);
  const Cplx z(0.4, 1.1);
  const Cplx want = 3.0 * std::exp(I * z * 2.0);
  CHECK(std::abs(laplace(sh, {z}) - want) < 1e-14);

  // xi^2 e^{-xi}/2 -> 1/(1 - iz)^3
  const Cplx got = laplace(half_xi2_exp(), {z});
  CHECK(std::abs(got - 1.0 / std::pow(1.0 - I * z, 3.0)) < 1e-14);

  CHECK_THROWS_AS(laplace(CatalogElement::heaviside(), {Cplx(1.0, -0.5)}),
                  DomainError);
  CHECK_THROWS_AS(laplace(CatalogElement::heaviside(), {Cplx(1.0, 0.0)}),
                  DomainError);
  CHECK_THROWS_AS(laplace(CatalogElement::delta(2), {I}), DomainError);
}

TEST_CASE("quadrature agrees with the closed form") {
  const auto atoms = {CatalogElement::heaviside(), xi_plus(), half_xi2_exp(),
                      CatalogElement::density({-0.5, 0.0}, {1.0, 0.0})};
  for (const auto& f : atoms) {
    const std::size_t n = f.dim();
    for (double x : {-3.0, -0.7, 0.0, 1.2}) {
      for (double y : {0.5, 1.0, 2.0}) {
        CVec z(n);
        for (std::size_t j = 0; j < n; ++j)
          z[j] = Cplx(x + 0.3 * double(j), y + 0.5 * double(j));
        const Cplx exact = laplace(f, z);
        const Cplx quad = laplace_quadrature(f, z);
        CHECK(std::abs(quad - exact) <= 1e-8 * std::abs(exact));
      }
    }
  }

  CHECK_THROWS_AS(laplace_quadrature(CatalogElement::delta(1), {I}),
                  CapabilityError);
  CHECK_THROWS_AS(laplace_quadrature(CatalogElement::heaviside(),
                                     {Cplx(0.0, -1.0)}),
                  DomainError);
}

TEST_CASE("laplace function domain handling") {
  const auto F =
      LaplaceFunction::closed_form(CatalogElement::heaviside(),
                                   Cone::orthant(1));
  CHECK(F.dim() == 1);
  CHECK(std::abs(F({I}) - Cplx(1.0)) < 1e-14);
  CHECK_THROWS_AS(F({Cplx(1.0, -0.5)}), DomainError);
  CHECK_THROWS_AS(F({Cplx(1.0, 0.0)}), DomainError);

  CHECK(F.conditioning_warnings() == 0);
  F({Cplx(0.0, 1e-13)});
  CHECK(F.conditioning_warnings() == 1);

  const auto Q = LaplaceFunction::quadrature_backed(xi_plus(),
                                                    Cone::orthant(1));
  const Cplx z(0.8, 1.3);
  CHECK(std::abs(Q({z}) - laplace(xi_plus(), {z})) < 1e-8);

  const auto E = LaplaceFunction::external(
      [](const CVec&) { return Cplx(1.0); }, Cone::orthant(2), "unit");
  CHECK(E({I, I}) == Cplx(1.0));
  CHECK_THROWS_AS(E({I}), DomainError);
}

TEST_CASE("slices satisfy the Cauchy-Riemann equations") {
  const auto F = LaplaceFunction::closed_form(
      half_xi2_exp() + CatalogElement::point({1.0}, {2}, 0.3),
      Cone::orthant(1));
  auto cr_residual = [&](Cplx z0, double h) {
    const Cplx dx = (F({z0 + h}) - F({z0 - h})) / (2.0 * h);
    const Cplx dy = (F({z0 + I * h}) - F({z0 - I * h})) / (2.0 * h);
    return std::abs(dx + I * dy);  // d/dzbar up to a factor of 2
  };
  for (Cplx z0 : {Cplx(0.3, 1.1), Cplx(-1.0, 0.6)}) {
    const double r1 = cr_residual(z0, 1e-2);
    const double r2 = cr_residual(z0, 5e-3);
    CHECK(r1 < 1e-2);
    CHECK(r2 < r1 / 3.0);  // second order in h
  }
}

TEST_CASE("inversion recovers the density") {
  const auto F =
      LaplaceFunction::closed_form(half_xi2_exp(), Cone::orthant(1));
  const Vec grid = {-1.0, -0.5, -0.2, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0};

  const auto s1 = inverse_laplace(F, {0.5}, grid);
  const auto s2 = inverse_laplace(F, {2.0}, grid);
  CHECK(s1.step_check_error < 1e-8);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid[i];
    const double want = xi > 0.0 ? 0.5 * xi * xi * std::exp(-xi) : 0.0;
    CHECK(std::abs(s1.values[i] - want) < 1e-7);
    // slice independence
    CHECK(std::abs(s1.values[i] - s2.values[i]) < 1e-6);
  }
  // f(1) = e^{-1}/2
  CHECK(std::abs(s1.values[5] - 0.5 * std::exp(-1.0)) < 1e-7);
}

TEST_CASE("inversion round trip for a mixed density") {
  const auto f = half_xi2_exp() + CatalogElement::density({3.0}, {2.0});
  const auto F = LaplaceFunction::closed_form(f, Cone::orthant(1));
  const Vec grid = {0.3, 1.0, 2.5};
  const auto s = inverse_laplace(F, {1.0}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid[i];
    const double want =
        0.5 * xi * xi * std::exp(-xi) + xi * xi * xi * std::exp(-2.0 * xi);
    CHECK(std::abs(s.values[i] - want) < 1e-7);
  }
}

TEST_CASE("inversion rejects non-integrable slices") {
  const auto one = LaplaceFunction::external(
      [](const CVec&) { return Cplx(1.0); }, Cone::orthant(1), "unit");
  CHECK_THROWS_AS(inverse_laplace(one, {1.0}, {0.0, 1.0}),
                  IntegrabilityError);

  // 1/x decay is below the (1+|x|)^{n+2} threshold as well
  const auto H = LaplaceFunction::closed_form(CatalogElement::heaviside(),
                                              Cone::orthant(1));
  CHECK_THROWS_AS(inverse_laplace(H, {1.0}, {0.0, 1.0}), IntegrabilityError);

  const auto F2 = LaplaceFunction::external(
      [](const CVec&) { return Cplx(0.0); }, Cone::orthant(2), "zero2");
  CHECK_THROWS_AS(inverse_laplace(F2, {1.0, 1.0}, {0.0}), CapabilityError);
}

TEST_CASE("dilation scaling identity") {
  const auto atoms = {CatalogElement::point({0.5}, {1}, 1.0),
                      CatalogElement::heaviside(), half_xi2_exp()};
  const double lam = 3.0;
  for (const auto& f : atoms) {
    for (Cplx z : {Cplx(0.4, 1.2), Cplx(-2.0, 0.7)}) {
      const Cplx lhs = laplace(dilate(f, lam), {z});
      const Cplx rhs = std::pow(lam, -1.0) * laplace(f, {z / lam});
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("convolution closed forms") {
  const auto psi = TestFunction::gaussian({0.0}, 1.0);  // e^{-t^2}
  const double x = 0.7;

  CHECK(std::abs(convolve(CatalogElement::delta(1), psi, {x}) -
                 Cplx(psi.value({x}))) < 1e-14);
  // (delta' * psi)(x) = psi'(x)
  CHECK(std::abs(convolve(CatalogElement::point({0.0}, {1}, 1.0), psi, {x}) -
                 Cplx(psi.derivative({x}, {1}))) < 1e-12);
  // (H * psi)(x) = int_{-inf}^{x} psi = sqrt(pi)/2 (1 + erf(x))
  const double want = std::sqrt(M_PI) / 2.0 * (1.0 + std::erf(x));
  CHECK(std::abs(convolve(CatalogElement::heaviside(), psi, {x}) -
                 Cplx(want)) < 1e-9);
}

TEST_CASE("stft and the convolution identity") {
  const auto psi = TestFunction::gaussian({0.0}, 1.0);
  const auto f = CatalogElement::point({0.0}, {1}, 1.0) +
                 CatalogElement::heaviside();
  const Vec x = {0.7}, xi = {0.3};

  // against delta: V_psi delta (x, xi) = conj(psi(-x))
  CHECK(std::abs(stft(CatalogElement::delta(1), psi, x, xi) -
                 Cplx(psi.value(scaled(x, -1.0)))) < 1e-12);

  // |V_psi f(x, xi)| = |(f * g)(x)| with g = conj(psi(-.)) e^{2 pi i xi .}
  const auto g = windowed(psi.shared(), {0.0}, xi, true, true);
  const double lhs = std::abs(stft(f, psi, x, xi));
  const double rhs = std::abs(convolve(f, g, x));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("windowed adapter differentiates correctly") {
  const auto psi = TestFunction::gaussian({0.2}, 1.3);
  const auto w = windowed(psi.shared(), {0.5}, {0.4}, true, false);
  // value: psi(-t - 0.5) e^{2 pi i 0.4 t}
  const double t = 0.3;
  const Cplx direct = psi.value({-t - 0.5}) *
                      std::exp(Cplx(0.0, 2.0 * M_PI * 0.4 * t));
  CHECK(std::abs(w->value({t}) - direct) < 1e-14);
  // first derivative by central difference
  const double h = 1e-5;
  const Cplx fd = (w->value({t + h}) - w->value({t - h})) / (2.0 * h);
  CHECK(std::abs(w->derivative({t}, {1}) - fd) < 1e-7);
  // second derivative
  const Cplx fd2 =
      (w->value({t + h}) - 2.0 * w->value({t}) + w->value({t - h})) / (h * h);
  CHECK(std::abs(w->derivative({t}, {2}) - fd2) < 1e-4);
}

TEST_CASE("convolution boundedness check") {
  const auto psi = TestFunction::gaussian({0.0}, 1.0);
  const auto wn = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);

  std::vector<Vec> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back({0.1 * double(i)});

  // Heaviside convolved with a gaussian is bounded by sqrt(pi).
  const auto ok = convolution_bounded_check(CatalogElement::heaviside(), psi,
                                            wn, one, grid);
  CHECK(ok.pass);
  CHECK(ok.refinement_stable);
  CHECK(ok.worst_residual <= std::sqrt(M_PI) + 1e-9);

  // Super-exponential point masses escape every e^{N(|x|)} envelope; the
  // range-doubled grid exposes the growth.
  auto spikes = CatalogElement::delta(1);
  for (int k = 1; k <= 10; ++k)
    spikes += CatalogElement::point({double(k)}, {0},
                                    std::exp(double(k * k)));
  const auto bad =
      convolution_bounded_check(spikes, psi, wn, one, grid);
  CHECK_FALSE(bad.refinement_stable);
  CHECK_FALSE(bad.pass);
}
