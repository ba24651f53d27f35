#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "tauberlab/bounds.hpp"
#include "tauberlab/errors.hpp"

using namespace tauberlab;

namespace {

const Cplx I(0.0, 1.0);

LaplaceFunction delta_transform() {
  return LaplaceFunction::closed_form(CatalogElement::delta(1),
                                      Cone::orthant(1));
}
LaplaceFunction heaviside_transform() {
  return LaplaceFunction::closed_form(CatalogElement::heaviside(),
                                      Cone::orthant(1));
}
LaplaceFunction cube_transform() {  // 1/(1-iz)^3
  return LaplaceFunction::closed_form(
      CatalogElement::density({2.0}, {1.0}, 0.5), Cone::orthant(1));
}

}  // namespace

TEST_CASE("theorem 3.1 (i) on catalog transforms") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  const auto spec = default_tube_grid(Cone::orthant(1));

  const auto r1 = verify_bound_3_1_i(delta_transform(), wm, wm, one, 0.1,
                                     spec);
  CHECK(r1.pass);
  CHECK(r1.log_constant <= 0.0);       // |F| = 1 and every exponent >= 0
  CHECK(r1.log_constant >= -0.2);      // approached up to the eps slack

  for (const auto& F : {heaviside_transform(), cube_transform()}) {
    for (double ell : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto r = verify_bound_3_1_i(F, wm, wm,
                                        RSequence::beurling(ell), 0.1, spec);
      CHECK(r.pass);
      CHECK(std::isfinite(r.log_constant));
    }
  }

  CHECK_THROWS_AS(
      verify_bound_3_1_i(delta_transform(), wm, wm, one, -1.0, spec),
      DomainError);
}

TEST_CASE("theorem 3.1 (i) flags the synthetic violator") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto F = LaplaceFunction::external(
      [](const CVec& z) { return Cplx(std::exp(1.0 / z[0].imag())); },
      Cone::orthant(1), "exp(1/Im z)");
  const auto spec = default_tube_grid(Cone::orthant(1));
  bool all_pass = true;
  for (double ell : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const auto r =
        verify_bound_3_1_i(F, wm, wm, RSequence::beurling(ell), 0.1, spec);
    all_pass = all_pass && r.pass;
  }
  CHECK_FALSE(all_pass);
}

TEST_CASE("theorem 3.1 (ii) slice bound") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  SliceGridSpec spec;

  const auto r1 = verify_bound_3_1_ii(delta_transform(), wm, wm, one, {1.0},
                                      1.0, spec);
  CHECK(r1.pass);
  CHECK(r1.log_constant == doctest::Approx(0.0).epsilon(1e-9));

  const auto r2 = verify_bound_3_1_ii(heaviside_transform(), wm, wm, one,
                                      {1.0}, 1.0, spec);
  CHECK(r2.pass);
  const auto r3 = verify_bound_3_1_ii(
      LaplaceFunction::closed_form(CatalogElement::density({1.0}, {0.0}),
                                   Cone::orthant(1)),
      wm, wm, one, {1.0}, 1.0, spec);
  CHECK(r3.pass);

  CHECK_THROWS_AS(verify_bound_3_1_ii(delta_transform(), wm, wm, one, {-1.0},
                                      1.0, spec),
                  DomainError);
}

TEST_CASE("strengthened bound and consistency with 3.1 (i)") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  const auto spec = default_tube_grid(Cone::orthant(1));

  const auto r1 = verify_bound_strong(delta_transform(), wm, wm, one, spec);
  CHECK(r1.pass);
  CHECK(r1.log_constant == doctest::Approx(0.0).epsilon(1e-9));

  const auto r2 = verify_bound_strong(cube_transform(), wm, wm, one, spec);
  CHECK(r2.pass);

  // removing the eps |Im z| slack cannot shrink the constant
  const auto h_strong = verify_bound_strong(heaviside_transform(), wm, wm,
                                            one, spec);
  const auto h_eps = verify_bound_3_1_i(heaviside_transform(), wm, wm, one,
                                        0.5, spec);
  CHECK(h_strong.log_constant >= h_eps.log_constant - 1e-12);
}

TEST_CASE("o_ell norms") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  std::vector<CVec> grid;
  for (int k = 0; k <= 40; ++k) {
    const double y = std::pow(10.0, -2.0 + 4.0 * double(k) / 40.0);
    grid.push_back({Cplx(0.0, y)});
    grid.push_back({Cplx(0.7 * y, y)});
  }

  const auto zero = LaplaceFunction::external(
      [](const CVec&) { return Cplx(0.0); }, Cone::orthant(1), "zero");
  CHECK(o_ell_norm(zero, wm, wm, 1.0, grid) == 0.0);

  const auto unit = LaplaceFunction::external(
      [](const CVec&) { return Cplx(1.0); }, Cone::orthant(1), "unit");
  CHECK(o_ell_norm(unit, wm, wm, 1.0, grid) == doctest::Approx(1.0));

  // monotone nonincreasing in ell; above 1 both exponents cannot vanish
  // at the same grid point, so the sup drops below 1
  double prev = INFINITY;
  for (double ell : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double v = o_ell_norm(unit, wm, wm, ell, grid);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK(o_ell_norm(unit, wm, wm, 4.0, grid) < 1.0);

  CHECK(std::isfinite(o_ell_norm(heaviside_transform(), wm, wm, 1.0, grid)));
  CHECK_THROWS_AS(o_ell_norm(unit, wm, wm, 0.0, grid), DomainError);
}

TEST_CASE("lemma 5.3 sup estimate") {
  const auto wn = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  Vec t_grid;
  for (int k = 0; k <= 120; ++k)
    t_grid.push_back(std::pow(10.0, -3.0 + 6.0 * double(k) / 120.0));

  const auto r1 = verify_sup_diff(wn, one, Cone::orthant(1), {1.0}, t_grid);
  CHECK(r1.pass);
  CHECK(r1.params.at("slack") > 0.0);

  const auto r2 =
      verify_sup_diff(wn, one, Cone::orthant(2), {1.0, 2.0}, t_grid);
  CHECK(r2.pass);
  const auto r3 =
      verify_sup_diff(wn, one, Cone::lorentz(2), {0.3, 2.0}, t_grid);
  CHECK(r3.pass);

  // small y shrinks Delta and inflates the right side faster
  const auto r4 = verify_sup_diff(wn, one, Cone::orthant(1), {0.2}, t_grid);
  CHECK(r4.pass);

  CHECK_THROWS_AS(verify_sup_diff(wn, one, Cone::orthant(1), {-1.0}, t_grid),
                  DomainError);
}

TEST_CASE("lemma 3.4 mollifier norm bound") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  const auto gamma = Cone::orthant(1);
  const auto eta1 = build_mollifier(gamma, 1.0, {-4.0, 6.0, 81});

  const std::vector<CVec> zs = {{Cplx(0.0, 1.0)},
                                {Cplx(0.5, 1.0)},
                                {Cplx(0.0, 3.0)},
                                {Cplx(-1.0, 0.4)}};
  const auto r1 = verify_lemma_3_4(eta1, wm, wm, one, one, zs, 2, 2);
  CHECK(r1.pass);
  CHECK(std::isfinite(r1.params.at("H")));
  CHECK(r1.params.at("H") > 0.0);

  // sharper mollifier raises the fitted constant
  const auto eta2 = build_mollifier(gamma, 0.5, {-4.0, 6.0, 161});
  const auto r2 = verify_lemma_3_4(eta2, wm, wm, one, one, zs, 2, 2);
  CHECK(r2.params.at("H") > r1.params.at("H"));

  CHECK_THROWS_AS(
      verify_lemma_3_4(eta1, wm, wm, one, one, {{Cplx(1.0, 0.0)}}, 2, 2),
      DomainError);
}

TEST_CASE("corollary 3.2 composite convergence check") {
  const auto wm = WeightSequence::gevrey(2.0, 64);
  const auto one = RSequence::beurling(1.0);
  SliceGridSpec spec;
  spec.x_count = 20;
  spec.sigma_count = 12;

  // f_k = k e^{-k xi} -> delta
  double logL_max = -INFINITY;
  std::vector<double> ks = {1.0, 4.0, 16.0, 64.0};
  for (double k : ks) {
    const auto Fk = LaplaceFunction::closed_form(
        CatalogElement::density({0.0}, {k}, k), Cone::orthant(1));
    const auto r = verify_bound_3_1_ii(Fk, wm, wm, one, {1.0}, 1.0, spec);
    CHECK(r.pass);
    logL_max = std::max(logL_max, r.log_constant);
  }
  CHECK(logL_max <= 1e-9);  // |k/(k - iz)| <= 1 on the slice: uniform L

  // pointwise transform convergence on an iy grid
  for (double y : {0.5, 1.0, 5.0}) {
    const auto F64 = CatalogElement::density({0.0}, {64.0}, 64.0);
    CHECK(std::abs(laplace(F64, {y * I}) - 1.0) < 0.1);
  }

  // pairing convergence against the test battery
  const auto battery = {TestFunction::gaussian({0.0}, 1.0),
                        TestFunction::gaussian({0.3}, 1.7),
                        TestFunction::bump({0.0}, 2.0)};
  for (const auto& phi : battery) {
    std::vector<double> errs;
    for (double k : ks) {
      const auto fk = CatalogElement::density({0.0}, {k}, k);
      errs.push_back(std::abs(pair(fk, phi).real() - phi.value({0.0})));
    }
    CHECK(errs.back() < errs.front());
    CHECK(errs.back() < 0.05);
  }
}
