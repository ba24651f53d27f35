#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tauberlab/cones.hpp"
#include "tauberlab/errors.hpp"
#include "tauberlab/rng.hpp"

using namespace tauberlab;

TEST_CASE("orthant basics") {
  const auto c = Cone::orthant(2);
  CHECK(c.boundary_distance({1.0, 2.0}) == 1.0);
  CHECK(c.boundary_distance({0.0, 0.0}) == 0.0);
  CHECK(c.boundary_distance({-1.0, 2.0}) == 0.0);
  CHECK(c.distance({-3.0, 4.0}) == 3.0);
  CHECK(c.distance({-3.0, -4.0}) == 5.0);
  CHECK(conjugate(c).kind() == Cone::Kind::kOrthant);

  const auto line = Cone::orthant(1);
  CHECK(line.contains({-0.5}, 1.0));
  CHECK_FALSE(line.contains({-1.5}, 1.0));
}

TEST_CASE("lorentz basics") {
  const auto c = Cone::lorentz(2);
  CHECK(c.boundary_distance({0.0, 1.0}) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.boundary_distance({0.0, 0.0}) == 0.0);
  CHECK(c.distance({0.0, -1.0}) == 1.0);  // behind the vertex
  CHECK(c.contains({0.0, 1.0}, 0.0));
  CHECK(c.contains({1.0, 1.0}, 0.0));
  CHECK_FALSE(c.contains({1.0, 0.5}, 0.0));
  CHECK(conjugate(c).kind() == Cone::Kind::kLorentz);
  CHECK_THROWS_AS(Cone::lorentz(1), DomainError);

  // Self-duality on samples: membership matches the closed form.
  const auto c3 = Cone::lorentz(3);
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Vec x{rng.normal(), rng.normal(), rng.normal()};
    const bool in = x[2] >= std::hypot(x[0], x[1]);
    CHECK(c3.contains(x, 0.0) == in);
  }
}

TEST_CASE("polyhedral conjugate matches the half-plane oracle") {
  const auto c = Cone::polyhedral({{1.0, 0.0}, {1.0, 1.0}});
  const auto d = conjugate(c);
  REQUIRE(d.generators().size() == 2);
  // Expected rays (0,1) and (1,-1)/sqrt 2, in either order.
  auto close = [](const Vec& a, double x, double y) {
    return std::hypot(a[0] - x, a[1] - y) < 1e-12;
  };
  const double r = 1.0 / std::sqrt(2.0);
  const bool match =
      (close(d.generators()[0], 0.0, 1.0) && close(d.generators()[1], r, -r)) ||
      (close(d.generators()[1], 0.0, 1.0) && close(d.generators()[0], r, -r));
  CHECK(match);

  // Membership against the defining half planes on random points.
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Vec y{rng.normal(), rng.normal()};
    const bool in = y[0] >= -1e-12 && y[0] + y[1] >= -1e-12;
    CHECK(d.contains(y, 1e-9) == in);
  }
}

TEST_CASE("polyhedral distance matches the orthant closed form") {
  const auto p = Cone::polyhedral({{1.0, 0.0}, {0.0, 1.0}});
  const auto o = Cone::orthant(2);
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    Vec x{3.0 * rng.normal(), 3.0 * rng.normal()};
    CHECK(p.distance(x) == doctest::Approx(o.distance(x)).epsilon(1e-10));
    CHECK(p.boundary_distance(x) ==
          doctest::Approx(o.boundary_distance(x)).epsilon(1e-10));
  }
}

TEST_CASE("degenerate cones rejected") {
  // Opposite rays: not pointed.
  CHECK_THROWS_AS(Cone::polyhedral({{1.0, 0.0}, {-1.0, 0.0}}), AcutenessError);
  // Single ray in the plane: pointed but not solid.
  CHECK_THROWS_AS(Cone::polyhedral({{1.0, 0.0}}), SolidityError);
  CHECK_THROWS_AS(Cone::polyhedral({}), DomainError);
  // Half line in dimension 1 is fine and self-conjugate.
  const auto h = Cone::polyhedral({{2.0}});
  CHECK(h.contains({3.0}, 0.0));
  CHECK_FALSE(h.contains({-3.0}, 0.0));
  CHECK(conjugate(h).contains({3.0}, 0.0));
}

TEST_CASE("biduality on samples") {
  for (const auto& c :
       {Cone::orthant(3), Cone::lorentz(3),
        Cone::polyhedral({{1.0, 0.0, 0.2}, {0.0, 1.0, 0.2}, {0.1, 0.1, 1.0}})}) {
    const auto cc = conjugate(conjugate(c));
    Rng rng(14);
    for (int i = 0; i < 400; ++i) {
      Vec x{rng.normal(), rng.normal(), rng.normal()};
      CHECK(c.contains(x, 1e-9) == cc.contains(x, 1e-9));
    }
  }
}

TEST_CASE("boundary distance homogeneous and midpoint concave") {
  for (const auto& c : {Cone::orthant(2), Cone::lorentz(3),
                        Cone::polyhedral({{1.0, 0.0}, {1.0, 2.0}})}) {
    Rng rng(15);
    for (int i = 0; i < 300; ++i) {
      const Vec y1 = c.sample_interior(rng);
      const Vec y2 = c.sample_interior(rng);
      const double lam = std::pow(10.0, rng.uniform(-2.0, 2.0));
      const double d1 = c.boundary_distance(y1);
      CHECK(c.boundary_distance(scaled(y1, lam)) ==
            doctest::Approx(lam * d1).epsilon(1e-12));
      const Vec mid = scaled(add(y1, y2), 0.5);
      CHECK(c.boundary_distance(mid) >=
            0.5 * (d1 + c.boundary_distance(y2)) - 1e-12);
    }
  }
}

TEST_CASE("dot estimate on seeded samples") {
  for (const auto& c : {Cone::orthant(2), Cone::orthant(3), Cone::lorentz(3),
                        Cone::polyhedral({{1.0, 0.0}, {1.0, 1.0}})}) {
    const auto rep = verify_dot_estimate(c, 2000);
    CHECK(rep.pass);
    CHECK(rep.worst_residual <= 1e-9);
  }
  // Tightness for the orthant at u = (1,0), y = (1,2): y.u = 1 = Delta |u|.
  const auto o = Cone::orthant(2);
  CHECK(o.boundary_distance({1.0, 2.0}) * 1.0 == 1.0);
}

TEST_CASE("samples land in the cone") {
  for (const auto& c : {Cone::orthant(3), Cone::lorentz(4),
                        Cone::polyhedral({{1.0, 0.1}, {0.1, 1.0}})}) {
    Rng rng(16);
    for (int i = 0; i < 500; ++i) {
      CHECK(c.contains(c.sample(rng), 1e-9));
      const Vec y = c.sample_interior(rng);
      CHECK(c.boundary_distance(y) > 0.0);
    }
  }
}

TEST_CASE("determinism of the sampler") {
  const auto c = Cone::lorentz(3);
  Rng a(Rng::kDefaultSeed), b(Rng::kDefaultSeed);
  for (int i = 0; i < 64; ++i) {
    const Vec u = c.sample(a);
    const Vec v = c.sample(b);
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(u[j] == v[j]);
  }
}
