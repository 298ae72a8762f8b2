#include <cmath>

#include "doctest.h"
#include "spaceform/catalog.hpp"
#include "spaceform/parallel.hpp"

using namespace spaceform;

namespace {
Vec3 random_unit3(Rng& rng) {
  while (true) {
    Vec3 x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (n > 0.1) {
      for (auto& v : x) v /= n;
      return x;
    }
  }
}
}  // namespace

TEST_CASE("veronese fixed points and evenness") {
  const Vec p = veronese({1, 0, 0});
  CHECK(p[0] == 0.0);
  CHECK(p[3] == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(p[4] == doctest::Approx(0.5).epsilon(1e-15));
  const Vec q = veronese({0, 0, 1});
  CHECK(q[4] == doctest::Approx(-1.0).epsilon(1e-15));

  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Vec3 x = random_unit3(rng);
    const Vec a = veronese(x);
    CHECK(max_abs(a - veronese({-x[0], -x[1], -x[2]})) == 0.0);
    CHECK(inner(a, a, Signature::sphere5()) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(veronese({1, 1, 0}), std::invalid_argument);
}

TEST_CASE("clifford polar torus values and quadric") {
  const Vec p0 = clifford_polar(0, 0);
  CHECK(p0[0] == doctest::Approx(1.0));
  for (int i = 1; i < 5; ++i) CHECK(p0[i] == doctest::Approx(0.0));

  const Vec p1 = clifford_polar(M_PI / 2, 0);
  CHECK(p1[0] == doctest::Approx(-1.0));
  CHECK(p1[1] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(p1[4] == doctest::Approx(std::sqrt(2.0)));
  CHECK(inner(p1, p1, Signature::lorentz5()) == doctest::Approx(1.0).epsilon(1e-14));

  // hyperplane containment x1 + sqrt2 x5 = 1
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const Vec g = clifford_polar(rng.uniform(0, 7), rng.uniform(0, 7));
    CHECK(g[0] + std::sqrt(2.0) * g[4] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("clifford torus and its normal field") {
  Rng rng(8);
  for (int k = 0; k < 50; ++k) {
    const double x = rng.uniform(0, 7), y = rng.uniform(0, 7);
    const Vec h = clifford_torus(x, y);
    const Vec xi = clifford_gauss_map(x, y);
    CHECK(inner(h, h, Signature::lorentz5()) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(inner(xi, xi, Signature::lorentz5()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inner(h, xi, Signature::lorentz5()) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("rotational polar chart") {
  const double r0 = rot_r0();
  CHECK(r0 == doctest::Approx(std::acos(std::sqrt(2.0 / 3.0))).epsilon(1e-15));

  // limit r -> 0 for c = 1
  const Vec p = rot_polar(1, 1e-7, 1.3);
  CHECK(p[4] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::fabs(p[0]) < 1e-6);

  // c = -1 midpoint
  const Vec q = rot_polar(-1, M_PI / 2, 0.4);
  CHECK(q[0] == doctest::Approx(-3.0 * std::sin(0.4)).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(-3.0 * std::cos(0.4)).epsilon(1e-14));
  CHECK(q[4] == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(inner(q, q, Signature::lorentz5()) == doctest::Approx(1.0).epsilon(1e-13));

  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const int c = (k % 2) ? 1 : -1;
    const double lo = (c == 1) ? 1e-4 : r0 + 1e-4;
    const double hi = (c == 1) ? r0 - 1e-4 : M_PI - r0 - 1e-4;
    const Vec g = rot_polar(c, rng.uniform(lo, hi), rng.uniform(0, 7));
    CHECK(std::fabs(inner(g, g, Signature(5, c, 1)) - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(rot_polar(1, r0, 0.0), std::domain_error);
  CHECK_THROWS_AS(rot_polar(1, -0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(rot_polar(-1, r0 - 0.01, 0.0), std::domain_error);
}

TEST_CASE("rotational closed-form reduced variables") {
  // t0^2 = 2 and t1 = -1 at r = pi/4, c = -1
  CHECK(rot_t0(-1, M_PI / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(rot_t1(-1, M_PI / 4) == doctest::Approx(-1.0).epsilon(1e-14));
  // h = 1/sqrt2 at r = pi/2, c = -1
  CHECK(rot_t0(-1, M_PI / 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  // c = 1: h > 1 and h -> 1 as r -> 0
  CHECK(rot_t0(1, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rot_t0(1, 0.4) > 1.0);
}

TEST_CASE("sphere chart values and crease") {
  const Vec a = sphere_chart(0, 0, 1);
  CHECK(a[4] == doctest::Approx(1.0));
  const Vec b = sphere_chart(1, 0, 0);
  CHECK(b[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(b[3] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(b[4] == 0.0);
  CHECK(inner(b, b, Signature::sphere5()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(sphere_chart(1, 1, 1), std::invalid_argument);
}

TEST_CASE("rotational hypersurface family") {
  Rng rng(10);
  const double r0 = rot_r0();
  // alpha = 0 slice, c = 1
  for (int k = 0; k < 20; ++k) {
    const double r = rng.uniform(0.05, r0 - 0.05), th = rng.uniform(0, 7);
    const Vec f = rot_hyper(1, r, th, 0.0);
    CHECK(f[0] == doctest::Approx(std::sin(2 * th) * std::cos(2 * r)).epsilon(1e-14));
    CHECK(f[2] == doctest::Approx(std::sin(th) * std::sin(2 * r)).epsilon(1e-14));
    CHECK(f[4] == 0.0);
  }
  // fiber collapse at the minimal point: r -> 0 gives (sin(2th-a), cos(2th-a), 0,0,0)
  const double th = 0.9, al = 0.4;
  const Vec f0 = rot_hyper(1, 1e-7, th, al);
  CHECK(f0[0] == doctest::Approx(std::sin(2 * th - al)).epsilon(1e-6));
  CHECK(f0[1] == doctest::Approx(std::cos(2 * th - al)).epsilon(1e-6));
  CHECK(std::fabs(f0[2]) < 1e-6);
  // quadric for c = -1
  for (int k = 0; k < 200; ++k) {
    const Vec f = rot_hyper(-1, rng.uniform(r0 + 1e-3, M_PI - r0 - 1e-3), rng.uniform(0, 7),
                            rng.uniform(-1.5, 1.5));
    CHECK(std::fabs(inner(f, f, Signature::lorentz5()) + 1.0) < 1e-10);
  }
}

TEST_CASE("clifford hypersurface") {
  const Vec f = clifford_hyper(0, 0, 0);
  CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f[4] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    const Vec g = clifford_hyper(rng.uniform(0, 7), rng.uniform(0, 7), rng.uniform(-3, 3));
    CHECK(std::fabs(inner(g, g, Signature::lorentz5()) + 1.0) < 1e-12);
  }
}

TEST_CASE("h5 catalog pair") {
  const Vec p = h5_polar({1, 0, 0});
  CHECK(p[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p[4] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(p[5] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

  Rng rng(13);
  const Signature sig = Signature::lorentz6();
  for (int k = 0; k < 100; ++k) {
    const Vec3 x = random_unit3(rng);
    const Vec g = h5_polar(x);
    CHECK(std::fabs(inner(g, g, sig) - 1.0) < 1e-14);

    Vec3 xx, v, w;
    sphere_point_basis(rng.uniform(0.2, M_PI - 0.2), rng.uniform(0, 7), xx, v, w);
    Vec xi1(5), xi2(5);
    veronese_normal_frame(xx, v, w, xi1, xi2);
    const double psi = rng.uniform(0, 7);
    const Vec xi = std::cos(psi) * xi1 + std::sin(psi) * xi2;
    const Vec f = h5_hyper(rng.uniform(-1, 1), veronese(xx), xi);
    CHECK(std::fabs(inner(f, f, sig) + 1.0) < 1e-12);
  }

  // s = 0 section: (g1, 2)/sqrt3 has norm -1
  Vec3 xc, vc, wc;
  sphere_point_basis(1.1, 0.3, xc, vc, wc);
  Vec eta1(5), eta2(5);
  veronese_normal_frame(xc, vc, wc, eta1, eta2);
  const Vec f0 = h5_hyper(0.0, veronese(xc), eta1);
  CHECK(inner(f0, f0, sig) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("veronese normal frame is orthonormal and normal") {
  Rng rng(14);
  const Signature sig = Signature::sphere5();
  for (int k = 0; k < 100; ++k) {
    Vec3 x, v, w;
    sphere_point_basis(rng.uniform(0.2, M_PI - 0.2), rng.uniform(0, 7), x, v, w);
    Vec xi1(5), xi2(5);
    veronese_normal_frame(x, v, w, xi1, xi2);
    CHECK(inner(xi1, xi1, sig) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(inner(xi2, xi2, sig) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(inner(xi1, xi2, sig) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(inner(xi1, veronese(x), sig) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(inner(xi2, veronese(x), sig) == doctest::Approx(0.0).epsilon(1e-13));
    // normal to the tangent plane: differentiate the embedding through x
    const double h = 1e-6;
    const auto unit = [](Vec3 y) {
      const double n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
      return Vec3{y[0] / n, y[1] / n, y[2] / n};
    };
    for (const Vec3& dir : {v, w}) {
      const Vec3 xp = unit({x[0] + h * dir[0], x[1] + h * dir[1], x[2] + h * dir[2]});
      const Vec3 xm = unit({x[0] - h * dir[0], x[1] - h * dir[1], x[2] - h * dir[2]});
      const Vec tangent = (1.0 / (2 * h)) * (veronese(xp) - veronese(xm));
      CHECK(std::fabs(inner(xi1, tangent, sig)) < 1e-8);
      CHECK(std::fabs(inner(xi2, tangent, sig)) < 1e-8);
    }
  }
}

TEST_CASE("beta curve and its polynomial") {
  const auto b0 = beta_curve(0);
  CHECK(b0[0] == 0.0);
  CHECK(b0[1] == 0.0);
  const auto b1 = beta_curve(M_PI / 2);
  CHECK(b1[0] == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(std::fabs(b1[1]) < 1e-15);
  CHECK(beta_poly_residual(-3.0, 0.0) == 0.0);

  Rng rng(15);
  for (int k = 0; k < 200; ++k) {
    const auto b = beta_curve(rng.uniform(0, 2 * M_PI));
    CHECK(std::fabs(beta_poly_residual(b[0], b[1])) < 1e-10);
  }
}

TEST_CASE("rotational hypersurface polynomial residual") {
  CHECK(fhat_poly_residual({1, 0, 0, 0, 0}, 1) == 0.0);
  CHECK(fhat_poly_residual({0, 0, 0, 0, 1}, 1) == 0.0);
  Rng rng(16);
  const double r0 = rot_r0();
  for (int k = 0; k < 1000; ++k) {
    const int c = (k % 2) ? 1 : -1;
    const double lo = (c == 1) ? 1e-3 : r0 + 1e-3;
    const double hi = (c == 1) ? r0 - 1e-3 : M_PI - r0 - 1e-3;
    const double amax = (c == 1) ? 2 * M_PI : 1.5;
    const Vec f = rot_hyper(c, rng.uniform(lo, hi), rng.uniform(0, 7), rng.uniform(-amax, amax));
    CHECK(std::fabs(fhat_poly_residual_relative(f, c)) < 1e-8);
  }
}

TEST_CASE("immersion names round-trip") {
  for (Immersion id : {Immersion::Veronese, Immersion::CliffordPolar, Immersion::RotPolar,
                       Immersion::SphereChart, Immersion::RotHyper, Immersion::CliffordHyper,
                       Immersion::Cartan, Immersion::H5Polar, Immersion::H5Hyper})
    CHECK(immersion_from_name(immersion_name(id)) == id);
  CHECK_THROWS_AS(immersion_from_name("nope"), std::invalid_argument);
}
