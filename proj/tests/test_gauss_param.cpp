#include <cmath>

#include "doctest.h"
#include "spaceform/gauss_param.hpp"
#include "spaceform/parallel.hpp"

using namespace spaceform;

TEST_CASE("lambda grid layouts") {
  const auto circle = lambda_grid(1, 1, 4);
  REQUIRE(circle.size() == 4);
  CHECK(circle[0].Ct == doctest::Approx(1.0));
  CHECK(circle[1].St == doctest::Approx(1.0));
  CHECK(circle[2].Ct == doctest::Approx(-1.0));
  CHECK(circle[3].St == doctest::Approx(-1.0));

  const auto hyper = lambda_grid(-1, 1, 9, 3.0);
  REQUIRE(hyper.size() == 18);
  bool has_plus = false, has_minus = false;
  for (const auto& d : hyper) {
    CHECK(d.constraint_residual() < 1e-12);
    if (std::fabs(d.Ct) < 1e-12 && std::fabs(d.St - 1.0) < 1e-12) has_plus = true;
    if (std::fabs(d.Ct) < 1e-12 && std::fabs(d.St + 1.0) < 1e-12) has_minus = true;
  }
  CHECK(has_plus);   // t = 0 on the upper sheet: (0, +1)
  CHECK(has_minus);  // and on the lower sheet: (0, -1)

  CHECK_THROWS_AS(lambda_grid(-1, -1, 8), std::invalid_argument);
  CHECK_THROWS_AS(lambda_grid(1, 1, 1), std::invalid_argument);
}

TEST_CASE("fiber samples are normal and on the quadric") {
  const ChartMap chart = make_chart(Immersion::RotPolar, 1);
  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const double q[2] = {rng.uniform(0.15, rot_r0() - 0.05), rng.uniform(0, 2 * M_PI)};
    const SurfaceJet j = surface_jet(chart, q);
    const ShapeData sd = canonical_frames(j, 1);
    for (const auto& dir : lambda_grid(1, 1, 8)) {
      const FiberSample s = f_hat(sd, {q[0], q[1]}, dir);
      CHECK(std::fabs(inner(s.position, j.p, chart.sig)) < 1e-9);
      CHECK(std::fabs(inner(s.position, j.du, chart.sig)) < 1e-8);
      CHECK(inner(s.position, s.position, chart.sig) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // c = -1: fiber points are unit time-like
  const ChartMap cl = make_chart(Immersion::CliffordPolar);
  const double q[2] = {0.9, 2.2};
  const ShapeData sd = canonical_frames(surface_jet(cl, q), -1);
  for (const auto& dir : lambda_grid(-1, 1, 5, 2.0)) {
    const FiberSample s = f_hat(sd, {q[0], q[1]}, dir);
    CHECK(inner(s.position, s.position, cl.sig) == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("fiber shape determinants") {
  // det A_w = -c eps a^2 on closed-form shape data
  ShapeData sd;
  sd.a = 2.0 / 3.0;
  sd.h = 1.7;
  sd.eps = 1;
  sd.c = 1;
  sd.A1(0, 1) = sd.A1(1, 0) = sd.a;
  sd.A2(0, 0) = sd.a * sd.h;
  sd.A2(1, 1) = -sd.a / sd.h;
  for (const auto& dir : lambda_grid(1, 1, 16))
    CHECK(det_Aw(sd, dir) == doctest::Approx(-4.0 / 9.0).epsilon(1e-14));

  ShapeData cl;
  cl.a = 1.0 / std::sqrt(2.0);
  cl.h = 1.0;
  cl.eps = 1;
  cl.c = -1;
  cl.A1(0, 1) = cl.A1(1, 0) = cl.a;
  cl.A2(0, 0) = cl.a;
  cl.A2(1, 1) = cl.a;
  for (const auto& dir : lambda_grid(-1, 1, 9, 3.0))
    CHECK(det_Aw(cl, dir) == doctest::Approx(0.5).epsilon(1e-12));

  ShapeData ver = sd;
  ver.a = 1.0 / std::sqrt(3.0);
  ver.h = 1.0;
  ver.A1(0, 1) = ver.A1(1, 0) = ver.a;
  ver.A2(0, 0) = ver.a;
  ver.A2(1, 1) = -ver.a;
  for (const auto& dir : lambda_grid(1, 1, 16))
    CHECK(det_Aw(ver, dir) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("regularity predicate") {
  ShapeData sd;
  sd.A1(0, 1) = sd.A1(1, 0) = 1.0 / std::sqrt(3.0);
  sd.A2(0, 0) = 1.0 / std::sqrt(3.0);
  sd.A2(1, 1) = -1.0 / std::sqrt(3.0);
  sd.c = 1;
  sd.eps = 1;
  for (const auto& dir : lambda_grid(1, 1, 8)) CHECK(regularity(sd, dir));

  ShapeData degenerate = sd;
  degenerate.A2 = Mat2{};
  CHECK_FALSE(regularity(degenerate, NormalDirection{0.0, 1.0, 1, 1}));
}

TEST_CASE("det scans over the catalog") {
  // rotational, both signs
  for (int c : {1, -1}) {
    const ChartMap chart = make_chart(Immersion::RotPolar, c);
    GridSpec g;
    g.n0 = g.n1 = 12;
    g.lo0 = (c == 1) ? 0.1 : rot_r0() + 0.05;
    g.hi0 = (c == 1) ? rot_r0() - 0.03 : M_PI - rot_r0() - 0.05;
    g.lo1 = 0;
    g.hi1 = 2 * M_PI;
    const auto rep = det_scan(chart, g, -c * 4.0 / 9.0, {32, 3.0, kJetStep, false});
    CHECK(rep.max_abs_dev < 1e-5);
    CHECK(rep.measured_a == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
  }
  // clifford
  {
    const ChartMap chart = make_chart(Immersion::CliffordPolar);
    const auto rep = det_scan(chart, {12, 12, 0, 2 * M_PI, 0, 2 * M_PI}, 0.5,
                              {32, 3.0, kJetStep, false});
    CHECK(rep.max_abs_dev < 1e-6);
  }
  // veronese via the minimal normal form
  {
    const ChartMap chart = make_chart(Immersion::Veronese);
    const auto rep = det_scan(chart, {12, 12, 0.4, M_PI - 0.4, 0, 2 * M_PI}, -1.0 / 3.0,
                              {32, 3.0, kJetStep, true});
    CHECK(rep.max_abs_dev < 1e-5);
    // the canonical route must refuse (propagating the minimal-point error)
    CHECK_THROWS_AS(det_scan(chart, {3, 3, 0.5, 1.0, 0.0, 1.0}, -1.0 / 3.0,
                             {8, 3.0, kJetStep, false}),
                    MinimalPointError);
  }
  // the three-normal bundle in R^{5,1}
  {
    const ChartMap chart = make_chart(Immersion::H5Polar);
    const auto rep = det_scan(chart, {12, 12, 0.4, M_PI - 0.4, 0, 2 * M_PI}, 0.25,
                              {64, 3.0, kJetStep, false});
    CHECK(rep.max_abs_dev < 1e-5);
    CHECK(rep.measured_a == doctest::Approx(0.5).epsilon(1e-5));
  }
}

TEST_CASE("fiber mean curvature changes sign with S_t") {
  const ChartMap chart = make_chart(Immersion::RotPolar, 1);
  const double q[2] = {0.35, 1.0};
  const ShapeData sd = canonical_frames(surface_jet(chart, q), 1);
  int h_changes = 0, s_changes = 0;
  double prev_m = 0, prev_s = 0;
  for (int k = 0; k < 64; ++k) {
    const double st = std::sin(2.0 * M_PI * (k + 0.5) / 64);  // offset avoids exact zeros
    const double m = hyper_mean_curvature(sd, st);
    CHECK(m * st >= 0.0);  // same sign as S_t (h > 1, c = 1)
    if (k > 0 && m * prev_m < 0) ++h_changes;
    if (k > 0 && st * prev_s < 0) ++s_changes;
    prev_m = m;
    prev_s = st;
  }
  CHECK(h_changes == s_changes);
  CHECK(s_changes == 1);  // one interior crossing of sin over (0, 2pi)
}

TEST_CASE("default grid construction") {
  const ChartMap chart = make_chart(Immersion::RotPolar, 1);
  const GridSpec g = default_grid(chart, 10, 10);
  CHECK(g.lo0 >= 0.06);
  CHECK(g.hi0 < rot_r0());
}
