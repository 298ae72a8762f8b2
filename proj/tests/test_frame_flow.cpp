#include <cmath>

#include "doctest.h"
#include "spaceform/frame_flow.hpp"
#include "spaceform/numgeom.hpp"
#include "spaceform/gauss_param.hpp"
#include "spaceform/parallel.hpp"

using namespace spaceform;

TEST_CASE("eta matches the Clifford generators") {
  // unit-arclength coframe: the torus metric is 2(dx^2 + dy^2), so the
  // printed dx-generator equals eta evaluated on (sqrt2, 0)
  // (the closed-form generators live in the row convention, transposed here)
  const TState s(1.0, 0.0, 0.0, 0.0, 1.0 / std::sqrt(2.0), 1, -1);
  const double s2 = std::sqrt(2.0);
  CHECK(max_abs(eta_of(s, s2, 0).m - clifford_generator_x().transposed()) < 1e-15);
  CHECK(max_abs(eta_of(s, 0, s2).m - clifford_generator_y().transposed()) < 1e-15);
}

TEST_CASE("eta matches the rotational matrices") {
  for (int c : {1, -1}) {
    const double lo = (c == 1) ? 0.05 : rot_r0() + 0.05;
    const double hi = (c == 1) ? rot_r0() - 0.02 : M_PI - rot_r0() - 0.05;
    for (int k = 0; k < 12; ++k) {
      const double r = lo + (hi - lo) * (k + 0.5) / 12;
      const TState s = TState::family(rot_t0(c, r), rot_t1(c, r), 0.0, c);
      CHECK(max_abs(eta_of(s, 3.0, 0.0).m - rot_eta1(c, r)) < 1e-12);
      CHECK(max_abs(eta_of(s, 0.0, 3.0 * std::sin(r)).m - rot_eta2(c, r)) < 1e-12);
    }
  }
}

TEST_CASE("eta lies in the algebra") {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    const int c = (k % 2) ? 1 : -1;
    const double t0 = (c == 1) ? rng.uniform(1.1, 2.5) : rng.uniform(0.5, 2.5);
    const TState s = TState::family(t0, rng.uniform(-1, 1), rng.uniform(-1, 1), c);
    const AlgebraElement e = eta_of(s, rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(e.algebra_residual() < 1e-14);
  }
}

TEST_CASE("rotational bracket identity and H") {
  for (int c : {1, -1}) {
    const double lo = (c == 1) ? 0.03 : rot_r0() + 0.04;
    const double hi = (c == 1) ? rot_r0() - 0.02 : M_PI - rot_r0() - 0.04;
    for (int k = 0; k < 100; ++k) {
      const double r = lo + (hi - lo) * (k + 0.5) / 100;
      const Mat e1 = rot_eta1(c, r), e2 = rot_eta2(c, r);
      CHECK(max_abs(e1 * e2 - e2 * e1 + rot_eta2_prime(c, r)) < 1e-13);
    }
    const Mat h0 = rot_H(c);
    for (int k = 0; k < 5; ++k) {
      const double r = lo + (hi - lo) * (k + 0.5) / 5;
      CHECK(max_abs(rot_H(c, r) - h0) < 1e-8);
    }
    // T stays in the group
    CHECK(group_residual(rot_T(c, lo + 0.7 * (hi - lo))) < 1e-10);
  }
}

TEST_CASE("frame surface matches the explicit rotational chart") {
  // invariant comparison: induced metric and canonical (a, h) at shared
  // chart points
  for (int c : {1, -1}) {
    const ChartMap explicit_chart = make_chart(Immersion::RotPolar, c);
    ChartMap frame_chart = explicit_chart;
    frame_chart.eval = [c](const double* q) { return rot_frame_surface(c, q[0], q[1]); };
    const double lo = (c == 1) ? 0.15 : rot_r0() + 0.12;
    const double hi = (c == 1) ? rot_r0() - 0.05 : M_PI - rot_r0() - 0.12;
    for (int k = 0; k < 4; ++k) {
      const double q[2] = {lo + (hi - lo) * (k + 0.5) / 4, 0.7 + 0.4 * k};
      const FundForms fa = fundamental_forms(surface_jet(explicit_chart, q));
      const FundForms fb = fundamental_forms(surface_jet(frame_chart, q));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(std::fabs(fa.I(i, j) - fb.I(i, j)) < 1e-6);
      const ShapeData sa = canonical_frames(surface_jet(explicit_chart, q), c);
      const ShapeData sb = canonical_frames(surface_jet(frame_chart, q), c);
      CHECK(std::fabs(sa.a - sb.a) < 1e-6);
      CHECK(std::fabs(sa.h - sb.h) < 1e-6);
    }
  }
}

TEST_CASE("clifford closed form") {
  const FrameMatrix g0 = clifford_closed_form(0, 0);
  CHECK(max_abs(g0.m - Mat::identity(5)) < 1e-15);
  CHECK(max_abs(clifford_closed_form(M_PI, M_PI).frame_vector(0) - clifford_polar(M_PI, M_PI)) <
        1e-12);
  const Mat gx = clifford_generator_x(), gy = clifford_generator_y();
  CHECK(max_abs(gx * gy - gy * gx) < 1e-14);
  Rng rng(62);
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(-M_PI, M_PI), y = rng.uniform(-M_PI, M_PI);
    CHECK(max_abs(clifford_closed_form(x, y).frame_vector(0) - clifford_polar(x, y)) < 1e-12);
  }
}

TEST_CASE("flow conserves the leaf level") {
  // c = -1 start on Omega (L = 0)
  {
    const TState s(1.0, 0.0, 0.0, 0.0, 2.0 / 3.0, 1, -1);
    PathSpec p;
    p.legs = {{0, 2.5, 1e-3}, {1, 2.5, 1e-3}};
    const FlowState end = flow(FlowState::start(s), p);
    CHECK(std::fabs(L_integral({end.t.t0, end.t.t1, end.t.t2, -1})) / 5.0 < 1e-9);
    CHECK(end.arclength == doctest::Approx(5.0));
  }
  // c = 1 interior leaf
  {
    const TState s = leaf_seed(1, 0.10);
    const double l0 = L_integral({s.t0, s.t1, s.t2, 1});
    CHECK(l0 == doctest::Approx(0.10).epsilon(1e-10));
    PathSpec p;
    p.legs = {{0, -2.0, 1e-3}, {1, 1.5, 1e-3}, {0, 1.0, 1e-3}, {1, -0.5, 1e-3}};
    const FlowState end = flow(FlowState::start(s), p);
    const double drift = std::fabs(L_integral({end.t.t0, end.t.t1, end.t.t2, 1}) - l0) / 5.0;
    CHECK(drift < 1e-8);
    CHECK(group_residual(end.G) < 1e-9);
  }
}

TEST_CASE("drift shrinks by at least 8x when the step halves") {
  // measured where the truncation term dominates the roundoff floor
  const TState s = leaf_seed(1, 0.10);
  const double l0 = L_integral({s.t0, s.t1, s.t2, 1});
  const auto drift_at = [&](double step) {
    PathSpec p;
    p.legs = {{0, -2.0, step}, {1, 1.5, step}};
    const FlowState end = flow(FlowState::start(s), p);
    return std::fabs(L_integral({end.t.t0, end.t.t1, end.t.t2, 1}) - l0) / 3.5;
  };
  const double d1 = drift_at(1e-2);
  const double d2 = drift_at(5e-3);
  CHECK(d1 / std::max(d2, 1e-300) >= 8.0);
  CHECK(drift_at(1e-3) < 1e-8);
}

TEST_CASE("zero-length path is the identity") {
  const TState s = leaf_seed(-1, 0.1);
  const FlowState fs = FlowState::start(s);
  const FlowState end = flow(fs, PathSpec{});
  CHECK(end.t.t0 == fs.t.t0);
  CHECK(max_abs(end.G.m - fs.G.m) == 0.0);
}

TEST_CASE("flow refuses the singular margin") {
  // c = 1 toward t0 -> 1: flowing down the E1 direction from a low seed
  const TState s = TState::family(1.02, -0.5, 0.0, 1);
  CHECK_THROWS_AS(flow_leg(FlowState::start(s), 0, 2.0, 1e-3), FlowSingularity);
  CHECK_THROWS_AS(flow_leg(FlowState::start(leaf_seed(1, 0.1)), 0, 1.0, 2e-2),
                  std::invalid_argument);  // step too large
}

TEST_CASE("holonomy defect matches the bracket") {
  const TState s = leaf_seed(1, 0.09);
  const FlowState fs = FlowState::start(s);
  const HolonomyDefect d1 = holonomy_defect(fs, 1e-2);
  const HolonomyDefect d2 = holonomy_defect(fs, 5e-3);
  double n1 = 0, n2 = 0;
  for (int i = 0; i < 3; ++i) {
    n1 += d1.observed[i] * d1.observed[i];
    n2 += d2.observed[i] * d2.observed[i];
    CHECK(d1.observed[i] == doctest::Approx(d1.predicted[i]).epsilon(0.08));
    // extrapolating away the O(s^3) tail sharpens the match considerably
    const double lead = 8.0 * d2.observed[i] - d1.observed[i];
    CHECK(lead == doctest::Approx(d1.predicted[i]).epsilon(0.01));
  }
  const double ratio = std::sqrt(n1 / n2);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);

  // rotational state: t2 = 0 kills the E1 bracket coefficient
  const double r = rot_r_ref(1) + 0.1;
  const TState rs = TState::family(rot_t0(1, r), rot_t1(1, r), 0.0, 1);
  const HolonomyDefect dr = holonomy_defect(FlowState::start(rs), 1e-2);
  const TDerivs dv = t_derivatives(rs);
  const double b2 = -1.0 * rs.t1 / (rs.t0 * rs.t0 - 1.0);
  for (int i = 0; i < 3; ++i)
    CHECK(dr.predicted[i] == doctest::Approx(1e-4 * b2 * dv.d[i][1]).epsilon(1e-10));

  // vanishing bracket: t1 = t2 = 0 leaves only the O(s^3) tail
  const TState z = TState::family(1.5, 0.0, 0.0, 1);
  const HolonomyDefect dz = holonomy_defect(FlowState::start(z), 1e-2);
  for (int i = 0; i < 3; ++i) {
    CHECK(dz.predicted[i] == 0.0);
    CHECK(std::fabs(dz.observed[i]) < 1e-6);  // O(s^3)
  }
}

TEST_CASE("path independence of the frame") {
  const TState s = leaf_seed(1, 0.11);
  CHECK(loop_closure_defect(FlowState::start(s), 0.4) < 1e-6);
}

TEST_CASE("flow with rotational data follows the closed forms") {
  for (int c : {1, -1}) {
    const double r0 = rot_r_ref(c) + (c == 1 ? 0.05 : 0.2);
    const TState s = TState::family(rot_t0(c, r0), rot_t1(c, r0), 0.0, c);
    const double dr = 0.04;
    const FlowState end = flow_leg(FlowState::start(s), 0, 3.0 * dr, 1e-4);
    CHECK(end.t.t0 == doctest::Approx(rot_t0(c, r0 + dr)).epsilon(1e-8));
    CHECK(end.t.t1 == doctest::Approx(rot_t1(c, r0 + dr)).epsilon(1e-8));
    CHECK(std::fabs(end.t.t2) < 1e-12);
  }
}

TEST_CASE("leaf seeds") {
  for (int c : {1, -1})
    for (double R : {0.05, 0.10, 0.14}) {
      const TState s = leaf_seed(c, R);
      CHECK(L_integral({s.t0, s.t1, s.t2, c}) == doctest::Approx(R).epsilon(1e-9));
      CHECK(s.t2 == 0.0);
      CHECK(s.t1 > 0.0);
      CHECK(std::fabs(s.t0 * s.t0 - c) > 0.05);
    }
  CHECK_THROWS_AS(leaf_seed(1, 4.0 / 27.0), std::domain_error);
  CHECK_THROWS_AS(leaf_seed(1, 0.0), std::domain_error);
}

TEST_CASE("generated patch invariants (small)") {
  const GeneratedSurface gs = generate_surface(1, 0.12, 9, 9, 0.5, 0.5, 1e-3);
  REQUIRE(gs.positions.size() == 81);
  // every node stays on the quadric and on the leaf
  const Signature sig(5, 1, 1);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      CHECK(std::fabs(inner(gs.position(i, j), gs.position(i, j), sig) - 1.0) < 1e-10);
      const TState& t = gs.state(i, j);
      CHECK(std::fabs(L_integral({t.t0, t.t1, t.t2, 1}) - 0.12) < 1e-8);
    }
  // oracle agreement: K = 1/9 and det A_w = -4/9 at an interior point
  const ChartMap chart = gs.chart();
  const double q[2] = {-0.2, -0.04};
  const SurfaceJet j = surface_jet(chart, q);
  CHECK(gaussian_curvature(j) == doctest::Approx(1.0 / 9.0).epsilon(1e-5));
  const ShapeData sd = canonical_frames(j, 1);
  CHECK(sd.a == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
  for (const auto& dir : lambda_grid(1, 1, 8))
    CHECK(det_Aw(sd, dir) == doctest::Approx(-4.0 / 9.0).epsilon(1e-4));
}

TEST_CASE("generation rejects degenerate levels") {
  CHECK_THROWS_AS(generate_surface(1, 4.0 / 27.0, 8, 8, 0.5, 0.5), std::domain_error);
}

TEST_CASE("mean-curvature Laplacian cross-checked by flowing") {
  // Second derivatives of H = (h^2-1)^2/h^2 measured by actually flowing
  // the E1/E2 fields, against the closed-form right-hand side.
  const TState s = leaf_seed(1, 0.10);
  const auto H_of = [](const TState& t) { return surface_mean_curvature_sq(t.t0); };
  const double d = 1e-3;
  const auto H_at = [&](int dir, double len) {
    return H_of(flow_leg(FlowState::start(s), dir, len, 2e-4).t);
  };
  const double h0 = H_of(s);
  const double e1e1 = (H_at(0, d) - 2 * h0 + H_at(0, -d)) / (d * d);
  const double e2e2 = (H_at(1, d) - 2 * h0 + H_at(1, -d)) / (d * d);
  const double e1h = (H_at(0, d) - H_at(0, -d)) / (2 * d);
  const double e2h = (H_at(1, d) - H_at(1, -d)) / (2 * d);
  const double den = s.t0 * s.t0 - 1.0;
  const double w_e1 = -s.t0 * s.t0 * s.t2 / den;
  const double w_e2 = s.t1 / den;
  const double lap = e1e1 + e2e2 - w_e1 * e2h + w_e2 * e1h;
  const double lhs = std::pow(s.t0, 4) * lap / 2.0;
  CHECK(lhs == doctest::Approx(superharmonic_rhs(s)).epsilon(1e-4));
}

TEST_CASE("theta vanishes along flow trajectories") {
  // the tangent field of any leg lies in ker theta: <N(t), dt/ds> ~ 0
  for (int c : {1, -1}) {
    FlowState fs = FlowState::start(leaf_seed(c, 0.10));
    for (int k = 0; k < 40; ++k) {
      fs = flow_leg(fs, k % 2, -0.05, 1e-3);
      const TDerivs d = t_derivatives(fs.t);
      const LeafPoint p{fs.t.t0, fs.t.t1, fs.t.t2, c};
      for (int dir = 0; dir < 2; ++dir) {
        const std::array<double, 3> v = {d.d[0][dir], d.d[1][dir], d.d[2][dir]};
        const double scale = std::fabs(v[0]) + std::fabs(v[1]) + std::fabs(v[2]) + 1.0;
        CHECK(std::fabs(theta_eval(p, v)) / (scale * (std::pow(p.u0, 6) + 1.0)) < 1e-8);
      }
    }
  }
}
