#pragma once

#include <vector>

#include "spaceform/catalog.hpp"
#include "spaceform/leafspace.hpp"
#include "spaceform/linalg.hpp"

// Frame integration of the structure equations: eta assembled from the
// reduced state, a fourth-order commutator-free Lie-group stepper for
// (t, G), the rotational and Clifford closed forms, and lattice generation
// of the non-symmetric family surfaces.

namespace spaceform {

/// Thrown when a trajectory approaches t0^2 = c (or, when enabled, the
/// singular curves of the quotient geometry).
struct FlowSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The connection 1-form matrix evaluated on the coframe values
/// (w1, w2); an element of so_c(5) by construction.
AlgebraElement eta_of(const TState& s, double w1, double w2);

struct FlowState {
  TState t;
  FrameMatrix G;
  double arclength = 0;

  FlowState() = default;
  FlowState(const TState& t_, const FrameMatrix& g) : t(t_), G(g) {}
  static FlowState start(const TState& t_) {
    return {t_, FrameMatrix::identity(Signature(5, t_.c, t_.eps))};
  }
};

struct Leg {
  int direction = 0;  // 0 = E1, 1 = E2 (unit-arclength dual fields)
  double length = 0;  // signed
  double step = 1e-3;
};

struct PathSpec {
  std::vector<Leg> legs;
};

struct FlowOptions {
  double singular_margin = 1e-3;  // floor on |t0^2 - c|
  bool stop_near_curves = false;  // guard the C1/C2 proximity (leaf patches)
  double curve_margin = 1e-4;     // relative ||N|| floor when guarding
};

/// Integrates the coupled (t, G) system along the legs.  Each step advances
/// t by a classical RK4 substep and G by two frozen-eta exponentials
/// (fourth order, group-exact up to expm roundoff).
FlowState flow(FlowState fs, const PathSpec& path, const FlowOptions& opt = {});

/// Convenience: one leg of given direction/length.
FlowState flow_leg(const FlowState& fs, int direction, double length, double step = 1e-3,
                   const FlowOptions& opt = {});

/// Commutation defect of the E1/E2 flows on the t-component: observed
/// t(E1 s, E2 s) - t(E2 s, E1 s) against the structure-equation bracket
/// prediction s^2 [E1,E2]t.
struct HolonomyDefect {
  std::array<double, 3> observed{};
  std::array<double, 3> predicted{};
};
HolonomyDefect holonomy_defect(const FlowState& fs, double s);

/// Flows two different leg orders from the same start, shooting the second
/// pair of lengths so both trajectories end at the same reduced state, and
/// returns the max-norm frame disagreement (integrability certificate).
double loop_closure_defect(const FlowState& start, double s, double step = 1e-3);

// ---- rotational closed forms ------------------------------------------------

Mat rot_eta1(int c, double r);
Mat rot_eta2(int c, double r);
/// Analytic r-derivative of rot_eta2.
Mat rot_eta2_prime(int c, double r);

/// Reference point for the rotational frame ODE T' = T eta1, T(r_ref) = id.
double rot_r_ref(int c);

/// Integrates the frame ODE to r.
FrameMatrix rot_T(int c, double r, double step = 1e-3);

/// The theta-rotation generator H = T(r) eta2(r) T(r)^{-1} (r-independent).
Mat rot_H(int c, double r_at = -1.0, double step = 1e-3);

/// First frame vector of e^{theta H} T(r): congruent to the rotational
/// polar surface.
Vec rot_frame_surface(int c, double r, double theta, double step = 1e-3);

// ---- Clifford closed form ---------------------------------------------------

/// The two commuting generators of gamma(x, y) (unit-coefficient matrices).
Mat clifford_generator_x();
Mat clifford_generator_y();

/// G = exp(gamma(x,y)); checks that the generators commute.
FrameMatrix clifford_closed_form(double x, double y);

// ---- family surface generation ----------------------------------------------

/// Deterministic seed on the leaf L^{-1}(R): u2 = 0, u1 = waist-radius
/// analog, u0 found by bisection beyond the C1 crossing.
TState leaf_seed(int c, double R);

struct GeneratedSurface {
  int c = 1;
  double R = 0.1;
  int n1 = 0, n2 = 0;
  double s1_min = 0, ds1 = 0, s2_min = 0, ds2 = 0;
  TState seed;
  double flow_step = 1e-3;
  std::vector<Vec> positions;   // row-major over (i1, i2)
  std::vector<TState> states;
  std::vector<Mat> frames;

  const Vec& position(int i1, int i2) const { return positions[i1 * n2 + i2]; }
  const TState& state(int i1, int i2) const { return states[i1 * n2 + i2]; }

  /// Flow-evaluation chart (lattice convention: E1 by s1, then E2 by s2)
  /// for the finite-difference oracle.  eval_step trades accuracy for
  /// speed; the integrator error is smooth in (s1, s2), so jets stay clean.
  ChartMap chart(double eval_step = 5e-3) const;
};

/// Integrates an n1 x n2 lattice spanning [-span1/2, span1/2] x
/// [-span2/2, span2/2] in flow arclength around the seed.
GeneratedSurface generate_surface(int c, double R, int n1, int n2, double span1, double span2,
                                  double step = 1e-3);

}  // namespace spaceform
