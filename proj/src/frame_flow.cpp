#include "spaceform/frame_flow.hpp"

#include <cmath>

#include "spaceform/numgeom.hpp"

namespace spaceform {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt2 = 1.4142135623730950488;

// CF4 weights (two exponentials, Gauss nodes).
constexpr double kNode1 = 0.5 - kSqrt3 / 6.0;
constexpr double kNode2 = 0.5 + kSqrt3 / 6.0;
constexpr double kAlpha = 0.25 + kSqrt3 / 6.0;
constexpr double kBeta = 0.25 - kSqrt3 / 6.0;

struct TVector {
  double v[4];
};

/// Unit-arclength field along E_dir on the reduced state.
TVector t_field(const TState& s, int dir) {
  const TDerivs d = t_derivatives(s);
  TVector out{};
  for (int i = 0; i < 4; ++i) out.v[i] = d.d[i][dir];
  if (s.is_family()) out.v[3] = 0.0;  // held exactly, never integrated
  return out;
}

TState t_add(const TState& s, const TVector& dv, double h) {
  TState r = s;
  r.t0 = s.t0 + h * dv.v[0];
  r.t1 = s.t1 + h * dv.v[1];
  r.t2 = s.t2 + h * dv.v[2];
  r.t3 = s.t3 + h * dv.v[3];
  return r;
}

void check_state(const TState& s, const FlowOptions& opt) {
  if (!(s.t0 > 0)) throw FlowSingularity("flow: t0 left the positive half-space");
  if (std::fabs(s.t0 * s.t0 - s.c) < opt.singular_margin)
    throw FlowSingularity("flow: approaching t0^2 = c (t0 = " + std::to_string(s.t0) + ")");
  if (opt.stop_near_curves && s.is_family()) {
    const LeafPoint u{s.t0, s.t1, s.t2, s.c};
    const auto n = N_vec(u);
    const auto P = P_poly(u);
    const auto Q = Q_poly(u);
    const double pn = std::sqrt(P[0] * P[0] + P[1] * P[1] + P[2] * P[2]);
    const double qn = std::sqrt(Q[0] * Q[0] + Q[1] * Q[1] + Q[2] * Q[2]);
    const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    const double scale = pn * qn / std::fabs(s.t0 * s.t0 * (s.t0 * s.t0 - s.c)) + 1e-300;
    if (nn / scale < opt.curve_margin)
      throw FlowSingularity("flow: approaching the singular curves C1/C2");
  }
}

TState rk4(const TState& s, int dir, double h) {
  const TVector k1 = t_field(s, dir);
  const TVector k2 = t_field(t_add(s, k1, h / 2), dir);
  const TVector k3 = t_field(t_add(s, k2, h / 2), dir);
  const TVector k4 = t_field(t_add(s, k3, h), dir);
  TVector sum{};
  for (int i = 0; i < 4; ++i)
    sum.v[i] = (k1.v[i] + 2 * k2.v[i] + 2 * k3.v[i] + k4.v[i]) / 6.0;
  return t_add(s, sum, h);
}

/// One CF4 step of size h along E_dir: t by chained RK4 through the Gauss
/// nodes, G by two frozen-eta exponentials.
void cf4_step(TState& t, FrameMatrix& G, int dir, double h, const FlowOptions& opt) {
  const double w1 = (dir == 0) ? 1.0 : 0.0;
  const double w2 = 1.0 - w1;
  const TState tc1 = rk4(t, dir, kNode1 * h);
  const TState tc2 = rk4(tc1, dir, (kNode2 - kNode1) * h);
  const TState tend = rk4(tc2, dir, (1.0 - kNode2) * h);
  check_state(tend, opt);

  if (!std::isfinite(tend.t0) || std::fabs(tend.t0 - t.t0) > 0.2)
    throw FlowSingularity("flow: step blow-up near a singular locus");

  const Mat a1 = eta_of(tc1, w1, w2).m;
  const Mat a2 = eta_of(tc2, w1, w2).m;
  const AlgebraElement x1(h * (kAlpha * a1 + kBeta * a2), G.sig);
  const AlgebraElement x2(h * (kBeta * a1 + kAlpha * a2), G.sig);
  G = advance(advance(G, x1), x2);
  t = tend;
}

}  // namespace

AlgebraElement eta_of(const TState& s, double w1, double w2) {
  const double t0 = s.t0, t1 = s.t1, t2 = s.t2;
  const double a = s.a, c = s.c, eps = s.eps;
  const double den = t0 * t0 - c;
  if (std::fabs(den) < 1e-12) throw FlowSingularity("eta_of: t0^2 = c singularity");

  const double omega = -t0 * t0 * t2 / den * w1 + c * t1 / den * w2;
  const double mu = 2.0 * c * t0 * t0 * t0 * t2 / den * w1 - 2.0 * c * t1 / (t0 * den) * w2;

  Mat x(5);
  x(0, 1) = -w1;
  x(0, 2) = -w2;
  x(1, 0) = w1;
  x(1, 2) = -omega;
  x(1, 3) = -a * w2;
  x(1, 4) = -a * t0 * w1;
  x(2, 0) = w2;
  x(2, 1) = omega;
  x(2, 3) = -a * w1;
  x(2, 4) = a * c / t0 * w2;
  x(3, 1) = eps * a * w2;
  x(3, 2) = eps * a * w1;
  x(3, 4) = -c * mu;
  x(4, 1) = eps * c * a * t0 * w1;
  x(4, 2) = -eps * a / t0 * w2;
  x(4, 3) = mu;
  return {x, Signature(5, s.c, s.eps)};
}

FlowState flow(FlowState fs, const PathSpec& path, const FlowOptions& opt) {
  for (const Leg& leg : path.legs) {
    if (leg.step <= 0 || leg.step > 1e-2)
      throw std::invalid_argument("flow: leg step must lie in (0, 1e-2]");
    if (leg.length == 0.0) continue;
    const long n = std::max(1L, std::lround(std::ceil(std::fabs(leg.length) / leg.step)));
    const double h = leg.length / static_cast<double>(n);
    for (long k = 0; k < n; ++k) cf4_step(fs.t, fs.G, leg.direction, h, opt);
    fs.arclength += std::fabs(leg.length);
  }
  return fs;
}

FlowState flow_leg(const FlowState& fs, int direction, double length, double step,
                   const FlowOptions& opt) {
  PathSpec p;
  p.legs.push_back({direction, length, step});
  return flow(fs, p, opt);
}

HolonomyDefect holonomy_defect(const FlowState& fs, double s) {
  if (s > 1e-2) throw std::invalid_argument("holonomy_defect: s must be <= 1e-2");
  const double step = s / 8.0;
  const FlowState a = flow_leg(flow_leg(fs, 0, s, step), 1, s, step);
  const FlowState b = flow_leg(flow_leg(fs, 1, s, step), 0, s, step);
  HolonomyDefect d;
  d.observed = {a.t.t0 - b.t.t0, a.t.t1 - b.t.t1, a.t.t2 - b.t.t2};

  const double t0 = fs.t.t0, t1 = fs.t.t1, t2 = fs.t.t2;
  const double den = t0 * t0 - fs.t.c;
  const double b1 = t0 * t0 * t2 / den;
  const double b2 = -fs.t.c * t1 / den;
  const TDerivs dv = t_derivatives(fs.t);
  for (int i = 0; i < 3; ++i)
    d.predicted[i] = s * s * (b1 * dv.d[i][0] + b2 * dv.d[i][1]);
  return d;
}

double loop_closure_defect(const FlowState& start, double s, double step) {
  const FlowState target = flow_leg(flow_leg(start, 0, s, step), 1, s, step);
  const auto endpoint = [&](double s2, double s1) {
    return flow_leg(flow_leg(start, 1, s2, step), 0, s1, step);
  };
  // Gauss-Newton shooting on (s2, s1) so the reduced states coincide.
  double x[2] = {s, s};
  for (int it = 0; it < 12; ++it) {
    const FlowState e = endpoint(x[0], x[1]);
    const double res[3] = {e.t.t0 - target.t.t0, e.t.t1 - target.t.t1, e.t.t2 - target.t.t2};
    const double rn = std::sqrt(res[0] * res[0] + res[1] * res[1] + res[2] * res[2]);
    if (rn < 1e-13) break;
    const double dh = 1e-7;
    double J[3][2];
    for (int k = 0; k < 2; ++k) {
      double xp[2] = {x[0], x[1]};
      xp[k] += dh;
      const FlowState ep = endpoint(xp[0], xp[1]);
      J[0][k] = (ep.t.t0 - e.t.t0) / dh;
      J[1][k] = (ep.t.t1 - e.t.t1) / dh;
      J[2][k] = (ep.t.t2 - e.t.t2) / dh;
    }
    double jtj[2][2] = {}, jtr[2] = {};
    for (int r = 0; r < 3; ++r) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) jtj[i][j] += J[r][i] * J[r][j];
        jtr[i] += J[r][i] * res[r];
      }
    }
    const double detj = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
    if (std::fabs(detj) < 1e-300) break;
    const double dx0 = (jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / detj;
    const double dx1 = (jtj[0][0] * jtr[1] - jtj[1][0] * jtr[0]) / detj;
    x[0] -= dx0;
    x[1] -= dx1;
  }
  const FlowState closed = endpoint(x[0], x[1]);
  return max_abs(closed.G.m - target.G.m);
}

Mat rot_eta1(int c, double r) {
  const double t0 = rot_t0(c, r);
  Mat m(5);
  m(0, 1) = -3;
  m(1, 0) = 3;
  m(1, 4) = -2.0 * t0;
  m(2, 3) = -2;
  m(3, 2) = 2;
  m(4, 1) = 2.0 * c * t0;
  return m;
}

Mat rot_eta2(int c, double r) {
  const double t0 = rot_t0(c, r);
  const double S = std::sin(r), C = std::cos(r);
  Mat m(5);
  m(0, 2) = -3.0 * S;
  m(1, 2) = -C;
  m(1, 3) = -2.0 * S;
  m(2, 0) = 3.0 * S;
  m(2, 1) = C;
  m(2, 4) = 2.0 * c * S / t0;
  m(3, 1) = 2.0 * S;
  m(3, 4) = 2.0 * c * C / t0;
  m(4, 2) = -2.0 * S / t0;
  m(4, 3) = -2.0 * C / t0;
  return m;
}

Mat rot_eta2_prime(int c, double r) {
  const double t0 = rot_t0(c, r);
  const double t1 = rot_t1(c, r);
  const double S = std::sin(r), C = std::cos(r);
  // d(S/t0)/dr and d(C/t0)/dr with t0' = 3 t0 t1
  const double dS_t0 = C / t0 - 3.0 * S * t1 / t0;
  const double dC_t0 = -S / t0 - 3.0 * C * t1 / t0;
  Mat m(5);
  m(0, 2) = -3.0 * C;
  m(1, 2) = S;
  m(1, 3) = -2.0 * C;
  m(2, 0) = 3.0 * C;
  m(2, 1) = -S;
  m(2, 4) = 2.0 * c * dS_t0;
  m(3, 1) = 2.0 * C;
  m(3, 4) = 2.0 * c * dC_t0;
  m(4, 2) = -2.0 * dS_t0;
  m(4, 3) = -2.0 * dC_t0;
  return m;
}

double rot_r_ref(int c) { return (c == 1) ? 0.5 * rot_r0() : 0.5 * M_PI; }

FrameMatrix rot_T(int c, double r, double step) {
  rot_check_domain(c, r);
  const Signature sig(5, c, 1);
  FrameMatrix T = FrameMatrix::identity(sig);
  const double r0 = rot_r_ref(c);
  const double len = r - r0;
  if (len == 0.0) return T;
  // Fixed step count over the whole chart range so the integration error
  // is smooth in r (finite differences across nearby r stay clean).
  const long n = std::max(1L, std::lround(std::ceil(0.5 * M_PI / step)));
  const double h = len / static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    const double rk = r0 + k * h;
    const Mat a1 = rot_eta1(c, rk + kNode1 * h);
    const Mat a2 = rot_eta1(c, rk + kNode2 * h);
    const AlgebraElement x1(h * (kAlpha * a1 + kBeta * a2), sig);
    const AlgebraElement x2(h * (kBeta * a1 + kAlpha * a2), sig);
    T = advance(advance(T, x1), x2);
  }
  return T;
}

Mat rot_H(int c, double r_at, double step) {
  const double r = (r_at > 0) ? r_at : rot_r_ref(c);
  const FrameMatrix T = rot_T(c, r, step);
  return T.m * rot_eta2(c, r) * T.inverted().m;
}

Vec rot_frame_surface(int c, double r, double theta, double step) {
  static thread_local int cached_c = 0;
  static thread_local Mat cached_H;
  if (cached_c != c) {
    cached_H = rot_H(c, -1.0, 1e-3);
    cached_c = c;
  }
  const FrameMatrix T = rot_T(c, r, step);
  const Mat G = expm(theta * cached_H) * T.m;
  return G.col(0);
}

Mat clifford_generator_x() {
  // Coefficient of dx for the torus frame in the column convention
  // dG = G eta.  The induced metric is twice the flat one, so this is
  // sqrt(2) times the unit-arclength eta; the row-convention form is the
  // transpose.
  Mat g(5);
  g(0, 1) = kSqrt2;
  g(1, 0) = -kSqrt2;
  g(1, 4) = -1;
  g(2, 3) = 1;
  g(3, 2) = -1;
  g(4, 1) = -1;
  return g;
}

Mat clifford_generator_y() {
  Mat g(5);
  g(0, 2) = kSqrt2;
  g(2, 0) = -kSqrt2;
  g(2, 4) = -1;
  g(1, 3) = 1;
  g(3, 1) = -1;
  g(4, 2) = -1;
  return g;
}

FrameMatrix clifford_closed_form(double x, double y) {
  const Mat gx = clifford_generator_x();
  const Mat gy = clifford_generator_y();
  const double comm = max_abs(gx * gy - gy * gx);
  if (comm > 1e-14)
    throw InconsistencyError("clifford_closed_form: generators do not commute");
  const Signature sig = Signature::lorentz5();
  return {expm(x * gx + y * gy), sig, false};
}

TState leaf_seed(int c, double R) {
  if (!(R > 0.0 && R < 4.0 / 27.0))
    throw std::domain_error("leaf_seed: R outside (0, 4/27)");
  const double u1 = waist_radius_from_level(R);
  const double q = 1.0 + 9.0 * u1 * u1;
  // u0 at the C1 crossing of the ray {u2 = 0, u1 fixed}: the positive root
  // of 2 x^2 - c x - q with x = u0^2.
  const double u0c = std::sqrt((c + std::sqrt(1.0 + 8.0 * q)) / 4.0);
  const auto level = [&](double u0) { return L_integral({u0, u1, 0.0, c}); };

  double lo = u0c + 1e-6, hi;
  if (c == 1) {
    hi = 2.0 * lo;
    while (level(hi) > R) hi *= 2.0;
  } else {
    hi = std::sqrt(q) - 1e-9;  // L -> 0 at the Omega crossing
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (level(mid) > R ? lo : hi) = mid;
  }
  return TState::family(0.5 * (lo + hi), u1, 0.0, c);
}

GeneratedSurface generate_surface(int c, double R, int n1, int n2, double span1, double span2,
                                  double step) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("generate_surface: lattice needs n >= 2");
  GeneratedSurface out;
  out.c = c;
  out.R = R;
  out.n1 = n1;
  out.n2 = n2;
  out.seed = leaf_seed(c, R);
  out.flow_step = step;
  // The positive E1 ray leaves the safe region quickly (the surfaces blow
  // up toward their singular boundary in finite arclength), so the lattice
  // is biased toward the negative side.
  out.s1_min = -0.85 * span1;
  out.ds1 = span1 / (n1 - 1);
  out.s2_min = -span2 / 2.0;
  out.ds2 = span2 / (n2 - 1);
  out.positions.resize(static_cast<size_t>(n1) * n2);
  out.states.resize(static_cast<size_t>(n1) * n2);
  out.frames.resize(static_cast<size_t>(n1) * n2);

  FlowOptions opt;
  opt.stop_near_curves = true;

  // Spine along E1, then fibers along E2 (lattice path convention).
  std::vector<FlowState> spine(n1);
  const FlowState origin = FlowState::start(out.seed);
  for (int i = 0; i < n1; ++i) {
    const double s1 = out.s1_min + i * out.ds1;
    spine[i] = flow_leg(origin, 0, s1, step, opt);
  }
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double s2 = out.s2_min + j * out.ds2;
      const FlowState node = flow_leg(spine[i], 1, s2, step, opt);
      const size_t idx = static_cast<size_t>(i) * n2 + j;
      out.positions[idx] = node.G.frame_vector(0);
      out.states[idx] = node.t;
      out.frames[idx] = node.G.m;
    }
  }
  return out;
}

ChartMap GeneratedSurface::chart(double eval_step) const {
  ChartMap m;
  m.id = Immersion::Generated;
  m.c = c;
  m.nparams = 2;
  m.sig = Signature(5, c, 1);
  m.quadric_target = 1.0;
  const double margin1 = 2.0 * ds1, margin2 = 2.0 * ds2;
  m.domain = {2,
              {s1_min + margin1, s2_min + margin2},
              {s1_min + (n1 - 1) * ds1 - margin1, s2_min + (n2 - 1) * ds2 - margin2},
              {false, false}};
  const TState seed_copy = seed;
  // Fixed step counts per direction (independent of the target) keep the
  // integrator error a smooth function of (s1, s2), so finite differences
  // across nearby evaluations stay well conditioned.
  const long n_fixed[2] = {
      std::max(1L, std::lround(std::ceil(
                       std::max(std::fabs(s1_min), std::fabs(s1_min + (n1 - 1) * ds1)) /
                       eval_step))),
      std::max(1L, std::lround(std::ceil(
                       std::max(std::fabs(s2_min), std::fabs(s2_min + (n2 - 1) * ds2)) /
                       eval_step)))};
  m.eval = [seed_copy, n_fixed](const double* q) {
    FlowState fs = FlowState::start(seed_copy);
    for (int dir = 0; dir < 2; ++dir) {
      const double len = q[dir];
      if (len == 0.0) continue;
      PathSpec path;
      path.legs.push_back({dir, len, std::fabs(len) / static_cast<double>(n_fixed[dir])});
      fs = flow(fs, path);
    }
    return fs.G.frame_vector(0);
  };
  return m;
}

}  // namespace spaceform
