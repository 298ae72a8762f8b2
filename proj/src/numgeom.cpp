#include "spaceform/numgeom.hpp"

#include <algorithm>
#include <cmath>

namespace spaceform {

namespace {

// Fourth-order central stencils over offsets -2..2.
constexpr double kD1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};    // / (12 h)
constexpr double kD2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};  // / (12 h^2)

Vec eval_offset(const ChartMap& chart, const double* q, int axis_a, int ka, int axis_b,
                int kb, double h) {
  double qq[4];
  for (int i = 0; i < chart.nparams; ++i) qq[i] = q[i];
  qq[axis_a] += ka * h;
  if (axis_b >= 0) qq[axis_b] += kb * h;
  return chart.eval(qq);
}

Vec first_partial(const ChartMap& chart, const double* q, int axis, double h) {
  Vec r(chart.sig.dim);
  for (int k = -2; k <= 2; ++k) {
    if (kD1[k + 2] == 0.0) continue;
    Vec f = eval_offset(chart, q, axis, k, -1, 0, h);
    r += (kD1[k + 2] / (12.0 * h)) * f;
  }
  return r;
}

Vec second_partial(const ChartMap& chart, const double* q, int axis, double h) {
  Vec r(chart.sig.dim);
  for (int k = -2; k <= 2; ++k) {
    Vec f = eval_offset(chart, q, axis, k, -1, 0, h);
    r += (kD2[k + 2] / (12.0 * h * h)) * f;
  }
  return r;
}

Vec mixed_partial(const ChartMap& chart, const double* q, int a, int b, double h) {
  Vec r(chart.sig.dim);
  for (int ka = -2; ka <= 2; ++ka) {
    if (kD1[ka + 2] == 0.0) continue;
    for (int kb = -2; kb <= 2; ++kb) {
      if (kD1[kb + 2] == 0.0) continue;
      Vec f = eval_offset(chart, q, a, ka, b, kb, h);
      r += (kD1[ka + 2] * kD1[kb + 2] / (144.0 * h * h)) * f;
    }
  }
  return r;
}

void check_margin(const ChartMap& chart, const double* q, double step) {
  if (!chart.domain.contains(q, 10.0 * step))
    throw std::domain_error("jet: point too close to the chart boundary");
}

/// Partial J-orthonormal basis with the signs <v_i, v_i> = +-1.
struct SignedBasis {
  int n = 0;
  std::array<Vec, 6> v;
  std::array<double, 6> sign{};

  void push(const Vec& u, double s) {
    v[n] = u;
    sign[n] = s;
    ++n;
  }
};

Vec project_out(const Vec& x, const SignedBasis& basis, const Signature& sig) {
  Vec r = x;
  for (int i = 0; i < basis.n; ++i) r -= (inner(r, basis.v[i], sig) * basis.sign[i]) * basis.v[i];
  return r;
}

/// Completes the signed basis with one more unit vector chosen from the
/// standard basis candidates (largest |<v,v>| after projection).
void complete_one(SignedBasis& basis, const Signature& sig) {
  Vec best(sig.dim);
  double best_q = 0;
  for (int cand = 0; cand < sig.dim; ++cand) {
    Vec e(sig.dim);
    e[cand] = 1.0;
    Vec w = project_out(e, basis, sig);
    const double q = std::fabs(inner(w, w, sig));
    if (q > best_q) {
      best_q = q;
      best = w;
    }
  }
  if (best_q < 1e-12) throw InconsistencyError("frame completion: no usable candidate");
  const double qn = inner(best, best, sig);
  best *= 1.0 / std::sqrt(std::fabs(qn));
  basis.push(best, qn > 0 ? 1.0 : -1.0);
}

struct TangentFrame {
  Vec e1, e2;
  double B[2][2]{};  // (e1;e2) = B (du;dv)
};

TangentFrame orthonormal_tangents(const SurfaceJet& j) {
  const double n1 = inner(j.du, j.du, j.sig);
  if (n1 < 1e-10) throw RankError("degenerate jet: |du| ~ 0");
  const double s1 = std::sqrt(n1);
  TangentFrame f;
  f.e1 = (1.0 / s1) * j.du;
  const double pr = inner(j.dv, f.e1, j.sig);
  Vec w = j.dv - pr * f.e1;
  const double n2 = inner(w, w, j.sig);
  if (n2 < 1e-10) throw RankError("degenerate jet: tangents are parallel");
  const double s2 = std::sqrt(n2);
  f.e2 = (1.0 / s2) * w;
  f.B[0][0] = 1.0 / s1;
  f.B[0][1] = 0.0;
  f.B[1][0] = -pr / (s1 * s2);
  f.B[1][1] = 1.0 / s2;
  return f;
}

Mat2 shape_in_frame(const SurfaceJet& j, const TangentFrame& f, const Vec& xi) {
  // M[ab] = <d2_ab g, xi> in the chart basis, then B M B^T.
  double M[2][2];
  M[0][0] = inner(j.duu, xi, j.sig);
  M[0][1] = M[1][0] = inner(j.duv, xi, j.sig);
  M[1][1] = inner(j.dvv, xi, j.sig);
  Mat2 s;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      double acc = 0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += f.B[k][a] * f.B[l][b] * M[a][b];
      s(k, l) = acc;
    }
  return s;
}

Mat2 rotate_sym(const Mat2& s, double tau) {
  const double ct = std::cos(tau), st = std::sin(tau);
  Mat2 r;
  r(0, 0) = s(0, 0) * ct * ct + 2.0 * s(0, 1) * ct * st + s(1, 1) * st * st;
  r(0, 1) = r(1, 0) = (s(1, 1) - s(0, 0)) * ct * st + s(0, 1) * (ct * ct - st * st);
  r(1, 1) = s(0, 0) * st * st - 2.0 * s(0, 1) * ct * st + s(1, 1) * ct * ct;
  return r;
}

double det5(const Vec& a, const Vec& b, const Vec& c, const Vec& d, const Vec& e) {
  Mat m(5);
  m.set_col(0, a);
  m.set_col(1, b);
  m.set_col(2, c);
  m.set_col(3, d);
  m.set_col(4, e);
  return det(m);
}

// Ambient orientation sign that keeps the c=-1 canonical frame branch
// aligned with the rotational closed form t0(r) across its whole range
// (fixed once against that reference).
constexpr double kOrientationCneg = 1.0;

}  // namespace

SurfaceJet surface_jet(const ChartMap& chart, const double* q, double step) {
  if (chart.nparams != 2) throw std::invalid_argument("surface_jet: chart is not 2-parameter");
  check_margin(chart, q, step);
  SurfaceJet j;
  j.sig = chart.sig;
  j.quadric_target = chart.quadric_target;
  j.p = chart.eval(q);
  j.du = first_partial(chart, q, 0, step);
  j.dv = first_partial(chart, q, 1, step);
  j.duu = second_partial(chart, q, 0, step);
  j.dvv = second_partial(chart, q, 1, step);
  j.duv = mixed_partial(chart, q, 0, 1, step);
  return j;
}

HyperJet hyper_jet(const ChartMap& chart, const double* q, double step) {
  if (chart.nparams < 3) throw std::invalid_argument("hyper_jet: chart is not 3/4-parameter");
  check_margin(chart, q, step);
  HyperJet j;
  j.m = chart.nparams;
  j.sig = chart.sig;
  j.quadric_target = chart.quadric_target;
  j.p = chart.eval(q);
  for (int a = 0; a < j.m; ++a) {
    j.d[a] = first_partial(chart, q, a, step);
    j.dd[a][a] = second_partial(chart, q, a, step);
  }
  for (int a = 0; a < j.m; ++a)
    for (int b = a + 1; b < j.m; ++b) j.dd[a][b] = j.dd[b][a] = mixed_partial(chart, q, a, b, step);
  return j;
}

FundForms fundamental_forms(const SurfaceJet& j) {
  FundForms out;
  out.I(0, 0) = inner(j.du, j.du, j.sig);
  out.I(0, 1) = out.I(1, 0) = inner(j.du, j.dv, j.sig);
  out.I(1, 1) = inner(j.dv, j.dv, j.sig);
  if (out.I.det() < 1e-10) throw RankError("fundamental_forms: degenerate first form");

  const TangentFrame tf = orthonormal_tangents(j);
  out.e1 = tf.e1;
  out.e2 = tf.e2;

  SignedBasis basis;
  const double pq = inner(j.p, j.p, j.sig);
  basis.push((1.0 / std::sqrt(std::fabs(pq))) * j.p, pq > 0 ? 1.0 : -1.0);
  basis.push(tf.e1, 1.0);
  basis.push(tf.e2, 1.0);
  const int nn = j.sig.dim - 3;
  out.nnormals = nn;
  for (int k = 0; k < nn; ++k) complete_one(basis, j.sig);

  // Order: space-like first in Lorentzian dim 5, time-like first in dim 6.
  int idx[3] = {0, 1, 2};
  const auto sgn = [&](int k) { return basis.sign[3 + k]; };
  if (nn == 2 && sgn(idx[0]) < sgn(idx[1])) std::swap(idx[0], idx[1]);
  if (nn == 3)
    std::sort(idx, idx + 3, [&](int a, int b) { return sgn(a) < sgn(b); });
  for (int k = 0; k < nn; ++k) {
    out.xi[k] = basis.v[3 + idx[k]];
    out.xi_sign[k] = sgn(idx[k]);
    out.shape[k] = shape_in_frame(j, tf, out.xi[k]);
  }
  return out;
}

double gaussian_curvature(const SurfaceJet& j) {
  const FundForms f = fundamental_forms(j);
  double k = 1.0;
  for (int i = 0; i < f.nnormals; ++i) k += f.xi_sign[i] * f.shape[i].det();
  return k;
}

ShapeData canonical_frames(const SurfaceJet& j, int c) {
  if (j.sig.dim != 5) throw std::invalid_argument("canonical_frames: needs a 5-dim ambient");
  const FundForms f = fundamental_forms(j);
  const double tr1 = f.shape[0].trace();
  const double tr2 = f.shape[1].trace();
  const double scale = std::max({std::fabs(f.shape[0](0, 0)), std::fabs(f.shape[0](0, 1)),
                                 std::fabs(f.shape[1](0, 0)), std::fabs(f.shape[1](0, 1)), 1e-8});
  if (std::fabs(tr1) < 1e-6 * scale && std::fabs(tr2) < 1e-6 * scale)
    throw MinimalPointError("canonical_frames: minimal point (trace-free shape pencil)");

  // Trace-free normal line.
  double w1 = -tr2, w2 = tr1;
  const double wn = std::hypot(w1, w2);
  w1 /= wn;
  w2 /= wn;
  const double q = w1 * w1 * f.xi_sign[0] + w2 * w2 * f.xi_sign[1];
  if (std::fabs(q) < 1e-6)
    throw InconsistencyError("canonical_frames: light-like trace-free line");
  const double qs = std::sqrt(std::fabs(q));
  const int eps = q > 0 ? 1 : -1;

  Vec xi1 = (w1 / qs) * f.xi[0] + (w2 / qs) * f.xi[1];
  Vec xi2(5);
  Mat2 A1, A2;
  if (c == 1) {
    xi2 = (-w2) * f.xi[0] + w1 * f.xi[1];
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        A1(r, s) = (w1 * f.shape[0](r, s) + w2 * f.shape[1](r, s)) / qs;
        A2(r, s) = -w2 * f.shape[0](r, s) + w1 * f.shape[1](r, s);
      }
  } else {
    // xi1 = alpha n_sp + beta n_tm (normalized); xi2 = beta n_sp + alpha n_tm.
    const double alpha = w1 / qs, beta = w2 / qs;
    xi2 = beta * f.xi[0] + alpha * f.xi[1];
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        A1(r, s) = alpha * f.shape[0](r, s) + beta * f.shape[1](r, s);
        A2(r, s) = beta * f.shape[0](r, s) + alpha * f.shape[1](r, s);
      }
  }

  // Rotate the tangent frame so A1 = a * offdiag(1,1) with a > 0: for the
  // trace-free components (d, o) = ((A11-A22)/2, A12) a rotation by tau
  // maps d -> d cos 2tau + o sin 2tau, so 2 tau = -atan2(d, o) kills d and
  // leaves o positive.
  double d1 = (A1(0, 0) - A1(1, 1)) / 2.0, o1 = A1(0, 1);
  const double tau = -0.5 * std::atan2(d1, o1);
  Mat2 A1r = rotate_sym(A1, tau);
  Mat2 A2r = rotate_sym(A2, tau);
  const double ct = std::cos(tau), st = std::sin(tau);
  Vec e1 = ct * f.e1 + st * f.e2;
  Vec e2 = -st * f.e1 + ct * f.e2;

  double res = std::max(std::fabs(A1r(0, 0)), std::fabs(A1r(1, 1)));
  double a = A1r(0, 1);
  if (a < 0) {  // e2 -> -e2 flips the off-diagonal entries only
    e2 *= -1.0;
    A1r(0, 1) = A1r(1, 0) = -A1r(0, 1);
    A2r(0, 1) = A2r(1, 0) = -A2r(0, 1);
    a = -a;
  }
  if (A2r(0, 0) < 0) {  // xi2 sign convention: (1,1) entry is +a h
    xi2 *= -1.0;
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) A2r(r, s) = -A2r(r, s);
  }

  auto swap_branch = [&]() {
    std::swap(e1, e2);
    std::swap(A2r.m[0][0], A2r.m[1][1]);
    if (c == 1 && A2r(0, 0) < 0) {
      xi2 *= -1.0;
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) A2r(r, s) = -A2r(r, s);
    }
  };

  double h = A2r(0, 0) / a;
  if (c == 1 && h > 0 && h < 1.0) {
    swap_branch();
    h = A2r(0, 0) / a;
  }
  if (c == -1) {
    const double pq = inner(j.p, j.p, j.sig);
    const Vec pn = (1.0 / std::sqrt(std::fabs(pq))) * j.p;
    if (det5(pn, e1, e2, xi1, xi2) * kOrientationCneg < 0) {
      swap_branch();
      h = A2r(0, 0) / a;
    }
  }

  if (c == 1 && std::fabs(h - 1.0) < kMinimalDelta)
    throw MinimalPointError("canonical_frames: within the minimal-point margin h -> 1");

  res = std::max(res, std::fabs(A2r(0, 1)));
  res = std::max(res, std::fabs(A2r(1, 1) + c * a / h));

  ShapeData sd;
  sd.e1 = e1;
  sd.e2 = e2;
  sd.xi1 = xi1;
  sd.xi2 = xi2;
  sd.A1 = A1r;
  sd.A2 = A2r;
  sd.a = a;
  sd.h = h;
  sd.eps = eps;
  sd.c = c;
  sd.form_residual = res;
  return sd;
}

ShapeData minimal_frames(const SurfaceJet& j) {
  if (j.sig.dim != 5 || j.sig.c != 1)
    throw std::invalid_argument("minimal_frames: expects a surface in S^4");
  const FundForms f = fundamental_forms(j);
  double res = std::max(std::fabs(f.shape[0].trace()), std::fabs(f.shape[1].trace()));

  double d2 = (f.shape[1](0, 0) - f.shape[1](1, 1)) / 2.0, o2 = f.shape[1](0, 1);
  const double tau = 0.5 * std::atan2(o2, d2);
  Mat2 A1 = rotate_sym(f.shape[0], tau);
  Mat2 A2 = rotate_sym(f.shape[1], tau);
  const double ct = std::cos(tau), st = std::sin(tau);
  Vec e1 = ct * f.e1 + st * f.e2;
  Vec e2 = -st * f.e1 + ct * f.e2;
  Vec xi1 = f.xi[0], xi2 = f.xi[1];

  res = std::max(res, std::fabs(A2(0, 1)));
  res = std::max(res, std::fabs(A1(0, 0)));  // off-diagonal normal form for A1
  if (A1(0, 1) < 0) {
    e2 *= -1.0;
    A1(0, 1) = A1(1, 0) = -A1(0, 1);
    A2(0, 1) = A2(1, 0) = -A2(0, 1);
  }
  if (A2(0, 0) < 0) {
    xi2 *= -1.0;
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) A2(r, s) = -A2(r, s);
  }
  const double a1 = A1(0, 1), a2 = A2(0, 0);
  res = std::max(res, std::fabs(a1 - a2));

  ShapeData sd;
  sd.e1 = e1;
  sd.e2 = e2;
  sd.xi1 = xi1;
  sd.xi2 = xi2;
  sd.A1 = A1;
  sd.A2 = A2;
  sd.a = 0.5 * (a1 + a2);
  sd.h = 1.0;
  sd.eps = 1;
  sd.c = 1;
  sd.form_residual = res;
  return sd;
}

HyperShape hyper_shape(const HyperJet& j) {
  const int m = j.m;
  // Orthonormal tangent frame by Gram-Schmidt (tangents are space-like).
  SignedBasis basis;
  const double pq = inner(j.p, j.p, j.sig);
  basis.push((1.0 / std::sqrt(std::fabs(pq))) * j.p, pq > 0 ? 1.0 : -1.0);
  double B[4][4] = {};
  std::array<Vec, 4> e;
  for (int a = 0; a < m; ++a) {
    Vec w = j.d[a];
    double coef[4] = {};
    for (int b = 0; b < a; ++b) {
      coef[b] = inner(w, e[b], j.sig);
      w -= coef[b] * e[b];
    }
    // also remove any drift along p (tangents are orthogonal to p on the quadric)
    w = project_out(w, basis, j.sig);
    const double n2v = inner(w, w, j.sig);
    if (n2v < 1e-10) throw RankError("hyper_shape: degenerate induced metric");
    const double s = std::sqrt(n2v);
    e[a] = (1.0 / s) * w;
    // (e_a) = (d_a - sum coef_b e_b - ...) / s  =>  chain through B
    B[a][a] = 1.0 / s;
    for (int b = 0; b < a; ++b)
      for (int t = 0; t <= b; ++t) B[a][t] -= coef[b] * B[b][t] / s;
  }
  for (int a = 0; a < m; ++a) basis.push(e[a], 1.0);
  complete_one(basis, j.sig);
  Vec N = basis.v[basis.n - 1];
  // Deterministic sign: largest-|entry| component positive.
  int big = 0;
  for (int i = 1; i < N.n; ++i)
    if (std::fabs(N[i]) > std::fabs(N[big])) big = i;
  if (N[big] < 0) N *= -1.0;

  double M[4][4];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) M[a][b] = inner(j.dd[a][b], N, j.sig);

  HyperShape out;
  out.m = m;
  out.shape = Mat(m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      double acc = 0;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) acc += B[k][a] * B[l][b] * M[a][b];
      out.shape(k, l) = acc;
    }
  double ev[6];
  sym_eigenvalues(out.shape, ev);
  for (int i = 0; i < m; ++i) out.eigenvalues[i] = ev[i];
  return out;
}

std::array<double, 4> ricci_eigenvalues(int c, const double* lambda, int m) {
  double sigma = 0;
  for (int i = 0; i < m; ++i) sigma += lambda[i];
  std::array<double, 4> r{};
  for (int i = 0; i < m; ++i) r[i] = (m - 1) * c + lambda[i] * (sigma - lambda[i]);
  return r;
}

std::array<double, 3> ricci_eigenvalues3(int c, const std::array<double, 3>& lambda) {
  const auto r = ricci_eigenvalues(c, lambda.data(), 3);
  return {r[0], r[1], r[2]};
}

double hyper_mean_curvature(const ShapeData& sd, double St) {
  return hyper_mean_curvature(sd.a, sd.h, sd.eps, sd.c, St);
}

double hyper_mean_curvature(double a, double h, int eps, int c, double St) {
  return c * eps * St * (h * h - c) / (h * a);
}

double surface_mean_curvature_sq(double h) {
  const double t = h * h - 1.0;
  return t * t / (h * h);
}

}  // namespace spaceform
