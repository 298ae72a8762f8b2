#include "spaceform/catalog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spaceform {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kBoundaryMargin = 1e-9;

void require_unit3(const Vec3& x, const char* who) {
  const double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  if (std::fabs(n2 - 1.0) > 2.5e-12)
    throw std::invalid_argument(std::string(who) + ": input is not a unit vector");
}

/// Linear isometry (up to the fixed scale sqrt(3/2)) from traceless
/// symmetric 3x3 matrices onto R^5; the Veronese map is x x^T - I/3 in
/// these coordinates.
Vec sym3_to_r5(double m11, double m22, double m33, double m23, double m13, double m12) {
  Vec r(5);
  r[0] = kSqrt3 * m23;
  r[1] = kSqrt3 * m13;
  r[2] = kSqrt3 * m12;
  r[3] = kSqrt3 * (m11 - m22) / 2.0;
  r[4] = (m11 + m22 - 2.0 * m33) / 2.0;
  return r;
}
}  // namespace

const char* immersion_name(Immersion id) {
  switch (id) {
    case Immersion::Veronese: return "veronese";
    case Immersion::CliffordPolar: return "clifford_polar";
    case Immersion::RotPolar: return "rot_polar";
    case Immersion::SphereChart: return "sphere_chart";
    case Immersion::RotHyper: return "rot_hyper";
    case Immersion::CliffordHyper: return "clifford_hyper";
    case Immersion::Cartan: return "cartan";
    case Immersion::H5Polar: return "h5_polar";
    case Immersion::H5Hyper: return "h5_hyper";
    case Immersion::Generated: return "generated";
  }
  return "?";
}

Immersion immersion_from_name(const std::string& name) {
  for (Immersion id : {Immersion::Veronese, Immersion::CliffordPolar, Immersion::RotPolar,
                       Immersion::SphereChart, Immersion::RotHyper, Immersion::CliffordHyper,
                       Immersion::Cartan, Immersion::H5Polar, Immersion::H5Hyper})
    if (name == immersion_name(id)) return id;
  throw std::invalid_argument("unknown immersion id: " + name);
}

double rot_r0() { return std::acos(std::sqrt(2.0 / 3.0)); }

void rot_check_domain(int c, double r) {
  const double r0 = rot_r0();
  const double lo = (c == 1) ? 0.0 : r0;
  const double hi = (c == 1) ? r0 : M_PI - r0;
  if (r < lo + kBoundaryMargin || r > hi - kBoundaryMargin)
    throw std::domain_error("rot chart: r outside the open range for c=" + std::to_string(c));
}

Vec veronese(const Vec3& x) {
  require_unit3(x, "veronese");
  const double a = x[0], b = x[1], cz = x[2];
  Vec r(5);
  r[0] = kSqrt3 * b * cz;
  r[1] = kSqrt3 * cz * a;
  r[2] = kSqrt3 * a * b;
  r[3] = kSqrt3 * (a * a - b * b) / 2.0;
  r[4] = (a * a + b * b - 2.0 * cz * cz) / 2.0;
  return r;
}

Vec clifford_polar(double x, double y) {
  const double cx = std::cos(x), sx = std::sin(x);
  const double cy = std::cos(y), sy = std::sin(y);
  Vec r(5);
  r[0] = 2.0 * cx * cy - 1.0;
  r[1] = -kSqrt2 * sx * cy;
  r[2] = -kSqrt2 * cx * sy;
  r[3] = kSqrt2 * sx * sy;
  r[4] = -kSqrt2 * cx * cy + kSqrt2;
  return r;
}

Vec clifford_torus(double x, double y) {
  const double cx = std::cos(x), sx = std::sin(x);
  const double cy = std::cos(y), sy = std::sin(y);
  Vec r(5);
  r[0] = kSqrt2 * cx * cy;
  r[1] = kSqrt2 * cx * sy;
  r[2] = kSqrt2 * sx * cy;
  r[3] = kSqrt2 * sx * sy;
  r[4] = 0.0;
  return r;
}

Vec clifford_gauss_map(double x, double y) {
  // h_xy / sqrt(2)
  const double cx = std::cos(x), sx = std::sin(x);
  const double cy = std::cos(y), sy = std::sin(y);
  Vec r(5);
  r[0] = sx * sy;
  r[1] = -sx * cy;
  r[2] = -cx * sy;
  r[3] = cx * cy;
  r[4] = 0.0;
  return r;
}

Vec rot_polar(int c, double r, double theta) {
  rot_check_domain(c, r);
  const double S = std::sin(r);
  const double c2r = std::cos(2.0 * r), s2r = std::sin(2.0 * r);
  const double w2 = (3.0 * c2r - 1.0) / (2.0 * c);
  Vec g(5);
  g[0] = 3.0 * std::sin(theta) * S * c2r;
  g[1] = 3.0 * std::cos(theta) * S * c2r;
  g[2] = 1.5 * std::sin(2.0 * theta) * S * s2r;
  g[3] = 1.5 * std::cos(2.0 * theta) * S * s2r;
  g[4] = std::pow(w2, 1.5);
  return g;
}

double rot_t0(int c, double r) {
  return std::sqrt(2.0 * c / (3.0 * std::cos(2.0 * r) - 1.0));
}

double rot_t1(int c, double r) {
  (void)c;
  return std::sin(2.0 * r) / (3.0 * std::cos(2.0 * r) - 1.0);
}

Vec sphere_chart(double u, double v, double w) {
  const double n2 = u * u + v * v + w * w;
  if (std::fabs(n2 - 1.0) > 2.5e-12)
    throw std::invalid_argument("sphere_chart: (u,v,w) is not a unit triple");
  const double q = std::sqrt(2.0 + w * w);
  Vec y(5);
  y[0] = u * (1.0 + 2.0 * w * w) / kSqrt3;
  y[1] = v * (1.0 + 2.0 * w * w) / kSqrt3;
  y[2] = 2.0 * u * v * q / kSqrt3;
  y[3] = (u * u - v * v) * q / kSqrt3;
  y[4] = w * w * w;
  return y;
}

Vec rot_hyper(int c, double r, double theta, double alpha) {
  rot_check_domain(c, r);
  const double w = std::sqrt((3.0 * std::cos(2.0 * r) - 1.0) / (2.0 * c));
  // Fiber coefficients (C_t, S_t) with c C_t^2 + S_t^2 = 1: the circle for
  // c = 1; for c = -1 the time-like weight is the cosh one, so that
  // <f,f> = c on the nose.
  const double cc = (c == 1) ? std::cos(alpha) : std::sinh(alpha);
  const double sc = (c == 1) ? std::sin(alpha) : std::cosh(alpha);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double s2t = std::sin(2.0 * theta), c2t = std::cos(2.0 * theta);
  const double sr = std::sin(r), cr = std::cos(r);
  const double s2r = std::sin(2.0 * r), c2r = std::cos(2.0 * r);
  Vec f(5);
  f[0] = cc * s2t * c2r - sc * c2t * cr * w;
  f[1] = cc * c2t * c2r + sc * s2t * cr * w;
  f[2] = cc * st * s2r - 2.0 * sc * ct * sr * w;
  f[3] = cc * ct * s2r + 2.0 * sc * st * sr * w;
  f[4] = 1.5 * sc * (c2r - 1.0);
  return f;
}

Vec clifford_hyper(double x, double y, double t) {
  const Vec h = clifford_torus(x, y);
  const Vec xi = clifford_gauss_map(x, y);
  const double ch = std::cosh(t), sh = std::sinh(t);
  Vec f(5);
  for (int i = 0; i < 4; ++i) f[i] = (ch * h[i] + kSqrt2 * sh * xi[i]) / kSqrt2;
  f[4] = 2.0 * ch / kSqrt2;
  return f;
}

Vec h5_polar(const Vec3& x) {
  const Vec g1 = veronese(x);
  Vec r(6);
  for (int i = 0; i < 5; ++i) r[i] = 2.0 * g1[i] / kSqrt3;
  r[5] = 1.0 / kSqrt3;
  return r;
}

Vec h5_hyper(double s, const Vec& g1x, const Vec& xi) {
  const double ch = std::cosh(s), sh = std::sinh(s);
  Vec f(6);
  for (int i = 0; i < 5; ++i) f[i] = (ch * g1x[i] + kSqrt3 * sh * xi[i]) / kSqrt3;
  f[5] = 2.0 * ch / kSqrt3;
  return f;
}

void veronese_normal_frame(const Vec3& x, const Vec3& v, const Vec3& w, Vec& xi1, Vec& xi2) {
  (void)x;
  // xi1 = Phi(v w^T + w v^T)/sqrt3, xi2 = Phi(v v^T - w w^T)/sqrt3: unit,
  // mutually orthogonal, normal to the surface and to its position vector.
  const double s = 1.0 / kSqrt3;
  xi1 = sym3_to_r5(2 * v[0] * w[0], 2 * v[1] * w[1], 2 * v[2] * w[2],
                   v[1] * w[2] + v[2] * w[1], v[0] * w[2] + v[2] * w[0],
                   v[0] * w[1] + v[1] * w[0]);
  xi2 = sym3_to_r5(v[0] * v[0] - w[0] * w[0], v[1] * v[1] - w[1] * w[1],
                   v[2] * v[2] - w[2] * w[2], v[1] * v[2] - w[1] * w[2],
                   v[0] * v[2] - w[0] * w[2], v[0] * v[1] - w[0] * w[1]);
  xi1 *= s;
  xi2 *= s;
}

void sphere_point_basis(double theta, double phi, Vec3& x, Vec3& v, Vec3& w) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  x = {st * cp, st * sp, ct};
  v = {ct * cp, ct * sp, -st};
  w = {-sp, cp, 0.0};
}

Vec cartan_hyper(double theta, double phi, double psi) {
  Vec3 x, v, w;
  sphere_point_basis(theta, phi, x, v, w);
  Vec xi1(5), xi2(5);
  veronese_normal_frame(x, v, w, xi1, xi2);
  return std::cos(psi) * xi1 + std::sin(psi) * xi2;
}

std::array<double, 2> beta_curve(double r) {
  const double s = std::sin(r);
  return {3.0 * s * std::cos(2.0 * r), 1.5 * s * std::sin(2.0 * r)};
}

double beta_poly_residual(double x, double y) {
  const double q = x * x + 4.0 * y * y;
  return q * q * q - 9.0 * q * q + 81.0 * y * y;
}

namespace {
// Unified degree-8 relation cutting out the algebraic hypersurface that
// contains the rotational family: 64 x5^4 (cR+1) = (x5^2 (R^2 - 4cR - 8)
// - 27 c Q^2)^2 with R = 8x1^2 + 8x2^2 - x3^2 - x4^2 and
// Q = x1(x3^2 - x4^2) + 2 x2 x3 x4.  For c = 1 this is the classical form;
// the c = -1 branch is obtained by eliminating the chart parameters from
// the H^4-valued parametrization (R appears with a sign there).
void fhat_poly_terms(const Vec& p, int c, double& t1, double& t2) {
  const double x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3], x5 = p[4];
  const double R = 8.0 * x1 * x1 + 8.0 * x2 * x2 - x3 * x3 - x4 * x4;
  const double x52 = x5 * x5;
  t1 = 64.0 * x52 * x52 * (c * R + 1.0);
  const double cubic = x1 * (x3 * x3 - x4 * x4) + 2.0 * x2 * x3 * x4;
  const double inner = x52 * (R * R - 4.0 * c * R - 8.0) - 27.0 * c * cubic * cubic;
  t2 = inner * inner;
}
}  // namespace

double fhat_poly_residual(const Vec& p, int c) {
  double t1, t2;
  fhat_poly_terms(p, c, t1, t2);
  return t1 - t2;
}

double fhat_poly_residual_relative(const Vec& p, int c) {
  double t1, t2;
  fhat_poly_terms(p, c, t1, t2);
  return (t1 - t2) / (1.0 + std::fabs(t1) + std::fabs(t2));
}

bool DomainSpec::contains(const double* q, double margin) const {
  for (int i = 0; i < nparams; ++i) {
    if (periodic[i]) continue;
    if (q[i] < lo[i] + margin || q[i] > hi[i] - margin) return false;
  }
  return true;
}

ChartMap make_chart(Immersion id, int c) {
  ChartMap m;
  m.id = id;
  m.c = c;
  const double r0 = rot_r0();
  switch (id) {
    case Immersion::Veronese:
      m.nparams = 2;
      m.sig = Signature::sphere5();
      m.quadric_target = 1.0;
      m.domain = {2, {0.25, -kInf}, {M_PI - 0.25, kInf}, {false, true}};
      m.eval = [](const double* q) {
        Vec3 x, v, w;
        sphere_point_basis(q[0], q[1], x, v, w);
        return veronese(x);
      };
      break;
    case Immersion::CliffordPolar:
      m.nparams = 2;
      m.sig = Signature::lorentz5();
      m.c = -1;
      m.quadric_target = 1.0;
      m.domain = {2, {-kInf, -kInf}, {kInf, kInf}, {true, true}};
      m.eval = [](const double* q) { return clifford_polar(q[0], q[1]); };
      break;
    case Immersion::RotPolar:
      m.nparams = 2;
      m.sig = Signature(5, c, 1);
      m.quadric_target = 1.0;
      m.domain = {2,
                  {c == 1 ? 0.0 : r0, -kInf},
                  {c == 1 ? r0 : M_PI - r0, kInf},
                  {false, true}};
      m.eval = [c](const double* q) { return rot_polar(c, q[0], q[1]); };
      break;
    case Immersion::SphereChart:
      m.nparams = 2;
      m.sig = Signature::sphere5();
      m.c = 1;
      m.quadric_target = 1.0;
      m.domain = {2, {0.25, -kInf}, {M_PI - 0.25, kInf}, {false, true}};
      m.eval = [](const double* q) {
        const double st = std::sin(q[0]);
        return sphere_chart(st * std::cos(q[1]), st * std::sin(q[1]), std::cos(q[0]));
      };
      break;
    case Immersion::RotHyper:
      m.nparams = 3;
      m.sig = Signature(5, c, 1);
      m.quadric_target = static_cast<double>(c);
      m.domain = {3,
                  {c == 1 ? 0.0 : r0, -kInf, -kInf},
                  {c == 1 ? r0 : M_PI - r0, kInf, kInf},
                  {false, true, c == 1}};
      m.eval = [c](const double* q) { return rot_hyper(c, q[0], q[1], q[2]); };
      break;
    case Immersion::CliffordHyper:
      m.nparams = 3;
      m.sig = Signature::lorentz5();
      m.c = -1;
      m.quadric_target = -1.0;
      m.domain = {3, {-kInf, -kInf, -3.0}, {kInf, kInf, 3.0}, {true, true, false}};
      m.eval = [](const double* q) { return clifford_hyper(q[0], q[1], q[2]); };
      break;
    case Immersion::Cartan:
      m.nparams = 3;
      m.sig = Signature::sphere5();
      m.c = 1;
      m.quadric_target = 1.0;
      m.domain = {3, {0.25, -kInf, -kInf}, {M_PI - 0.25, kInf, kInf}, {false, true, true}};
      m.eval = [](const double* q) { return cartan_hyper(q[0], q[1], q[2]); };
      break;
    case Immersion::H5Polar:
      m.nparams = 2;
      m.sig = Signature::lorentz6();
      m.c = -1;
      m.quadric_target = 1.0;
      m.domain = {2, {0.25, -kInf}, {M_PI - 0.25, kInf}, {false, true}};
      m.eval = [](const double* q) {
        Vec3 x, v, w;
        sphere_point_basis(q[0], q[1], x, v, w);
        return h5_polar(x);
      };
      break;
    case Immersion::H5Hyper:
      // Chart (theta, phi, psi, s); s stays off 0 where the psi-circle
      // collapses to the fiber pole.
      m.nparams = 4;
      m.sig = Signature::lorentz6();
      m.c = -1;
      m.quadric_target = -1.0;
      m.domain = {4, {0.25, -kInf, -kInf, 0.2}, {M_PI - 0.25, kInf, kInf, 1.5},
                  {false, true, true, false}};
      m.eval = [](const double* q) {
        Vec3 x, v, w;
        sphere_point_basis(q[0], q[1], x, v, w);
        Vec xi1(5), xi2(5);
        veronese_normal_frame(x, v, w, xi1, xi2);
        const Vec xi = std::cos(q[2]) * xi1 + std::sin(q[2]) * xi2;
        return h5_hyper(q[3], veronese(x), xi);
      };
      break;
    case Immersion::Generated:
      throw std::invalid_argument("make_chart: generated surfaces build their own chart");
  }
  return m;
}

}  // namespace spaceform
