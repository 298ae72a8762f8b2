#include "spaceform/leafspace.hpp"

#include <cmath>
#include <numeric>

#include "spaceform/catalog.hpp"
#include "spaceform/numgeom.hpp"
#include "spaceform/parallel.hpp"

namespace spaceform {

TState::TState(double t0_, double t1_, double t2_, double t3_, double a_, int eps_, int c_)
    : t0(t0_), t1(t1_), t2(t2_), t3(t3_), a(a_), eps(eps_), c(c_) {
  if (t0 <= 0) throw std::invalid_argument("TState: t0 must be positive");
  if (c != 1 && c != -1) throw std::invalid_argument("TState: c must be +-1");
  if (eps != 1 && eps != -1) throw std::invalid_argument("TState: eps must be +-1");
}

TDerivs t_derivatives(const TState& s) {
  const double t0 = s.t0, t1 = s.t1, t2 = s.t2, t3 = s.t3;
  const double c = s.c, eps = s.eps, a2 = s.a * s.a;
  const double t02 = t0 * t0, t04 = t02 * t02;
  const double den = t02 - c;
  if (std::fabs(den) < 1e-12) throw std::domain_error("t_derivatives: t0^2 = c singularity");

  TDerivs d;
  d.d[0][0] = t0 * t1;
  d.d[0][1] = t0 * t2;

  d.d[1][0] = (c * eps * a2 * (5.0 * t04 - 4.0 * c * t02 - 1.0) +
               2.0 * c * (t04 * (t2 * t2 - 1.0) - 2.0 * t1 * t1) +
               2.0 * t02 * (2.0 * t1 * t1 + 1.0)) /
              (2.0 * den);
  d.d[1][1] = t3 / t0 - t1 * t2 * t02 / den;

  d.d[2][0] = t3 / t0 - t1 * t2 * c / den;
  d.d[2][1] = (eps * a2 * (5.0 - 4.0 * c * t02 - t04) + 2.0 * c * t02 * (2.0 * t2 * t2 + 1.0) -
               2.0 * (2.0 * t04 * t2 * t2 - t1 * t1 + 1.0)) /
              (2.0 * t02 * den);

  const double k = 9.0 * eps * a2 - 4.0;
  d.d[3][0] = c * t02 * t0 * t2 * k + 6.0 * t1 * t3;
  d.d[3][1] = c * t1 * k - 4.0 * t0 * t2 * t3;
  return d;
}

double R0(const TState& s) {
  const double t0 = s.t0, t1 = s.t1, t2 = s.t2, t3 = s.t3;
  const double c = s.c, eps = s.eps, a2 = s.a * s.a;
  const double t02 = t0 * t0, t04 = t02 * t02;
  const double k = 9.0 * eps * a2 - 4.0;
  return 20.0 * c * t3 * t3 -
         k * (eps * a2 * (t04 + 10.0 * c * t02 + 1.0) - 12.0 * (t04 * t2 * t2 + t1 * t1) -
              4.0 * c * t02);
}

std::array<double, 3> P_poly(const LeafPoint& p) {
  const double u0 = p.u0, u1 = p.u1, u2 = p.u2, c = p.c;
  const double u02 = u0 * u0, u04 = u02 * u02;
  return {u02 * u0 * u1 * (u02 - c),
          u02 * (2.0 * (u02 - c) * (9.0 * u1 * u1 + 1.0) + c * u04 * (9.0 * u2 * u2 + 1.0) - u02) /
              9.0,
          -c * u02 * u1 * u2};
}

std::array<double, 3> Q_poly(const LeafPoint& p) {
  const double u0 = p.u0, u1 = p.u1, u2 = p.u2, c = p.c;
  const double u02 = u0 * u0, u04 = u02 * u02;
  return {u02 * u0 * u2 * (u02 - c), -u04 * u1 * u2,
          (-2.0 * u02 * (u02 - c) * (9.0 * u2 * u2 + 1.0) + 9.0 * u1 * u1 + 1.0 - c * u02) / 9.0};
}

namespace {

std::array<double, 3> n_table(const LeafPoint& p) {
  const double u0 = p.u0, u1 = p.u1, u2 = p.u2, c = p.c;
  const double u02 = u0 * u0, u04 = u02 * u02, u06 = u04 * u02;
  const double q1 = 9.0 * u1 * u1 + 1.0;
  const double q2 = 9.0 * u2 * u2 + 1.0;
  return {(-2.0 * c * u06 * q2 * q2 - 3.0 * u04 * (12.0 * u1 * u1 + 1.0) * q2 +
           3.0 * c * u02 * q1 * (12.0 * u2 * u2 + 1.0) + 2.0 * q1 * q1) /
              81.0,
          u0 * u1 * (2.0 * u04 * q2 - c * u02 * (27.0 * u2 * u2 + 1.0) - q1) / 9.0,
          u02 * u0 * u2 * (-c * u04 * q2 - u02 * (27.0 * u1 * u1 + 1.0) + 2.0 * c * q1) / 9.0};
}

/// One-time validation of the coefficient tables against the cross product.
void validate_tables(int c) {
  Rng rng(0x5eaf5eedull + static_cast<unsigned>(c == 1 ? 1 : 2));
  for (int k = 0; k < 64; ++k) {
    LeafPoint p;
    p.c = c;
    p.u0 = rng.uniform(0.3, 3.0);
    if (std::fabs(p.u0 * p.u0 - c) < 0.05) p.u0 += 0.3;
    p.u1 = rng.uniform(-2.0, 2.0);
    p.u2 = rng.uniform(-2.0, 2.0);
    const auto P = P_poly(p), Q = Q_poly(p), N = n_table(p);
    const std::array<double, 3> cross = {P[1] * Q[2] - P[2] * Q[1], P[2] * Q[0] - P[0] * Q[2],
                                         P[0] * Q[1] - P[1] * Q[0]};
    const double f = p.u0 * p.u0 * (p.u0 * p.u0 - c);
    double scale = 1e-30, dev = 0;
    for (int i = 0; i < 3; ++i) {
      scale = std::max(scale, std::fabs(cross[i]));
      dev = std::max(dev, std::fabs(cross[i] - f * N[i]));
    }
    if (dev / scale > 1e-9)
      throw InconsistencyError("leafspace: N table fails the cross-product identity");
  }
}

}  // namespace

std::array<double, 3> N_vec(const LeafPoint& p) {
  if (p.u0 <= 0) throw std::domain_error("N_vec: u0 must be positive");
  static const bool ok_pos = (validate_tables(1), true);
  static const bool ok_neg = (validate_tables(-1), true);
  (void)ok_pos;
  (void)ok_neg;
  return n_table(p);
}

double theta_eval(const LeafPoint& p, const std::array<double, 3>& du) {
  const auto n = N_vec(p);
  return n[0] * du[0] + n[1] * du[1] + n[2] * du[2];
}

double L_integral(const LeafPoint& p) {
  const double u0 = p.u0, c = p.c;
  const double q1 = 9.0 * p.u1 * p.u1 + 1.0;
  const double q2 = 9.0 * p.u2 * p.u2 + 1.0;
  const double u02 = u0 * u0, u04 = u02 * u02;
  const double num = u04 * std::pow(u02 * q2 + c * q1, 2);
  const double den = std::pow(u04 * q2 + c * u02 + q1, 3);
  if (den == 0.0) throw std::domain_error("L: vanishing denominator");
  return num / den;
}

double grad_check_L(const LeafPoint& p) {
  {
    const auto n0 = N_vec(p);
    const double nn = std::sqrt(n0[0] * n0[0] + n0[1] * n0[1] + n0[2] * n0[2]);
    const double scale = std::pow(std::max(p.u0, 1.0), 6) + p.u1 * p.u1 + p.u2 * p.u2 + 1.0;
    if (nn / scale < 1e-9)
      throw std::domain_error("grad_check_L: point lies on the singular curves");
  }
  const double h = 1e-5;
  std::array<double, 3> g{};
  for (int i = 0; i < 3; ++i) {
    LeafPoint lo = p, hi = p;
    double* plo = (i == 0) ? &lo.u0 : (i == 1) ? &lo.u1 : &lo.u2;
    double* phi = (i == 0) ? &hi.u0 : (i == 1) ? &hi.u1 : &hi.u2;
    const double hh = h * (1.0 + std::fabs(*phi));
    *plo -= hh;
    *phi += hh;
    g[i] = (L_integral(hi) - L_integral(lo)) / (2.0 * hh);
  }
  const auto n = N_vec(p);
  const std::array<double, 3> cr = {g[1] * n[2] - g[2] * n[1], g[2] * n[0] - g[0] * n[2],
                                    g[0] * n[1] - g[1] * n[0]};
  const double gn = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (gn * nn == 0.0) throw std::domain_error("grad_check_L: vanishing gradient or N");
  return std::sqrt(std::max(0.0, cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2])) / (gn * nn);
}

LeafPoint c1_point(double u0, int c) {
  const double rhs = (2.0 * u0 * u0 + c) * (u0 * u0 - c);
  if (rhs < 0) throw std::domain_error("c1_point: u0 outside the curve range");
  return {u0, std::sqrt(rhs) / 3.0, 0.0, c};
}

LeafPoint c2_point(double u0, int c) {
  const double i2 = 1.0 / (u0 * u0);
  const double rhs = (2.0 * i2 + c) * (i2 - c);
  if (rhs < 0) throw std::domain_error("c2_point: u0 outside the curve range");
  return {u0, 0.0, std::sqrt(rhs) / 3.0, c};
}

double waist_radius_from_level(double R) {
  if (R <= 0.0 || R > 4.0 / 27.0 + 1e-15)
    throw std::domain_error("waist_radius_from_level: R outside (0, 4/27]");
  // (rho+2)^2/(rho+3)^3 is strictly decreasing in rho = 9 r^2.
  double lo = 0.0, hi = 1.0;
  const auto f = [](double rho) { return std::pow(rho + 2.0, 2) / std::pow(rho + 3.0, 3); };
  while (f(hi) > R) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > R ? lo : hi) = mid;
  }
  return std::sqrt(0.5 * (lo + hi) / 9.0);
}

LeafClass leaf_classify(double R, int c) {
  if (!(R > 0.0 && R < 4.0 / 27.0))
    throw std::domain_error("leaf_classify: R outside (0, 4/27)");
  if (c == 1) return {LeafTopology::PairOfPantsUnion, waist_radius_from_level(R)};
  return {LeafTopology::TwoCylinders, 0.0};
}

double rot_locus_check(double r, int c) {
  const double t0 = rot_t0(c, r);
  const double t1 = rot_t1(c, r);
  const double t02 = t0 * t0;
  return std::fabs(9.0 * t1 * t1 - (2.0 * t02 + c) * (t02 - c));
}

double superharmonic_rhs(const TState& s) {
  const double h = s.t0, t1 = s.t1, t2 = s.t2;
  const double h2 = h * h, h4 = h2 * h2, h6 = h4 * h2;
  return (4.0 * h6 + h4 + 2.0 * h2 + 1.0) * t1 * t1 +
         h2 * (h6 + 2.0 * h4 + h2 + 4.0) * t2 * t2 + std::pow(h4 - 1.0, 2) / 9.0;
}

double superharmonic_residual(const TState& s) {
  if (!(s.c == 1 && s.eps == 1))
    throw std::invalid_argument("superharmonic_residual: stated for a=2/3, eps=1, c=1");
  const double t0 = s.t0, t1 = s.t1, t2 = s.t2;
  const double den = t0 * t0 - 1.0;
  // H(t0) = t0^2 - 2 + t0^{-2}
  const double Hp = 2.0 * t0 - 2.0 / (t0 * t0 * t0);
  const double Hpp = 2.0 + 6.0 / (t0 * t0 * t0 * t0);
  const TDerivs d = t_derivatives(s);
  const double e1h = Hp * t0 * t1;
  const double e2h = Hp * t0 * t2;
  const double e1e1 = Hpp * t0 * t0 * t1 * t1 + Hp * (t0 * t1 * t1 + t0 * d.d[1][0]);
  const double e2e2 = Hpp * t0 * t0 * t2 * t2 + Hp * (t0 * t2 * t2 + t0 * d.d[2][1]);
  const double w_e1 = -t0 * t0 * t2 / den;  // tangent connection on E1
  const double w_e2 = t1 / den;             // and on E2 (c = 1)
  const double lap = e1e1 + e2e2 - w_e1 * e2h + w_e2 * e1h;
  const double h4 = std::pow(t0, 4);
  return std::fabs(h4 * lap / 2.0 - superharmonic_rhs(s));
}

// ---- Fraction ---------------------------------------------------------------

namespace {
long long checked(__int128 v, const char* op) {
  if (v > static_cast<__int128>(0x3fffffffffffffffll) ||
      v < -static_cast<__int128>(0x3fffffffffffffffll))
    throw std::overflow_error(std::string("Fraction overflow in ") + op);
  return static_cast<long long>(v);
}
}  // namespace

Fraction::Fraction(long long n) : num(n), den(1) {}

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Fraction Fraction::operator+(const Fraction& o) const {
  const __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return {checked(n, "+"), checked(d, "+")};
}

Fraction Fraction::operator-(const Fraction& o) const {
  return *this + Fraction(-o.num, o.den);
}

Fraction Fraction::operator*(const Fraction& o) const {
  const __int128 n = static_cast<__int128>(num) * o.num;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return {checked(n, "*"), checked(d, "*")};
}

Fraction R0_exact(const Fraction t[4], const Fraction& a, int eps, int c) {
  const Fraction a2 = a * a;
  const Fraction e(eps), cc(c);
  const Fraction t02 = t[0] * t[0];
  const Fraction t04 = t02 * t02;
  const Fraction k = Fraction(9) * e * a2 - Fraction(4);
  const Fraction inner = e * a2 * (t04 + Fraction(10) * cc * t02 + Fraction(1)) -
                         Fraction(12) * (t04 * t[2] * t[2] + t[1] * t[1]) -
                         Fraction(4) * cc * t02;
  return Fraction(20) * cc * t[3] * t[3] - k * inner;
}

}  // namespace spaceform
