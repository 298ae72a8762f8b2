#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "spaceform/linalg.hpp"

// The reduced variables (t0, t1, t2, t3) and their evolution against the
// coframe (w1, w2); the compatibility polynomial R0; and the geometry of
// the quotient (u0, u1, u2)-space: the 1-form theta = <N, du>, its singular
// curves C1/C2, the first integral L, and the leaf classification.

namespace spaceform {

/// Reduced state.  t0 = h > 0 and t0^2 != c away from the frame
/// degeneracy; family states (a = 2/3, eps = 1) carry t3 = 0 identically.
struct TState {
  double t0 = 2.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double a = 2.0 / 3.0;
  int eps = 1;
  int c = 1;

  TState() = default;
  TState(double t0_, double t1_, double t2_, double t3_, double a_, int eps_, int c_);

  static TState family(double t0, double t1, double t2, int c) {
    return {t0, t1, t2, 0.0, 2.0 / 3.0, 1, c};
  }
  bool is_family() const { return eps == 1 && t3 == 0.0 && std::fabs(a - 2.0 / 3.0) < 1e-15; }
};

/// Coefficients of dt_i = d[i][0] w1 + d[i][1] w2.
struct TDerivs {
  double d[4][2];
};

/// Full general-(a, eps) coefficient set; reduces to the family matrix at
/// a = 2/3, eps = 1, t3 = 0.  Throws on t0^2 = c.
TDerivs t_derivatives(const TState& s);

/// Compatibility polynomial; identically 20 c t3^2 when a = 2/3, eps = 1.
double R0(const TState& s);

/// Point of the reduced quotient space, u0 > 0.
struct LeafPoint {
  double u0 = 2.0, u1 = 0.0, u2 = 0.0;
  int c = 1;
};

/// Coefficient vectors of the reduced system: t0^2 (t0^2 - c) dt = P w1 + Q w2.
std::array<double, 3> P_poly(const LeafPoint& p);
std::array<double, 3> Q_poly(const LeafPoint& p);

/// N = (P x Q) / (u0^2 (u0^2 - c)), stored as an explicit coefficient
/// table.  The exact division is validated once against the cross product
/// on random samples; failure raises InconsistencyError.
std::array<double, 3> N_vec(const LeafPoint& p);

/// theta = <N(u), du> (Euclidean pairing).
double theta_eval(const LeafPoint& p, const std::array<double, 3>& du);

/// First integral of the kernel distribution of theta; 0 <= L <= 4/27 on
/// the valid domain, with equality 4/27 exactly on C1 and C2.
double L_integral(const LeafPoint& p);

/// || grad L x N || / (||grad L|| ||N||) with a central-difference
/// gradient; ~0 certifies theta ^ dL = 0.
double grad_check_L(const LeafPoint& p);

/// Points of the singular curves (positive branch), parametrized by u0.
LeafPoint c1_point(double u0, int c);
LeafPoint c2_point(double u0, int c);

enum class LeafTopology { PairOfPantsUnion, TwoCylinders };

struct LeafClass {
  LeafTopology tag;
  double waist_radius = 0;  // c=1 only: r with (9r^2+2)^2/(9r^2+3)^3 = R
};

/// Classifies the leaf L^{-1}(R); R must lie in (0, 4/27).
LeafClass leaf_classify(double R, int c);

/// Solves (9r^2+2)^2/(9r^2+3)^3 = R for r >= 0 (R in (0, 4/27]).
double waist_radius_from_level(double R);

/// |9 t1^2 - (2 t0^2 + c)(t0^2 - c)| with the rotational closed forms
/// substituted; identically 0 on the rotational locus.
double rot_locus_check(double r, int c);

/// Right-hand side of the mean-curvature Laplacian identity
/// (a=2/3, eps=1, c=1); nonnegative on family states.
double superharmonic_rhs(const TState& s);

/// |h^4 dH/2 - rhs| where the Laplacian of H = (h^2-1)^2/h^2 is computed
/// from the structure-equation derivatives (chain rule through
/// t_derivatives), not from the closed form.
double superharmonic_residual(const TState& s);

// ---- exact rational arithmetic (spot checks only) ---------------------------

/// Small exact fraction on int64 with overflow detection; enough for the
/// degree <= 12 polynomial spot checks at small rational states.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n);  // NOLINT(google-explicit-constructor)
  Fraction(long long n, long long d);

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// R0 evaluated exactly; with a = 2/3, eps = 1 this equals 20 c t3^2 as an
/// exact fraction.
Fraction R0_exact(const Fraction t[4], const Fraction& a, int eps, int c);

}  // namespace spaceform
