#pragma once

#include <array>
#include <functional>
#include <string>

#include "spaceform/linalg.hpp"

// Closed-form evaluation of the explicit immersions: the minimal Veronese
// surface, the flat Clifford polar torus in de Sitter space, the
// rotationally symmetric polar surfaces and hypersurfaces, the Cartan
// isoparametric hypersurface, and the pair living in R^{5,1}.

namespace spaceform {

using Vec3 = std::array<double, 3>;

enum class Immersion {
  Veronese,       // minimal Veronese surface in S^4
  CliffordPolar,  // flat torus in S^4_{-1} (de Sitter)
  RotPolar,       // rotational polar surface, c = +-1
  SphereChart,    // global sphere chart of the rotational surface, c=1
  RotHyper,       // rotational hypersurface family in Q^4_c
  CliffordHyper,  // unit normal bundle of the Clifford polar torus, in H^4
  Cartan,         // unit normal bundle of the Veronese surface, in S^4
  H5Polar,        // polar surface of the H^5 example, in S^5_{-1}
  H5Hyper,        // the rank-two hypersurface in H^5
  Generated,      // flow-generated leaf surface (internal tag)
};

const char* immersion_name(Immersion id);
/// Parses a CLI identifier ("veronese", "rot_polar", ...). Throws on unknown.
Immersion immersion_from_name(const std::string& name);

/// Left endpoint of the rotational r-range: arccos(sqrt(2/3)).
double rot_r0();

/// Range of the rotational chart: (0, r0) for c=1 and (r0, pi-r0) for c=-1.
/// Throws std::domain_error within 1e-9 of the boundary (the surface turns
/// singular there and the mean curvature blows up).
void rot_check_domain(int c, double r);

// ---- raw closed-form maps -------------------------------------------------

/// Standard minimal Veronese embedding of the unit sphere (antipodal-even).
/// Requires |x| = 1 within 1e-12.
Vec veronese(const Vec3& x);

/// Flat polar torus in S^4_{-1} subset R^{4,1}; 2*pi-periodic in both args.
Vec clifford_polar(double x, double y);

/// The Clifford torus itself, S^3(sqrt 2) subset R^4 (lifted to R^{4,1}),
/// and its Gauss map; building blocks of the associated hypersurface.
Vec clifford_torus(double x, double y);
Vec clifford_gauss_map(double x, double y);

/// Rotational polar surface in S^4_c.
Vec rot_polar(int c, double r, double theta);

/// Closed forms of the reduced variables along the rotational locus.
double rot_t0(int c, double r);
double rot_t1(int c, double r);

/// Sphere-parametrized algebraic surface containing the full c=1 image.
/// Requires u^2+v^2+w^2 = 1 within 1e-12.
Vec sphere_chart(double u, double v, double w);

/// Rotational hypersurface family (unified +-1 expression, hyperbolic
/// functions of alpha when c=-1).
Vec rot_hyper(int c, double r, double theta, double alpha);

/// Unit normal bundle of the Clifford polar torus, mapped into H^4.
Vec clifford_hyper(double x, double y, double t);

/// Polar surface of the H^5 example: (2 g1, 1)/sqrt(3) in S^5_{-1}.
Vec h5_polar(const Vec3& x);

/// The H^5 hypersurface through g1(x) with unit normal xi of the Veronese
/// surface (xi given as a 5-vector orthogonal to g1(x) and its tangents).
Vec h5_hyper(double s, const Vec& g1x, const Vec& xi);

/// Closed-form orthonormal normal frame of the Veronese surface at x, given
/// an orthonormal basis {v,w} of the plane orthogonal to x.
void veronese_normal_frame(const Vec3& x, const Vec3& v, const Vec3& w, Vec& xi1, Vec& xi2);

/// Cartan isoparametric hypersurface: psi-circle in the Veronese normal
/// plane over a spherical chart point.
Vec cartan_hyper(double theta, double phi, double psi);

// ---- plane curve and algebraic residuals ----------------------------------

/// beta(r) = 3 sin(r) (cos 2r, sin(2r)/2).
std::array<double, 2> beta_curve(double r);

/// (x^2+4y^2)^3 - 9 (x^2+4y^2)^2 + 81 y^2.
double beta_poly_residual(double x, double y);

/// Degree-8 polynomial cutting out the algebraic hypersurface that contains
/// the rotational family.  Returns the raw value; `relative` divides by
/// 1 + |term1| + |term2| so the bound is scale-free.
double fhat_poly_residual(const Vec& p, int c);
double fhat_poly_residual_relative(const Vec& p, int c);

// ---- chart plumbing for the finite-difference oracle -----------------------

struct DomainSpec {
  int nparams = 2;
  std::array<double, 4> lo{};    // open interval ends; +-inf when free
  std::array<double, 4> hi{};
  std::array<bool, 4> periodic{};
  /// True if q is inside with the given margin on non-periodic coordinates.
  bool contains(const double* q, double margin) const;
};

/// A parametric chart of one catalog immersion: params -> ambient point.
struct ChartMap {
  Immersion id;
  int c = 1;
  int nparams = 2;
  Signature sig;
  DomainSpec domain;
  double quadric_target = 1.0;  // inner(p,p) on the image
  std::function<Vec(const double*)> eval;
};

/// Builds the standard chart for an immersion (c ignored where fixed).
ChartMap make_chart(Immersion id, int c = 1);

/// Point on the unit sphere plus the orthonormal chart basis of its
/// orthogonal plane (spherical coordinates; avoid the poles).
void sphere_point_basis(double theta, double phi, Vec3& x, Vec3& v, Vec3& w);

}  // namespace spaceform
