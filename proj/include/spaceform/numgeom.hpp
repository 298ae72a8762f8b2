#pragma once

#include <array>
#include <stdexcept>

#include "spaceform/catalog.hpp"
#include "spaceform/linalg.hpp"

// The independent brute-force oracle: fourth-order central-difference jets,
// fundamental forms, shape operators, curvatures, and the canonical shape
// frames.  Nothing here reuses the closed-form reduced variables; everything
// is measured from sampled positions.

namespace spaceform {

/// Thrown where the canonical frame normal form degenerates (h -> 1, c=1):
/// any orthonormal tangent pair gives the same normal form there, so the
/// frames are not unique and the solve is ill-conditioned.
struct MinimalPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal consistency requirement fails (light-like
/// trace-free line, inexact polynomial division).  Signals an oracle bug or
/// an input outside the class this machinery is built for, not a user error.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on degenerate induced metrics.
struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mat2 {
  double m[2][2]{};
  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
  double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  double trace() const { return m[0][0] + m[1][1]; }
};

/// 2-parameter jet: position with first and second partials.
struct SurfaceJet {
  Vec p, du, dv, duu, duv, dvv;
  Signature sig;
  double quadric_target = 1.0;
};

/// m-parameter jet (m = 3 or 4) for hypersurfaces of Q^{m+1}_c.
struct HyperJet {
  int m = 3;
  Vec p;
  std::array<Vec, 4> d;
  std::array<std::array<Vec, 4>, 4> dd;
  Signature sig;
  double quadric_target = 1.0;
};

/// Default finite-difference step.  The stencils are O(step^4) accurate;
/// 1e-3 balances that truncation against the eps/step^2 roundoff of the
/// second differences (~2e-10), which dominates at smaller steps.
inline constexpr double kJetStep = 1e-3;

SurfaceJet surface_jet(const ChartMap& chart, const double* q, double step = kJetStep);
HyperJet hyper_jet(const ChartMap& chart, const double* q, double step = kJetStep);

/// First and second fundamental forms in a computed orthonormal frame.
struct FundForms {
  Mat2 I;                               // induced metric in the chart basis
  Vec e1, e2;                           // orthonormal tangent frame
  int nnormals = 2;                     // 2 (dim 5) or 3 (dim 6)
  std::array<Vec, 3> xi;                // orthonormal normal frame
  std::array<double, 3> xi_sign{};      // <xi_i, xi_i> = +-1
  std::array<Mat2, 3> shape;            // shape operators in (e1,e2)
};

/// Computes I and the shape-operator family.  For dim 6 the time-like
/// normal comes first; for Lorentzian dim 5 the space-like one does.
FundForms fundamental_forms(const SurfaceJet& j);

/// Intrinsic Gaussian curvature via the Gauss equation of the unit quadric:
/// K = 1 + sum_i <xi_i,xi_i> det(shape_i).
double gaussian_curvature(const SurfaceJet& j);

/// Canonical shape frames: A1 = a*offdiag(1,1), A2 = a*diag(h, -c/h).
struct ShapeData {
  Vec e1, e2, xi1, xi2;
  Mat2 A1, A2;        // measured matrices in the canonical frames
  double a = 0;       // > 0
  double h = 0;       // > 0; > 1 when c = 1
  int eps = 1;        // <xi1, xi1>
  int c = 1;
  double form_residual = 0;  // max deviation from the exact pattern
};

/// Rejection threshold around h=1 (c=1 only).
inline constexpr double kMinimalDelta = 1e-3;

/// Resolves the sign/permutation ambiguity deterministically: the (1,2)
/// entry of A1 is +a, the (1,1) entry of A2 is +a h, the branch h>1 is
/// taken when c=1, and for c=-1 the ambient orientation of
/// (p, e1, e2, xi1, xi2) breaks the h <-> 1/h tie.
ShapeData canonical_frames(const SurfaceJet& j, int c);

/// Normal form at minimal points (trace-free shape pencil): A1 and A2 as
/// above with h = 1.  Used for the Veronese surface where canonical_frames
/// rejects every point.
ShapeData minimal_frames(const SurfaceJet& j);

/// Hypersurface shape operator in the orthonormal tangent frame, plus its
/// eigenvalues in ascending order.
struct HyperShape {
  int m = 3;
  Mat shape;                      // m x m symmetric
  std::array<double, 4> eigenvalues{};
};

HyperShape hyper_shape(const HyperJet& j);

/// Ricci eigenvalues of a hypersurface of Q^{m+1}_c from its principal
/// curvatures: Ric_i = (m-1) c + lambda_i (sigma - lambda_i).
std::array<double, 4> ricci_eigenvalues(int c, const double* lambda, int m = 3);
std::array<double, 3> ricci_eigenvalues3(int c, const std::array<double, 3>& lambda);

/// Mean curvature of the hypersurface point C_t xi1 + S_t xi2 over a
/// surface in canonical form: c*eps*S_t*(h^2 - c)/(h a).
double hyper_mean_curvature(const ShapeData& sd, double St);
double hyper_mean_curvature(double a, double h, int eps, int c, double St);

/// Squared mean curvature of the polar surface itself (c=1 normalization
/// used by the blow-up analysis): (h^2-1)^2 / h^2.
double surface_mean_curvature_sq(double h);

}  // namespace spaceform
