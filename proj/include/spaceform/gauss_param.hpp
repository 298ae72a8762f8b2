#pragma once

#include <vector>

#include "spaceform/numgeom.hpp"

// Unit normal bundle machinery: fiber directions over a polar surface, the
// hypersurface map that reads a normal vector as an ambient point, the
// fiberwise shape pencil, and the determinant-constancy scan that certifies
// curvature homogeneity.

namespace spaceform {

/// A point of the fiber: w = Ct*xi1 + St*xi2 with c*Ct^2 + St^2 = eps.
struct NormalDirection {
  double Ct = 1.0;
  double St = 0.0;
  int eps = 1;
  int c = 1;

  double constraint_residual() const {
    return std::fabs(c * Ct * Ct + St * St - eps);
  }
};

/// Fiber sample of the normal-bundle hypersurface at a base point.
struct FiberSample {
  std::array<double, 2> base{};
  NormalDirection dir;
  Vec position;
};

/// Fiber grids: c=1 walks the circle (cos t, sin t); c=-1 (eps must be +1)
/// walks (sinh t, +-cosh t) over [-T, T] on both sheets, 2n entries.
std::vector<NormalDirection> lambda_grid(int c, int eps, int n, double T = 3.0);

/// Parallel translation is the ambient identity: position = Ct xi1 + St xi2.
FiberSample f_hat(const ShapeData& sd, const std::array<double, 2>& base,
                  const NormalDirection& dir);

/// A_w = Ct A1 + St A2 in the canonical tangent frame.
Mat2 shape_Aw(const ShapeData& sd, const NormalDirection& dir);
double det_Aw(const ShapeData& sd, const NormalDirection& dir);

/// w is a regular point of the normal-bundle parametrization iff A_w is
/// invertible.
bool regularity(const ShapeData& sd, const NormalDirection& dir);

/// Nonzero principal curvatures of the hypersurface at this fiber point:
/// the eigenvalues of A_w^{-1}.
std::array<double, 2> hyper_principal_from_Aw(const Mat2& Aw);

struct GridSpec {
  int n0 = 50, n1 = 50;
  double lo0 = 0, hi0 = 1, lo1 = 0, hi1 = 1;
};

struct DetScanOptions {
  int n_fiber = 64;
  double fiber_T = 3.0;
  double step = kJetStep;
  /// Use the minimal-point normal form (needed on the Veronese surface,
  /// where the canonical frames reject every point).
  bool minimal_form = false;
};

struct DetScanReport {
  double reference = 0;     // expected det A_w
  double max_abs_dev = 0;
  std::array<double, 2> worst_base{};
  double worst_fiber = 0;
  long n_samples = 0;
  double measured_a = 0;    // sqrt(|det|) at the first sample
};

/// Sweeps det A_w over base grid x fiber directions using oracle frames
/// only (finite-difference jets; never the closed-form reduced variables)
/// and reports the worst deviation from `reference`.
///
/// dim-5 charts use the canonical (or minimal) frames with the
/// (Ct, St) fiber; the dim-6 chart sweeps w = cosh(r) xi0 +
/// sinh(r)(cos t xi1 + sin t xi2) over its three-normal frame.
DetScanReport det_scan(const ChartMap& chart, const GridSpec& grid, double reference,
                       const DetScanOptions& opt = {});

/// Default interior scan grid for a catalog chart.
GridSpec default_grid(const ChartMap& chart, int n0, int n1);

}  // namespace spaceform
