#include "spaceform/gauss_param.hpp"

#include <cmath>
#include <stdexcept>

#include "spaceform/parallel.hpp"

namespace spaceform {

std::vector<NormalDirection> lambda_grid(int c, int eps, int n, double T) {
  if (n < 2) throw std::invalid_argument("lambda_grid: n >= 2 required");
  if (c == 1 && eps != 1) throw std::invalid_argument("lambda_grid: c=1 forces eps=1");
  if (c == -1 && eps == -1)
    throw std::invalid_argument("lambda_grid: the eps=-1 fiber family is rejected (only eps=1 occurs)");
  std::vector<NormalDirection> out;
  if (c == 1) {
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * M_PI * k / n;
      out.push_back({std::cos(t), std::sin(t), 1, 1});
    }
  } else {
    out.reserve(2 * n);
    for (int sheet = 0; sheet < 2; ++sheet)
      for (int k = 0; k < n; ++k) {
        const double t = -T + 2.0 * T * k / (n - 1);
        out.push_back({std::sinh(t), (sheet == 0 ? 1.0 : -1.0) * std::cosh(t), 1, -1});
      }
  }
  return out;
}

FiberSample f_hat(const ShapeData& sd, const std::array<double, 2>& base,
                  const NormalDirection& dir) {
  FiberSample s;
  s.base = base;
  s.dir = dir;
  s.position = dir.Ct * sd.xi1 + dir.St * sd.xi2;
  return s;
}

Mat2 shape_Aw(const ShapeData& sd, const NormalDirection& dir) {
  Mat2 aw;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) aw(i, j) = dir.Ct * sd.A1(i, j) + dir.St * sd.A2(i, j);
  return aw;
}

double det_Aw(const ShapeData& sd, const NormalDirection& dir) {
  return shape_Aw(sd, dir).det();
}

bool regularity(const ShapeData& sd, const NormalDirection& dir) {
  return std::fabs(det_Aw(sd, dir)) > 1e-10;
}

std::array<double, 2> hyper_principal_from_Aw(const Mat2& Aw) {
  const double d = Aw.det();
  if (std::fabs(d) < 1e-300) throw std::domain_error("hyper_principal_from_Aw: singular A_w");
  // eigenvalues of the inverse of a symmetric 2x2
  const double tr = Aw.trace();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * d));
  const double l1 = (tr - disc) / 2.0, l2 = (tr + disc) / 2.0;
  return {1.0 / l1, 1.0 / l2};
}

GridSpec default_grid(const ChartMap& chart, int n0, int n1) {
  GridSpec g;
  g.n0 = n0;
  g.n1 = n1;
  const auto pick = [&](int axis, double& lo, double& hi) {
    const double dlo = chart.domain.lo[axis], dhi = chart.domain.hi[axis];
    if (std::isfinite(dlo) && std::isfinite(dhi)) {
      const double margin = 0.08 * (dhi - dlo);
      lo = dlo + margin;
      hi = dhi - margin;
    } else {
      lo = 0.0;
      hi = 2.0 * M_PI;
    }
  };
  pick(0, g.lo0, g.hi0);
  pick(1, g.lo1, g.hi1);
  // Keep clear of the minimal point of the c=1 rotational chart (h -> 1 as
  // r -> 0 makes the canonical frames reject points there).
  if (chart.id == Immersion::RotPolar && chart.c == 1) g.lo0 = std::max(g.lo0, 0.06);
  return g;
}

namespace {

double fiber_det_worst(const FundForms& f, int n_fiber, double T, double reference,
                       double* worst_fiber) {
  // dim-6 fiber: w = cosh(r) xi0 + sinh(r)(cos t xi1 + sin t xi2); xi0 is
  // the time-like normal (first by convention).
  int nr = 8, nt = (n_fiber + 7) / 8;
  double worst = 0;
  for (int ir = 0; ir < nr; ++ir) {
    const double r = T * ir / (nr - 1);
    for (int it = 0; it < nt; ++it) {
      const double t = 2.0 * M_PI * it / nt;
      Mat2 aw;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          aw(i, j) = std::cosh(r) * f.shape[0](i, j) +
                     std::sinh(r) * (std::cos(t) * f.shape[1](i, j) +
                                     std::sin(t) * f.shape[2](i, j));
      const double dev = std::fabs(aw.det() - reference);
      if (dev > worst) {
        worst = dev;
        *worst_fiber = r;
      }
    }
  }
  return worst;
}

}  // namespace

DetScanReport det_scan(const ChartMap& chart, const GridSpec& grid, double reference,
                       const DetScanOptions& opt) {
  DetScanReport rep;
  rep.reference = reference;

  const long npts = static_cast<long>(grid.n0) * grid.n1;
  struct Slot {
    double dev = -1;
    std::array<double, 2> base{};
    double fiber = 0;
    double a = 0;
    std::string error;
  };
  std::vector<Slot> slots(npts);

  const auto fibers = (chart.sig.dim == 5)
                          ? lambda_grid(chart.c, 1, chart.c == 1 ? opt.n_fiber : opt.n_fiber / 2,
                                        opt.fiber_T)
                          : std::vector<NormalDirection>{};

  parallel_for(npts, [&](long k) {
    const int i = static_cast<int>(k / grid.n1);
    const int jj = static_cast<int>(k % grid.n1);
    const double q[2] = {grid.lo0 + (grid.hi0 - grid.lo0) * (i + 0.5) / grid.n0,
                         grid.lo1 + (grid.hi1 - grid.lo1) * (jj + 0.5) / grid.n1};
    Slot& slot = slots[k];
    slot.base = {q[0], q[1]};
    try {
      const SurfaceJet jet = surface_jet(chart, q, opt.step);
      if (chart.sig.dim == 6) {
        const FundForms f = fundamental_forms(jet);
        slot.a = std::sqrt(std::fabs(f.shape[1].det()));
        slot.dev = fiber_det_worst(f, opt.n_fiber, opt.fiber_T, reference, &slot.fiber);
      } else {
        const ShapeData sd =
            opt.minimal_form ? minimal_frames(jet) : canonical_frames(jet, chart.c);
        slot.a = sd.a;
        double worst = 0, wf = 0;
        for (const auto& dir : fibers) {
          const double dev = std::fabs(det_Aw(sd, dir) - reference);
          if (dev > worst) {
            worst = dev;
            wf = std::atan2(dir.St, dir.Ct);
          }
        }
        slot.dev = worst;
        slot.fiber = wf;
      }
    } catch (const MinimalPointError& e) {
      slot.error = e.what();
    }
  });

  for (long k = 0; k < npts; ++k) {
    const Slot& slot = slots[k];
    if (!slot.error.empty())
      throw MinimalPointError(slot.error + " at base (" + std::to_string(slot.base[0]) + ", " +
                              std::to_string(slot.base[1]) + ")");
    if (rep.n_samples == 0) rep.measured_a = slot.a;
    rep.n_samples += (chart.sig.dim == 6) ? opt.n_fiber : static_cast<long>(fibers.size());
    if (slot.dev > rep.max_abs_dev) {
      rep.max_abs_dev = slot.dev;
      rep.worst_base = slot.base;
      rep.worst_fiber = slot.fiber;
    }
  }
  return rep;
}

}  // namespace spaceform
