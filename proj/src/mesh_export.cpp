#include "spaceform/mesh_export.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "spaceform/leafspace.hpp"
#include "spaceform/report.hpp"

namespace spaceform {

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}
}  // namespace

GridMesh sample_grid(const ChartMap& chart, const GridSpec& grid) {
  if (chart.nparams != 2) throw std::invalid_argument("sample_grid: 2-parameter charts only");
  GridMesh m;
  m.n0 = grid.n0;
  m.n1 = grid.n1;
  m.sig = chart.sig;
  m.quadric_target = chart.quadric_target;
  m.params.reserve(static_cast<size_t>(grid.n0) * grid.n1);
  m.verts.reserve(static_cast<size_t>(grid.n0) * grid.n1);
  for (int i = 0; i < grid.n0; ++i)
    for (int j = 0; j < grid.n1; ++j) {
      const double q[2] = {grid.lo0 + (grid.hi0 - grid.lo0) * i / (grid.n0 - 1),
                           grid.lo1 + (grid.hi1 - grid.lo1) * j / (grid.n1 - 1)};
      m.params.push_back({q[0], q[1]});
      m.verts.push_back(chart.eval(q));
    }
  return m;
}

GridMesh grid_from_generated(const GeneratedSurface& gs) {
  GridMesh m;
  m.n0 = gs.n1;
  m.n1 = gs.n2;
  m.sig = Signature(5, gs.c, 1);
  m.quadric_target = 1.0;
  for (int i = 0; i < gs.n1; ++i)
    for (int j = 0; j < gs.n2; ++j) {
      m.params.push_back({gs.s1_min + i * gs.ds1, gs.s2_min + j * gs.ds2});
      m.verts.push_back(gs.position(i, j));
    }
  return m;
}

std::array<double, 3> project_view(const Vec& p, const Signature& sig, double quadric_target,
                                   std::string* desc) {
  if (sig.dim == 5 && sig.c == 1 && quadric_target > 0) {
    if (desc) *desc = "stereographic from pole -e5, then drop y4";
    const double d = 1.0 + p[4];
    if (std::fabs(d) < 1e-12) return {0, 0, 0};
    return {p[0] / d, p[1] / d, p[2] / d};
  }
  if (sig.dim == 5 && sig.c == -1 && quadric_target < 0) {
    if (desc) *desc = "Poincare ball (y = x/(1+x5)), then drop y4";
    const double d = 1.0 + std::fabs(p[4]);
    return {p[0] / d, p[1] / d, p[2] / d};
  }
  if (desc) *desc = "coordinate drop to (x1,x2,x3)";
  return {p[0], p[1], p[2]};
}

void write_obj(const std::string& path, const GridMesh& mesh) {
  auto f = open_out(path);
  std::string desc;
  project_view(mesh.verts.front(), mesh.sig, mesh.quadric_target, &desc);
  f << "# projection: " << desc << "\n";
  f << "# grid " << mesh.n0 << " x " << mesh.n1 << ", right-handed triangulated quads\n";
  for (const Vec& v : mesh.verts) {
    const auto y = project_view(v, mesh.sig, mesh.quadric_target);
    f << "v " << format_double(y[0]) << ' ' << format_double(y[1]) << ' '
      << format_double(y[2]) << "\n";
  }
  const auto id = [&](int i, int j) { return i * mesh.n1 + j + 1; };  // OBJ is 1-based
  for (int i = 0; i + 1 < mesh.n0; ++i)
    for (int j = 0; j + 1 < mesh.n1; ++j) {
      f << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << "\n";
      f << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << "\n";
    }
}

void write_ply(const std::string& path, const GridMesh& mesh) {
  auto f = open_out(path);
  std::string desc;
  project_view(mesh.verts.front(), mesh.sig, mesh.quadric_target, &desc);
  const long nf = 2L * (mesh.n0 - 1) * (mesh.n1 - 1);
  f << "ply\nformat ascii 1.0\n";
  f << "comment projection: " << desc << "\n";
  f << "element vertex " << mesh.verts.size() << "\n";
  f << "property float x\nproperty float y\nproperty float z\n";
  f << "element face " << nf << "\n";
  f << "property list uchar int vertex_indices\nend_header\n";
  for (const Vec& v : mesh.verts) {
    const auto y = project_view(v, mesh.sig, mesh.quadric_target);
    f << format_double(y[0]) << ' ' << format_double(y[1]) << ' ' << format_double(y[2]) << "\n";
  }
  const auto id = [&](int i, int j) { return i * mesh.n1 + j; };
  for (int i = 0; i + 1 < mesh.n0; ++i)
    for (int j = 0; j + 1 < mesh.n1; ++j) {
      f << "3 " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << "\n";
      f << "3 " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << "\n";
    }
}

void write_csv(const std::string& path, const GridMesh& mesh) {
  auto f = open_out(path);
  f << "q0,q1";
  for (int k = 0; k < mesh.sig.dim; ++k) f << ",x" << (k + 1);
  f << "\n";
  for (size_t i = 0; i < mesh.verts.size(); ++i) {
    f << format_double(mesh.params[i][0]) << ',' << format_double(mesh.params[i][1]);
    for (int k = 0; k < mesh.sig.dim; ++k) f << ',' << format_double(mesh.verts[i][k]);
    f << "\n";
  }
}

void write_hyper_cloud_csv(const std::string& path, const ChartMap& chart, int n0, int n1,
                           int n2, double crease_margin) {
  if (chart.nparams != 3) throw std::invalid_argument("write_hyper_cloud_csv: 3-parameter charts");
  auto f = open_out(path);
  f << "q0,q1,q2";
  for (int k = 0; k < chart.sig.dim; ++k) f << ",x" << (k + 1);
  f << ",flag\n";
  const double lo0 = chart.domain.lo[0], hi0 = chart.domain.hi[0];
  const double eps0 = 1e-6 * (hi0 - lo0);
  for (int i = 0; i < n0; ++i) {
    const double q0 = lo0 + eps0 + (hi0 - lo0 - 2 * eps0) * i / (n0 - 1);
    const bool crease = (q0 - lo0 < crease_margin) || (hi0 - q0 < crease_margin);
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) {
        const double q[3] = {q0, 2.0 * M_PI * j / n1, 2.0 * M_PI * k / n2};
        const Vec p = chart.eval(q);
        f << format_double(q[0]) << ',' << format_double(q[1]) << ',' << format_double(q[2]);
        for (int d = 0; d < chart.sig.dim; ++d) f << ',' << format_double(p[d]);
        f << ',' << (crease ? "crease" : "interior") << "\n";
      }
  }
}

LeafCloud sample_leaf(int c, double R, int n) {
  if (!(R > 0.0 && R < 4.0 / 27.0)) throw std::domain_error("sample_leaf: R outside (0, 4/27)");
  LeafCloud cloud;
  // Scan rays u0 -> L(u0, u1, u2) over a (u1, u2) grid and collect the level
  // crossings by bisection; picks up both branches where they exist.
  const double span = 3.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u1 = -span + 2.0 * span * i / (n - 1);
      const double u2 = -span + 2.0 * span * j / (n - 1);
      const auto level = [&](double u0) { return L_integral({u0, u1, u2, c}) - R; };
      double prev_u = 0.05, prev_v = level(prev_u);
      for (int k = 1; k <= 120; ++k) {
        const double u = 0.05 + 6.0 * k / 120.0;
        const double v = level(u);
        if (prev_v == 0.0 || (prev_v < 0) != (v < 0)) {
          double lo = prev_u, hi = u;
          for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((level(mid) < 0) == (prev_v < 0) ? lo : hi) = mid;
          }
          const double u0 = 0.5 * (lo + hi);
          cloud.rows.push_back({u0, u1, u2, L_integral({u0, u1, u2, c})});
        }
        prev_u = u;
        prev_v = v;
      }
    }
  return cloud;
}

void write_leaf_csv(const std::string& path, const LeafCloud& cloud) {
  auto f = open_out(path);
  f << "u0,u1,u2,L\n";
  for (const auto& r : cloud.rows)
    f << format_double(r[0]) << ',' << format_double(r[1]) << ',' << format_double(r[2]) << ','
      << format_double(r[3]) << "\n";
}

void write_beta_csv(const std::string& path, int n) {
  auto f = open_out(path);
  f << "r,x,y,poly_residual\n";
  for (int i = 0; i < n; ++i) {
    const double r = 2.0 * M_PI * i / (n - 1);
    const auto b = beta_curve(r);
    f << format_double(r) << ',' << format_double(b[0]) << ',' << format_double(b[1]) << ','
      << format_double(beta_poly_residual(b[0], b[1])) << "\n";
  }
}

void write_curvature_csv(const std::string& path, const GeneratedSurface& gs) {
  auto f = open_out(path);
  f << "s1,s2,t0,t1,t2,leaf_level\n";
  for (int i = 0; i < gs.n1; ++i)
    for (int j = 0; j < gs.n2; ++j) {
      const TState& t = gs.state(i, j);
      const double lv = L_integral({t.t0, t.t1, t.t2, t.c});
      f << format_double(gs.s1_min + i * gs.ds1) << ',' << format_double(gs.s2_min + j * gs.ds2)
        << ',' << format_double(t.t0) << ',' << format_double(t.t1) << ','
        << format_double(t.t2) << ',' << format_double(lv) << "\n";
    }
}

}  // namespace spaceform
