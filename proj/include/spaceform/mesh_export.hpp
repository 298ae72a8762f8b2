#pragma once

#include <array>
#include <string>
#include <vector>

#include "spaceform/catalog.hpp"
#include "spaceform/frame_flow.hpp"
#include "spaceform/gauss_param.hpp"

// File export: OBJ/PLY grid meshes of 2-parameter immersions (projected to
// R^3 for viewing), CSV point data carrying the full ambient coordinates,
// leaf-level point clouds, and the plane-curve table.

namespace spaceform {

struct GridMesh {
  int n0 = 0, n1 = 0;
  std::vector<std::array<double, 2>> params;  // row-major
  std::vector<Vec> verts;
  Signature sig;
  double quadric_target = 1.0;
};

/// Samples a 2-parameter chart over [lo,hi] x [lo,hi] ranges.
GridMesh sample_grid(const ChartMap& chart, const GridSpec& grid);
GridMesh grid_from_generated(const GeneratedSurface& gs);

/// Viewing projection to R^3.  Unit spheres use stereographic projection
/// from the pole -e5 followed by dropping the fourth coordinate; H^4 uses
/// the Poincare ball followed by the same drop; anything else drops to the
/// first three coordinates.  Returns a description for file headers.
std::array<double, 3> project_view(const Vec& p, const Signature& sig, double quadric_target,
                                   std::string* desc = nullptr);

/// ASCII OBJ: projected vertices, right-handed triangulated quads, no
/// normals (curvature data goes to a sidecar CSV).
void write_obj(const std::string& path, const GridMesh& mesh);

/// ASCII PLY with the same projection.
void write_ply(const std::string& path, const GridMesh& mesh);

/// CSV with chart parameters and full ambient coordinates.
void write_csv(const std::string& path, const GridMesh& mesh);

/// Point cloud of a 3-parameter chart; rows inside `crease_margin` of the
/// first coordinate's boundary are flagged "crease".
void write_hyper_cloud_csv(const std::string& path, const ChartMap& chart, int n0, int n1,
                           int n2, double crease_margin);

/// Leaf-level point cloud, columns u0,u1,u2,L.
struct LeafCloud {
  std::vector<std::array<double, 4>> rows;
};
LeafCloud sample_leaf(int c, double R, int n);
void write_leaf_csv(const std::string& path, const LeafCloud& cloud);

/// The rotational plane curve with its polynomial residual column.
void write_beta_csv(const std::string& path, int n);

/// Per-vertex curvature sidecar for a generated surface (reduced state and
/// the closed-form leaf level).
void write_curvature_csv(const std::string& path, const GeneratedSurface& gs);

}  // namespace spaceform
