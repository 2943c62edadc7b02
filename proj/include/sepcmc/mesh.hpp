#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "sepcmc/delaunay.hpp"
#include "sepcmc/surface.hpp"

namespace sepcmc {

using Vec3 = std::array<double, 3>;

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> normals;  // unit, area-weighted average of face normals

  /// Recomputes `normals` from the triangles and their winding.
  void compute_normals();
};

/// Vertices (sqrt(h) cos t, sqrt(h) sin t, z) on the z x angle grid, two
/// triangles per quad, closed in the angle and wound so that face normals
/// point away from the axis. Throws std::invalid_argument for angular < 8, an
/// empty profile or h <= 0.
TriangleMesh tessellate_revolution(const ProfileCurve& profile, int angular);

/// Graph z = height(x, y) over the closed rectangle on an nx x ny grid;
/// face normals have positive z-component unless `flip` is set.
TriangleMesh tessellate_graph(const std::function<double(double, double)>& height, Interval x_range,
                              Interval y_range, int nx, int ny, bool flip = false);

/// Graph mesh of a separable surface with monotone h: z = h^{-1}(-f(x) - g(y)),
/// oriented by grad F. Throws DomainError when h(z) = -f - g has no solution
/// in the domain of h at some grid point.
TriangleMesh tessellate_surface_graph(const SeparableSurface& s, Interval x_range, Interval y_range, int nx,
                                      int ny);

/// Sphere of radius r from its exact profile, with rows equally spaced in
/// polar angle over [pole_gap, pi - pole_gap].
ProfileCurve sphere_profile(double r, int rows, double pole_gap = 0.1);

struct CurvatureField {
  std::vector<double> H;       // NaN where not computed
  std::vector<char> interior;  // 1 where H was computed
  int skipped_nonmanifold = 0;
};

/// Cotangent-Laplacian mean curvature with mixed Voronoi areas:
/// H_i = (Lx)_i . n_i / 2 where Lx is the discrete Laplace-Beltrami of the
/// position, so spheres with outward winding get H = -1/r. Boundary vertices
/// and vertices on non-manifold edges are skipped.
CurvatureField discrete_mean_curvature(const TriangleMesh& mesh);

struct ManifoldReport {
  bool edge_manifold = true;        // every edge has one or two incident faces
  bool consistent_winding = true;   // no directed edge used twice
  bool indices_valid = true;
  int degenerate_triangles = 0;     // area <= 1e-14
  int boundary_edges = 0;
  int euler_characteristic = 0;     // V - E + F

  bool ok() const { return edge_manifold && consistent_winding && indices_valid && degenerate_triangles == 0; }
};

ManifoldReport check_manifold(const TriangleMesh& mesh);

/// Sum of det(a, b, c) / 6 over the triangles.
double signed_volume(const TriangleMesh& mesh);

enum class MeshFormat { Obj, Csv };

/// OBJ: "v x y z" lines then "f i j k" (1-based). CSV: header x,y,z,nx,ny,nz
/// and one row per vertex. Numbers use 17 significant digits. Throws
/// std::invalid_argument for an empty mesh.
std::string export_mesh(const TriangleMesh& mesh, MeshFormat format);

/// Reads "v" and "f" lines of an OBJ stream (polygon faces are fanned,
/// "i/j/k" index forms accepted); other lines are ignored.
TriangleMesh parse_obj(const std::string& text);

/// CSV with header z,h,hp and one row per sample.
std::string profile_to_csv(const ProfileCurve& profile);
ProfileCurve profile_from_csv(const std::string& text);

/// Whole file as a string / write a string to a file; throw std::runtime_error
/// on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sepcmc
