#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sepcmc/gallery.hpp"
#include "sepcmc/mesh.hpp"

using namespace sepcmc;

namespace {

struct ErrorStats {
  double max = 0.0;
  double within = 0.0;  // fraction of interior vertices within the relative tolerance
  int interior = 0;
};

ErrorStats curvature_error(const TriangleMesh& mesh, double expected, double rel) {
  const CurvatureField cf = discrete_mean_curvature(mesh);
  ErrorStats s;
  int good = 0;
  for (std::size_t i = 0; i < cf.H.size(); ++i) {
    if (!cf.interior[i]) continue;
    ++s.interior;
    const double e = std::abs(cf.H[i] - expected);
    s.max = std::max(s.max, e);
    if (e <= rel * std::abs(expected)) ++good;
  }
  s.within = s.interior ? static_cast<double>(good) / s.interior : 0.0;
  return s;
}

}  // namespace

TEST_CASE("sphere curvature converges under refinement") {
  double prev = 0.0;
  for (int rows : {20, 40, 80}) {
    const ErrorStats e = curvature_error(tessellate_revolution(sphere_profile(1.0, rows), 2 * rows), -1.0, 0.01);
    if (prev > 0.0) CHECK(e.max / prev <= 0.6);
    prev = e.max;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("sphere of radius 2 has discrete curvature -1/2") {
  const ErrorStats e = curvature_error(tessellate_revolution(sphere_profile(2.0, 60), 120), -0.5, 0.01);
  CHECK(e.within == 1.0);
}

TEST_CASE("unduloid mesh curvature") {
  const ProfileCurve p = integrate_from_waist({-1.0, 3.0 / 16.0}, -1.0, 1.0, WaistStart::Bulge,
                                              ProfileOptions{1e-10, 1e-12, 0.01, 1e-9, 1e4});
  const TriangleMesh mesh = tessellate_revolution(p, 64);
  const ErrorStats e = curvature_error(mesh, -1.0, 0.02);
  CHECK(e.within >= 0.95);
  const ManifoldReport r = check_manifold(mesh);
  CHECK(r.ok());
  CHECK(r.boundary_edges == 2 * 64);
  CHECK(r.euler_characteristic == 0);
  CHECK(signed_volume(mesh) > 0.0);
}

TEST_CASE("graph meshes of separable surfaces are oriented by the gradient") {
  const GalleryEntry tilted = make_gallery_entry("tilted_cylinder");
  const TriangleMesh m = tessellate_surface_graph(*tilted.surface, {-0.8, 0.8}, {-0.5, 0.5}, 60, 40);
  CHECK(check_manifold(m).ok());
  CHECK(curvature_error(m, tilted.expected_H, 0.02).within >= 0.95);

  const GalleryEntry scherk = make_gallery_entry("scherk");
  const TriangleMesh s = tessellate_surface_graph(*scherk.surface, {-1.0, 1.0}, {-1.0, 1.0}, 60, 60);
  const CurvatureField cf = discrete_mean_curvature(s);
  double worst = 0.0;
  for (std::size_t i = 0; i < cf.H.size(); ++i) {
    if (cf.interior[i]) worst = std::max(worst, std::abs(cf.H[i]));
  }
  CHECK(worst <= 0.05);
}

TEST_CASE("OBJ export round trip") {
  const TriangleMesh m = tessellate_revolution(sphere_profile(1.0, 6), 8);
  const std::string obj = export_mesh(m, MeshFormat::Obj);
  const TriangleMesh back = parse_obj(obj);
  REQUIRE(back.vertices.size() == m.vertices.size());
  REQUIRE(back.triangles == m.triangles);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) CHECK(back.vertices[i] == m.vertices[i]);
  CHECK(export_mesh(back, MeshFormat::Obj) == obj);

  const TriangleMesh quad = parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1/1 2/2 3/3 4/4\n");
  CHECK(quad.triangles.size() == 2);
  const std::string csv = export_mesh(m, MeshFormat::Csv);
  CHECK(csv.rfind("x,y,z,nx,ny,nz\n", 0) == 0);
  CHECK_THROWS_AS(export_mesh(TriangleMesh{}, MeshFormat::Obj), std::invalid_argument);
}

TEST_CASE("profile CSV round trip") {
  const ProfileCurve p = integrate_from_waist({-1.0, 3.0 / 16.0}, -0.2, 0.2);
  const std::string text = profile_to_csv(p);
  CHECK(text.rfind("z,h,hp\n", 0) == 0);
  const ProfileCurve q = profile_from_csv(text);
  CHECK(q.z == p.z);
  CHECK(q.h == p.h);
  CHECK(q.hp == p.hp);
  CHECK_THROWS_AS(profile_from_csv("a,b\n1,2\n"), std::invalid_argument);
}

TEST_CASE("manifold checks catch defects") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.triangles = {{0, 1, 2}, {0, 1, 3}};
  CHECK_FALSE(check_manifold(m).consistent_winding);
  m.triangles = {{0, 1, 2}, {0, 1, 3}, {1, 0, 2}};
  CHECK_FALSE(check_manifold(m).edge_manifold);
  m.triangles = {{0, 1, 7}};
  CHECK_FALSE(check_manifold(m).indices_valid);
  m.triangles = {{0, 1, 1}};
  CHECK(check_manifold(m).degenerate_triangles == 1);
  CHECK_THROWS_AS(tessellate_revolution(sphere_profile(1.0, 6), 4), std::invalid_argument);
}
