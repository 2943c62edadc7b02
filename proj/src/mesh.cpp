#include "sepcmc/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sepcmc {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 mul(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void TriangleMesh::compute_normals() {
  normals.assign(vertices.size(), Vec3{0.0, 0.0, 0.0});
  for (const auto& t : triangles) {
    const Vec3 n = cross(sub(vertices[t[1]], vertices[t[0]]), sub(vertices[t[2]], vertices[t[0]]));
    for (int k : t) normals[k] = add(normals[k], n);
  }
  for (auto& n : normals) {
    const double l = norm(n);
    if (l > 0.0) n = mul(1.0 / l, n);
  }
}

TriangleMesh tessellate_revolution(const ProfileCurve& profile, int angular) {
  if (angular < 8) throw std::invalid_argument("tessellate_revolution: angular must be >= 8");
  if (profile.size() < 2) throw std::invalid_argument("tessellate_revolution: empty profile");
  TriangleMesh m;
  const int rows = static_cast<int>(profile.size());
  m.vertices.reserve(static_cast<std::size_t>(rows * angular));
  for (int i = 0; i < rows; ++i) {
    const double h = profile.h[static_cast<std::size_t>(i)];
    if (!(h > 0.0)) throw std::invalid_argument("tessellate_revolution: profile must have h > 0");
    const double r = std::sqrt(h), z = profile.z[static_cast<std::size_t>(i)];
    for (int j = 0; j < angular; ++j) {
      const double t = 2.0 * std::numbers::pi * j / angular;
      m.vertices.push_back({r * std::cos(t), r * std::sin(t), z});
    }
  }
  auto id = [angular](int i, int j) { return i * angular + (j % angular); };
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < angular; ++j) {
      const int a = id(i, j), b = id(i, j + 1), c = id(i + 1, j), d = id(i + 1, j + 1);
      m.triangles.push_back({a, b, d});
      m.triangles.push_back({a, d, c});
    }
  }
  m.compute_normals();
  return m;
}

TriangleMesh tessellate_graph(const std::function<double(double, double)>& height, Interval x_range,
                              Interval y_range, int nx, int ny, bool flip) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("tessellate_graph: need at least 2 x 2 points");
  TriangleMesh m;
  for (int i = 0; i < nx; ++i) {
    const double x = x_range.lo + x_range.width() * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = y_range.lo + y_range.width() * j / (ny - 1);
      m.vertices.push_back({x, y, height(x, y)});
    }
  }
  auto id = [ny](int i, int j) { return i * ny + j; };
  for (int i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i, j + 1), d = id(i + 1, j + 1);
      if (flip) {
        m.triangles.push_back({a, d, b});
        m.triangles.push_back({a, c, d});
      } else {
        m.triangles.push_back({a, b, d});
        m.triangles.push_back({a, d, c});
      }
    }
  }
  m.compute_normals();
  return m;
}

TriangleMesh tessellate_surface_graph(const SeparableSurface& s, Interval x_range, Interval y_range, int nx,
                                      int ny) {
  const Interval dz = s.h.domain();
  if (!dz.bounded()) throw DomainError("tessellate_surface_graph: domain of h must be bounded");
  const double zlo = dz.lo + 1e-12 * dz.width(), zhi = dz.hi - 1e-12 * dz.width();
  const double hlo = s.h(zlo).value, hhi = s.h(zhi).value;
  auto height = [&](double x, double y) {
    const double target = -s.f(x).value - s.g(y).value;
    if ((hlo - target) * (hhi - target) > 0.0) throw DomainError("tessellate_surface_graph: no root in the domain of h");
    double a = zlo, b = zhi, fa = hlo - target;
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = s.h(mid).value - target;
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    double z = 0.5 * (a + b);
    for (int it = 0; it < 3; ++it) {
      const Jet3 j = s.h(z);
      if (j.d1 == 0.0) break;
      const double next = z - (j.value - target) / j.d1;
      if (!dz.contains(next)) break;
      z = next;
    }
    return z;
  };
  // grad F has z-component h'(z); the graph is oriented by it.
  return tessellate_graph(height, x_range, y_range, nx, ny, hhi < hlo);
}

ProfileCurve sphere_profile(double r, int rows, double pole_gap) {
  if (!(r > 0.0) || rows < 2 || !(pole_gap > 0.0) || !(pole_gap < std::numbers::pi / 2)) {
    throw std::invalid_argument("sphere_profile: invalid arguments");
  }
  ProfileCurve p;
  p.H = -1.0 / r;
  p.c = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double phi = std::numbers::pi - pole_gap - (std::numbers::pi - 2.0 * pole_gap) * i / (rows - 1);
    const double z = r * std::cos(phi), rho = r * std::sin(phi);
    p.z.push_back(z);
    p.h.push_back(rho * rho);
    p.hp.push_back(-2.0 * z);
  }
  return p;
}

namespace {

using Edge = std::pair<int, int>;

std::map<Edge, int> undirected_edge_counts(const TriangleMesh& mesh) {
  std::map<Edge, int> count;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  }
  return count;
}

}  // namespace

CurvatureField discrete_mean_curvature(const TriangleMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  CurvatureField out;
  out.H.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.interior.assign(n, 1);

  std::vector<char> nonmanifold(n, 0);
  for (const auto& [e, c] : undirected_edge_counts(mesh)) {
    if (c == 1) out.interior[e.first] = out.interior[e.second] = 0;
    if (c > 2) nonmanifold[e.first] = nonmanifold[e.second] = 1;
  }

  std::vector<Vec3> lap(n, Vec3{0.0, 0.0, 0.0});
  std::vector<double> area(n, 0.0);
  std::vector<char> touched(n, 0);
  for (const auto& t : mesh.triangles) {
    const Vec3& p0 = mesh.vertices[t[0]];
    const Vec3& p1 = mesh.vertices[t[1]];
    const Vec3& p2 = mesh.vertices[t[2]];
    const std::array<const Vec3*, 3> p{&p0, &p1, &p2};
    const double A = 0.5 * norm(cross(sub(p1, p0), sub(p2, p0)));
    if (!(A > 0.0)) continue;
    std::array<double, 3> cot{};
    bool obtuse = false;
    int obtuse_at = -1;
    for (int k = 0; k < 3; ++k) {
      const Vec3 a = sub(*p[(k + 1) % 3], *p[k]), b = sub(*p[(k + 2) % 3], *p[k]);
      cot[k] = dot(a, b) / (2.0 * A);
      if (dot(a, b) < 0.0) {
        obtuse = true;
        obtuse_at = k;
      }
    }
    for (int k = 0; k < 3; ++k) {
      const int i = t[k], j = t[(k + 1) % 3], o = (k + 2) % 3;
      // Edge (i, j) is opposite vertex o.
      const Vec3 e = sub(mesh.vertices[j], mesh.vertices[i]);
      lap[i] = add(lap[i], mul(cot[o], e));
      lap[j] = add(lap[j], mul(-cot[o], e));
      touched[i] = touched[j] = 1;
    }
    for (int k = 0; k < 3; ++k) {
      double a;
      if (!obtuse) {
        const Vec3 ej = sub(*p[(k + 1) % 3], *p[k]), ek = sub(*p[(k + 2) % 3], *p[k]);
        a = (dot(ej, ej) * cot[(k + 2) % 3] + dot(ek, ek) * cot[(k + 1) % 3]) / 8.0;
      } else {
        a = (k == obtuse_at) ? A / 2.0 : A / 4.0;
      }
      area[t[k]] += a;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (nonmanifold[i]) {
      out.interior[i] = 0;
      ++out.skipped_nonmanifold;
      continue;
    }
    if (!out.interior[i] || !touched[i] || !(area[i] > 0.0)) {
      out.interior[i] = 0;
      continue;
    }
    // lap holds sum (cot a + cot b)(x_j - x_i).
    const Vec3 lb = mul(0.5 / area[i], lap[i]);
    out.H[i] = 0.5 * dot(lb, mesh.normals.empty() ? Vec3{0, 0, 0} : mesh.normals[i]);
  }
  return out;
}

ManifoldReport check_manifold(const TriangleMesh& mesh) {
  ManifoldReport r;
  const int nv = static_cast<int>(mesh.vertices.size());
  std::map<Edge, int> directed;
  for (const auto& t : mesh.triangles) {
    for (int k : t) {
      if (k < 0 || k >= nv) r.indices_valid = false;
    }
    if (!r.indices_valid) continue;
    const double A = 0.5 * norm(cross(sub(mesh.vertices[t[1]], mesh.vertices[t[0]]),
                                      sub(mesh.vertices[t[2]], mesh.vertices[t[0]])));
    if (A <= 1e-14) ++r.degenerate_triangles;
    for (int k = 0; k < 3; ++k) {
      if (++directed[{t[k], t[(k + 1) % 3]}] > 1) r.consistent_winding = false;
    }
  }
  if (!r.indices_valid) return r;
  const auto counts = undirected_edge_counts(mesh);
  for (const auto& [e, c] : counts) {
    if (c > 2) r.edge_manifold = false;
    if (c == 1) ++r.boundary_edges;
  }
  r.euler_characteristic = nv - static_cast<int>(counts.size()) + static_cast<int>(mesh.triangles.size());
  return r;
}

double signed_volume(const TriangleMesh& mesh) {
  double v = 0.0;
  for (const auto& t : mesh.triangles) {
    v += dot(mesh.vertices[t[0]], cross(mesh.vertices[t[1]], mesh.vertices[t[2]]));
  }
  return v / 6.0;
}

std::string export_mesh(const TriangleMesh& mesh, MeshFormat format) {
  if (mesh.vertices.empty()) throw std::invalid_argument("export_mesh: empty mesh");
  std::string out;
  if (format == MeshFormat::Obj) {
    for (const auto& v : mesh.vertices) out += "v " + fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]) + "\n";
    for (const auto& t : mesh.triangles) {
      out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " + std::to_string(t[2] + 1) + "\n";
    }
    return out;
  }
  out = "x,y,z,nx,ny,nz\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    const Vec3 n = i < mesh.normals.size() ? mesh.normals[i] : Vec3{0.0, 0.0, 0.0};
    out += fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]) + "," + fmt(n[0]) + "," + fmt(n[1]) + "," + fmt(n[2]) + "\n";
  }
  return out;
}

namespace {

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse: bad number '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = line.find(sep, start);
    out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::string_view w : split(line, ' ')) {
    while (!w.empty() && (w.back() == '\r' || w.back() == '\t')) w.remove_suffix(1);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

std::vector<std::string_view> lines(const std::string& text) {
  std::vector<std::string_view> out;
  for (std::string_view l : split(text, '\n')) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    out.push_back(l);
  }
  return out;
}

}  // namespace

TriangleMesh parse_obj(const std::string& text) {
  TriangleMesh m;
  for (std::string_view line : lines(text)) {
    const auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "v") {
      if (w.size() < 4) throw std::invalid_argument("parse_obj: short vertex line");
      m.vertices.push_back({parse_double(w[1]), parse_double(w[2]), parse_double(w[3])});
    } else if (w[0] == "f") {
      std::vector<int> idx;
      for (std::size_t k = 1; k < w.size(); ++k) {
        const std::string_view head = split(w[k], '/')[0];
        int i = 0;
        const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), i);
        if (ec != std::errc() || ptr != head.data() + head.size()) throw std::invalid_argument("parse_obj: bad face index");
        idx.push_back(i > 0 ? i - 1 : static_cast<int>(m.vertices.size()) + i);
      }
      if (idx.size() < 3) throw std::invalid_argument("parse_obj: face with fewer than 3 vertices");
      for (std::size_t k = 1; k + 1 < idx.size(); ++k) m.triangles.push_back({idx[0], idx[k], idx[k + 1]});
    }
  }
  m.compute_normals();
  return m;
}

std::string profile_to_csv(const ProfileCurve& profile) {
  std::string out = "z,h,hp\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += fmt(profile.z[i]) + "," + fmt(profile.h[i]) + "," + fmt(profile.hp[i]) + "\n";
  }
  return out;
}

ProfileCurve profile_from_csv(const std::string& text) {
  ProfileCurve p;
  bool header = false;
  for (std::string_view line : lines(text)) {
    if (line.empty()) continue;
    if (!header) {
      if (line != "z,h,hp") throw std::invalid_argument("profile csv: expected header z,h,hp");
      header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 3) throw std::invalid_argument("profile csv: expected 3 fields per row");
    p.z.push_back(parse_double(f[0]));
    p.h.push_back(parse_double(f[1]));
    p.hp.push_back(parse_double(f[2]));
  }
  if (!header) throw std::invalid_argument("profile csv: empty input");
  return p;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace sepcmc
