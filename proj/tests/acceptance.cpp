// Acceptance suite: one PASS/FAIL line per criterion on stdout.
// Usage: sepcmc_acceptance --cli <path to the sepcmc executable>

#include <Eigen/Dense>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sepcmc/delaunay.hpp"
#include "sepcmc/gallery.hpp"
#include "sepcmc/identities.hpp"
#include "sepcmc/mesh.hpp"
#include "sepcmc/solver.hpp"

using namespace sepcmc;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 60.0, "time limit");
  if (!o.pass) ++failures;
  std::printf("%s %d %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

double sup_abs_mean_curvature_error(const SeparableSurface& s, double H, int n, std::uint64_t seed) {
  double sup = 0.0;
  for (const SurfacePoint& p : sample_level_set(s, n, seed)) sup = std::max(sup, std::abs(mean_curvature(s, p) - H));
  return sup;
}

// Axis of a circular cylinder from sampled points: the direction is the
// eigenvector of sum n n^T with the smallest eigenvalue, the axis passes
// through the centroid of p - R n. Returns max | dist(p, axis) - R |.
double cylinder_axis_deviation(const SeparableSurface& s, double R, int n, std::uint64_t seed) {
  const auto pts = sample_level_set(s, n, seed);
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  std::vector<Eigen::Vector3d> P, N;
  for (const auto& p : pts) {
    Eigen::Vector3d g(s.f(p.x).d1, s.g(p.y).d1, s.h(p.z).d1);
    g.normalize();
    P.emplace_back(p.x, p.y, p.z);
    N.push_back(g);
    M += g * g.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(M);
  const Eigen::Vector3d dir = es.eigenvectors().col(0);
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < P.size(); ++i) centre += P[i] - R * N[i];
  centre /= static_cast<double>(P.size());
  double dev = 0.0;
  for (const auto& p : P) {
    const Eigen::Vector3d d = p - centre;
    dev = std::max(dev, std::abs((d - d.dot(dir) * dir).norm() - R));
  }
  return dev;
}

double hermite_at(const ProfileCurve& p, double z) {
  std::size_t i = 0;
  while (i + 2 < p.size() && p.z[i + 1] < z) ++i;
  const double dz = p.z[i + 1] - p.z[i], s = (z - p.z[i]) / dz;
  const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
  return h00 * p.h[i] + h10 * dz * p.hp[i] + h01 * p.h[i + 1] + h11 * dz * p.hp[i + 1];
}

using Q = Rational;

Q degree_seven(const IndeterminateAssignment& a, const Q& Z) {
  const Q T = 3 * Z * Z + 2 * a.Phi1 * Z + a.Phi2;
  const Q B = (a.Xp + a.Yp) * Z + a.Xp * a.Y + a.X * a.Yp;
  const Q K = a.X + a.Y;
  const Q C = a.Phi1p * Z * Z + a.Phi2p * Z + a.Phi3p;
  const Q KZ = K + Z;
  return 16 * a.H * a.H * T * T * KZ * KZ * KZ - (T * B + K * C) * (T * B + K * C);
}

Q top_coefficient(const std::function<Q(const Q&)>& p, int n) {
  std::vector<Q> v;
  for (int k = 0; k <= n; ++k) v.push_back(p(Q(k)));
  for (int level = 0; level < n; ++level) {
    for (int k = 0; k + 1 < static_cast<int>(v.size()) - level; ++k) v[k] = v[k + 1] - v[k];
  }
  Q fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  return v[0] / fact;
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string capture(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

void gallery_suite(Outcome& o) {
  const GalleryEntry sphere = make_gallery_entry("sphere");
  const double rs = is_cmc(*sphere.surface, -1.0, 200, 1);
  o.require(rs <= 1e-10, "sphere residual");
  const GalleryEntry cyl = make_gallery_entry("cylinder");
  const double rc = is_cmc(*cyl.surface, -0.5, 200, 1);
  o.require(rc <= 1e-10, "cylinder residual");
  const double hc = sup_abs_mean_curvature_error(*make_gallery_entry("catenoid").surface, 0.0, 200, 1);
  const double hs = sup_abs_mean_curvature_error(*make_gallery_entry("scherk").surface, 0.0, 200, 1);
  o.require(hc <= 1e-12, "catenoid |H|");
  o.require(hs <= 1e-12, "Scherk |H|");
  double ht = 0.0, axis = 0.0;
  for (double a : {0.0, 1.0, 3.0}) {
    const std::vector<double> p{0.5, a};
    const GalleryEntry t = make_gallery_entry("tilted_cylinder", p);
    ht = std::max(ht, sup_abs_mean_curvature_error(*t.surface, -0.5, 200, 1));
    axis = std::max(axis, cylinder_axis_deviation(*t.surface, 1.0, 200, 1));
  }
  o.require(ht <= 1e-9, "tilted |H + 1/2|");
  o.require(axis <= 1e-9, "tilted axis deviation");
  o.detail << " sphere " << rs << ", cylinder " << rc << ", catenoid |H| " << hc << ", Scherk |H| " << hs
           << ", tilted |H+1/2| " << ht << ", axis deviation " << axis;
}

void first_integral_suite(Outcome& o) {
  double worst = 0.0;
  for (double c : {0.0, 0.25, 3.0 / 16.0, -0.1}) {
    const ProfileCurve p = integrate_from_waist({-1.0, c}, -4.0, 4.0);
    worst = std::max(worst, p.first_integral_drift());
  }
  o.require(worst <= 1e-8, "drift");
  const ProfileCurve s = integrate_from_waist({-1.0, 0.0}, -2.0, 2.0);
  double dev = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.z[i]) <= 0.9) dev = std::max(dev, std::abs(s.h[i] - (1.0 - s.z[i] * s.z[i])));
  }
  o.require(dev <= 1e-8, "sphere profile");
  o.detail << " max drift " << worst << ", sphere profile error " << dev;
}

void roulette_suite(Outcome& o) {
  const Conic e{Conic::Kind::Ellipse, 0.5, std::sqrt(3.0 / 16.0)};
  const ProfileCurve roul = roulette_profile(e, 401);
  const WaistRadii w = waist_radii(conic_params(e));
  // ODE unduloid from the waist radii of the roulette.
  const double r_min = std::sqrt(*std::min_element(roul.h.begin(), roul.h.end()));
  const double r_max = std::sqrt(*std::max_element(roul.h.begin(), roul.h.end()));
  o.require(std::abs(r_min - *w.r_min) <= 1e-12 && std::abs(r_max - w.r_max) <= 1e-12, "waist radii");
  const double L = roulette_period(e);
  const ProfileCurve ode = integrate_from_waist(params_from_waists(r_min, r_max), -0.6 * L, 0.6 * L, WaistStart::Neck);
  double d = 0.0;
  for (std::size_t i = 0; i < roul.size(); ++i) d = std::max(d, std::abs(roul.h[i] - hermite_at(ode, roul.z[i])));
  o.require(d <= 1e-5, "unduloid");
  const Conic circle{Conic::Kind::Ellipse, 0.5, 0.5};
  const ProfileCurve rc = roulette_profile(circle, 100);
  const ProfileCurve cyl = integrate_from_waist(conic_params(circle), -1.0, 1.0);
  double dc = 0.0;
  for (std::size_t i = 0; i < rc.size(); ++i) dc = std::max(dc, std::abs(rc.h[i] - hermite_at(cyl, rc.z[i])));
  o.require(dc <= 1e-10, "circle");
  o.detail << " unduloid sup difference " << d << ", circle/cylinder " << dc;
}

void identity_suite(Outcome& o) {
  const IdentitySuite s = run_all(1, 1000);
  int exact = 0;
  for (const auto& r : s.reports) {
    o.require(r.pass, r.name);
    if (r.mode == IdentityMode::ExactRational) {
      ++exact;
      o.require(r.max_abs_error == 0.0, r.name + " exact error");
    }
  }
  IndeterminateAssignment w;
  w.X = 1;
  w.Y = 2;
  w.Z = 3;
  w.Xp = 5;
  w.Yp = 7;
  w.H = 1;
  const PzSquareSides sides = pz_square_sides(w);
  o.require(sides.lhs == Q(-10372) && sides.rhs == Q(-10372), "witness");
  std::mt19937_64 rng(99);
  int coeff_ok = 0;
  for (int t = 0; t < 50; ++t) {
    const IndeterminateAssignment a = random_assignment(rng);
    auto p = [&a](const Q& Z) { return degree_seven(a, Z); };
    const Q a7 = top_coefficient(p, 7);
    const Q a6 = top_coefficient([&](const Q& Z) { return p(Z) - a7 * Z * Z * Z * Z * Z * Z * Z; }, 6);
    if (a7 == 144 * a.H * a.H && a6 == coef_a6(a)) ++coeff_ok;
  }
  o.require(coeff_ok == 50, "a7/a6 expansion");
  int mutations = 0, caught = 0;
  for (Formula f : {Formula::P, Formula::Q, Formula::L, Formula::M, Formula::N, Formula::R, Formula::A6}) {
    for (int term = 0; term < term_count(f); ++term) {
      const Mutation m{f, term};
      ++mutations;
      if (!check_pz_elimination(5, 1, m).pass || !check_pz_square(5, 1, m).pass ||
          !check_leading_coefficients(5, 1, m).pass || !check_a6_reduction(5, 1, m).pass) {
        ++caught;
      }
    }
  }
  o.require(caught == mutations, "mutations");
  o.detail << " " << s.reports.size() << " checks (" << exact << " exact, 1000 trials), witness "
           << sides.lhs.str() << " = " << sides.rhs.str() << ", a7/a6 " << coeff_ok << "/50, mutations caught "
           << caught << "/" << mutations;
}

void exact_models_suite(Outcome& o) {
  const ModelWindow sw = sphere_window(), cw = catenoid_window();
  const double rs = sup(residual_vector(sphere_model(40), -1.0, uniform_grid(sw.u_range, sw.v_range, 50)));
  const double rc = sup(residual_vector(catenoid_model(40), 0.0, uniform_grid(cw.u_range, cw.v_range, 50)));
  o.require(rs <= 1e-10, "sphere model");
  o.require(rc <= 1e-10, "catenoid model");
  o.detail << " sphere " << rs << ", catenoid " << rc;
}

void solver_suite(Outcome& o) {
  const ModelWindow w = sphere_window();
  const UVGrid grid = uniform_grid(w.u_range, w.v_range, 50);
  const FitOutput p = fit(perturbed(sphere_model(40), 1e-2, 7), -1.0, grid);
  o.require(p.result.residual_max <= 1e-8, "perturbed residual");
  o.require(p.result.delaunay_distance <= 1e-4, "perturbed Delaunay distance");
  o.detail << " perturbed: residual " << p.result.residual_max << ", distance " << p.result.delaunay_distance
           << "; random starts:";
  FitOptions opt;
  opt.max_iter = 1000;
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FitOutput r = fit(random_model(w, 40, seed), -1.0, grid, opt);
    if (r.result.converged) {
      ++converged;
      o.require(r.result.delaunay_distance <= 1e-3, "converged run not Delaunay");
    }
    o.require(!(r.result.residual_max <= 1e-8 && r.result.delaunay_distance > 1e-3), "feasible non-Delaunay");
  }
  o.detail << " " << converged << "/10 converged, all converged runs Delaunay";
}

void mesh_suite(Outcome& o) {
  const Conic e{Conic::Kind::Ellipse, 0.5, std::sqrt(3.0 / 16.0)};
  const double L = roulette_period(e);
  ProfileOptions opt;
  opt.output_step = L / 199.0;
  const ProfileCurve prof = integrate_from_waist({-1.0, 3.0 / 16.0}, 0.0, L, WaistStart::Bulge, opt);
  const CurvatureField cf = discrete_mean_curvature(tessellate_revolution(prof, 64));
  int n = 0, good = 0;
  for (std::size_t i = 0; i < cf.H.size(); ++i) {
    if (!cf.interior[i]) continue;
    ++n;
    if (std::abs(cf.H[i] + 1.0) <= 0.02) ++good;
  }
  const double frac = n ? static_cast<double>(good) / n : 0.0;
  o.require(prof.size() == 200, "profile rows");
  o.require(frac >= 0.95, "unduloid");
  auto sphere_error = [](int rows) {
    const CurvatureField f = discrete_mean_curvature(tessellate_revolution(sphere_profile(1.0, rows), 2 * rows));
    double m = 0.0;
    for (std::size_t i = 0; i < f.H.size(); ++i) {
      if (f.interior[i]) m = std::max(m, std::abs(f.H[i] + 1.0));
    }
    return m;
  };
  const double e1 = sphere_error(40), e2 = sphere_error(80);
  o.require(e2 / e1 <= 0.6, "sphere ratio");
  o.detail << " unduloid " << prof.size() << "x64: " << frac * 100 << "% within 2%, sphere error " << e1 << " -> " << e2
           << " (ratio " << e2 / e1 << ")";
}

void determinism_suite(Outcome& o, const std::string& cli) {
  const std::vector<std::string> commands = {
      "identities --seed 3 --trials 100",
      "gallery verify nodoid --seed 5",
      "generate --H -1 --c -0.1 --zmax 1",
      "search --H -1 --knots 16 --grid 25 --seed 4 --max-iter 40",
      "classify --H -2 --c 0.05",
  };
  std::size_t bytes = 0;
  for (const auto& c : commands) {
    const std::string a = capture(cli + " " + c + " 2>&1"), b = capture(cli + " " + c + " 2>&1");
    o.require(!a.empty() && a == b, c);
    bytes += a.size();
  }
  o.detail << " " << commands.size() << " commands, " << bytes << " bytes compared";
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  }
  report(1, "gallery CMC suite", gallery_suite);
  report(2, "first-integral conservation", first_integral_suite);
  report(3, "roulette agreement", roulette_suite);
  report(4, "identity suite", identity_suite);
  report(5, "exact spline models", exact_models_suite);
  report(6, "separable solutions are Delaunay", solver_suite);
  report(7, "discrete curvature", mesh_suite);
  report(8, "CLI determinism", [&cli](Outcome& o) {
    if (cli.empty()) throw std::runtime_error("--cli <path> not given");
    determinism_suite(o, cli);
  });
  return failures == 0 ? 0 : 1;
}
