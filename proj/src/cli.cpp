#include "sepcmc/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "sepcmc/delaunay.hpp"
#include "sepcmc/gallery.hpp"
#include "sepcmc/identities.hpp"
#include "sepcmc/mesh.hpp"
#include "sepcmc/solver.hpp"
#include "sepcmc/surface_spec.hpp"

namespace sepcmc {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct GalleryArgs {
  std::string action;
  std::string name;
  std::vector<double> params;
  int n = 200;
  std::uint64_t seed = 1;
};

struct VerifyArgs {
  std::string spec;
  double H = 0.0;
  int n = 200;
  std::uint64_t seed = 1;
  double tol = 1e-8;
};

struct ClassifyArgs {
  double H = -1.0;
  double c = 0.0;
};

struct GenerateArgs {
  double H = -1.0;
  double c = 0.0;
  double zmax = 1.0;
  std::string out;
  double step = 1e-3;
  std::string start = "bulge";
};

struct IdentityArgs {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
};

struct SearchArgs {
  double H = -1.0;
  int knots = 40;
  std::uint64_t seed = 1;
  int max_iter = 200;
  std::string start = "random";
  double perturb = 1e-2;
  int grid = 50;
  double tol = 1e-8;
};

struct MeshArgs {
  std::string from;
  int angular = 64;
  std::string out;
  std::string format = "obj";
};

int gallery_command(const GalleryArgs& a, std::ostream& out, std::ostream& err) {
  if (a.action == "list") {
    out << "name,expected_H,tolerance,separable\n";
    for (const auto& name : gallery_names()) {
      const GalleryEntry e = make_gallery_entry(name);
      out << name << "," << short_number(e.expected_H) << "," << short_number(e.tolerance) << ","
          << (e.separable() ? "true" : "false") << "\n";
    }
    return kOk;
  }
  if (a.name.empty()) {
    err << "gallery verify: missing entry name\n";
    return kUsage;
  }
  const GalleryEntry e = make_gallery_entry(a.name, a.params);
  const double sup = verify_gallery_entry(e, a.n, a.seed);
  const bool pass = sup <= e.tolerance;
  out << json{{"name", e.name}, {"expected_H", e.expected_H}, {"sup_residual", sup},
              {"tolerance", e.tolerance}, {"pass", pass}}
             .dump()
      << "\n";
  return pass ? kOk : kFailed;
}

int verify_command(const VerifyArgs& a, std::ostream& out) {
  const SeparableSurface s = load_surface_spec(a.spec);
  const double sup = is_cmc(s, a.H, a.n, a.seed);
  const bool pass = sup <= a.tol;
  out << json{{"H", a.H}, {"n", a.n}, {"seed", a.seed}, {"sup_residual", sup}, {"tol", a.tol}, {"pass", pass}}.dump()
      << "\n";
  return pass ? kOk : kFailed;
}

int classify_command(const ClassifyArgs& a, std::ostream& out) {
  const DelaunayParams p{a.H, a.c};
  const DelaunayClass k = classify(p);
  const WaistRadii w = waist_radii(p);
  std::string name = to_string(k);
  name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  out << name;
  if (w.r_min) out << " r_min=" << short_number(*w.r_min);
  out << " r_max=" << short_number(w.r_max) << "\n";
  return kOk;
}

int generate_command(const GenerateArgs& a, std::ostream& out) {
  if (!(a.zmax > 0.0)) throw std::invalid_argument("generate: --zmax must be positive");
  ProfileOptions opt;
  opt.output_step = a.step;
  const WaistStart start = a.start == "neck" ? WaistStart::Neck : WaistStart::Bulge;
  const ProfileCurve p = integrate_from_waist({a.H, a.c}, -a.zmax, a.zmax, start, opt);
  const std::string csv = profile_to_csv(p);
  if (a.out.empty()) {
    out << csv;
    return kOk;
  }
  write_text_file(a.out, csv);
  out << json{{"samples", p.size()},
              {"z_min", p.z.front()},
              {"z_max", p.z.back()},
              {"first_integral_drift", p.first_integral_drift()},
              {"truncated_low", to_string(p.truncated_low)},
              {"truncated_high", to_string(p.truncated_high)},
              {"out", a.out}}
             .dump()
      << "\n";
  return kOk;
}

int identities_command(const IdentityArgs& a, std::ostream& out) {
  const IdentitySuite suite = run_all(a.seed, a.trials);
  for (const auto& r : suite.reports) {
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", r.max_abs_error);
    out << r.name << "," << to_string(r.mode) << "," << r.trials << "," << err << "," << (r.pass ? "PASS" : "FAIL")
        << "\n";
  }
  return suite.all_pass ? kOk : kFailed;
}

int search_command(const SearchArgs& a, std::ostream& out) {
  const ModelWindow window = sphere_window();
  SplineModel start;
  if (a.start == "sphere") {
    if (!(a.H < 0.0)) throw std::invalid_argument("search: --start sphere needs H < 0");
    start = perturbed(sphere_model(a.knots, window, -1.0 / a.H), a.perturb, a.seed);
  } else {
    start = random_model(window, a.knots, a.seed);
  }
  FitOptions opt;
  opt.max_iter = a.max_iter;
  opt.tol = a.tol;
  const FitOutput r = fit(start, a.H, uniform_grid(window.u_range, window.v_range, a.grid), opt);
  out << json{{"residual_rms", r.result.residual_rms},
              {"residual_max", r.result.residual_max},
              {"iterations", r.result.iterations},
              {"delaunay_distance", r.result.delaunay_distance},
              {"converged", r.result.converged}}
             .dump()
      << "\n";
  return r.result.converged ? kOk : kFailed;
}

int mesh_command(const MeshArgs& a, std::ostream& out) {
  const ProfileCurve p = profile_from_csv(read_text_file(a.from));
  const TriangleMesh m = tessellate_revolution(p, a.angular);
  const std::string text = export_mesh(m, a.format == "csv" ? MeshFormat::Csv : MeshFormat::Obj);
  if (a.out.empty()) {
    out << text;
    return kOk;
  }
  write_text_file(a.out, text);
  const ManifoldReport mr = check_manifold(m);
  out << json{{"vertices", m.vertices.size()},
              {"triangles", m.triangles.size()},
              {"euler_characteristic", mr.euler_characteristic},
              {"manifold", mr.ok()},
              {"out", a.out}}
             .dump()
      << "\n";
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separable constant mean curvature surfaces: gallery, verification, profiles, identities, search, meshes",
               "sepcmc"};
  app.require_subcommand(1);

  GalleryArgs ga;
  auto* gallery = app.add_subcommand("gallery", "List or verify closed-form gallery entries");
  gallery->add_option("action", ga.action, "list | verify")->required()->check(CLI::IsMember({"list", "verify"}));
  gallery->add_option("name", ga.name, "Entry name for verify");
  gallery->add_option("--params", ga.params, "Entry parameters")->delimiter(',');
  gallery->add_option("--n", ga.n, "Sample points")->check(CLI::PositiveNumber);
  gallery->add_option("--seed", ga.seed, "Sampling seed");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a surface spec for constant mean curvature H");
  verify->add_option("--spec", va.spec, "Surface spec JSON file")->required();
  verify->add_option("--H", va.H, "Expected mean curvature (signed)")->required();
  verify->add_option("--n", va.n, "Sample points")->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "Sampling seed");
  verify->add_option("--tol", va.tol, "Pass threshold on the sup residual");

  ClassifyArgs ca;
  auto* cls = app.add_subcommand("classify", "Classify Delaunay parameters and print the waist radii");
  cls->add_option("--H", ca.H, "Mean curvature (signed, nonzero)")->required();
  cls->add_option("--c", ca.c, "First-integral constant")->required();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Integrate a Delaunay profile and write z,h,hp CSV");
  generate->add_option("--H", gen.H, "Mean curvature (signed, nonzero)")->required();
  generate->add_option("--c", gen.c, "First-integral constant")->required();
  generate->add_option("--zmax", gen.zmax, "Half-span in z")->required();
  generate->add_option("--out", gen.out, "Output CSV (stdout when omitted)");
  generate->add_option("--step", gen.step, "Sample spacing in z")->check(CLI::PositiveNumber);
  generate->add_option("--start", gen.start, "Waist at z = 0")->check(CLI::IsMember({"bulge", "neck"}));

  IdentityArgs ia;
  auto* ids = app.add_subcommand("identities", "Run the identity checks");
  ids->add_option("--seed", ia.seed, "Seed");
  ids->add_option("--trials", ia.trials, "Trials per exact check");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Fit spline X, Y, Z to the CMC equation");
  search->add_option("--H", sa.H, "Mean curvature (signed)")->required();
  search->add_option("--knots", sa.knots, "Knots per spline")->check(CLI::Range(4, 1000));
  search->add_option("--seed", sa.seed, "Start seed");
  search->add_option("--max-iter", sa.max_iter, "Iteration limit")->check(CLI::NonNegativeNumber);
  search->add_option("--start", sa.start, "Start model")->check(CLI::IsMember({"random", "sphere"}));
  search->add_option("--perturb", sa.perturb, "Noise amplitude for the sphere start");
  search->add_option("--grid", sa.grid, "Grid points per axis")->check(CLI::Range(2, 1000));
  search->add_option("--tol", sa.tol, "Convergence threshold on residual_max");

  MeshArgs ma;
  auto* mesh = app.add_subcommand("mesh", "Tessellate a profile CSV as a surface of revolution");
  mesh->add_option("--from", ma.from, "Profile CSV (z,h,hp)")->required();
  mesh->add_option("--angular", ma.angular, "Angular divisions")->check(CLI::Range(8, 100000));
  mesh->add_option("--out", ma.out, "Output file (stdout when omitted)");
  mesh->add_option("--format", ma.format, "obj | csv")->check(CLI::IsMember({"obj", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (gallery->parsed()) return gallery_command(ga, out, err);
    if (verify->parsed()) return verify_command(va, out);
    if (cls->parsed()) return classify_command(ca, out);
    if (generate->parsed()) return generate_command(gen, out);
    if (ids->parsed()) return identities_command(ia, out);
    if (search->parsed()) return search_command(sa, out);
    if (mesh->parsed()) return mesh_command(ma, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace sepcmc
