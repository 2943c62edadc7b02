#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sepcmc/cli.hpp"
#include "sepcmc/delaunay.hpp"
#include "sepcmc/gallery.hpp"
#include "sepcmc/identities.hpp"
#include "sepcmc/mesh.hpp"
#include "sepcmc/solver.hpp"
#include "sepcmc/surface_spec.hpp"

namespace py = pybind11;
using namespace sepcmc;

namespace {

py::dict profile_dict(const ProfileCurve& p) {
  py::dict d;
  d["z"] = p.z;
  d["h"] = p.h;
  d["hp"] = p.hp;
  d["H"] = p.H;
  d["c"] = p.c;
  d["truncated_low"] = to_string(p.truncated_low);
  d["truncated_high"] = to_string(p.truncated_high);
  d["first_integral_drift"] = p.first_integral_drift();
  return d;
}

ProfileCurve profile_from(const std::vector<double>& z, const std::vector<double>& h, const std::vector<double>& hp) {
  if (z.size() != h.size() || z.size() != hp.size()) throw std::invalid_argument("profile: z, h, hp lengths differ");
  ProfileCurve p;
  p.z = z;
  p.h = h;
  p.hp = hp;
  return p;
}

py::dict report_dict(const IdentityReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["mode"] = to_string(r.mode);
  d["trials"] = r.trials;
  d["max_abs_error"] = r.max_abs_error;
  d["pass"] = r.pass;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(sepcmc, m) {
  m.doc() = "Separable constant mean curvature surfaces f(x) + g(y) + h(z) = 0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Jet3>(m, "Jet3")
      .def(py::init<double, double, double, double>(), py::arg("value") = 0.0, py::arg("d1") = 0.0,
           py::arg("d2") = 0.0, py::arg("d3") = 0.0)
      .def_readwrite("value", &Jet3::value)
      .def_readwrite("d1", &Jet3::d1)
      .def_readwrite("d2", &Jet3::d2)
      .def_readwrite("d3", &Jet3::d3)
      .def("__add__", [](const Jet3& a, const Jet3& b) { return a + b; })
      .def("__sub__", [](const Jet3& a, const Jet3& b) { return a - b; })
      .def("__mul__", [](const Jet3& a, const Jet3& b) { return a * b; })
      .def("__truediv__", [](const Jet3& a, const Jet3& b) { return a / b; })
      .def("__repr__", [](const Jet3& j) {
        std::ostringstream s;
        s << "Jet3(" << j.value << ", " << j.d1 << ", " << j.d2 << ", " << j.d3 << ")";
        return s.str();
      });

  m.def("catalog_jet", [](const std::string& name, const std::vector<double>& params, double x) {
    return catalog(name, params)(x);
  }, py::arg("name"), py::arg("params"), py::arg("x"), "Third-order jet of a catalog function at x.");
  m.def("catalog_names", &catalog_names);

  m.def("gallery_names", &gallery_names);
  m.def(
      "verify_gallery",
      [](const std::string& name, const std::vector<double>& params, int n, std::uint64_t seed) {
        const GalleryEntry e = make_gallery_entry(name, params);
        const double r = verify_gallery_entry(e, n, seed);
        py::dict d;
        d["name"] = e.name;
        d["expected_H"] = e.expected_H;
        d["tolerance"] = e.tolerance;
        d["sup_residual"] = r;
        d["pass"] = r <= e.tolerance;
        return d;
      },
      py::arg("name"), py::arg("params") = std::vector<double>{}, py::arg("n") = 200, py::arg("seed") = 1);

  m.def(
      "is_cmc",
      [](const std::string& spec_json, double H, int n, std::uint64_t seed) {
        return is_cmc(surface_from_json(spec_json), H, n, seed);
      },
      py::arg("spec_json"), py::arg("H"), py::arg("n") = 200, py::arg("seed") = 1,
      "Sup of the CMC residual at H over sampled points of a JSON surface spec.");
  m.def(
      "mean_curvature",
      [](const std::string& spec_json, double x, double y, double z) {
        const SeparableSurface s = surface_from_json(spec_json);
        return mean_curvature(s, point_at(s, x, y, z));
      },
      py::arg("spec_json"), py::arg("x"), py::arg("y"), py::arg("z"));

  m.def(
      "classify",
      [](double H, double c) {
        const DelaunayParams p{H, c};
        const WaistRadii w = waist_radii(p);
        py::dict d;
        d["class"] = to_string(classify(p));
        d["r_min"] = w.r_min ? py::cast(*w.r_min) : py::none();
        d["r_max"] = w.r_max;
        return d;
      },
      py::arg("H"), py::arg("c"));
  m.def("first_integral", &first_integral, py::arg("h"), py::arg("hp"), py::arg("H"));
  m.def(
      "integrate_profile",
      [](double H, double c, double z_min, double z_max, const std::string& start, double step) {
        if (start != "bulge" && start != "neck") throw std::invalid_argument("start must be 'bulge' or 'neck'");
        ProfileOptions opt;
        opt.output_step = step;
        return profile_dict(integrate_from_waist({H, c}, z_min, z_max,
                                                 start == "neck" ? WaistStart::Neck : WaistStart::Bulge, opt));
      },
      py::arg("H"), py::arg("c"), py::arg("z_min"), py::arg("z_max"), py::arg("start") = "bulge",
      py::arg("step") = 1e-3, "Delaunay profile h(z) = r(z)^2 started at a waist.");
  m.def(
      "roulette_profile",
      [](const std::string& kind, double a, double b, int samples) {
        if (kind != "ellipse" && kind != "hyperbola") throw std::invalid_argument("kind must be 'ellipse' or 'hyperbola'");
        const Conic conic{kind == "ellipse" ? Conic::Kind::Ellipse : Conic::Kind::Hyperbola, a, b};
        return profile_dict(roulette_profile(conic, samples));
      },
      py::arg("kind"), py::arg("a"), py::arg("b"), py::arg("samples") = 400);

  m.def(
      "identities",
      [](std::uint64_t seed, std::size_t trials) {
        py::list out;
        for (const auto& r : run_all(seed, trials).reports) out.append(report_dict(r));
        return out;
      },
      py::arg("seed") = 1, py::arg("trials") = 1000);

  m.def(
      "search",
      [](double H, int knots, std::uint64_t seed, const std::string& start, double perturb, int grid, int max_iter,
         double tol) {
        const ModelWindow window = sphere_window();
        SplineModel m0;
        if (start == "sphere") {
          if (!(H < 0.0)) throw std::invalid_argument("start 'sphere' needs H < 0");
          m0 = perturbed(sphere_model(knots, window, -1.0 / H), perturb, seed);
        } else if (start == "random") {
          m0 = random_model(window, knots, seed);
        } else {
          throw std::invalid_argument("start must be 'random' or 'sphere'");
        }
        FitOptions opt;
        opt.max_iter = max_iter;
        opt.tol = tol;
        const FitOutput r = fit(m0, H, uniform_grid(window.u_range, window.v_range, grid), opt);
        py::dict d;
        d["residual_rms"] = r.result.residual_rms;
        d["residual_max"] = r.result.residual_max;
        d["iterations"] = r.result.iterations;
        d["delaunay_distance"] = r.result.delaunay_distance;
        d["converged"] = r.result.converged;
        d["positivity_violated"] = r.result.positivity_violated;
        d["stop_reason"] = r.result.stop_reason;
        d["knots_u"] = r.model.knots_u;
        d["knots_v"] = r.model.knots_v;
        d["knots_w"] = r.model.knots_w;
        d["X"] = r.model.coeffs_X;
        d["Y"] = r.model.coeffs_Y;
        d["Z"] = r.model.coeffs_Z;
        return d;
      },
      py::arg("H"), py::arg("knots") = 40, py::arg("seed") = 1, py::arg("start") = "random",
      py::arg("perturb") = 1e-2, py::arg("grid") = 50, py::arg("max_iter") = 200, py::arg("tol") = 1e-8);

  m.def(
      "revolution_mesh",
      [](const std::vector<double>& z, const std::vector<double>& h, const std::vector<double>& hp, int angular) {
        const TriangleMesh mesh = tessellate_revolution(profile_from(z, h, hp), angular);
        const CurvatureField cf = discrete_mean_curvature(mesh);
        py::dict d;
        d["vertices"] = mesh.vertices;
        d["triangles"] = mesh.triangles;
        d["mean_curvature"] = cf.H;
        d["manifold"] = check_manifold(mesh).ok();
        return d;
      },
      py::arg("z"), py::arg("h"), py::arg("hp"), py::arg("angular") = 64,
      "Surface-of-revolution mesh of a profile with its discrete mean curvature (NaN on the boundary).");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line interface; returns (exit code, stdout, stderr).");
}
