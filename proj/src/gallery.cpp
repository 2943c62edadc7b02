#include "sepcmc/gallery.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "sepcmc/delaunay.hpp"

namespace sepcmc {

namespace {

std::vector<double> with_defaults(std::span<const double> params, std::vector<double> defaults,
                                  const std::string& name) {
  if (params.empty()) return defaults;
  if (params.size() != defaults.size()) {
    throw std::invalid_argument("gallery '" + name + "': expected " + std::to_string(defaults.size()) +
                                " parameters");
  }
  return {params.begin(), params.end()};
}

C3Function fn(const char* name, std::vector<double> p, Interval d) { return catalog(name, p, d); }

GalleryEntry separable_entry(std::string name, SeparableSurface s, double H, double tol, std::string source) {
  GalleryEntry e;
  e.name = std::move(name);
  e.implicit = as_implicit(s);
  e.surface = std::move(s);
  e.expected_H = H;
  e.tolerance = tol;
  e.source = std::move(source);
  return e;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("gallery: ") + what + " must be positive");
}

GalleryEntry delaunay_entry(const std::string& name, double H, double c, bool nodoid) {
  if (H == 0.0) throw std::invalid_argument("gallery '" + name + "': H must be nonzero");
  const DelaunayParams p{-std::abs(H), c};
  const DelaunayClass k = classify(p);
  if (nodoid && k != DelaunayClass::Nodoid) throw std::invalid_argument("gallery 'nodoid': needs c < 0");
  if (!nodoid && k != DelaunayClass::Unduloid) throw std::invalid_argument("gallery 'unduloid': needs 0 < c < 1/(4|H|)");
  ProfileOptions opt;
  opt.output_step = 2.5e-4 / std::abs(H);
  // Near the vertical tangent of a nodoid h'' grows without bound and the
  // cubic spline cannot follow it; the tabulated arc stops at |h'| = 1.5.
  opt.slope_cap = nodoid ? 1.5 : 20.0;
  const double span = 2.0 / std::abs(H);
  ProfileCurve profile = integrate_from_waist(p, -span, span, WaistStart::Bulge, opt);
  SeparableSurface s = surface_of_revolution(profile);
  s.label = name;
  if (H > 0.0) s = s.flipped();
  return separable_entry(name, std::move(s), H, 1e-6, "rotational profile of the first integral, tabulated");
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"plane",           "sphere",
          "cylinder",        "catenoid",
          "scherk",          "scherk2",
          "tilted_cylinder", "prop1_paraboloid_form",
          "unduloid",        "nodoid"};
}

GalleryEntry make_gallery_entry(const std::string& name, std::span<const double> params) {
  if (name == "plane") {
    with_defaults(params, {}, name);
    SeparableSurface s{fn("affine", {1, 0}, {-1, 1}), fn("affine", {1, 0}, {-1, 1}), fn("affine", {1, 0}, {-3, 3}),
                       "plane x+y+z=0"};
    return separable_entry(name, std::move(s), 0.0, 1e-12, "plane");
  }
  if (name == "sphere") {
    const double r = with_defaults(params, {1.0}, name)[0];
    require_positive(r, "radius");
    const Interval d{-1.2 * r, 1.2 * r};
    SeparableSurface s{fn("quadratic", {1, 0, 0}, d), fn("quadratic", {1, 0, 0}, d),
                       fn("quadratic", {1, 0, -r * r}, d), "sphere"};
    return separable_entry(name, std::move(s), -1.0 / r, 1e-10 * std::max(1.0, r * r * r),
                           "sphere x^2+y^2+z^2=r^2, outward normal");
  }
  if (name == "cylinder") {
    const double r = with_defaults(params, {1.0}, name)[0];
    require_positive(r, "radius");
    const Interval d{-1.2 * r, 1.2 * r};
    SeparableSurface s{fn("quadratic", {1, 0, 0}, d), fn("affine", {0, 0}, {-1, 1}),
                       fn("quadratic", {1, 0, -r * r}, d), "circular cylinder about the y-axis"};
    return separable_entry(name, std::move(s), -1.0 / (2.0 * r), 1e-10 * std::max(1.0, r * r * r),
                           "circular cylinder x^2+z^2=r^2");
  }
  if (name == "catenoid") {
    with_defaults(params, {}, name);
    SeparableSurface s{fn("quadratic", {1, 0, 0}, {-3, 3}), fn("quadratic", {1, 0, 0}, {-3, 3}),
                       fn("neg_cosh_sq", {}, {-2, 2}), "catenoid"};
    return separable_entry(name, std::move(s), 0.0, 1e-9, "catenoid cosh^2 z = x^2 + y^2");
  }
  if (name == "scherk") {
    with_defaults(params, {}, name);
    SeparableSurface s{fn("log_cos", {}, {-1.2, 1.2}), fn("neg_log_cos", {}, {-1.2, 1.2}),
                       fn("affine", {1, 0}, {-5, 5}), "Scherk surface"};
    return separable_entry(name, std::move(s), 0.0, 1e-12, "Scherk surface e^z = cos y / cos x");
  }
  if (name == "scherk2") {
    with_defaults(params, {}, name);
    GalleryEntry e;
    e.name = name;
    e.implicit = [](double x, double y, double z) { return std::sin(z) - std::sinh(x) * std::sinh(y); };
    e.expected_H = 0.0;
    e.tolerance = 1e-6;
    e.source = "second Scherk surface sin z = sinh x sinh y; not of additive form, checked by finite differences";
    return e;
  }
  if (name == "tilted_cylinder") {
    const auto p = with_defaults(params, {0.5, 1.0}, name);
    const double H = p[0], a = p[1];
    if (H == 0.0 || !std::isfinite(H) || !std::isfinite(a)) {
      throw std::invalid_argument("gallery 'tilted_cylinder': H must be nonzero");
    }
    const double R = 1.0 / (2.0 * std::abs(H));
    const double zr = std::sqrt(1.0 + a * a) * R + std::abs(a) + 1.0;
    SeparableSurface s{fn("sqrt_circle", {H, a}, {-0.95 * R, 0.95 * R}), fn("affine", {-a, 0}, {-1, 1}),
                       fn("affine", {1, 0}, {-zr, zr}), "tilted circular cylinder"};
    // With f = -z_graph the normal grad F points along +z, so the printed
    // branch has mean curvature -H.
    return separable_entry(name, std::move(s), -H, 1e-9,
                           "translation surface z = sqrt(1+a^2)/(2H) sqrt(1-4H^2x^2) + a y");
  }
  if (name == "prop1_paraboloid_form") {
    const auto p = with_defaults(params, {2.0, 1.0, -1.0, 0.3, -0.2, 1.0}, name);
    const double a = p[0], b1 = p[1], b2 = p[2], c1 = p[3], c2 = p[4], R = p[5];
    if (a == 0.0) throw std::invalid_argument("gallery 'prop1_paraboloid_form': a must be nonzero");
    require_positive(R, "R");
    // f + g + h = (a/4) ((x + c1/a)^2 + (y + c2/a)^2 + z^2 - R^2)
    const double x0 = -c1 / a, y0 = -c2 / a;
    SeparableSurface s{fn("prop1", {a, b1, c1}, {x0 - 1.2 * R, x0 + 1.2 * R}),
                       fn("prop1", {a, b2, c2}, {y0 - 1.2 * R, y0 + 1.2 * R}),
                       fn("quadratic", {a / 4.0, 0.0, (b1 + b2) / a - a * R * R / 4.0}, {-1.2 * R, 1.2 * R}),
                       "sphere with f'^2 = a f + b1, g'^2 = a g + b2"};
    return separable_entry(name, std::move(s), (a > 0.0 ? -1.0 : 1.0) / R, 1e-9,
                           "rotational surface about a line parallel to the z-axis");
  }
  if (name == "unduloid") {
    const auto p = with_defaults(params, {-1.0, 3.0 / 16.0}, name);
    return delaunay_entry(name, p[0], p[1], false);
  }
  if (name == "nodoid") {
    const auto p = with_defaults(params, {-1.0, -0.1}, name);
    return delaunay_entry(name, p[0], p[1], true);
  }
  throw std::invalid_argument("gallery: unknown entry '" + name + "'");
}

double verify_gallery_entry(const GalleryEntry& entry, int n, std::uint64_t seed) {
  if (entry.surface) return is_cmc(*entry.surface, entry.expected_H, n, seed);

  // Graph patches z = asin(sinh x sinh y) of the non-separable entry.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double sup = 0.0;
  int found = 0;
  for (int draw = 0; draw < 20 * n && found < n; ++draw) {
    const double x = u(rng), y = u(rng);
    const double sv = std::sinh(x) * std::sinh(y);
    if (std::abs(sv) >= 0.9) continue;
    const double z = std::asin(sv);
    sup = std::max(sup, std::abs(implicit_mean_curvature_fd(entry.implicit, x, y, z) - entry.expected_H));
    ++found;
  }
  if (found == 0) throw DomainError("verify_gallery_entry: no sample points");
  return sup;
}

}  // namespace sepcmc
