#include "sepcmc/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "sepcmc/spline.hpp"

namespace sepcmc {

std::string to_string(DelaunayClass k) {
  switch (k) {
    case DelaunayClass::Sphere: return "Sphere";
    case DelaunayClass::Cylinder: return "Cylinder";
    case DelaunayClass::Unduloid: return "Unduloid";
    case DelaunayClass::Nodoid: return "Nodoid";
  }
  return "?";
}

std::string to_string(Truncation t) {
  switch (t) {
    case Truncation::None: return "none";
    case Truncation::AxisTouch: return "axis";
    case Truncation::VerticalTangent: return "vertical-tangent";
    case Truncation::StepUnderflow: return "step-underflow";
  }
  return "?";
}

double first_integral(double h, double hp, double H) {
  const double rad = 4.0 * h + hp * hp;
  if (!(rad > 0.0)) throw DomainError("first_integral: 4h + h'^2 must be positive");
  return 2.0 * h / std::sqrt(rad) + H * h;
}

double profile_curvature_rhs(double h, double hp, double H) {
  const double w2 = 4.0 * h + hp * hp;
  return (8.0 * h + 4.0 * hp * hp + 2.0 * H * w2 * std::sqrt(w2)) / (4.0 * h);
}

namespace {

constexpr double kClassTol = 1e-12;

void require_nonzero_H(double H) {
  if (H == 0.0 || !std::isfinite(H)) throw std::invalid_argument("Delaunay parameters: H must be nonzero");
}

}  // namespace

DelaunayClass classify(const DelaunayParams& params) {
  require_nonzero_H(params.H);
  const double cmax = 1.0 / (4.0 * std::abs(params.H));
  const double c = params.c;
  if (c > cmax * (1.0 + kClassTol)) {
    throw std::invalid_argument("Delaunay parameters: c exceeds 1/(4|H|), no admissible profile");
  }
  if (std::abs(c - cmax) <= kClassTol * cmax) return DelaunayClass::Cylinder;
  if (std::abs(c) <= kClassTol * cmax) return DelaunayClass::Sphere;
  return c > 0.0 ? DelaunayClass::Unduloid : DelaunayClass::Nodoid;
}

WaistRadii waist_radii(const DelaunayParams& params) {
  const DelaunayClass k = classify(params);
  const double a = std::abs(params.H);
  double disc = 1.0 - 4.0 * a * params.c;
  if (k == DelaunayClass::Cylinder) disc = 0.0;
  const double root = std::sqrt(std::max(disc, 0.0));
  WaistRadii w;
  w.r_max = (1.0 + root) / (2.0 * a);
  switch (k) {
    case DelaunayClass::Sphere: w.r_min = 0.0; break;
    case DelaunayClass::Cylinder: w.r_min = w.r_max; break;
    case DelaunayClass::Unduloid: w.r_min = (1.0 - root) / (2.0 * a); break;
    case DelaunayClass::Nodoid: break;
  }
  return w;
}

DelaunayParams params_from_waists(double r_min, double r_max) {
  if (!(r_max > 0.0) || r_min < 0.0 || r_min > r_max) {
    throw std::invalid_argument("params_from_waists: need 0 <= r_min <= r_max, r_max > 0");
  }
  const double a = 1.0 / (r_min + r_max);
  return {-a, a * r_min * r_max};
}

double ProfileCurve::first_integral_drift() const {
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) d = std::max(d, std::abs(first_integral(h[i], hp[i], H) - c));
  return d;
}

double ProfileCurve::min_h() const { return *std::min_element(h.begin(), h.end()); }
double ProfileCurve::max_h() const { return *std::max_element(h.begin(), h.end()); }

namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;

struct Side {
  std::vector<double> z, h, hp;
  Truncation truncation = Truncation::None;
};

// One-sided integration from z = 0 to z_end >= 0.
Side integrate_side(double H, double h0, double hp0, double z_end, const ProfileOptions& opt) {
  auto system = [H](const State& x, State& dxdt, double) {
    dxdt[0] = x[1];
    dxdt[1] = profile_curvature_rhs(x[0], x[1], H);
  };
  auto valid = [&opt](const State& x) {
    return std::isfinite(x[0]) && std::isfinite(x[1]) && x[0] >= opt.axis_eps &&
           std::abs(x[1]) <= opt.slope_cap;
  };
  auto event_kind = [&opt](const State& x) {
    if (std::isfinite(x[1]) && std::isfinite(x[0]) && std::abs(x[1]) > opt.slope_cap) {
      return Truncation::VerticalTangent;
    }
    return Truncation::AxisTouch;
  };

  using Dopri = ode::runge_kutta_dopri5<State>;
  auto controlled = ode::make_controlled(opt.atol, opt.rtol, Dopri());

  Side side;
  State x{h0, hp0};
  double z = 0.0;
  side.z.push_back(z);
  side.h.push_back(x[0]);
  side.hp.push_back(x[1]);
  if (z_end <= 0.0) return side;

  State dxdt;
  system(x, dxdt, z);
  double dt = std::min(opt.output_step, 1e-3);
  const double dt_min = 1e-14 * std::max(1.0, z_end);
  long k = 1;
  while (z < z_end) {
    const double target = std::min(static_cast<double>(k) * opt.output_step, z_end);
    while (z < target) {
      const double dt_try = std::min(dt, target - z);
      State x_new, dxdt_new;
      double z_new = z;
      double dt_io = dt_try;
      const auto result = controlled.try_step(system, x, dxdt, z_new, x_new, dxdt_new, dt_io);
      if (result == ode::fail) {
        dt = dt_io;
        if (dt < dt_min) {
          side.truncation = Truncation::StepUnderflow;
          return side;
        }
        continue;
      }
      if (!valid(x_new)) {
        // An event lies inside this step: bisect on the step length, each
        // trial integrated adaptively from the last accepted state.
        const Truncation kind = event_kind(x_new);
        auto advance = [&](double len, State& out) {
          out = x;
          try {
            ode::integrate_adaptive(ode::make_controlled(opt.atol, opt.rtol, Dopri()), system, out, z, z + len,
                                    std::min(len, dt));
          } catch (const DomainError&) {
            return false;
          }
          return valid(out);
        };
        double lo = 0.0, hi = dt_try;
        State best = x;
        for (int it = 0; it < 60 && hi - lo > 1e-15 * (1.0 + z); ++it) {
          const double mid = 0.5 * (lo + hi);
          State trial;
          if (advance(mid, trial)) {
            lo = mid;
            best = trial;
          } else {
            hi = mid;
          }
        }
        if (lo > 0.0) {
          const double z_event = z + lo;
          if (z_event - side.z.back() < 0.1 * opt.output_step && side.z.size() > 1) {
            side.z.back() = z_event;
            side.h.back() = best[0];
            side.hp.back() = best[1];
          } else {
            side.z.push_back(z_event);
            side.h.push_back(best[0]);
            side.hp.push_back(best[1]);
          }
        }
        side.truncation = kind;
        return side;
      }
      x = x_new;
      dxdt = dxdt_new;
      z = z_new;
      if (dt_try == dt) dt = dt_io;  // keep the controller's suggestion unless clipped
    }
    z = target;
    side.z.push_back(z);
    side.h.push_back(x[0]);
    side.hp.push_back(x[1]);
    ++k;
  }
  return side;
}

}  // namespace

ProfileCurve integrate_profile(const DelaunayParams& params, double z_min, double z_max, double h0,
                               double hp0, const ProfileOptions& options) {
  require_nonzero_H(params.H);
  if (!(z_min <= 0.0 && 0.0 <= z_max)) throw std::invalid_argument("integrate_profile: need z_min <= 0 <= z_max");
  if (!(h0 > 0.0)) throw std::invalid_argument("integrate_profile: h0 must be positive");
  if (!(options.output_step > 0.0)) throw std::invalid_argument("integrate_profile: output_step must be positive");
  const double c0 = first_integral(h0, hp0, params.H);
  if (std::abs(c0 - params.c) > 1e-9 * (1.0 + std::abs(params.c))) {
    throw std::invalid_argument("integrate_profile: initial data do not match the first-integral constant c");
  }

  // The equation only involves h'^2, so z -> -z is a symmetry: integrate the
  // backward half forward with reversed slope and mirror it.
  const Side fwd = integrate_side(params.H, h0, hp0, z_max, options);
  const Side bwd = integrate_side(params.H, h0, -hp0, -z_min, options);

  ProfileCurve out;
  out.H = params.H;
  out.c = params.c;
  out.truncated_high = fwd.truncation;
  out.truncated_low = bwd.truncation;
  for (std::size_t i = bwd.z.size(); i-- > 1;) {
    out.z.push_back(-bwd.z[i]);
    out.h.push_back(bwd.h[i]);
    out.hp.push_back(-bwd.hp[i]);
  }
  out.z.insert(out.z.end(), fwd.z.begin(), fwd.z.end());
  out.h.insert(out.h.end(), fwd.h.begin(), fwd.h.end());
  out.hp.insert(out.hp.end(), fwd.hp.begin(), fwd.hp.end());
  return out;
}

ProfileCurve integrate_from_waist(const DelaunayParams& params, double z_min, double z_max,
                                  WaistStart start, const ProfileOptions& options) {
  const DelaunayParams p{-std::abs(params.H), params.c};
  const WaistRadii w = waist_radii(p);
  double r = w.r_max;
  if (start == WaistStart::Neck) {
    if (!w.r_min || *w.r_min <= 0.0) throw std::invalid_argument("integrate_from_waist: profile has no neck");
    r = *w.r_min;
  }
  // Recompute c from the rounded waist so the start is consistent to rounding.
  const DelaunayParams q{p.H, first_integral(r * r, 0.0, p.H)};
  ProfileCurve out = integrate_profile(q, z_min, z_max, r * r, 0.0, options);
  out.c = p.c;
  return out;
}

std::vector<double> profile_minima(const ProfileCurve& profile) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < profile.size(); ++i) {
    const double a = profile.hp[i], b = profile.hp[i + 1];
    if (!(a < 0.0 && b >= 0.0)) continue;
    const double z0 = profile.z[i], z1 = profile.z[i + 1];
    const double dz = z1 - z0;
    const double m0 = profile_curvature_rhs(profile.h[i], a, profile.H) * dz;
    const double m1 = profile_curvature_rhs(profile.h[i + 1], b, profile.H) * dz;
    auto hermite = [&](double s) {
      const double s2 = s * s, s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * a + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * b + (s3 - s2) * m1;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hermite(mid) < 0.0) lo = mid; else hi = mid;
    }
    out.push_back(z0 + 0.5 * (lo + hi) * dz);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ConicGeometry {
  const Conic& conic;
  double focal = 0.0;

  explicit ConicGeometry(const Conic& c) : conic(c) {
    if (!(c.a > 0.0 && c.b > 0.0)) throw std::invalid_argument("conic: degenerate axes");
    if (c.kind == Conic::Kind::Ellipse) {
      if (c.a < c.b) throw std::invalid_argument("conic: ellipse needs a >= b");
      focal = std::sqrt(c.a * c.a - c.b * c.b);
    } else {
      focal = std::sqrt(c.a * c.a + c.b * c.b);
    }
  }

  std::array<double, 2> point(double t) const {
    if (conic.kind == Conic::Kind::Ellipse) return {conic.a * std::cos(t), conic.b * std::sin(t)};
    return {conic.a * std::cosh(t), conic.b * std::sinh(t)};
  }
  std::array<double, 2> velocity(double t) const {
    if (conic.kind == Conic::Kind::Ellipse) return {-conic.a * std::sin(t), conic.b * std::cos(t)};
    return {conic.a * std::sinh(t), conic.b * std::cosh(t)};
  }
  double speed(double t) const {
    const auto v = velocity(t);
    return std::hypot(v[0], v[1]);
  }
  // Near focus for the ellipse, far focus for the hyperbola.
  std::array<double, 2> focus() const {
    return conic.kind == Conic::Kind::Ellipse ? std::array<double, 2>{focal, 0.0}
                                              : std::array<double, 2>{-focal, 0.0};
  }
};

double arc_length(const ConicGeometry& g, double t0, double t1) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate([&g](double t) { return g.speed(t); }, t0, t1, 0, 1e-15);
}

}  // namespace

ProfileCurve roulette_profile(const Conic& conic, int samples, double t_max) {
  if (samples < 2) throw std::invalid_argument("roulette_profile: need at least 2 samples");
  const ConicGeometry g(conic);
  const double t_lo = conic.kind == Conic::Kind::Ellipse ? -std::numbers::pi : -t_max;
  const double t_hi = -t_lo;

  const DelaunayParams p = conic_params(conic);
  ProfileCurve out;
  out.H = p.H;
  out.c = p.c;

  // Arc length measured from t = 0 so the traced extreme sits at z = 0.
  std::vector<double> ts(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) ts[static_cast<std::size_t>(i)] = t_lo + (t_hi - t_lo) * i / (samples - 1);
  std::vector<double> s(ts.size());
  const std::size_t mid = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), 0.0) - ts.begin());
  for (std::size_t i = 0; i < ts.size(); ++i) s[i] = 0.0;
  {
    double prev_t = 0.0, acc = 0.0;
    for (std::size_t i = mid; i < ts.size(); ++i) {
      acc += arc_length(g, prev_t, ts[i]);
      prev_t = ts[i];
      s[i] = acc;
    }
    prev_t = 0.0;
    acc = 0.0;
    for (std::size_t i = mid; i-- > 0;) {
      acc -= arc_length(g, ts[i], prev_t);
      prev_t = ts[i];
      s[i] = acc;
    }
  }

  const auto F = g.focus();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto P = g.point(ts[i]);
    const auto V = g.velocity(ts[i]);
    const double sp = std::hypot(V[0], V[1]);
    const std::array<double, 2> T{V[0] / sp, V[1] / sp};
    const std::array<double, 2> N{-T[1], T[0]};
    const std::array<double, 2> d{F[0] - P[0], F[1] - P[1]};
    const double along = d[0] * T[0] + d[1] * T[1];
    const double r = d[0] * N[0] + d[1] * N[1];
    out.z.push_back(s[i] + along);
    out.h.push_back(r * r);
    out.hp.push_back(-2.0 * along);
  }
  if (out.z.size() > 1 && out.z.front() > out.z.back()) {
    std::reverse(out.z.begin(), out.z.end());
    std::reverse(out.h.begin(), out.h.end());
    std::reverse(out.hp.begin(), out.hp.end());
  }
  return out;
}

double roulette_period(const Conic& ellipse) {
  if (ellipse.kind != Conic::Kind::Ellipse) throw std::invalid_argument("roulette_period: ellipse required");
  const ConicGeometry g(ellipse);
  return arc_length(g, -std::numbers::pi, 0.0) + arc_length(g, 0.0, std::numbers::pi);
}

DelaunayParams conic_params(const Conic& conic) {
  const ConicGeometry g(conic);  // validates
  const double c = conic.b * conic.b / (2.0 * conic.a);
  return {-1.0 / (2.0 * conic.a), conic.kind == Conic::Kind::Ellipse ? c : -c};
}

SeparableSurface surface_of_revolution(const ProfileCurve& profile, const SurfaceOfRevolutionOptions& options) {
  if (profile.size() < 4) throw std::invalid_argument("surface_of_revolution: need at least 4 samples");
  for (double v : profile.h) {
    if (!(v > 0.0)) throw std::invalid_argument("surface_of_revolution: profile must have h > 0");
  }
  std::vector<double> neg(profile.h.size());
  std::transform(profile.h.begin(), profile.h.end(), neg.begin(), [](double v) { return -v; });
  C3Function h = tabulated(profile.z, neg);
  const double R = std::sqrt(profile.max_h()) * options.radius_margin;
  const std::vector<double> sq{1.0, 0.0, 0.0};
  return {catalog("quadratic", sq, {-R, R}), catalog("quadratic", sq, {-R, R}), std::move(h),
          "surface of revolution"};
}

}  // namespace sepcmc
