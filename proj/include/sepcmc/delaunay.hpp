#pragma once

// Rotational CMC surfaces x^2 + y^2 = h(z). Along every such profile the
// quantity 2h / sqrt(4h + h'^2) + H h is a constant c. With the orientation of
// surface.hpp (normal pointing away from the axis) spheres, cylinders,
// unduloids and nodoids have H < 0; the waist equation obtained at h' = 0 with
// r = sqrt(h) reads |H| r^2 - r + c = 0.

#include <optional>
#include <string>
#include <vector>

#include "sepcmc/surface.hpp"

namespace sepcmc {

struct DelaunayParams {
  double H = -1.0;
  double c = 0.0;
};

enum class DelaunayClass { Sphere, Cylinder, Unduloid, Nodoid };

std::string to_string(DelaunayClass k);

/// 2h / sqrt(4h + hp^2) + H h. Throws DomainError when 4h + hp^2 <= 0.
double first_integral(double h, double hp, double H);

/// Second derivative demanded by the mean-curvature equation of a profile:
///   h'' = [8h + 4h'^2 + 2H (4h + h'^2)^{3/2}] / (4h)
double profile_curvature_rhs(double h, double hp, double H);

/// Classification by |H| and c: c = 0 sphere, c = 1/(4|H|) cylinder (relative
/// tolerance 1e-12), in between unduloid, c < 0 nodoid. Throws
/// std::invalid_argument for H = 0 or c > 1/(4|H|).
DelaunayClass classify(const DelaunayParams& params);

/// Positive roots of the waist equation. r_min is absent for nodoids (the
/// second root is negative); for spheres r_min = 0.
struct WaistRadii {
  std::optional<double> r_min;
  double r_max = 0.0;
};
WaistRadii waist_radii(const DelaunayParams& params);

/// |H| and c of the Delaunay surface whose profile has the given extreme radii.
DelaunayParams params_from_waists(double r_min, double r_max);

enum class Truncation { None, AxisTouch, VerticalTangent, StepUnderflow };

std::string to_string(Truncation t);

/// Sampled rotational profile; h is the squared radius.
struct ProfileCurve {
  std::vector<double> z;
  std::vector<double> h;
  std::vector<double> hp;
  double H = 0.0;
  double c = 0.0;
  Truncation truncated_low = Truncation::None;
  Truncation truncated_high = Truncation::None;

  std::size_t size() const { return z.size(); }
  /// max |first_integral(h_i, hp_i, H) - c| over the samples.
  double first_integral_drift() const;
  double min_h() const;
  double max_h() const;
};

struct ProfileOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double output_step = 1e-3;  // spacing of the returned samples
  double axis_eps = 1e-9;     // stop when h reaches this value
  double slope_cap = 1e4;     // stop when |h'| exceeds this value
};

/// Integrates the second-order profile equation from (z=0, h0, hp0) forward to
/// z_max and backward to z_min with an adaptive Dormand-Prince 5(4) pair.
/// Samples are spaced by options.output_step; a truncated side ends at the
/// event point. Requires z_min <= 0 <= z_max, h0 > 0, and
/// first_integral(h0, hp0, H) = params.c to 1e-9 (1 + |c|).
ProfileCurve integrate_profile(const DelaunayParams& params, double z_min, double z_max, double h0,
                               double hp0, const ProfileOptions& options = {});

enum class WaistStart { Bulge, Neck };

/// integrate_profile started at a waist (h' = 0, h = r^2). Uses |H| with the
/// negative sign; Neck is unavailable for spheres and nodoids.
ProfileCurve integrate_from_waist(const DelaunayParams& params, double z_min, double z_max,
                                  WaistStart start = WaistStart::Bulge,
                                  const ProfileOptions& options = {});

/// z positions of the interior local minima of h (sign changes of h' from
/// negative to positive), located by cubic Hermite interpolation of h'.
std::vector<double> profile_minima(const ProfileCurve& profile);

// ---------------------------------------------------------------------------
// Rolling-conic construction.

struct Conic {
  enum class Kind { Ellipse, Hyperbola };
  Kind kind = Kind::Ellipse;
  double a = 1.0;  // semi-major (ellipse) or semi-transverse (hyperbola) axis
  double b = 1.0;
};

/// Rolls the conic without slipping along the z-axis and traces a focus,
/// matching contact points by numerically integrated arc length. The ellipse
/// is rolled through one full turn, with the vertex nearest the traced focus
/// touching at z = 0 (so h is minimal there); the hyperbola branch is rolled
/// over parameter t in [-t_max, t_max] with its far focus traced. h is the
/// squared distance of the focus to the axis and hp = dh/dz.
ProfileCurve roulette_profile(const Conic& conic, int samples, double t_max = 3.0);

/// Length of one turn of the rolling ellipse (the roulette period).
double roulette_period(const Conic& ellipse);

/// Delaunay parameters of the surface generated by the conic:
/// |H| = 1/(2a), c = +b^2/(2a) (ellipse) or -b^2/(2a) (hyperbola); H returned negative.
DelaunayParams conic_params(const Conic& conic);

struct SurfaceOfRevolutionOptions {
  double radius_margin = 1.05;  // x, y domain half-width relative to max radius
};

/// f = x^2, g = y^2, h = -(not-a-knot spline of the profile). Requires at
/// least 4 samples and h > 0.
SeparableSurface surface_of_revolution(const ProfileCurve& profile,
                                       const SurfaceOfRevolutionOptions& options = {});

}  // namespace sepcmc
