#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sepcmc/jets.hpp"

namespace sepcmc {

/// The zero set of F(x,y,z) = f(x) + g(y) + h(z), oriented by N = grad F / |grad F|.
/// Under this orientation a sphere of radius r has mean curvature -1/r.
struct SeparableSurface {
  C3Function f;
  C3Function g;
  C3Function h;
  std::string label;

  /// (f,g,h) -> (-f,-g,-h): same zero set, opposite orientation.
  SeparableSurface flipped() const;
};

struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double level_residual = 0.0;  // |f(x)+g(y)+h(z)|
};

double implicit_value(const SeparableSurface& s, double x, double y, double z);

/// Point with its level residual filled in; no tolerance check.
SurfacePoint point_at(const SeparableSurface& s, double x, double y, double z);

/// Minimum of f'^2 + g'^2 + h'^2 over the n^3 grid of cell centres of the
/// domain box. The domain box must be bounded.
double regularity_check(const SeparableSurface& s, int n);

/// Mean curvature
///   H = -[f''(g'^2+h'^2) + g''(f'^2+h'^2) + h''(f'^2+g'^2)] / (2 |grad F|^3).
/// Throws DomainError at a singular point or when p is off the surface by more
/// than 1e-8 (1 + |f| + |g| + |h|).
double mean_curvature(const SeparableSurface& s, const SurfacePoint& p);

/// f''(g'^2+h'^2) + g''(f'^2+h'^2) + h''(f'^2+g'^2) + 2H (f'^2+g'^2+h'^2)^{3/2};
/// vanishes exactly where the surface has mean curvature H.
double cmc_residual(const SeparableSurface& s, const SurfacePoint& p, double H);

struct SampleOptions {
  int bracket_cells = 256;
  int max_attempts_per_point = 20;
  double tolerance = 1e-12;  // relative to 1 + |f| + |g|
};

/// Random points of the zero set. Draws (x, y) uniformly in the domain box of
/// f and g and solves h(z) = -f(x) - g(y) on the domain of h by bracketing,
/// bisection and Newton polishing. When several roots exist one bracket is
/// picked at random. Stops after n points or n * max_attempts_per_point draws.
/// Deterministic per seed. Throws DomainError if h is constant on its domain
/// or if no point is found.
std::vector<SurfacePoint> sample_level_set(const SeparableSurface& s, int n, std::uint64_t seed,
                                           const SampleOptions& options = {});

/// Supremum of |cmc_residual| over sample_level_set(s, n, seed).
double is_cmc(const SeparableSurface& s, double H, int n, std::uint64_t seed);

/// For surfaces with constant h: signed curvature of the base curve
/// f(x)+g(y)+const = 0, kappa = -div(grad G / |grad G|) with G = f + g.
double base_curve_curvature(const SeparableSurface& s, double x, double y);

using ImplicitFunction = std::function<double(double, double, double)>;

/// -1/2 div(grad F / |grad F|) by nested fourth-order central differences of
/// the scalar field alone. Independent of the closed-form curvature; usable
/// for non-separable surfaces.
double implicit_mean_curvature_fd(const ImplicitFunction& F, double x, double y, double z,
                                  double step = 1e-3);

ImplicitFunction as_implicit(const SeparableSurface& s);

}  // namespace sepcmc
