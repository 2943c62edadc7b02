#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepcmc/surface.hpp"

namespace sepcmc {

struct GalleryEntry {
  std::string name;
  std::optional<SeparableSurface> surface;  // empty for non-separable entries
  ImplicitFunction implicit;                // always set
  double expected_H = 0.0;
  double tolerance = 1e-9;
  std::string source;

  bool separable() const { return surface.has_value(); }
};

/// Constructors (parameters in order, defaults used when `params` is empty):
///   plane                                 z = 0 tilted: x + y + z = 0
///   sphere(r=1)                           x^2 + y^2 + z^2 = r^2
///   cylinder(r=1)                         x^2 + z^2 = r^2 (axis y)
///   catenoid                              x^2 + y^2 = cosh^2 z
///   scherk                                e^z = cos y / cos x
///   scherk2                               sin z = sinh x sinh y (not separable)
///   tilted_cylinder(H=1/2, a=1)           z = sqrt(1+a^2)/(2H) sqrt(1-4H^2x^2) + a y
///   prop1_paraboloid_form(a=2, b1=1, b2=-1, c1=0.3, c2=-0.2, R=1)
///       f, g of the form (a x + c)^2/(4a) - b/a completed by a sphere of radius R
///   unduloid(H=-1, c=3/16), nodoid(H=-1, c=-0.1)   from the profile integrator
/// Throws std::invalid_argument on unknown names or invalid parameters.
GalleryEntry make_gallery_entry(const std::string& name, std::span<const double> params = {});

std::vector<std::string> gallery_names();

/// Sup of the CMC residual at expected_H for separable entries; for
/// non-separable entries the sup of |H_fd - expected_H| of the finite-difference
/// curvature on sampled graph patches.
double verify_gallery_entry(const GalleryEntry& entry, int n = 200, std::uint64_t seed = 1);

}  // namespace sepcmc
