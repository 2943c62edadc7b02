#pragma once

// JSON surface description:
//   {"f": {"name": "quadratic", "params": [1,0,0], "domain": [-1.5, 1.5]},
//    "g": {...}, "h": {...}, "label": "unit sphere"}
// Names and parameters follow the catalog vocabulary in jets.hpp.

#include <string>

#include "sepcmc/surface.hpp"

namespace sepcmc {

SeparableSurface surface_from_json(const std::string& text);
SeparableSurface load_surface_spec(const std::string& path);

/// Serializes catalog-backed surfaces; functions built with scaled/shifted or
/// custom evaluators are rejected.
std::string surface_to_json(const SeparableSurface& s);

}  // namespace sepcmc
