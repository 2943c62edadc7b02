#include <doctest.h>

#include <cmath>

#include "sepcmc/delaunay.hpp"

using namespace sepcmc;

namespace {

// Piecewise cubic Hermite interpolation of (h, h') at z.
double hermite_at(const ProfileCurve& p, double z) {
  std::size_t i = 0;
  while (i + 2 < p.size() && p.z[i + 1] < z) ++i;
  const double dz = p.z[i + 1] - p.z[i], s = (z - p.z[i]) / dz;
  const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
  return h00 * p.h[i] + h10 * dz * p.hp[i] + h01 * p.h[i + 1] + h11 * dz * p.hp[i + 1];
}

}  // namespace

TEST_CASE("classification over a grid of (H, c)") {
  for (double aH : {0.5, 1.0, 3.0}) {
    const double cyl = 1.0 / (4.0 * aH);
    for (double H : {aH, -aH}) {
      CHECK(classify({H, 0.0}) == DelaunayClass::Sphere);
      CHECK(classify({H, cyl}) == DelaunayClass::Cylinder);
      CHECK(classify({H, 0.5 * cyl}) == DelaunayClass::Unduloid);
      CHECK(classify({H, -0.3}) == DelaunayClass::Nodoid);
      CHECK_THROWS_AS(classify({H, 1.5 * cyl}), std::invalid_argument);
    }
  }
  CHECK_THROWS_AS(classify({0.0, 0.1}), std::invalid_argument);
  CHECK(to_string(DelaunayClass::Unduloid) == "Unduloid");
}

TEST_CASE("waist radii solve the waist equation and invert") {
  const WaistRadii w = waist_radii({-1.0, 3.0 / 16.0});
  REQUIRE(w.r_min);
  CHECK(*w.r_min == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(w.r_max == doctest::Approx(0.75).epsilon(1e-14));
  const DelaunayParams back = params_from_waists(0.25, 0.75);
  CHECK(back.H == doctest::Approx(-1.0));
  CHECK(back.c == doctest::Approx(3.0 / 16.0));
  const WaistRadii n = waist_radii({-1.0, -0.1});
  CHECK_FALSE(n.r_min);
  CHECK(n.r_max * n.r_max - n.r_max - 0.1 == doctest::Approx(0.0).epsilon(1e-14));
  const WaistRadii s = waist_radii({-2.0, 0.0});
  CHECK(s.r_max == doctest::Approx(0.5));
}

TEST_CASE("first integral is constant along integrated profiles") {
  struct Case {
    double c;
    WaistStart start;
  };
  for (const Case& k : {Case{0.0, WaistStart::Bulge}, Case{0.25, WaistStart::Bulge},
                        Case{3.0 / 16.0, WaistStart::Bulge}, Case{3.0 / 16.0, WaistStart::Neck},
                        Case{-0.1, WaistStart::Bulge}}) {
    CAPTURE(k.c);
    const ProfileCurve p = integrate_from_waist({-1.0, k.c}, -3.0, 3.0, k.start);
    CHECK(p.size() > 100);
    CHECK(p.first_integral_drift() <= 1e-8);
  }
}

TEST_CASE("sphere profile is 1 - z^2 and stops at the axis") {
  const ProfileCurve p = integrate_from_waist({-1.0, 0.0}, -2.0, 2.0);
  CHECK(p.truncated_low == Truncation::AxisTouch);
  CHECK(p.truncated_high == Truncation::AxisTouch);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p.z[i]) <= 0.9) CHECK(std::abs(p.h[i] - (1 - p.z[i] * p.z[i])) <= 1e-8);
  }
}

TEST_CASE("nodoid profile stops at a vertical tangent") {
  ProfileOptions opt;
  opt.slope_cap = 50.0;
  const ProfileCurve p = integrate_from_waist({-1.0, -0.1}, -3.0, 3.0, WaistStart::Bulge, opt);
  CHECK(p.truncated_high == Truncation::VerticalTangent);
  CHECK(std::abs(p.hp.back()) >= 50.0 * (1 - 1e-9));
}

TEST_CASE("profile equation matches the derivative of the first integral") {
  // d/dz first_integral = 0 along solutions; test with the rhs by finite differences.
  const double h = 0.4, hp = 0.3, H = -1.0;
  const double hpp = profile_curvature_rhs(h, hp, H);
  const double e = 1e-6;
  const double d = (first_integral(h + e * hp, hp + e * hpp, H) - first_integral(h - e * hp, hp - e * hpp, H)) / (2 * e);
  CHECK(std::abs(d) <= 1e-8);
  CHECK_THROWS_AS(first_integral(-1.0, 0.0, H), DomainError);
}

TEST_CASE("unduloid period equals the rolling-ellipse perimeter") {
  const Conic e{Conic::Kind::Ellipse, 0.5, std::sqrt(3.0 / 16.0)};
  const DelaunayParams p = conic_params(e);
  CHECK(p.H == doctest::Approx(-1.0));
  CHECK(p.c == doctest::Approx(3.0 / 16.0));
  const ProfileCurve prof = integrate_from_waist(p, -0.5, 4.0, WaistStart::Neck);
  const auto minima = profile_minima(prof);
  REQUIRE(minima.size() >= 2);
  CHECK(minima[1] - minima[0] == doctest::Approx(roulette_period(e)).epsilon(1e-8));
}

TEST_CASE("roulette of an ellipse focus matches the integrated unduloid") {
  const Conic e{Conic::Kind::Ellipse, 0.5, std::sqrt(3.0 / 16.0)};
  const ProfileCurve roul = roulette_profile(e, 400);
  const double L = roulette_period(e);
  const ProfileCurve ode = integrate_from_waist(conic_params(e), -0.6 * L, 0.6 * L, WaistStart::Neck);
  double sup = 0.0;
  for (std::size_t i = 0; i < roul.size(); ++i) sup = std::max(sup, std::abs(roul.h[i] - hermite_at(ode, roul.z[i])));
  CHECK(sup <= 1e-5);
}

TEST_CASE("rolling circle gives the cylinder") {
  const ProfileCurve p = roulette_profile({Conic::Kind::Ellipse, 0.5, 0.5}, 50);
  for (double v : p.h) CHECK(std::abs(v - 0.25) <= 1e-14);
  CHECK(classify(conic_params({Conic::Kind::Ellipse, 0.5, 0.5})) == DelaunayClass::Cylinder);
}

TEST_CASE("integrator rejects inconsistent starts") {
  CHECK_THROWS_AS(integrate_profile({-1.0, 0.1}, -1, 1, 0.25, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_from_waist({-1.0, -0.1}, -1, 1, WaistStart::Neck), std::invalid_argument);
  CHECK_THROWS_AS(integrate_from_waist({-1.0, 0.1}, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("surface of revolution wraps the profile") {
  const ProfileCurve p = integrate_from_waist({-1.0, 3.0 / 16.0}, -1.0, 1.0);
  const SeparableSurface s = surface_of_revolution(p);
  CHECK(s.h(0.0).value == doctest::Approx(-0.5625));
  CHECK(s.f.domain().hi == doctest::Approx(0.75 * 1.05));
}
