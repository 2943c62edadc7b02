#include <doctest.h>

#include <cmath>

#include "sepcmc/gallery.hpp"

using namespace sepcmc;

TEST_CASE("every gallery entry has its advertised mean curvature") {
  for (const std::string& name : gallery_names()) {
    CAPTURE(name);
    const GalleryEntry e = make_gallery_entry(name);
    CHECK(e.name == name);
    CHECK(verify_gallery_entry(e, 200, 1) <= e.tolerance);
  }
}

TEST_CASE("closed-form curvature of gallery entries matches finite differences") {
  for (const std::string& name : {"sphere", "cylinder", "catenoid", "scherk", "tilted_cylinder", "unduloid"}) {
    CAPTURE(name);
    const GalleryEntry e = make_gallery_entry(name);
    REQUIRE(e.separable());
    for (const SurfacePoint& p : sample_level_set(*e.surface, 10, 4)) {
      const double fd = implicit_mean_curvature_fd(e.implicit, p.x, p.y, p.z);
      CHECK(std::abs(fd - e.expected_H) <= 2e-5);
    }
  }
}

TEST_CASE("tilted cylinders for several slopes") {
  for (double a : {0.0, 1.0, 3.0}) {
    for (double H : {0.5, -0.5, 2.0}) {
      CAPTURE(a);
      CAPTURE(H);
      const std::vector<double> p{H, a};
      const GalleryEntry e = make_gallery_entry("tilted_cylinder", p);
      CHECK(verify_gallery_entry(e, 200, 3) <= e.tolerance);
    }
  }
}

TEST_CASE("parameterized entries scale") {
  for (double r : {0.5, 2.0}) {
    const std::vector<double> p{r};
    const GalleryEntry s = make_gallery_entry("sphere", p);
    CHECK(s.expected_H == doctest::Approx(-1.0 / r));
    CHECK(verify_gallery_entry(s) <= s.tolerance);
    const GalleryEntry c = make_gallery_entry("cylinder", p);
    CHECK(c.expected_H == doctest::Approx(-0.5 / r));
    CHECK(verify_gallery_entry(c) <= c.tolerance);
  }
  const std::vector<double> u{1.0, 3.0 / 16.0};
  const GalleryEntry flipped = make_gallery_entry("unduloid", u);
  CHECK(flipped.expected_H == 1.0);
  CHECK(verify_gallery_entry(flipped) <= flipped.tolerance);
}

TEST_CASE("invalid gallery requests") {
  CHECK_THROWS_AS(make_gallery_entry("torus"), std::invalid_argument);
  const std::vector<double> bad{-1.0};
  CHECK_THROWS_AS(make_gallery_entry("sphere", bad), std::invalid_argument);
  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(make_gallery_entry("sphere", two), std::invalid_argument);
  const std::vector<double> nod{-1.0, 0.1};
  CHECK_THROWS_AS(make_gallery_entry("nodoid", nod), std::invalid_argument);
  const std::vector<double> und{-1.0, -0.1};
  CHECK_THROWS_AS(make_gallery_entry("unduloid", und), std::invalid_argument);
  const std::vector<double> zero{0.0, 1.0};
  CHECK_THROWS_AS(make_gallery_entry("tilted_cylinder", zero), std::invalid_argument);
}

TEST_CASE("the second Scherk surface is checked without a separable form") {
  const GalleryEntry e = make_gallery_entry("scherk2");
  CHECK_FALSE(e.separable());
  CHECK(verify_gallery_entry(e, 50, 2) <= e.tolerance);
}
