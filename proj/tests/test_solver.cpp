#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sepcmc/solver.hpp"

using namespace sepcmc;

namespace {

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double*> slots(SplineModel& m) {
  std::vector<double*> s;
  for (auto* c : {&m.coeffs_X, &m.coeffs_Y, &m.coeffs_Z}) {
    for (double& x : *c) s.push_back(&x);
  }
  return s;
}

}  // namespace

TEST_CASE("sphere and catenoid models solve the equation") {
  const ModelWindow sw = sphere_window(), cw = catenoid_window();
  CHECK(sup(residual_vector(sphere_model(40), -1.0, uniform_grid(sw.u_range, sw.v_range, 50))) <= 1e-10);
  CHECK(sup(residual_vector(catenoid_model(40), 0.0, uniform_grid(cw.u_range, cw.v_range, 50))) <= 1e-10);
  // Wrong sign of H: residual 64 at every point with S = 4.
  CHECK(sup(residual_vector(sphere_model(40), 1.0, uniform_grid(sw.u_range, sw.v_range, 10))) ==
        doctest::Approx(64.0));
}

TEST_CASE("analytic Jacobian matches central differences") {
  const ModelWindow w = sphere_window();
  const UVGrid grid = uniform_grid(w.u_range, w.v_range, 7);
  const SplineModel m = random_model(w, 8, 4);
  const auto J = residual_jacobian(m, -1.0, grid);
  const double step = 1e-6;
  SplineModel plus = m, minus = m;
  auto sp = slots(plus), sm = slots(minus);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    *sp[k] += step;
    *sm[k] -= step;
    const auto rp = residual_vector(plus, -1.0, grid), rm = residual_vector(minus, -1.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double fd = (rp[i] - rm[i]) / (2 * step);
      CHECK(std::abs(fd - J[i][k]) <= 1e-4 * std::max(1.0, std::abs(J[i][k])));
    }
    *sp[k] -= step;
    *sm[k] += step;
  }
}

TEST_CASE("normal equations equal the dense products") {
  const ModelWindow w = sphere_window();
  const UVGrid grid = uniform_grid(w.u_range, w.v_range, 9);
  const SplineModel m = random_model(w, 6, 2);
  const auto J = residual_jacobian(m, -1.0, grid);
  const auto r = residual_vector(m, -1.0, grid);
  const NormalEquations ne = normal_equations(m, -1.0, grid);
  const std::size_t p = ne.size;
  REQUIRE(p == m.unknowns());
  for (std::size_t a = 0; a < p; ++a) {
    double g = 0.0;
    for (std::size_t i = 0; i < J.size(); ++i) g += J[i][a] * r[i];
    CHECK(ne.Jtr[a] == doctest::Approx(g).epsilon(1e-11));
    for (std::size_t b = 0; b < p; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < J.size(); ++i) s += J[i][a] * J[i][b];
      CHECK(std::abs(ne.JtJ[a + b * p] - s) <= 1e-11 * (1.0 + std::abs(s)));
    }
  }
}

TEST_CASE("fit decreases the residual and recovers a perturbed sphere") {
  const ModelWindow w = sphere_window();
  const UVGrid grid = uniform_grid(w.u_range, w.v_range, 30);
  const SplineModel start = perturbed(sphere_model(20), 1e-2, 7);
  const double before = sup(residual_vector(start, -1.0, grid));
  FitOptions few;
  few.max_iter = 3;
  const FitOutput partial = fit(start, -1.0, grid, few);
  CHECK(partial.result.residual_max < before);
  const FitOutput out = fit(start, -1.0, grid);
  CHECK(out.result.converged);
  CHECK(out.result.stop_reason == "tolerance");
  CHECK(out.result.residual_max <= 1e-8);
  CHECK(out.result.delaunay_distance <= 1e-4);
  CHECK(sup(residual_vector(out.model, -1.0, grid)) == doctest::Approx(out.result.residual_max));
}

TEST_CASE("gauge and dilation map solutions to solutions") {
  const ModelWindow w = sphere_window();
  const UVGrid grid = uniform_grid(w.u_range, w.v_range, 20);
  const SplineModel s = sphere_model(30);
  const double lambda = 2.0;
  CHECK(sup(residual_vector(gauge_transform(s, lambda), -lambda * lambda, scale_grid(grid, 1.0 / lambda))) <= 1e-9);
  CHECK(sup(residual_vector(dilate(s, lambda), -1.0, scale_grid(grid, lambda))) <= 1e-9);
  // A perturbed model keeps its residual up to the expected factor.
  const SplineModel p = perturbed(s, 1e-3, 3);
  const double r0 = sup(residual_vector(p, -1.0, grid));
  const double r1 = sup(residual_vector(gauge_transform(p, lambda), -lambda * lambda, scale_grid(grid, 1.0 / lambda)));
  CHECK(r1 == doctest::Approx(std::pow(lambda, 5) * r0).epsilon(1e-9));
  CHECK_THROWS_AS(gauge_transform(s, -1.0), std::invalid_argument);
}

TEST_CASE("Delaunay distance separates rotational and generic models") {
  CHECK(delaunay_distance(sphere_model(20)) <= 1e-14);
  CHECK(delaunay_distance(catenoid_model(20)) <= 1e-14);
  const SplineModel generic = sample_model([](double u) { return 1 + u * u; }, [](double v) { return 2 + std::sin(3 * v); },
                                           [](double t) { return 3 + t * t * t; }, sphere_window(), 12);
  CHECK(delaunay_distance(generic) > 1e-3);
  const std::vector<double> k{0, 1, 2, 3};
  CHECK(pair_distance(k, {1, 2, 3, 4}, k, {5, 6, 7, 8}) == 0.0);
  CHECK(pair_distance(k, {1, 2, 3, 4}, k, {5, 7, 9, 11}) == doctest::Approx(1.0 / 15.0));
}

TEST_CASE("model validation and domain errors") {
  SplineModel m = sphere_model(10);
  m.coeffs_X.pop_back();
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  const ModelWindow w = sphere_window();
  CHECK_THROWS_AS(residual_vector(sphere_model(10), -1.0, {{0.9, 0.1}}), DomainError);
  SplineModel neg = sphere_model(10);
  for (double& c : neg.coeffs_Z) c = -10.0;
  CHECK_THROWS_AS(residual_vector(neg, -1.0, uniform_grid(w.u_range, w.v_range, 4)), DomainError);
  CHECK_THROWS_AS(uniform_grid(w.u_range, w.v_range, 1), std::invalid_argument);
}
