#pragma once

// Search for separable CMC surfaces in the (X, Y, Z) variables: cubic splines
// for X(u), Y(v), Z(w) are fitted to
//   (Y+Z)X' + (X+Z)Y' + (X+Y)Z' + 4H (X+Y+Z)^{3/2} = 0
// on a grid of (u, v) with w = -u-v, by Levenberg-Marquardt.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sepcmc/jets.hpp"

namespace sepcmc {

/// Knot values of the three splines; evaluation uses not-a-knot cubic splines.
struct SplineModel {
  std::vector<double> knots_u, knots_v, knots_w;
  std::vector<double> coeffs_X, coeffs_Y, coeffs_Z;
  double floor = 1e-6;  // positivity guard for the knot values

  /// Throws std::invalid_argument on unsorted knots, count mismatch or fewer
  /// than 4 knots.
  void validate() const;
  std::size_t unknowns() const { return coeffs_X.size() + coeffs_Y.size() + coeffs_Z.size(); }
  /// Smallest knot value of X, Y, Z.
  double min_coefficient() const;
};

using UVPoint = std::array<double, 2>;
using UVGrid = std::vector<UVPoint>;

/// n x n points on the closed rectangle u_range x v_range.
UVGrid uniform_grid(Interval u_range, Interval v_range, int n);

/// Sampling windows for the model: the grid covers u_range x v_range, the w
/// knots cover -u-v with a 5% margin on each side.
struct ModelWindow {
  Interval u_range;
  Interval v_range;
  Interval w_range() const;
};

/// u, v in [0.05, 0.45]: X = 4u, Y = 4v, Z = 4w + 4 stays positive.
ModelWindow sphere_window();
/// u, v in [0.6, 1.5]: Z = 4w^2 + 4w stays positive.
ModelWindow catenoid_window();

/// Uniform knots on the window; coefficient k is fn(knot_k).
SplineModel sample_model(const std::function<double(double)>& X, const std::function<double(double)>& Y,
                         const std::function<double(double)>& Z, const ModelWindow& window, int knots);

/// X = 4u, Y = 4v, Z = 4w + 4r^2: the sphere x^2 + y^2 + z^2 = r^2, H = -1/r.
SplineModel sphere_model(int knots, const ModelWindow& window = sphere_window(), double radius = 1.0);
/// X = 4u, Y = 4v, Z = 4w^2 + 4w (the catenoid, H = 0).
SplineModel catenoid_model(int knots, const ModelWindow& window = catenoid_window());

/// Adds independent uniform noise in [-amplitude, amplitude] to every knot value.
SplineModel perturbed(const SplineModel& m, double amplitude, std::uint64_t seed);

/// Random positive start: each spline is a random positive affine function
/// plus uniform knot noise of relative size 0.1.
SplineModel random_model(const ModelWindow& window, int knots, std::uint64_t seed);

/// Left-hand side minus right-hand side of the uvw CMC equation per grid
/// point. Throws DomainError outside the knot ranges or where X+Y+Z <= 0.
std::vector<double> residual_vector(const SplineModel& m, double H, const UVGrid& grid);

/// Row per grid point, column per knot value (X, then Y, then Z).
std::vector<std::vector<double>> residual_jacobian(const SplineModel& m, double H, const UVGrid& grid);

/// J^T J (column-major, size x size) and J^T r of the grid residuals.
struct NormalEquations {
  std::size_t size = 0;
  std::vector<double> JtJ;
  std::vector<double> Jtr;
};
NormalEquations normal_equations(const SplineModel& m, double H, const UVGrid& grid);

struct FitOptions {
  int max_iter = 200;
  double tol = 1e-8;            // on residual_max
  double damping_init = 1e-3;   // relative to the largest diagonal of J^T J
  double penalty_weight = 1.0;  // weight of the positivity penalty residuals
};

struct SolveResult {
  double residual_rms = 0.0;
  double residual_max = 0.0;
  int iterations = 0;  // accepted steps
  double delaunay_distance = 0.0;
  bool converged = false;
  bool positivity_violated = false;
  std::string stop_reason;
};

struct FitOutput {
  SplineModel model;
  SolveResult result;
};

/// Levenberg-Marquardt with Nielsen damping updates and an analytic Jacobian.
/// Knot values below the floor add residuals penalty_weight * (floor - c).
/// Accepted steps strictly decrease the total cost; the best model is
/// returned. A trial step leaving the domain (X+Y+Z <= 0) counts as rejected.
FitOutput fit(const SplineModel& start, double H, const UVGrid& grid, const FitOptions& options = {});

/// Normalized affine-fit distance of one pair of splines: least-squares lines
/// through the knot values, max(sup fit error A, sup fit error B, |slope A -
/// slope B|) / (sup|A| + sup|B|).
double pair_distance(const std::vector<double>& knots_a, const std::vector<double>& coeffs_a,
                     const std::vector<double>& knots_b, const std::vector<double>& coeffs_b);

/// Minimum of pair_distance over (X, Y), (Y, Z), (Z, X): a rotational solution
/// has two affine components of equal slope, whichever the axis.
double delaunay_distance(const SplineModel& m);

/// X~(u) = lambda^2 X(lambda u) and likewise for Y, Z. Maps a solution for H
/// to a solution for lambda^2 H on the grid scaled by 1/lambda.
SplineModel gauge_transform(const SplineModel& m, double lambda);

/// X~(u) = lambda^2 X(u / lambda) and likewise; maps solutions for H to
/// solutions for the same H on the grid scaled by lambda.
SplineModel dilate(const SplineModel& m, double lambda);

UVGrid scale_grid(const UVGrid& grid, double s);

}  // namespace sepcmc
