#pragma once

#include <span>
#include <vector>

#include "sepcmc/jets.hpp"

namespace sepcmc {

/// Interpolating cubic spline with not-a-knot end conditions. Reproduces
/// polynomials of degree <= 3 exactly. Needs at least 4 strictly increasing
/// knots.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> knots, std::vector<double> values);

  /// Jet at t; t must lie in the closed knot range.
  Jet3 operator()(double t) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double lo() const { return knots_.front(); }
  double hi() const { return knots_.back(); }

 private:
  std::size_t segment(double t) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> moments_;  // second derivatives at knots
};

/// Cardinal basis of the not-a-knot spline on a fixed knot vector: the spline
/// through values c evaluates to sum_k weight_k(t) * c_k. Used for analytic
/// Jacobians with respect to knot values.
class SplineBasis {
 public:
  explicit SplineBasis(std::vector<double> knots);

  struct Weights {
    std::vector<double> value;
    std::vector<double> d1;
  };
  Weights weights(double t) const;

  std::size_t size() const { return cardinals_.size(); }
  const std::vector<double>& knots() const { return knots_; }

 private:
  std::vector<double> knots_;
  std::vector<CubicSpline> cardinals_;
};

}  // namespace sepcmc
