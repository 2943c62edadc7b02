#pragma once

// Third-order jets of one-variable functions, catalog functions with
// closed-form derivatives, and first-order duals on the plane u+v+w=0.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sepcmc {

/// Raised on any evaluation outside a function's domain: division by zero,
/// negative radicand, a coordinate outside an open interval.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Value and first three derivatives of a one-variable function at a point.
struct Jet3 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static constexpr Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }

  bool finite() const {
    return std::isfinite(value) && std::isfinite(d1) && std::isfinite(d2) &&
           std::isfinite(d3);
  }

  Jet3 operator-() const { return {-value, -d1, -d2, -d3}; }
  Jet3& operator+=(const Jet3& o);
  Jet3& operator-=(const Jet3& o);
  Jet3& operator*=(const Jet3& o);
  Jet3& operator/=(const Jet3& o);
  Jet3& operator*=(double s);

  friend bool operator==(const Jet3&, const Jet3&) = default;
};

Jet3 operator+(Jet3 a, const Jet3& b);
Jet3 operator-(Jet3 a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);
Jet3 operator*(double s, Jet3 a);
Jet3 operator*(Jet3 a, double s);
Jet3 operator+(Jet3 a, double s);
Jet3 operator+(double s, Jet3 a);
Jet3 operator-(Jet3 a, double s);

// Chain rule through order 3: `outer` holds phi, phi', phi'', phi''' evaluated
// at inner.value.
Jet3 compose(const Jet3& outer, const Jet3& inner);

Jet3 sqrt(const Jet3& a);
Jet3 pow_three_halves(const Jet3& a);
Jet3 reciprocal(const Jet3& a);

/// Jet of the local inverse x(u) of u = f(x) at u = f(x0), given the jet `a`
/// of f at x0. Requires f'(x0) != 0.
Jet3 inverse(const Jet3& a, double x0);

enum class JetOp { Add, Sub, Mul, Div, PowThreeHalves, Sqrt };

/// Dispatching form used by bindings and the CLI; `b` is ignored for unary ops.
Jet3 jet_arith(const Jet3& a, const Jet3& b, JetOp op);

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x > lo && x < hi; }
  bool empty() const { return !(lo < hi); }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  double width() const { return hi - lo; }
  Interval intersect(const Interval& o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
  }
};

/// A C^3 function on an open interval, evaluated to its third-order jet.
class C3Function {
 public:
  using Evaluator = std::function<Jet3(double)>;

  C3Function() = default;
  C3Function(Evaluator eval, Interval domain, std::string name = "custom",
             std::vector<double> params = {});

  /// Throws DomainError when x is outside the open domain.
  Jet3 operator()(double x) const;
  double value(double x) const { return (*this)(x).value; }

  const Interval& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }

  /// Same function on a narrower interval.
  C3Function restricted(Interval d) const;

 private:
  Evaluator eval_;
  Interval domain_;
  std::string name_ = "custom";
  std::vector<double> params_;
};

/// Catalog vocabulary shared with the JSON surface format:
///   quadratic(a,b,c)   a x^2 + b x + c
///   affine(a,b)        a x + b
///   cosh_sq, neg_cosh_sq
///   log_cos, neg_log_cos                 domain (-pi/2, pi/2)
///   sqrt_circle(H,a)   -(sqrt(1+a^2)/(2H)) sqrt(1 - 4 H^2 x^2)
///   prop1(a,b1,c1)     (a x + c1)^2 / (4a) - b1/a
///   tabulated(k0,v0,k1,v1,...)  not-a-knot cubic spline through (k_i, v_i)
/// The returned domain is the natural domain intersected with `domain`.
C3Function catalog(std::string_view name, std::span<const double> params,
                   Interval domain = {});

std::vector<std::string> catalog_names();

C3Function tabulated(std::span<const double> knots, std::span<const double> values);

/// scale * fn(x) + offset
C3Function scaled(const C3Function& fn, double scale, double offset = 0.0);
/// fn(x - t), domain shifted by t
C3Function shifted(const C3Function& fn, double t);

// ---------------------------------------------------------------------------
// Constraint plane u + v + w = 0.

/// Value and the three ambient partials (d/du, d/dv, d/dw) of an expression in
/// independent variables u, v, w. Scalar may be double or an exact rational.
template <class T>
struct PlaneDual {
  T value{};
  T du{};
  T dv{};
  T dw{};

  PlaneDual() = default;
  PlaneDual(T v, T pu, T pv, T pw)
      : value(std::move(v)), du(std::move(pu)), dv(std::move(pv)), dw(std::move(pw)) {}
  static PlaneDual constant(T c) { return {std::move(c), T{0}, T{0}, T{0}}; }

  // A function X(u) with X = jet value and X' = derivative.
  static PlaneDual of_u(T value, T deriv) { return {std::move(value), std::move(deriv), T{0}, T{0}}; }
  static PlaneDual of_v(T value, T deriv) { return {std::move(value), T{0}, std::move(deriv), T{0}}; }
  static PlaneDual of_w(T value, T deriv) { return {std::move(value), T{0}, T{0}, std::move(deriv)}; }
  // A function of u+v only: equal u- and v-partials.
  static PlaneDual of_u_plus_v(T value, T deriv) { return {std::move(value), deriv, deriv, T{0}}; }

  PlaneDual operator-() const { return {-value, -du, -dv, -dw}; }

  friend PlaneDual operator+(const PlaneDual& a, const PlaneDual& b) {
    return {a.value + b.value, a.du + b.du, a.dv + b.dv, a.dw + b.dw};
  }
  friend PlaneDual operator-(const PlaneDual& a, const PlaneDual& b) {
    return {a.value - b.value, a.du - b.du, a.dv - b.dv, a.dw - b.dw};
  }
  friend PlaneDual operator*(const PlaneDual& a, const PlaneDual& b) {
    return {a.value * b.value, a.du * b.value + a.value * b.du,
            a.dv * b.value + a.value * b.dv, a.dw * b.value + a.value * b.dw};
  }
  friend PlaneDual operator/(const PlaneDual& a, const PlaneDual& b) {
    if (b.value == T{0}) throw DomainError("plane dual: division by zero");
    const T inv = T{1} / b.value;
    const T q = a.value * inv;
    return {q, (a.du - q * b.du) * inv, (a.dv - q * b.dv) * inv, (a.dw - q * b.dw) * inv};
  }
  friend PlaneDual operator*(const T& s, const PlaneDual& a) {
    return {s * a.value, s * a.du, s * a.dv, s * a.dw};
  }
  friend PlaneDual operator+(const PlaneDual& a, const T& s) {
    return {a.value + s, a.du, a.dv, a.dw};
  }
};

/// S^{3/2} when the square root `root` of S.value is known exactly; keeps the
/// computation rational. Requires root^2 == S.value.
template <class T>
PlaneDual<T> pow_three_halves_with_root(const PlaneDual<T>& S, const T& root) {
  const T k = T{3} * root / T{2};
  return {root * root * root, k * S.du, k * S.dv, k * S.dw};
}

PlaneDual<double> sqrt(const PlaneDual<double>& a);
PlaneDual<double> pow_three_halves(const PlaneDual<double>& a);

/// Component jets X(u), Y(v), Z(w), Phi(u+v) at a point of the plane; w is
/// always -u-v.
struct PlaneJet {
  double u = 0.0;
  double v = 0.0;
  Jet3 X, Y, Z, Phi;

  double w() const { return -u - v; }

  PlaneDual<double> var_u() const { return {u, 1.0, 0.0, 0.0}; }
  PlaneDual<double> var_v() const { return {v, 0.0, 1.0, 0.0}; }
  PlaneDual<double> var_w() const { return {w(), 0.0, 0.0, 1.0}; }

  // order 0..2 selects X, X', X''.
  PlaneDual<double> x(int order = 0) const { return lift(X, order, 0); }
  PlaneDual<double> y(int order = 0) const { return lift(Y, order, 1); }
  PlaneDual<double> z(int order = 0) const { return lift(Z, order, 2); }
  PlaneDual<double> phi(int order = 0) const { return lift(Phi, order, 3); }

 private:
  static PlaneDual<double> lift(const Jet3& j, int order, int slot);
};

struct PlanePartials {
  double du = 0.0;
  double dv = 0.0;
  double dw = 0.0;
  // Directional derivatives inside the plane, using dw/du = dw/dv = -1.
  double along_u() const { return du - dw; }
  double along_v() const { return dv - dw; }
};

using PlaneExpression = std::function<PlaneDual<double>(const PlaneJet&)>;

PlanePartials plane_partials(const PlaneJet& components, const PlaneExpression& expression);

}  // namespace sepcmc
