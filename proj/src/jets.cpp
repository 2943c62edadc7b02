#include "sepcmc/jets.hpp"

#include <memory>
#include <numbers>
#include <sstream>

#include "sepcmc/spline.hpp"

namespace sepcmc {

namespace {

Jet3 checked(const Jet3& j, const char* what) {
  if (!j.finite()) throw DomainError(std::string(what) + ": non-finite jet");
  return j;
}

}  // namespace

Jet3& Jet3::operator+=(const Jet3& o) {
  value += o.value;
  d1 += o.d1;
  d2 += o.d2;
  d3 += o.d3;
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& o) {
  value -= o.value;
  d1 -= o.d1;
  d2 -= o.d2;
  d3 -= o.d3;
  return *this;
}

Jet3& Jet3::operator*=(const Jet3& o) { return *this = *this * o; }
Jet3& Jet3::operator/=(const Jet3& o) { return *this = *this / o; }

Jet3& Jet3::operator*=(double s) {
  value *= s;
  d1 *= s;
  d2 *= s;
  d3 *= s;
  return *this;
}

Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
          a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3};
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
Jet3 operator*(double s, Jet3 a) { return a *= s; }
Jet3 operator*(Jet3 a, double s) { return a *= s; }
Jet3 operator+(Jet3 a, double s) {
  a.value += s;
  return a;
}
Jet3 operator+(double s, Jet3 a) { return a + s; }
Jet3 operator-(Jet3 a, double s) { return a + (-s); }

Jet3 compose(const Jet3& outer, const Jet3& inner) {
  const double g1 = inner.d1, g2 = inner.d2, g3 = inner.d3;
  return {outer.value, outer.d1 * g1, outer.d2 * g1 * g1 + outer.d1 * g2,
          outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 + outer.d1 * g3};
}

Jet3 reciprocal(const Jet3& a) {
  if (a.value == 0.0) throw DomainError("jet: division by zero");
  const double t = a.value;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  return checked(compose({inv, -inv2, 2.0 * inv2 * inv, -6.0 * inv2 * inv2}, a), "reciprocal");
}

Jet3 sqrt(const Jet3& a) {
  if (!(a.value > 0.0)) throw DomainError("jet: sqrt of non-positive value");
  const double r = std::sqrt(a.value);
  const double t = a.value;
  return checked(compose({r, 0.5 / r, -0.25 / (r * t), 0.375 / (r * t * t)}, a), "sqrt");
}

Jet3 pow_three_halves(const Jet3& a) {
  if (!(a.value > 0.0)) throw DomainError("jet: 3/2 power of non-positive value");
  const double r = std::sqrt(a.value);
  const double t = a.value;
  return checked(compose({r * t, 1.5 * r, 0.75 / r, -0.375 / (r * t)}, a), "pow_three_halves");
}

Jet3 inverse(const Jet3& a, double x0) {
  const double f1 = a.d1, f2 = a.d2, f3 = a.d3;
  if (f1 == 0.0) throw DomainError("jet: inverse with vanishing derivative");
  const double f1_3 = f1 * f1 * f1;
  return checked({x0, 1.0 / f1, -f2 / f1_3, (3.0 * f2 * f2 - f1 * f3) / (f1_3 * f1 * f1)},
                 "inverse");
}

Jet3 jet_arith(const Jet3& a, const Jet3& b, JetOp op) {
  switch (op) {
    case JetOp::Add: return checked(a + b, "add");
    case JetOp::Sub: return checked(a - b, "sub");
    case JetOp::Mul: return checked(a * b, "mul");
    case JetOp::Div: return a / b;
    case JetOp::PowThreeHalves: return pow_three_halves(a);
    case JetOp::Sqrt: return sqrt(a);
  }
  throw std::invalid_argument("jet_arith: unknown op");
}

// ---------------------------------------------------------------------------

C3Function::C3Function(Evaluator eval, Interval domain, std::string name,
                       std::vector<double> params)
    : eval_(std::move(eval)), domain_(domain), name_(std::move(name)), params_(std::move(params)) {
  if (domain_.empty()) throw std::invalid_argument("function '" + name_ + "': empty domain");
}

Jet3 C3Function::operator()(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os.precision(17);
    os << "function '" << name_ << "': x=" << x << " outside (" << domain_.lo << ", "
       << domain_.hi << ")";
    throw DomainError(os.str());
  }
  return checked(eval_(x), name_.c_str());
}

C3Function C3Function::restricted(Interval d) const {
  C3Function out = *this;
  out.domain_ = domain_.intersect(d);
  if (out.domain_.empty()) throw std::invalid_argument("function '" + name_ + "': empty domain");
  return out;
}

namespace {

void expect_params(std::string_view name, std::span<const double> p, std::size_t n) {
  if (p.size() != n) {
    throw std::invalid_argument("catalog '" + std::string(name) + "': expected " +
                                std::to_string(n) + " parameters, got " +
                                std::to_string(p.size()));
  }
}

Jet3 cosh_sq_jet(double x) {
  const double c = std::cosh(x);
  const double s2 = std::sinh(2.0 * x);
  return {c * c, s2, 2.0 * std::cosh(2.0 * x), 2.0 * s2 * 2.0};
}

Jet3 log_cos_jet(double x) {
  const double t = std::tan(x);
  const double c = std::cos(x);
  const double sec2 = 1.0 / (c * c);
  return {std::log(c), -t, -sec2, -2.0 * sec2 * t};
}

}  // namespace

C3Function catalog(std::string_view name, std::span<const double> p, Interval domain) {
  const std::vector<double> params(p.begin(), p.end());
  const std::string label(name);
  constexpr double half_pi = std::numbers::pi / 2.0;

  auto make = [&](C3Function::Evaluator ev, Interval natural) {
    const Interval d = natural.intersect(domain);
    if (d.empty()) throw std::invalid_argument("catalog '" + label + "': parameters give an empty domain");
    return C3Function(std::move(ev), d, label, params);
  };

  if (name == "quadratic") {
    expect_params(name, p, 3);
    const double a = p[0], b = p[1], c = p[2];
    return make([=](double x) { return Jet3{(a * x + b) * x + c, 2.0 * a * x + b, 2.0 * a, 0.0}; }, {});
  }
  if (name == "affine") {
    expect_params(name, p, 2);
    const double a = p[0], b = p[1];
    return make([=](double x) { return Jet3{a * x + b, a, 0.0, 0.0}; }, {});
  }
  if (name == "cosh_sq") {
    expect_params(name, p, 0);
    return make(cosh_sq_jet, {});
  }
  if (name == "neg_cosh_sq") {
    expect_params(name, p, 0);
    return make([](double x) { return -cosh_sq_jet(x); }, {});
  }
  if (name == "log_cos") {
    expect_params(name, p, 0);
    return make(log_cos_jet, {-half_pi, half_pi});
  }
  if (name == "neg_log_cos") {
    expect_params(name, p, 0);
    return make([](double x) { return -log_cos_jet(x); }, {-half_pi, half_pi});
  }
  if (name == "sqrt_circle") {
    expect_params(name, p, 2);
    const double H = p[0], a = p[1];
    if (H == 0.0 || !std::isfinite(H)) throw std::invalid_argument("catalog 'sqrt_circle': H must be nonzero");
    const double k = std::sqrt(1.0 + a * a) / (2.0 * H);
    const double r = 1.0 / (2.0 * std::abs(H));
    return make(
        [=](double x) {
          const Jet3 q{1.0 - 4.0 * H * H * x * x, -8.0 * H * H * x, -8.0 * H * H, 0.0};
          return -k * sqrt(q);
        },
        {-r, r});
  }
  if (name == "prop1") {
    expect_params(name, p, 3);
    const double a = p[0], b1 = p[1], c1 = p[2];
    if (a == 0.0) throw std::invalid_argument("catalog 'prop1': a must be nonzero");
    return make(
        [=](double x) {
          const double s = a * x + c1;
          return Jet3{s * s / (4.0 * a) - b1 / a, s / 2.0, a / 2.0, 0.0};
        },
        {});
  }
  if (name == "tabulated") {
    if (p.size() < 8 || p.size() % 2 != 0) {
      throw std::invalid_argument("catalog 'tabulated': expected >= 4 (knot, value) pairs");
    }
    std::vector<double> k, v;
    for (std::size_t i = 0; i < p.size(); i += 2) {
      k.push_back(p[i]);
      v.push_back(p[i + 1]);
    }
    C3Function t = tabulated(k, v);
    return t.restricted(domain);
  }
  throw std::invalid_argument("catalog: unknown function '" + label + "'");
}

std::vector<std::string> catalog_names() {
  return {"quadratic", "affine",      "cosh_sq", "neg_cosh_sq", "log_cos",
          "neg_log_cos", "sqrt_circle", "prop1",   "tabulated"};
}

C3Function tabulated(std::span<const double> knots, std::span<const double> values) {
  auto spline = std::make_shared<const CubicSpline>(std::vector<double>(knots.begin(), knots.end()),
                                                    std::vector<double>(values.begin(), values.end()));
  std::vector<double> params;
  params.reserve(2 * knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    params.push_back(knots[i]);
    params.push_back(values[i]);
  }
  return C3Function([spline](double x) { return (*spline)(x); }, {spline->lo(), spline->hi()},
                    "tabulated", std::move(params));
}

C3Function scaled(const C3Function& fn, double scale, double offset) {
  std::vector<double> params = fn.params();
  return C3Function([fn, scale, offset](double x) { return scale * fn(x) + offset; }, fn.domain(),
                    fn.name() + "*scaled", std::move(params));
}

C3Function shifted(const C3Function& fn, double t) {
  const Interval d{fn.domain().lo + t, fn.domain().hi + t};
  return C3Function([fn, t](double x) { return fn(x - t); }, d, fn.name() + "*shifted", fn.params());
}

// ---------------------------------------------------------------------------

PlaneDual<double> sqrt(const PlaneDual<double>& a) {
  if (!(a.value > 0.0)) throw DomainError("plane dual: sqrt of non-positive value");
  const double r = std::sqrt(a.value);
  const double k = 0.5 / r;
  return {r, k * a.du, k * a.dv, k * a.dw};
}

PlaneDual<double> pow_three_halves(const PlaneDual<double>& a) {
  if (!(a.value > 0.0)) throw DomainError("plane dual: 3/2 power of non-positive value");
  return pow_three_halves_with_root(a, std::sqrt(a.value));
}

PlaneDual<double> PlaneJet::lift(const Jet3& j, int order, int slot) {
  double value = 0.0, deriv = 0.0;
  switch (order) {
    case 0: value = j.value; deriv = j.d1; break;
    case 1: value = j.d1; deriv = j.d2; break;
    case 2: value = j.d2; deriv = j.d3; break;
    default: throw std::invalid_argument("plane jet: order must be 0, 1 or 2");
  }
  switch (slot) {
    case 0: return PlaneDual<double>::of_u(value, deriv);
    case 1: return PlaneDual<double>::of_v(value, deriv);
    case 2: return PlaneDual<double>::of_w(value, deriv);
    default: return PlaneDual<double>::of_u_plus_v(value, deriv);
  }
}

PlanePartials plane_partials(const PlaneJet& components, const PlaneExpression& expression) {
  const PlaneDual<double> a = expression(components);
  return {a.du, a.dv, a.dw};
}

}  // namespace sepcmc
