#include "sepcmc/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace sepcmc {

SeparableSurface SeparableSurface::flipped() const {
  return {scaled(f, -1.0), scaled(g, -1.0), scaled(h, -1.0), label + " (flipped)"};
}

double implicit_value(const SeparableSurface& s, double x, double y, double z) {
  return s.f(x).value + s.g(y).value + s.h(z).value;
}

SurfacePoint point_at(const SeparableSurface& s, double x, double y, double z) {
  return {x, y, z, std::abs(implicit_value(s, x, y, z))};
}

double regularity_check(const SeparableSurface& s, int n) {
  if (n < 1) throw std::invalid_argument("regularity_check: n must be >= 1");
  auto centres = [n](const Interval& d) {
    if (!d.bounded()) throw DomainError("regularity_check: unbounded domain");
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = d.lo + (i + 0.5) * d.width() / n;
    return c;
  };
  std::vector<double> fx, gy, hz;
  for (double x : centres(s.f.domain())) fx.push_back(std::pow(s.f(x).d1, 2));
  for (double y : centres(s.g.domain())) gy.push_back(std::pow(s.g(y).d1, 2));
  for (double z : centres(s.h.domain())) hz.push_back(std::pow(s.h(z).d1, 2));
  // The sum separates, so the grid minimum is the sum of the minima.
  return *std::min_element(fx.begin(), fx.end()) + *std::min_element(gy.begin(), gy.end()) +
         *std::min_element(hz.begin(), hz.end());
}

namespace {

struct CurvatureTerms {
  double numerator = 0.0;  // f''(g'^2+h'^2) + g''(f'^2+h'^2) + h''(f'^2+g'^2)
  double grad_sq = 0.0;
};

CurvatureTerms curvature_terms(const SeparableSurface& s, const SurfacePoint& p) {
  const Jet3 fj = s.f(p.x), gj = s.g(p.y), hj = s.h(p.z);
  const double scale = 1.0 + std::abs(fj.value) + std::abs(gj.value) + std::abs(hj.value);
  if (std::abs(fj.value + gj.value + hj.value) > 1e-8 * scale) {
    throw DomainError("mean curvature: point is not on the surface");
  }
  const double fx2 = fj.d1 * fj.d1, gy2 = gj.d1 * gj.d1, hz2 = hj.d1 * hj.d1;
  CurvatureTerms t;
  t.grad_sq = fx2 + gy2 + hz2;
  if (!(t.grad_sq > 0.0)) throw DomainError("mean curvature: singular point (vanishing gradient)");
  t.numerator = fj.d2 * (gy2 + hz2) + gj.d2 * (fx2 + hz2) + hj.d2 * (fx2 + gy2);
  return t;
}

}  // namespace

double mean_curvature(const SeparableSurface& s, const SurfacePoint& p) {
  const CurvatureTerms t = curvature_terms(s, p);
  return -t.numerator / (2.0 * t.grad_sq * std::sqrt(t.grad_sq));
}

double cmc_residual(const SeparableSurface& s, const SurfacePoint& p, double H) {
  const CurvatureTerms t = curvature_terms(s, p);
  return t.numerator + 2.0 * H * t.grad_sq * std::sqrt(t.grad_sq);
}

namespace {

// Root of phi(z) = h(z) - target inside [a, b] with phi(a), phi(b) of opposite
// sign (or one of them zero). Safeguarded Newton with bisection fallback.
double solve_bracketed(const C3Function& h, double target, double a, double b) {
  double fa = h(a).value - target;
  if (fa == 0.0) return a;
  double fb = h(b).value - target;
  if (fb == 0.0) return b;
  double z = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const Jet3 j = h(z);
    const double phi = j.value - target;
    if (phi == 0.0) return z;
    if ((phi < 0.0) == (fa < 0.0)) {
      a = z;
      fa = phi;
    } else {
      b = z;
      fb = phi;
    }
    double next = (j.d1 != 0.0) ? z - phi / j.d1 : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - z) <= 1e-16 * (1.0 + std::abs(z))) return next;
    z = next;
    if (b - a <= 4e-16 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::vector<SurfacePoint> sample_level_set(const SeparableSurface& s, int n, std::uint64_t seed,
                                           const SampleOptions& options) {
  if (n < 1) throw std::invalid_argument("sample_level_set: n must be >= 1");
  const Interval dx = s.f.domain(), dy = s.g.domain(), dz = s.h.domain();
  if (!dx.bounded() || !dy.bounded() || !dz.bounded()) {
    throw DomainError("sample_level_set: domain box must be bounded");
  }

  const int cells = std::max(options.bracket_cells, 2);
  std::vector<double> nodes(static_cast<std::size_t>(cells));
  std::vector<double> h_nodes(nodes.size());
  bool h_varies = false;
  for (int k = 0; k < cells; ++k) {
    const double z = dz.lo + (k + 0.5) * dz.width() / cells;
    const Jet3 j = s.h(z);
    nodes[static_cast<std::size_t>(k)] = z;
    h_nodes[static_cast<std::size_t>(k)] = j.value;
    h_varies = h_varies || j.d1 != 0.0;
  }
  if (!h_varies) throw DomainError("sample_level_set: h not invertible (constant on its domain)");

  std::mt19937_64 rng(seed);
  auto inside = [&rng](const Interval& d) {
    std::uniform_real_distribution<double> u(d.lo, d.hi);
    double x = u(rng);
    while (!d.contains(x)) x = u(rng);
    return x;
  };

  std::vector<SurfacePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const long max_draws = static_cast<long>(n) * std::max(options.max_attempts_per_point, 1);
  std::vector<std::size_t> brackets;
  for (long draw = 0; draw < max_draws && static_cast<int>(out.size()) < n; ++draw) {
    const double x = inside(dx);
    const double y = inside(dy);
    const double fv = s.f(x).value, gv = s.g(y).value;
    const double target = -fv - gv;

    brackets.clear();
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const double a = h_nodes[k] - target, b = h_nodes[k + 1] - target;
      if (a == 0.0 || (a < 0.0) != (b < 0.0)) brackets.push_back(k);
    }
    if (brackets.empty()) continue;
    std::size_t pick = 0;
    if (brackets.size() > 1) {
      std::uniform_int_distribution<std::size_t> ui(0, brackets.size() - 1);
      pick = ui(rng);
    }
    const std::size_t k = brackets[pick];
    const double z = solve_bracketed(s.h, target, nodes[k], nodes[k + 1]);
    const double residual = std::abs(fv + gv + s.h(z).value);
    if (residual <= options.tolerance * (1.0 + std::abs(fv) + std::abs(gv))) {
      out.push_back({x, y, z, residual});
    }
  }
  if (out.empty()) throw DomainError("sample_level_set: no point of the surface found in the domain box");
  return out;
}

double is_cmc(const SeparableSurface& s, double H, int n, std::uint64_t seed) {
  double sup = 0.0;
  for (const SurfacePoint& p : sample_level_set(s, n, seed)) {
    sup = std::max(sup, std::abs(cmc_residual(s, p, H)));
  }
  return sup;
}

double base_curve_curvature(const SeparableSurface& s, double x, double y) {
  const Jet3 fj = s.f(x), gj = s.g(y);
  const double fx2 = fj.d1 * fj.d1, gy2 = gj.d1 * gj.d1;
  const double n2 = fx2 + gy2;
  if (!(n2 > 0.0)) throw DomainError("base curve: singular point");
  return -(fj.d2 * gy2 + gj.d2 * fx2) / (n2 * std::sqrt(n2));
}

namespace {

// Fourth-order central difference weights for the first derivative.
template <class Fn>
double d1_central4(const Fn& fn, double step) {
  return (fn(-2.0 * step) - 8.0 * fn(-step) + 8.0 * fn(step) - fn(2.0 * step)) / (12.0 * step);
}

}  // namespace

double implicit_mean_curvature_fd(const ImplicitFunction& F, double x, double y, double z, double step) {
  const double inner = step * 1e-2;
  auto grad = [&](double px, double py, double pz) {
    std::array<double, 3> g{
        d1_central4([&](double t) { return F(px + t, py, pz); }, inner),
        d1_central4([&](double t) { return F(px, py + t, pz); }, inner),
        d1_central4([&](double t) { return F(px, py, pz + t); }, inner)};
    const double n = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    if (!(n > 0.0)) throw DomainError("finite-difference curvature: vanishing gradient");
    return std::array<double, 3>{g[0] / n, g[1] / n, g[2] / n};
  };
  const double div =
      d1_central4([&](double t) { return grad(x + t, y, z)[0]; }, step) +
      d1_central4([&](double t) { return grad(x, y + t, z)[1]; }, step) +
      d1_central4([&](double t) { return grad(x, y, z + t)[2]; }, step);
  return -0.5 * div;
}

ImplicitFunction as_implicit(const SeparableSurface& s) {
  return [s](double x, double y, double z) { return implicit_value(s, x, y, z); };
}

}  // namespace sepcmc
