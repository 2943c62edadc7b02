#include "sepcmc/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace sepcmc {

CubicSpline::CubicSpline(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  if (n != values_.size()) throw std::invalid_argument("spline: knot/value count mismatch");
  if (n < 4) throw std::invalid_argument("spline: need at least 4 knots");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(knots_[i] < knots_[i + 1])) throw std::invalid_argument("spline: knots must increase strictly");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("spline: non-finite value");
  }

  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = knots_[i + 1] - knots_[i];
    d[i] = (values_[i + 1] - values_[i]) / h[i];
  }

  // Tridiagonal system in M_1..M_{n-2}; M_0 and M_{n-1} are eliminated with
  // the not-a-knot conditions (continuous third derivative at x_1, x_{n-2}).
  const std::size_t m = n - 2;
  std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0), rhs(m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = r + 1;
    sub[r] = h[i - 1];
    diag[r] = 2.0 * (h[i - 1] + h[i]);
    sup[r] = h[i];
    rhs[r] = 6.0 * (d[i] - d[i - 1]);
  }
  {
    const double h0 = h[0], h1 = h[1];
    diag[0] += h0 * (h0 + h1) / h1;
    sup[0] -= h0 * h0 / h1;
    sub[0] = 0.0;
  }
  {
    const double ha = h[n - 3], hb = h[n - 2];
    diag[m - 1] += hb * (ha + hb) / ha;
    sub[m - 1] -= hb * hb / ha;
    sup[m - 1] = 0.0;
  }
  for (std::size_t r = 1; r < m; ++r) {
    const double f = sub[r] / diag[r - 1];
    diag[r] -= f * sup[r - 1];
    rhs[r] -= f * rhs[r - 1];
  }
  std::vector<double> M(n);
  M[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t r = m - 1; r-- > 0;) {
    M[r + 1] = (rhs[r] - sup[r] * M[r + 2]) / diag[r];
  }
  M[0] = ((h[0] + h[1]) * M[1] - h[0] * M[2]) / h[1];
  M[n - 1] = ((h[n - 3] + h[n - 2]) * M[n - 2] - h[n - 2] * M[n - 3]) / h[n - 3];
  moments_ = std::move(M);
}

std::size_t CubicSpline::segment(double t) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, knots_.size() - 2);
}

Jet3 CubicSpline::operator()(double t) const {
  if (knots_.empty()) throw DomainError("spline: empty");
  if (!(t >= knots_.front() && t <= knots_.back())) throw DomainError("spline: outside knot range");
  const std::size_t i = segment(t);
  const double h = knots_[i + 1] - knots_[i];
  const double A = (knots_[i + 1] - t) / h;
  const double B = (t - knots_[i]) / h;
  const double Mi = moments_[i], Mj = moments_[i + 1];
  const double yi = values_[i], yj = values_[i + 1];
  Jet3 out;
  out.value = A * yi + B * yj + ((A * A * A - A) * Mi + (B * B * B - B) * Mj) * h * h / 6.0;
  out.d1 = (yj - yi) / h - (3.0 * A * A - 1.0) / 6.0 * h * Mi + (3.0 * B * B - 1.0) / 6.0 * h * Mj;
  out.d2 = A * Mi + B * Mj;
  out.d3 = (Mj - Mi) / h;
  return out;
}

SplineBasis::SplineBasis(std::vector<double> knots) : knots_(std::move(knots)) {
  const std::size_t n = knots_.size();
  cardinals_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1.0;
    cardinals_.emplace_back(knots_, std::move(e));
  }
}

SplineBasis::Weights SplineBasis::weights(double t) const {
  Weights w;
  w.value.resize(cardinals_.size());
  w.d1.resize(cardinals_.size());
  for (std::size_t k = 0; k < cardinals_.size(); ++k) {
    const Jet3 j = cardinals_[k](t);
    w.value[k] = j.value;
    w.d1[k] = j.d1;
  }
  return w;
}

}  // namespace sepcmc
