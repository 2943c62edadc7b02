#include "sepcmc/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "sepcmc/spline.hpp"

namespace sepcmc {

void SplineModel::validate() const {
  auto check = [](const std::vector<double>& k, const std::vector<double>& c, const char* what) {
    if (k.size() != c.size()) throw std::invalid_argument(std::string("spline model: count mismatch in ") + what);
    if (k.size() < 4) throw std::invalid_argument(std::string("spline model: need at least 4 knots in ") + what);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (!(k[i] < k[i + 1])) throw std::invalid_argument(std::string("spline model: unsorted knots in ") + what);
    }
  };
  check(knots_u, coeffs_X, "X");
  check(knots_v, coeffs_Y, "Y");
  check(knots_w, coeffs_Z, "Z");
  if (!(floor > 0.0)) throw std::invalid_argument("spline model: floor must be positive");
}

double SplineModel::min_coefficient() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* c : {&coeffs_X, &coeffs_Y, &coeffs_Z}) {
    for (double x : *c) m = std::min(m, x);
  }
  return m;
}

UVGrid uniform_grid(Interval u_range, Interval v_range, int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: n must be >= 2");
  UVGrid g;
  g.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = i == n - 1 ? u_range.hi : u_range.lo + u_range.width() * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      g.push_back({u, j == n - 1 ? v_range.hi : v_range.lo + v_range.width() * j / (n - 1)});
    }
  }
  return g;
}

Interval ModelWindow::w_range() const {
  const double lo = -u_range.hi - v_range.hi, hi = -u_range.lo - v_range.lo;
  const double margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

ModelWindow sphere_window() { return {{0.05, 0.45}, {0.05, 0.45}}; }
ModelWindow catenoid_window() { return {{0.6, 1.5}, {0.6, 1.5}}; }

namespace {

std::vector<double> uniform_knots(const Interval& d, int n) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = d.lo + d.width() * i / (n - 1);
  k.back() = d.hi;
  return k;
}

std::vector<double> sampled(const std::function<double(double)>& fn, const std::vector<double>& knots) {
  std::vector<double> c;
  c.reserve(knots.size());
  for (double t : knots) c.push_back(fn(t));
  return c;
}

}  // namespace

SplineModel sample_model(const std::function<double(double)>& X, const std::function<double(double)>& Y,
                         const std::function<double(double)>& Z, const ModelWindow& window, int knots) {
  if (knots < 4) throw std::invalid_argument("sample_model: need at least 4 knots");
  SplineModel m;
  m.knots_u = uniform_knots(window.u_range, knots);
  m.knots_v = uniform_knots(window.v_range, knots);
  m.knots_w = uniform_knots(window.w_range(), knots);
  m.coeffs_X = sampled(X, m.knots_u);
  m.coeffs_Y = sampled(Y, m.knots_v);
  m.coeffs_Z = sampled(Z, m.knots_w);
  return m;
}

SplineModel sphere_model(int knots, const ModelWindow& window, double radius) {
  const double r2 = radius * radius;
  return sample_model([](double u) { return 4.0 * u; }, [](double v) { return 4.0 * v; },
                      [r2](double w) { return 4.0 * w + 4.0 * r2; }, window, knots);
}

SplineModel catenoid_model(int knots, const ModelWindow& window) {
  return sample_model([](double u) { return 4.0 * u; }, [](double v) { return 4.0 * v; },
                      [](double w) { return 4.0 * w * w + 4.0 * w; }, window, knots);
}

SplineModel perturbed(const SplineModel& m, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  SplineModel out = m;
  for (auto* c : {&out.coeffs_X, &out.coeffs_Y, &out.coeffs_Z}) {
    for (double& x : *c) x += noise(rng);
  }
  return out;
}

SplineModel random_model(const ModelWindow& window, int knots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> end(0.3, 2.0), noise(-0.1, 0.1);
  SplineModel m;
  m.knots_u = uniform_knots(window.u_range, knots);
  m.knots_v = uniform_knots(window.v_range, knots);
  m.knots_w = uniform_knots(window.w_range(), knots);
  auto fill = [&](const std::vector<double>& k) {
    const double e0 = end(rng), e1 = end(rng);
    std::vector<double> c;
    for (double t : k) {
      const double s = (t - k.front()) / (k.back() - k.front());
      const double base = e0 + s * (e1 - e0);
      c.push_back(base * (1.0 + noise(rng)));
    }
    return c;
  };
  m.coeffs_X = fill(m.knots_u);
  m.coeffs_Y = fill(m.knots_v);
  m.coeffs_Z = fill(m.knots_w);
  return m;
}

namespace {

struct PointTerms {
  double X, Xp, Y, Yp, Z, Zp, S;
};

double residual_at(const PointTerms& p, double H) {
  return (p.Y + p.Z) * p.Xp + (p.X + p.Z) * p.Yp + (p.X + p.Y) * p.Zp + 4.0 * H * p.S * std::sqrt(p.S);
}

void require_positive_sum(double S) {
  if (!(S > 0.0)) throw DomainError("residual: X + Y + Z <= 0");
}

// Spline basis weights at the distinct u, v and w values of a grid; the model
// knots are fixed during a fit, so these are computed once.
class GridBasis {
 public:
  GridBasis(const SplineModel& m, const UVGrid& grid) {
    const SplineBasis bu(m.knots_u), bv(m.knots_v), bw(m.knots_w);
    for (const auto& p : grid) {
      const double w = -p[0] - p[1];
      if (!(p[0] >= m.knots_u.front() && p[0] <= m.knots_u.back()) ||
          !(p[1] >= m.knots_v.front() && p[1] <= m.knots_v.back()) ||
          !(w >= m.knots_w.front() && w <= m.knots_w.back())) {
        throw DomainError("residual: grid point outside the knot coverage");
      }
      axes_[0].index.push_back(axes_[0].lookup(p[0], bu));
      axes_[1].index.push_back(axes_[1].lookup(p[1], bv));
      axes_[2].index.push_back(axes_[2].lookup(w, bw));
    }
  }

  std::size_t size() const { return axes_[0].index.size(); }

  PointTerms terms(const SplineModel& m, std::size_t i) const {
    const auto& a = weights(0, i);
    const auto& b = weights(1, i);
    const auto& c = weights(2, i);
    PointTerms t{};
    t.X = dot(a.value, m.coeffs_X);
    t.Xp = dot(a.d1, m.coeffs_X);
    t.Y = dot(b.value, m.coeffs_Y);
    t.Yp = dot(b.d1, m.coeffs_Y);
    t.Z = dot(c.value, m.coeffs_Z);
    t.Zp = dot(c.d1, m.coeffs_Z);
    t.S = t.X + t.Y + t.Z;
    return t;
  }

  // Row i of the Jacobian restricted to spline k is P[k] * d1 + Q[k] * value
  // of that spline's basis weights.
  struct RowCoefficients {
    std::array<double, 3> P, Q;
  };

  RowCoefficients row_coefficients(const SplineModel& m, double H, std::size_t i) const {
    const PointTerms t = terms(m, i);
    require_positive_sum(t.S);
    const double k = 6.0 * H * std::sqrt(t.S);
    return {{t.Y + t.Z, t.X + t.Z, t.X + t.Y}, {t.Yp + t.Zp + k, t.Xp + t.Zp + k, t.Xp + t.Yp + k}};
  }

  template <class Row>
  void jacobian_row(const SplineModel& m, double H, std::size_t i, Row&& row) const {
    const RowCoefficients rc = row_coefficients(m, H, i);
    std::size_t offset = 0;
    for (int k = 0; k < 3; ++k) {
      const auto& w = weights(k, i);
      for (std::size_t j = 0; j < w.value.size(); ++j) row(offset + j) = rc.P[k] * w.d1[j] + rc.Q[k] * w.value[j];
      offset += w.value.size();
    }
  }

  // J^T J and J^T r of the grid rows. Rows sharing a u (v, w) value share the
  // X (Y, Z) weight vectors, so each block is summed per distinct value.
  void normal_equations(const SplineModel& m, double H, const Eigen::VectorXd& r, Eigen::MatrixXd& A,
                        Eigen::VectorXd& g) const {
    const std::size_t n = size();
    const std::array<std::size_t, 3> dim{m.coeffs_X.size(), m.coeffs_Y.size(), m.coeffs_Z.size()};
    const std::array<std::size_t, 3> off{0, dim[0], dim[0] + dim[1]};
    const auto p = static_cast<Eigen::Index>(dim[0] + dim[1] + dim[2]);
    A.setZero(p, p);
    g.setZero(p);
    std::vector<RowCoefficients> rc(n);
    for (std::size_t i = 0; i < n; ++i) rc[i] = row_coefficients(m, H, i);

    using Vec = Eigen::Map<const Eigen::VectorXd>;
    auto vec = [](const std::vector<double>& v) { return Vec(v.data(), static_cast<Eigen::Index>(v.size())); };
    auto block = [&](int k, int l) {
      return A.block(static_cast<Eigen::Index>(off[k]), static_cast<Eigen::Index>(off[l]),
                     static_cast<Eigen::Index>(dim[k]), static_cast<Eigen::Index>(dim[l]));
    };

    for (int k = 0; k < 3; ++k) {
      const Axis& ax = axes_[k];
      const std::size_t nu = ax.table.size();
      std::vector<double> spp(nu, 0.0), spq(nu, 0.0), sqq(nu, 0.0), gp(nu, 0.0), gq(nu, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t t = ax.index[i];
        const double P = rc[i].P[k], Q = rc[i].Q[k];
        spp[t] += P * P;
        spq[t] += P * Q;
        sqq[t] += Q * Q;
        gp[t] += P * r[static_cast<Eigen::Index>(i)];
        gq[t] += Q * r[static_cast<Eigen::Index>(i)];
      }
      auto bk = block(k, k);
      auto gk = g.segment(static_cast<Eigen::Index>(off[k]), static_cast<Eigen::Index>(dim[k]));
      for (std::size_t t = 0; t < nu; ++t) {
        const auto d1 = vec(ax.table[t].d1), v = vec(ax.table[t].value);
        bk.noalias() += spp[t] * d1 * d1.transpose();
        bk.noalias() += spq[t] * (d1 * v.transpose() + v * d1.transpose());
        bk.noalias() += sqq[t] * v * v.transpose();
        gk += gp[t] * d1 + gq[t] * v;
      }
    }

    for (int k = 0; k < 3; ++k) {
      for (int l = k + 1; l < 3; ++l) {
        const Axis& ax = axes_[k];
        const Axis& bx = axes_[l];
        const std::size_t nu = ax.table.size();
        Eigen::MatrixXd accP = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim[l]), static_cast<Eigen::Index>(nu));
        Eigen::MatrixXd accQ = accP;
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t t = ax.index[i];
          const auto& wl = bx.table[bx.index[i]];
          const Eigen::VectorXd y = rc[i].P[l] * vec(wl.d1) + rc[i].Q[l] * vec(wl.value);
          accP.col(static_cast<Eigen::Index>(t)) += rc[i].P[k] * y;
          accQ.col(static_cast<Eigen::Index>(t)) += rc[i].Q[k] * y;
        }
        auto bkl = block(k, l);
        for (std::size_t t = 0; t < nu; ++t) {
          bkl.noalias() += vec(ax.table[t].d1) * accP.col(static_cast<Eigen::Index>(t)).transpose();
          bkl.noalias() += vec(ax.table[t].value) * accQ.col(static_cast<Eigen::Index>(t)).transpose();
        }
        block(l, k) = bkl.transpose();
      }
    }
  }

 private:
  struct Axis {
    std::map<double, std::size_t> lookup_table;
    std::vector<SplineBasis::Weights> table;
    std::vector<std::size_t> index;

    std::size_t lookup(double t, const SplineBasis& basis) {
      const auto [it, inserted] = lookup_table.emplace(t, table.size());
      if (inserted) table.push_back(basis.weights(t));
      return it->second;
    }
  };

  const SplineBasis::Weights& weights(int k, std::size_t i) const { return axes_[k].table[axes_[k].index[i]]; }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  }

  std::array<Axis, 3> axes_;
};

}  // namespace

std::vector<double> residual_vector(const SplineModel& m, double H, const UVGrid& grid) {
  m.validate();
  const CubicSpline X(m.knots_u, m.coeffs_X), Y(m.knots_v, m.coeffs_Y), Z(m.knots_w, m.coeffs_Z);
  std::vector<double> r;
  r.reserve(grid.size());
  for (const auto& p : grid) {
    const Jet3 x = X(p[0]), y = Y(p[1]), z = Z(-p[0] - p[1]);
    const PointTerms t{x.value, x.d1, y.value, y.d1, z.value, z.d1, x.value + y.value + z.value};
    require_positive_sum(t.S);
    r.push_back(residual_at(t, H));
  }
  return r;
}

std::vector<std::vector<double>> residual_jacobian(const SplineModel& m, double H, const UVGrid& grid) {
  m.validate();
  const GridBasis basis(m, grid);
  std::vector<std::vector<double>> J(grid.size(), std::vector<double>(m.unknowns()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    basis.jacobian_row(m, H, i, [&J, i](std::size_t j) -> double& { return J[i][j]; });
  }
  return J;
}

namespace {

struct Evaluation {
  Eigen::VectorXd r;  // grid residuals then penalty residuals
  double cost = 0.0;
  double grid_max = 0.0;
  double grid_rms = 0.0;
};

std::vector<double*> coefficient_slots(SplineModel& m) {
  std::vector<double*> s;
  for (auto* c : {&m.coeffs_X, &m.coeffs_Y, &m.coeffs_Z}) {
    for (double& x : *c) s.push_back(&x);
  }
  return s;
}

std::vector<double> coefficients(const SplineModel& m) {
  std::vector<double> c(m.coeffs_X);
  c.insert(c.end(), m.coeffs_Y.begin(), m.coeffs_Y.end());
  c.insert(c.end(), m.coeffs_Z.begin(), m.coeffs_Z.end());
  return c;
}

Evaluation evaluate(const SplineModel& m, double H, const GridBasis& basis, double penalty) {
  const std::size_t n = basis.size(), p = m.unknowns();
  Evaluation e;
  e.r.resize(static_cast<Eigen::Index>(n + p));
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const PointTerms t = basis.terms(m, i);
    require_positive_sum(t.S);
    const double ri = residual_at(t, H);
    e.r[static_cast<Eigen::Index>(i)] = ri;
    sq += ri * ri;
    e.grid_max = std::max(e.grid_max, std::abs(ri));
  }
  e.grid_rms = std::sqrt(sq / static_cast<double>(n));
  const auto c = coefficients(m);
  for (std::size_t k = 0; k < p; ++k) {
    e.r[static_cast<Eigen::Index>(n + k)] = c[k] < m.floor ? penalty * (m.floor - c[k]) : 0.0;
  }
  e.cost = 0.5 * e.r.squaredNorm();
  return e;
}

// Normal equations of the full residual vector, grid rows and penalty rows.
void assemble(const SplineModel& m, double H, const GridBasis& basis, double penalty, const Evaluation& ev,
              Eigen::MatrixXd& A, Eigen::VectorXd& g) {
  const std::size_t n = basis.size();
  basis.normal_equations(m, H, ev.r.head(static_cast<Eigen::Index>(n)), A, g);
  const auto c = coefficients(m);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] < m.floor) {
      const auto j = static_cast<Eigen::Index>(k);
      A(j, j) += penalty * penalty;
      g[j] -= penalty * ev.r[static_cast<Eigen::Index>(n + k)];
    }
  }
}

}  // namespace

FitOutput fit(const SplineModel& start, double H, const UVGrid& grid, const FitOptions& options) {
  start.validate();
  if (grid.empty()) throw std::invalid_argument("fit: empty grid");
  const GridBasis basis(start, grid);
  const double penalty = options.penalty_weight;

  SplineModel x = start;
  Evaluation ev = evaluate(x, H, basis, penalty);
  Eigen::MatrixXd A;
  Eigen::VectorXd g;
  assemble(x, H, basis, penalty, ev, A, g);
  double mu = options.damping_init * std::max(A.diagonal().maxCoeff(), 1e-300);
  double nu = 2.0;

  SolveResult res;
  res.stop_reason = "max_iter";
  for (int it = 0; it < options.max_iter; ++it) {
    if (ev.grid_max <= options.tol) {
      res.stop_reason = "tolerance";
      break;
    }
    if (g.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + ev.cost)) {
      res.stop_reason = "gradient";
      break;
    }
    Eigen::MatrixXd damped = A;
    damped.diagonal().array() += mu;
    const Eigen::VectorXd step = damped.ldlt().solve(-g);
    const auto c = coefficients(x);
    const double cnorm = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())).norm();
    if (step.norm() <= 1e-15 * (cnorm + 1e-15)) {
      res.stop_reason = "step";
      break;
    }

    SplineModel trial = x;
    auto slots = coefficient_slots(trial);
    for (std::size_t k = 0; k < slots.size(); ++k) *slots[k] += step[static_cast<Eigen::Index>(k)];

    bool accepted = false;
    try {
      Evaluation ev_trial = evaluate(trial, H, basis, penalty);
      const double predicted = 0.5 * step.dot(mu * step - g);
      const double rho = predicted > 0.0 ? (ev.cost - ev_trial.cost) / predicted : -1.0;
      if (ev_trial.cost < ev.cost && rho > 0.0) {
        accepted = true;
        x = std::move(trial);
        ev = std::move(ev_trial);
        assemble(x, H, basis, penalty, ev, A, g);
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        ++res.iterations;
      }
    } catch (const DomainError&) {
    }
    if (!accepted) {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu) || mu > 1e300) {
        res.stop_reason = "damping";
        break;
      }
    }
  }
  if (ev.grid_max <= options.tol) res.stop_reason = "tolerance";

  res.residual_rms = ev.grid_rms;
  res.residual_max = ev.grid_max;
  res.converged = ev.grid_max <= options.tol;
  res.positivity_violated = x.min_coefficient() < x.floor;
  res.delaunay_distance = delaunay_distance(x);
  return {std::move(x), res};
}

NormalEquations normal_equations(const SplineModel& m, double H, const UVGrid& grid) {
  m.validate();
  const GridBasis basis(m, grid);
  Eigen::VectorXd r(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const PointTerms t = basis.terms(m, i);
    require_positive_sum(t.S);
    r[static_cast<Eigen::Index>(i)] = residual_at(t, H);
  }
  Eigen::MatrixXd A;
  Eigen::VectorXd g;
  basis.normal_equations(m, H, r, A, g);
  NormalEquations out;
  out.size = m.unknowns();
  out.JtJ.assign(A.data(), A.data() + A.size());
  out.Jtr.assign(g.data(), g.data() + g.size());
  return out;
}

double pair_distance(const std::vector<double>& knots_a, const std::vector<double>& coeffs_a,
                     const std::vector<double>& knots_b, const std::vector<double>& coeffs_b) {
  struct Fit {
    double slope, sup_error, sup_value;
  };
  auto affine = [](const std::vector<double>& t, const std::vector<double>& c) {
    const double n = static_cast<double>(t.size());
    double tm = 0.0, cm = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      tm += t[k];
      cm += c[k];
    }
    tm /= n;
    cm /= n;
    double stt = 0.0, stc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      stt += (t[k] - tm) * (t[k] - tm);
      stc += (t[k] - tm) * (c[k] - cm);
    }
    Fit f{stc / stt, 0.0, 0.0};
    for (std::size_t k = 0; k < t.size(); ++k) {
      f.sup_error = std::max(f.sup_error, std::abs(c[k] - (cm + f.slope * (t[k] - tm))));
      f.sup_value = std::max(f.sup_value, std::abs(c[k]));
    }
    return f;
  };
  if (knots_a.size() != coeffs_a.size() || knots_b.size() != coeffs_b.size() || knots_a.size() < 2 ||
      knots_b.size() < 2) {
    throw std::invalid_argument("pair_distance: need matching knot and value lists of length >= 2");
  }
  const Fit a = affine(knots_a, coeffs_a), b = affine(knots_b, coeffs_b);
  const double norm = a.sup_value + b.sup_value;
  const double d = std::max({a.sup_error, b.sup_error, std::abs(a.slope - b.slope)});
  return norm > 0.0 ? d / norm : d;
}

double delaunay_distance(const SplineModel& m) {
  return std::min({pair_distance(m.knots_u, m.coeffs_X, m.knots_v, m.coeffs_Y),
                   pair_distance(m.knots_v, m.coeffs_Y, m.knots_w, m.coeffs_Z),
                   pair_distance(m.knots_w, m.coeffs_Z, m.knots_u, m.coeffs_X)});
}

namespace {

SplineModel rescaled(const SplineModel& m, double knot_scale, double value_scale) {
  SplineModel out = m;
  for (auto* k : {&out.knots_u, &out.knots_v, &out.knots_w}) {
    for (double& t : *k) t *= knot_scale;
  }
  for (auto* c : {&out.coeffs_X, &out.coeffs_Y, &out.coeffs_Z}) {
    for (double& x : *c) x *= value_scale;
  }
  return out;
}

}  // namespace

SplineModel gauge_transform(const SplineModel& m, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gauge_transform: lambda must be positive");
  return rescaled(m, 1.0 / lambda, lambda * lambda);
}

SplineModel dilate(const SplineModel& m, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  return rescaled(m, lambda, lambda * lambda);
}

UVGrid scale_grid(const UVGrid& grid, double s) {
  UVGrid out = grid;
  for (auto& p : out) {
    p[0] *= s;
    p[1] *= s;
  }
  return out;
}

}  // namespace sepcmc
