#pragma once

// Checks of the algebraic and differential steps behind the classification of
// separable CMC surfaces. With X(u) = f'(x)^2, Y(v) = g'(y)^2, Z(w) = h'(z)^2
// and u + v + w = 0 the CMC condition becomes
//   (Y+Z)X' + (X+Z)Y' + (X+Y)Z' = -4H (X+Y+Z)^{3/2}.
// Polynomial steps are evaluated in exact rationals at random points; steps
// that differentiate along the plane use PlaneDual jets.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sepcmc/jets.hpp"
#include "sepcmc/poly.hpp"
#include "sepcmc/surface.hpp"

namespace sepcmc {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

double to_double(const Rational& r);

/// Values of the symbols at one point. `root` is a square root of X+Y+Z;
/// random_assignment draws root first and sets Z = root^2 - X - Y so that the
/// 3/2 power stays rational.
struct IndeterminateAssignment {
  Rational X, Y, Z;
  Rational Xp, Yp, Zp;
  Rational Xpp, Ypp, Zpp;
  Rational Xppp;
  Rational H;
  Rational Phi1, Phi1p, Phi2, Phi2p, Phi3, Phi3p;
  Rational u, v;
  Rational root;
};

/// Numerators in [-1000, 1000], denominators in [1, 1000]; root > 0, H != 0,
/// X + Y != 0 and X' + Y' != 0.
IndeterminateAssignment random_assignment(std::mt19937_64& rng);

enum class IdentityMode { ExactRational, FloatJet };

std::string to_string(IdentityMode m);

struct IdentityReport {
  std::string name;
  std::size_t trials = 0;
  // Exact checks: 0 or the largest |lhs - rhs| seen. Float checks: largest
  // |lhs - rhs| / (1 + sum of magnitudes of the terms).
  double max_abs_error = 0.0;
  bool pass = false;
  IdentityMode mode = IdentityMode::ExactRational;
  std::string note;
};

inline constexpr double kFloatTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Sign mutations of the displayed coefficient formulas. Each formula is a sum
// of signed terms; a Mutation flips the sign of one of them.
//   P   = X'^2 - Y'^2 - (X+Y) X'' + (X+Y) Y''
//   Q   = X'(X'Y + XY') - Y'(X'Y + XY') - (X+Y) X''Y + (X+Y) XY''
//   L   = 16H^2 X'^2 - 32H^2 X'Y' + 16H^2 Y'^2
//   M   = -P^2
//   N   = -12H^2 (X+Y)^2 (X'-Y')^2 - 2PQ
//   R   = 4H^2 (X+Y)^3 (X'-Y')^2 - Q^2
//   a6  = 432H^2 X + 432H^2 Y + 192H^2 Phi1 - 9X'^2 - 18X'Y' - 9Y'^2

enum class Formula { None, P, Q, L, M, N, R, A6 };

struct Mutation {
  Formula formula = Formula::None;
  int term = 0;
};

std::string to_string(Formula f);
int term_count(Formula f);

Rational coef_P(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_Q(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_L(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_M(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_N(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_R(const IndeterminateAssignment& a, const Mutation& m = {});
Rational coef_a6(const IndeterminateAssignment& a, const Mutation& m = {});

// ---------------------------------------------------------------------------
// Exact checks. Each runs `trials` random assignments from `seed`.

/// (X+Y) D - (X'-Y') E = -(PZ+Q) + 2H(X'-Y') root (X+Y-2Z), where E is the
/// CMC equation in the form (X+Y)Z' + (X'+Y')Z + X'Y + XY' + 4H root^3 and D
/// its (d/du - d/dv) derivative. Eliminates Z'.
IdentityReport check_pz_elimination(std::size_t trials, std::uint64_t seed, const Mutation& m = {});

struct PzSquareSides {
  Rational lhs, rhs;
  Rational P, Q, L, M, N, R;
};

/// lhs = 4H^2(X'-Y')^2(X+Y-2Z)^2(X+Y+Z) - (PZ+Q)^2 with PZ+Q taken from the
/// elimination, rhs = L Z^3 + M Z^2 + N Z + R from the coefficient formulas.
PzSquareSides pz_square_sides(const IndeterminateAssignment& a, const Mutation& m = {});
IdentityReport check_pz_square(std::size_t trials, std::uint64_t seed, const Mutation& m = {});

/// (d/du - d/dv) of E computed by plane jets equals
/// (X'-Y')Z' + (X''-Y'')Z + X''Y - XY'' + 6H(X'-Y') root.
IdentityReport check_lemma_difference(std::size_t trials, std::uint64_t seed);

/// A = (u+v+w) B has equal partials on the plane, for random B and for
/// B = X(u) + Phi(u+v).
IdentityReport check_plane_lemma_exact(std::size_t trials, std::uint64_t seed);

/// For A = Z^3 + Phi1 Z^2 + Phi2 Z + Phi3 with Phi_i functions of u+v:
/// A_w - A_u = (3Z^2 + 2 Phi1 Z + Phi2) Z' - (Phi1' Z^2 + Phi2' Z + Phi3').
IdentityReport check_cubic_derivative(std::size_t trials, std::uint64_t seed);

/// Substituting Z' from E into T Z' - C gives -(TB + KC + 4H T root^3)/K with
/// T = 3Z^2 + 2Phi1 Z + Phi2, B = (X'+Y')Z + X'Y + XY', C = Phi1'Z^2 + Phi2'Z
/// + Phi3', K = X+Y.
IdentityReport check_zprime_substitution(std::size_t trials, std::uint64_t seed);

struct LeadingCoefficients {
  Poly<Rational> poly;  // 16H^2 T^2 (K+Z)^3 - (TB + KC)^2 in Z
  Rational a7_expanded, a6_expanded;
  Rational a7_formula, a6_formula;
};

LeadingCoefficients leading_coefficients(const IndeterminateAssignment& a, const Mutation& m = {});

/// Expands the degree-7 polynomial and compares its top coefficients with
/// 144H^2 and the a6 formula; also checks poly(Z) = 16H^2 T^2 root^6 - (TB+KC)^2.
IdentityReport check_leading_coefficients(std::size_t trials, std::uint64_t seed, const Mutation& m = {});

/// (a6)_u - (a6)_v = 18 [24H^2(X'-Y') - (X'+Y')(X''-Y'')] with Phi1 a
/// function of u+v.
IdentityReport check_a6_reduction(std::size_t trials, std::uint64_t seed, const Mutation& m = {});

/// For E15 = 24H^2 (X'-Y')/(X'+Y') - (X''-Y''):
///  (i)  d/du E15 = 48H^2 X''Y'/(X'+Y')^2 - X'''
///  (ii) d/dv [48H^2 X''Y'/(X'+Y')^2 - X'''] = 48H^2 (X'-Y') X''Y''/(X'+Y')^3
/// and E15 = 0 once X'' is solved from it.
IdentityReport check_x3_chain(std::size_t trials, std::uint64_t seed);

/// 48H^2 (X'-Y') X''Y''/(X'+Y')^3. Throws DomainError when X'+Y' = 0.
Rational x3_contradiction_term(const IndeterminateAssignment& a);

// ---------------------------------------------------------------------------
// Float checks on concrete functions.

/// X(u) = f'(x(u))^2 on the image of `branch`, where f is monotone. Value,
/// first and second derivative are closed form (X' = 2f'', X'' = 2f'''/f');
/// the third derivative is a central difference of X''.
C3Function uvw_transform(const C3Function& f, Interval branch);

/// d/du of X(u) = f'(x(u))^2, by Richardson-extrapolated central differences
/// in u with x(u) found by Newton's method, against 2 f''(x).
IdentityReport check_uvw_chain(const C3Function& f, int samples, std::uint64_t seed);
/// The same for each of f, g, h. Throws DomainError when no sample with a
/// nonvanishing derivative can be drawn.
IdentityReport check_uvw_chain(const SeparableSurface& s, int samples, std::uint64_t seed);

/// Residual of the uvw form of the CMC equation at random (u, v) with
/// w = -u-v in the domain of Z. Throws DomainError when X+Y+Z <= 0.
IdentityReport check_uvw_cmc_equation(const C3Function& X, const C3Function& Y, const C3Function& Z,
                                      double H, int samples, std::uint64_t seed);

/// Equal in-plane partials of an expression vanishing on the plane.
IdentityReport check_plane_lemma(const std::string& name,
                                 const std::function<PlaneJet(double u, double v)>& components,
                                 const PlaneExpression& expression, Interval u_range, Interval v_range,
                                 int samples, std::uint64_t seed);

/// At random points of a solution (X, Y, Z, H): (d/du - d/dv) of the CMC
/// expression by plane jets equals the displayed difference form. Reports a
/// failure with a note when the equation itself is not satisfied.
IdentityReport check_lemma_difference(const C3Function& X, const C3Function& Y, const C3Function& Z,
                                      double H, int samples, std::uint64_t seed);

/// f(x) = (ax + c1)^2/(4a) - b1/a satisfies f'^2 - a f - b1 = 0 at 20 points of
/// [-2, 2] within 1e-12. Fails with a note when a = 0.
IdentityReport check_affine_slope_form(double a, double b1, double c1);

struct IdentitySuite {
  std::vector<IdentityReport> reports;
  bool all_pass = false;  // false when reports is empty
};

/// Every check above. Exact checks run `trials` assignments; float checks use
/// min(trials, 200) samples. trials = 0 gives an empty suite.
IdentitySuite run_all(std::uint64_t seed, std::size_t trials);

}  // namespace sepcmc
