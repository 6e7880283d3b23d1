#pragma once
// Floating-point asymptotic engine: the moment-generating function x(t) of a
// boundary profile, scaled free energy of a single path, geodesics, the
// saddle-point solution (K, F, L, R), the family of tangent curves, the
// arctic curve, and its tangency points on the horizontal axis.
#include <array>
#include <vector>

#include "aztec/profile.hpp"

namespace aztec {

// gamma >= 0 and the rescaled parameter qq = q^n (so q = qq^{1/n} at size n).
// qq = 1 is a distinct exact mode (tau coordinates), not a limit.
struct AsymParams {
  double gamma = 1.0;
  double qq = 1.0;
  bool q_one = true;
  static AsymParams at(double gamma, double qq);  // requires qq > 0, != 1
  static AsymParams at_q_one(double gamma);
  int epsilon() const { return q_one ? 0 : (qq > 1 ? 1 : -1); }
  double log_qq() const;
};

enum class EvalStatus { Ok, Undefined, Singular };

// Closed-form x(t): product over profile segments of
// qq^{-2(sigma_hi-sigma_lo)} ((t - qq^{2 alpha_hi})/(t - qq^{2 alpha_lo}))^{1/c}
// (tau - alpha in the qq = 1 mode). Contiguous equal-slope pieces are merged
// so the shared endpoint cancels algebraically. Returns NaN outside the
// admissible domain, +-inf at poles.
class MomentX {
 public:
  MomentX(const BoundaryProfile& p, const AsymParams& par);
  double operator()(double t) const;
  double deriv(double t) const;  // x'(t) by logarithmic differentiation
  const TDomain& domain() const { return domain_; }
  const AsymParams& params() const { return par_; }
  const BoundaryProfile& profile() const { return profile_; }
  double mu() const { return mu_; }
  double t_of_alpha(const Rational& a) const;  // qq^{2a}, or a itself at qq=1

 private:
  struct Factor {
    double t_hi, t_lo;  // qq^{2 alpha_hi}, qq^{2 alpha_lo}
    double inv_c;
    bool first_power;  // c == 1: negative ratio allowed (minimal slope)
  };
  BoundaryProfile profile_;
  AsymParams par_;
  TDomain domain_;
  std::vector<Factor> factors_;
  double prefactor_;
  double mu_;
};

// One-shot wrappers over MomentX.
double moment_x(const BoundaryProfile& p, double t, const AsymParams& par);
double moment_x_deriv(const BoundaryProfile& p, double t, const AsymParams& par);

// Scaled free energy of a single path to (un, 0) from (0, vn): solves the
// quadratic for F = qq^{2 phi} picking the root with 0 <= phi <= min(u,v),
// then assembles S0 with the integrals of log|qq^{2 s} - 1| by adaptive
// quadrature. Throws std::domain_error for u,v <= 0 or in the qq = 1 mode.
struct FreeEnergy {
  double s0;
  double phi;
};
FreeEnergy free_energy_S0(double u, double v, const AsymParams& par);

// log of single_path_Z(i, j) evaluated in log space (finite-size oracle for
// the free energy; gamma >= 0, any real log_q).
double log_single_path_Z(int i, int j, double gamma, double log_q);

// Geodesic height y(x) of the most likely path from (u,0) to (0,v);
// straight line v(u-x)/u in the qq = 1 mode.
double geodesic_y(double u, double v, double x, const AsymParams& par);

// Algebraic geodesic invariant G_gamma(X,Y;U,V) in multiplicative
// coordinates, and the scale (sum of |term|) used for relative residuals.
double geodesic_residual(double X, double Y, double U, double V, double gamma);
double geodesic_residual_scale(double X, double Y, double U, double V, double gamma);

// Saddle solution at parameter t. Derived exponents (logs base qq^2) are NaN
// where the corresponding variable is not positive (R < 0 happens on the
// qq < 1 branch near t = qq^{2 mu}; the one-sided bounds still hold).
// x(t) = 0 gives K = 1, L = t and an infinite R marker. Requires qq != 1.
struct SaddleSolution {
  double t = 0, x = 0;
  double K = 0, F = 0, L = 0, R = 0;
  double kappa = 0, phi = 0, xi = 0, rho = 0;
  EvalStatus status = EvalStatus::Ok;
};
SaddleSolution saddle_KFLR(const MomentX& mx, double t);
// Normalized residuals of the four saddle equations (0 where R is infinite).
std::array<double, 4> saddle_residuals(const SaddleSolution& s, const AsymParams& par);

// Tangent curve F_t(X,Y) = c_xy XY + c_y Y + c_x X + c_1 as implicit
// coefficients; in the qq = 1 mode the curves are straight lines in (x, y)
// and c_xy = 0. tangent_line_geometric builds the same qq = 1 line from the
// perpendicular construction (through (tau,0), orthogonal to OQ with
// Q = ((1-x)(1+gamma x)/(1+gamma), x)); only valid in the qq = 1 mode.
struct LineCoeffs {
  double c_xy = 0, c_y = 0, c_x = 0, c_1 = 0;
  EvalStatus status = EvalStatus::Ok;
};
LineCoeffs tangent_line(const MomentX& mx, double t);
LineCoeffs tangent_line_geometric(const MomentX& mx, double t);
double line_eval(const LineCoeffs& lc, double X, double Y);

// One point of the arctic curve: the envelope of the tangent family,
// evaluated from the parametric closed form (gamma = 0 and qq = 1 use their
// own reductions). x, y are the rescaled coordinates; interval is the index
// of the merged admissible t-interval that produced the sample.
struct CurveSample {
  double t = 0, x = 0, y = 0;
  int interval = -1;
  EvalStatus status = EvalStatus::Ok;
};
CurveSample arctic_point(const MomentX& mx, double t);

// Samples every admissible interval (midpoint grids; semi-infinite intervals
// compactified by a tangent substitution capped at theta_cap), dropping
// non-Ok samples, ordered by interval then by t. The OpenMP build and the
// serial reference must agree sample for sample.
std::vector<CurveSample> arctic_curve(const MomentX& mx, int samples_per_interval,
                                      double theta_cap = 1.5697963267948966);
std::vector<CurveSample> arctic_curve_serial(const MomentX& mx, int samples_per_interval,
                                             double theta_cap = 1.5697963267948966);

// Points where the arctic curve touches the horizontal axis: x(t) = 1 on gap
// intervals, x(t) = -1/gamma on minimal-slope intervals (bisection; the
// gamma = 0 minimal-slope case returns the diverging endpoint flagged
// degenerate). x is the horizontal coordinate log t / log qq^2 (tau at qq=1).
struct TangencyPoint {
  double t = 0, x = 0;
  SegmentClass::Kind kind = SegmentClass::Kind::Gap;
  bool degenerate = false;
};
std::vector<TangencyPoint> tangency_points(const MomentX& mx);

}  // namespace aztec
