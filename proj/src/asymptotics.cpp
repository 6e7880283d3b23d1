#include "aztec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aztec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double exponent_of(double val, double log_qq) {
  return val > 0 ? std::log(val) / (2.0 * log_qq) : kNaN;
}

// Adaptive Simpson on [a, b] with absolute tolerance.
double simpson_slice(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson_slice(a, fa, m, fm, flm);
  double right = simpson_slice(m, fm, b, fb, frm);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson_slice(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

// log((1 - e^{-w}) / w), smooth on [0, inf), -> 0 as w -> 0.
double log_ratio_smooth(double w) {
  if (w < 1e-5) return -0.5 * w + w * w / 24.0;
  return std::log(-std::expm1(-w)) - std::log(w);
}

// I(z) = int_0^z log|qq^{2 s} - 1| ds with c = 2 log qq:
// max(c,0) z^2/2 + z (log(|c| z) - 1) + (1/|c|) int_0^{|c| z} log_ratio_smooth.
double freeI(double z, double log_qq) {
  if (z <= 0) return 0.0;
  double c = 2.0 * log_qq;
  double b = std::fabs(c);
  double head = std::max(c, 0.0) * z * z / 2.0 + z * (std::log(b * z) - 1.0);
  double tail = adaptive_simpson(log_ratio_smooth, 0.0, b * z, 1e-13) / b;
  return head + tail;
}

double logsumexp3(double a, double b, double c) {
  double m = std::max(a, std::max(b, c));
  if (m == -kInf) return -kInf;
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m));
}

}  // namespace

AsymParams AsymParams::at(double gamma, double qq) {
  if (gamma < 0) throw std::domain_error("asym params: gamma must be >= 0");
  if (!(qq > 0) || qq == 1.0)
    throw std::domain_error("asym params: qq must be positive and != 1 (use at_q_one)");
  return AsymParams{gamma, qq, false};
}

AsymParams AsymParams::at_q_one(double gamma) {
  if (gamma < 0) throw std::domain_error("asym params: gamma must be >= 0");
  return AsymParams{gamma, 1.0, true};
}

double AsymParams::log_qq() const { return q_one ? 0.0 : std::log(qq); }

MomentX::MomentX(const BoundaryProfile& p, const AsymParams& par)
    : profile_(p), par_(par), domain_(classify(p, par.qq, par.q_one)) {
  // Merge contiguous equal-slope pieces so shared endpoints cancel exactly
  // (a factor must not vanish at an interior point of a minimal-slope run).
  struct Piece {
    Rational a_lo, a_hi, slope;
  };
  std::vector<Piece> pieces;
  for (const auto& s : p.segments) {
    if (!pieces.empty() && pieces.back().slope == s.slope && pieces.back().a_hi == s.alpha_lo)
      pieces.back().a_hi = s.alpha_hi();
    else
      pieces.push_back({s.alpha_lo, s.alpha_hi(), s.slope});
  }
  for (const auto& pc : pieces) {
    Factor f;
    f.t_hi = t_of_alpha(pc.a_hi);
    f.t_lo = t_of_alpha(pc.a_lo);
    f.inv_c = 1.0 / pc.slope.get_d();
    f.first_power = pc.slope == 1;
    factors_.push_back(f);
  }
  prefactor_ = par_.q_one ? 1.0 : std::pow(par_.qq, -2.0);
  mu_ = p.mu().get_d();
}

double MomentX::t_of_alpha(const Rational& a) const {
  double ad = a.get_d();
  return par_.q_one ? ad : std::pow(par_.qq, 2.0 * ad);
}

double MomentX::operator()(double t) const {
  if (!domain_.covers(t)) return kNaN;
  double x = prefactor_;
  for (const auto& f : factors_) {
    double ratio = (t - f.t_hi) / (t - f.t_lo);
    if (f.first_power)
      x *= ratio;
    else {
      if (ratio < 0) return kNaN;  // outside this factor's real branch
      x *= std::pow(ratio, f.inv_c);
    }
  }
  return x;
}

double MomentX::deriv(double t) const {
  double x = (*this)(t);
  if (!std::isfinite(x)) return kNaN;
  double s = 0.0;
  for (const auto& f : factors_) s += f.inv_c * (1.0 / (t - f.t_hi) - 1.0 / (t - f.t_lo));
  return x * s;
}

double moment_x(const BoundaryProfile& p, double t, const AsymParams& par) {
  return MomentX(p, par)(t);
}

double moment_x_deriv(const BoundaryProfile& p, double t, const AsymParams& par) {
  return MomentX(p, par).deriv(t);
}

FreeEnergy free_energy_S0(double u, double v, const AsymParams& par) {
  if (par.q_one) throw std::domain_error("free energy: undefined in the qq = 1 mode");
  if (!(u > 0) || !(v > 0)) throw std::domain_error("free energy: need u > 0 and v > 0");
  double lq = par.log_qq();
  double U = std::exp(2.0 * u * lq), V = std::exp(2.0 * v * lq);
  double B = U + V + (U - 1.0) * (V - 1.0) / (1.0 + par.gamma);
  double disc = std::max(B * B - 4.0 * U * V, 0.0);
  double rbig = 0.5 * (B + std::sqrt(disc));
  double rsmall = U * V / rbig;
  double lim = std::min(u, v);
  double F = kNaN, phi = kNaN;
  for (double cand : {rsmall, rbig}) {
    double ph = exponent_of(cand, lq);
    if (std::isfinite(ph) && ph >= -1e-9 && ph <= lim + 1e-9) {
      F = cand;
      phi = std::min(std::max(ph, 0.0), lim);
      break;
    }
  }
  if (!std::isfinite(F)) throw std::runtime_error("free energy: no root with phi in [0, min(u,v)]");
  double s0 = (par.gamma > 0 && phi > 0 ? phi * std::log(par.gamma) : 0.0) + phi * phi * lq +
              freeI(u + v - phi, lq) - freeI(v - phi, lq) - freeI(phi, lq) - freeI(u - phi, lq);
  return {s0, phi};
}

double log_single_path_Z(int i, int j, double gamma, double log_q) {
  if (i < 0 || j < 0) throw std::domain_error("log_single_path_Z: need i, j >= 0");
  double lg = gamma > 0 ? std::log(gamma) : -kInf;
  std::vector<double> row(j + 1, 0.0), next(j + 1, 0.0);
  for (int ii = 1; ii <= i; ++ii) {
    next[0] = 0.0;
    for (int jj = 1; jj <= j; ++jj) {
      double up = row[jj];
      double diag = lg + (2.0 * ii - 1.0) * log_q + row[jj - 1];
      double left = 2.0 * ii * log_q + next[jj - 1];
      next[jj] = logsumexp3(up, diag, left);
    }
    row.swap(next);
  }
  return row[j];
}

double geodesic_y(double u, double v, double x, const AsymParams& par) {
  if (!(u > 0) || !(v > 0)) throw std::domain_error("geodesic: need u > 0 and v > 0");
  if (x < 0 || x > u) throw std::domain_error("geodesic: need 0 <= x <= u");
  if (par.q_one) return v * (u - x) / u;
  double lq = par.log_qq(), g = par.gamma;
  double U = std::exp(2.0 * u * lq), V = std::exp(2.0 * v * lq), X = std::exp(2.0 * x * lq);
  double disc = (U * V - 1.0) * (U * V - 1.0) +
                2.0 * g * ((U + V) * (U * V + 1.0) - 4.0 * U * V) +
                g * g * (U - V) * (U - V);
  double eps_delta = par.epsilon() * std::sqrt(std::max(disc, 0.0));
  double num = (V - 1.0) * (U - X) *
               ((X - 1.0) * (V - 1.0) * (U + g) + (U - 1.0) * (X + 1.0) * (1.0 + g) +
                (X - 1.0) * eps_delta);
  double den = 2.0 * (U - 1.0) * ((U - X) * (1.0 + g * X) + V * (U + g * X) * (X - 1.0));
  double Y = 1.0 + num / den;
  return std::log(Y) / (2.0 * lq);
}

double geodesic_residual(double X, double Y, double U, double V, double gamma) {
  double t1 = (U - 1.0) * (V - 1.0) *
              (gamma * (U * V + X * X * Y * Y) - (V * X * X + U * Y * Y));
  double t2 = -X * Y * ((U + 1.0) * (V + 1.0) * (1.0 + U * V + gamma * (U + V)) -
                        8.0 * (1.0 + gamma) * U * V);
  double t3 = (V - 1.0) * (X * X + U) * Y * (U * V - 1.0 + gamma * (V - U));
  double t4 = (U - 1.0) * (Y * Y + V) * X * (U * V - 1.0 + gamma * (U - V));
  return t1 + t2 + t3 + t4;
}

double geodesic_residual_scale(double X, double Y, double U, double V, double gamma) {
  double t1 = (U - 1.0) * (V - 1.0) *
              (gamma * (U * V + X * X * Y * Y) - (V * X * X + U * Y * Y));
  double t2 = -X * Y * ((U + 1.0) * (V + 1.0) * (1.0 + U * V + gamma * (U + V)) -
                        8.0 * (1.0 + gamma) * U * V);
  double t3 = (V - 1.0) * (X * X + U) * Y * (U * V - 1.0 + gamma * (V - U));
  double t4 = (U - 1.0) * (Y * Y + V) * X * (U * V - 1.0 + gamma * (U - V));
  return std::fabs(t1) + std::fabs(t2) + std::fabs(t3) + std::fabs(t4);
}

SaddleSolution saddle_KFLR(const MomentX& mx, double t) {
  const AsymParams& par = mx.params();
  if (par.q_one) throw std::domain_error("saddle: undefined in the qq = 1 mode");
  SaddleSolution s;
  s.t = t;
  s.x = mx(t);
  s.kappa = s.phi = s.xi = s.rho = kNaN;
  if (std::isnan(s.x)) {
    s.status = EvalStatus::Undefined;
    return s;
  }
  if (!std::isfinite(s.x)) {
    s.status = EvalStatus::Singular;
    return s;
  }
  double g = par.gamma, qq2 = par.qq * par.qq, x = s.x;
  double d1 = 1.0 + g * x, d2 = 1.0 + g * qq2 * x;
  double core = t * d1 + g * (1.0 - x);
  s.K = d2 / d1;
  s.F = (1.0 + g) * t * d1 / (d2 * core);
  s.L = t * (1.0 - qq2 * x) * d1 / ((1.0 - x) * d2);
  s.R = x == 0 ? kInf : (t * d1 - (1.0 - x)) / (qq2 * x * core);
  if (!std::isfinite(s.K) || !std::isfinite(s.F) || !std::isfinite(s.L) ||
      (x != 0 && !std::isfinite(s.R))) {
    s.status = EvalStatus::Singular;
    return s;
  }
  double lq = par.log_qq();
  s.kappa = exponent_of(s.K, lq);
  s.phi = exponent_of(s.F, lq);
  s.xi = exponent_of(s.L, lq);
  s.rho = x == 0 ? kNaN : exponent_of(s.R, lq);
  return s;
}

std::array<double, 4> saddle_residuals(const SaddleSolution& s, const AsymParams& par) {
  double g = par.gamma, qq2 = par.qq * par.qq;
  double t = s.t, x = s.x, K = s.K, F = s.F, L = s.L, R = s.R;
  auto rel = [](double a, double b) {
    double scale = std::max(std::fabs(a) + std::fabs(b), 1e-300);
    return (a - b) / scale;
  };
  std::array<double, 4> r{0.0, 0.0, 0.0, 0.0};
  bool finiteR = std::isfinite(R);
  if (finiteR) r[0] = rel(g * (L - F) * (R - F), (F - 1.0) * (L * R - F));
  r[1] = rel(g * (qq2 - K) * (K * L - t), (K - 1.0) * (K * L - qq2 * t));
  r[2] = rel((K * L - qq2 * t) * x, K * L - t);
  if (finiteR) r[3] = rel(qq2 * (L * R - F) * (K * L - t), (L - F) * (K * L - qq2 * t));
  return r;
}

LineCoeffs tangent_line(const MomentX& mx, double t) {
  LineCoeffs lc;
  double x = mx(t);
  if (std::isnan(x)) {
    lc.status = EvalStatus::Undefined;
    return lc;
  }
  if (!std::isfinite(x)) {
    lc.status = EvalStatus::Singular;
    return lc;
  }
  double g = mx.params().gamma;
  if (mx.params().q_one) {
    lc.c_xy = 0.0;
    lc.c_y = (1.0 + g) * x;
    lc.c_x = (1.0 - x) * (1.0 + g * x);
    lc.c_1 = -t * (1.0 - x) * (1.0 + g * x);
  } else {
    lc.c_xy = g * x * (1.0 - x);
    lc.c_y = x * t * (1.0 + g * x);
    lc.c_x = 1.0 - x;
    lc.c_1 = -t * (1.0 + g * x);
  }
  return lc;
}

LineCoeffs tangent_line_geometric(const MomentX& mx, double t) {
  if (!mx.params().q_one)
    throw std::domain_error("geometric tangent construction requires the qq = 1 mode");
  LineCoeffs lc;
  double x = mx(t);
  if (std::isnan(x)) {
    lc.status = EvalStatus::Undefined;
    return lc;
  }
  if (!std::isfinite(x)) {
    lc.status = EvalStatus::Singular;
    return lc;
  }
  double g = mx.params().gamma;
  // Line through P = (t, 0) perpendicular to OQ, Q on the gamma-parabola.
  double qx = (1.0 - x) * (1.0 + g * x) / (1.0 + g), qy = x;
  lc.c_xy = 0.0;
  lc.c_x = qx;
  lc.c_y = qy;
  lc.c_1 = -t * qx;
  return lc;
}

double line_eval(const LineCoeffs& lc, double X, double Y) {
  return lc.c_xy * X * Y + lc.c_y * Y + lc.c_x * X + lc.c_1;
}

namespace {

int interval_of(const TDomain& dom, double t) {
  for (size_t i = 0; i < dom.merged.size(); ++i) {
    double slack = 1e-12 * std::max(1.0, std::fabs(t));
    if (t >= dom.merged[i].first - slack && t <= dom.merged[i].second + slack)
      return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

CurveSample arctic_point(const MomentX& mx, double t) {
  CurveSample cs;
  cs.t = t;
  double x = mx(t);
  if (std::isnan(x)) {
    cs.status = EvalStatus::Undefined;
    return cs;
  }
  cs.interval = interval_of(mx.domain(), t);
  double xp = mx.deriv(t);
  if (!std::isfinite(x) || !std::isfinite(xp)) {
    cs.status = EvalStatus::Singular;
    return cs;
  }
  double g = mx.params().gamma;
  if (mx.params().q_one) {
    double den = (1.0 + g * x * x) * xp;
    cs.x = t - x * (1.0 - x) * (1.0 + g * x) / den;
    cs.y = (1.0 - x) * (1.0 - x) * (1.0 + g * x) * (1.0 + g * x) / ((1.0 + g) * den);
    if (!std::isfinite(cs.x) || !std::isfinite(cs.y)) cs.status = EvalStatus::Singular;
    return cs;
  }
  double X, Y;
  if (g == 0.0) {
    double den = x * (1.0 - x) + t * xp;
    X = t * t * xp / den;
    Y = ((1.0 - x) + t * xp) / den;
  } else {
    double a1 = x * (1.0 - x) * (1.0 + g * x);
    double b1 = (1.0 + g) * a1 +
                t * xp * ((1.0 + g * x) * (1.0 + g * x) - g * (1.0 - x) * (1.0 - x));
    double cross = t * xp * (1.0 + g * x) * (1.0 - x);
    double omega = std::sqrt(b1 * b1 + 4.0 * g * cross * cross);
    double eps = mx.params().epsilon();
    X = t - ((1.0 + g) * (a1 + t * xp * (1.0 + g * x * x)) - eps * omega) /
                (2.0 * g * (1.0 - x) * (1.0 - x) * xp);
    Y = (eps * omega - (1.0 - g) * a1 - (1.0 + g) * t * xp * (1.0 - g * x * x)) /
        (2.0 * g * x * x * ((1.0 - x) * (1.0 + g * x) + (1.0 + g) * t * xp));
  }
  if (!std::isfinite(X) || !std::isfinite(Y) || X <= 0 || Y <= 0) {
    cs.status = EvalStatus::Singular;
    return cs;
  }
  double lq = mx.params().log_qq();
  cs.x = std::log(X) / (2.0 * lq);
  cs.y = std::log(Y) / (2.0 * lq);
  return cs;
}

namespace {

std::vector<CurveSample> arctic_curve_impl(const MomentX& mx, int n, double theta_cap,
                                           bool parallel) {
  if (n <= 0) return {};
  struct Slot {
    double t;
    int interval;
  };
  std::vector<Slot> grid;
  const auto& merged = mx.domain().merged;
  for (size_t i = 0; i < merged.size(); ++i) {
    double lo = merged[i].first, hi = merged[i].second;
    bool lo_inf = !std::isfinite(lo), hi_inf = !std::isfinite(hi);
    for (int k = 0; k < n; ++k) {
      double frac = (k + 0.5) / n, t;
      if (lo_inf && hi_inf)
        t = std::tan(-theta_cap + 2.0 * theta_cap * frac);
      else if (lo_inf)
        t = hi - std::tan(theta_cap * (1.0 - frac));
      else if (hi_inf)
        t = lo + std::tan(theta_cap * frac);
      else
        t = lo + (hi - lo) * frac;
      grid.push_back({t, static_cast<int>(i)});
    }
  }
  std::vector<CurveSample> raw(grid.size());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < static_cast<long>(grid.size()); ++k) {
      raw[k] = arctic_point(mx, grid[k].t);
      raw[k].interval = grid[k].interval;
    }
  } else {
    for (size_t k = 0; k < grid.size(); ++k) {
      raw[k] = arctic_point(mx, grid[k].t);
      raw[k].interval = grid[k].interval;
    }
  }
  std::vector<CurveSample> out;
  out.reserve(raw.size());
  for (const auto& cs : raw)
    if (cs.status == EvalStatus::Ok) out.push_back(cs);
  return out;
}

}  // namespace

std::vector<CurveSample> arctic_curve(const MomentX& mx, int samples_per_interval,
                                      double theta_cap) {
  return arctic_curve_impl(mx, samples_per_interval, theta_cap, true);
}

std::vector<CurveSample> arctic_curve_serial(const MomentX& mx, int samples_per_interval,
                                             double theta_cap) {
  return arctic_curve_impl(mx, samples_per_interval, theta_cap, false);
}

std::vector<TangencyPoint> tangency_points(const MomentX& mx) {
  std::vector<TangencyPoint> out;
  const AsymParams& par = mx.params();
  for (const auto& f : mx.domain().features) {
    if (f.kind == SegmentClass::Kind::Generic) continue;
    if (f.kind == SegmentClass::Kind::MinimalSlope && par.gamma == 0.0) {
      // x -> -infinity end of the run: the tangency point degenerates there.
      TangencyPoint tp;
      tp.t = mx.t_of_alpha(f.a_lo);
      tp.x = f.a_lo.get_d();
      tp.kind = f.kind;
      tp.degenerate = true;
      out.push_back(tp);
      continue;
    }
    double target = f.kind == SegmentClass::Kind::Gap ? 1.0 : -1.0 / par.gamma;
    double lo = f.t_lo, hi = f.t_hi, w = hi - lo;
    double a = kNaN, b = kNaN, fa = kNaN;
    for (double inset = 1e-9; inset >= 1e-15; inset *= 0.1) {
      a = lo + inset * w;
      b = hi - inset * w;
      fa = mx(a) - target;
      double fb = mx(b) - target;
      if (std::isfinite(fa) && std::isfinite(fb) && ((fa < 0) != (fb < 0))) break;
      a = kNaN;
    }
    if (!std::isfinite(a)) continue;  // no sign change resolved on this feature
    for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::fabs(a)); ++it) {
      double m = 0.5 * (a + b), fm = mx(m) - target;
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    TangencyPoint tp;
    tp.t = 0.5 * (a + b);
    tp.x = par.q_one ? tp.t : std::log(tp.t) / (2.0 * par.log_qq());
    tp.kind = f.kind;
    tp.degenerate = false;
    out.push_back(tp);
  }
  return out;
}

}  // namespace aztec
