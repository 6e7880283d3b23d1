#include "aztec/verify.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <vector>

#include "aztec/asymptotics.hpp"
#include "aztec/lgv.hpp"
#include "aztec/profile.hpp"
#include "aztec/qcomb.hpp"
#include "aztec/sampler.hpp"

namespace aztec {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

Weights make_w(long gn, long gd, long qn, long qd) {
  Weights w;
  w.gamma = Rational(gn, gd);
  w.q = Rational(qn, qd);
  return w;
}

// The interpolation polynomial z_j must reproduce the single-path partition
// function at every node t = q^{2i}, including nodes beyond the j + 1 used
// to build it; a corrupted coefficient breaks all of them.
CheckResult check_poly_eval() {
  CheckResult r{"polynomial evaluation identity", true, ""};
  int checked = 0;
  for (const Weights& w : {make_w(1, 1, 3, 2), make_w(5, 3, 5, 7), make_w(0, 1, 2, 3)}) {
    for (long j = 0; j <= 6; ++j) {
      const Poly z = z_poly(j, w);
      Rational t = 1;  // q^{2i} at i = 0
      for (long i = 0; i <= j + 3; ++i) {
        if (z.eval(t) != single_path_Z(i, j, w)) {
          r.pass = false;
          r.detail = "mismatch at i=" + std::to_string(i) + " j=" + std::to_string(j);
          return r;
        }
        ++checked;
        t *= w.q * w.q;
      }
    }
  }
  r.detail = std::to_string(checked) + " node evaluations, 3 weight pairs";
  return r;
}

CheckResult check_single_path_oracle() {
  CheckResult r{"single-path recursion vs exhaustive enumeration", true, ""};
  int checked = 0;
  for (const Weights& w : {make_w(1, 1, 1, 1), make_w(7, 4, 3, 5)}) {
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) {
        if (single_path_Z(i, j, w) != brute_force_Z(i, j, w)) {
          r.pass = false;
          r.detail = fmt("mismatch at i=%.0f j=%.0f", i, j);
          return r;
        }
        ++checked;
      }
  }
  r.detail = std::to_string(checked) + " exact comparisons";
  return r;
}

CheckResult check_det_product() {
  CheckResult r{"determinant vs product formula", true, ""};
  const std::vector<std::vector<int>> configs = {
      {0, 1}, {0, 3}, {0, 1, 2}, {0, 2, 5}, {0, 1, 2, 3}, {0, 1, 3, 6}, {0, 2, 3, 7, 8}};
  int checked = 0;
  for (const auto& starts : configs) {
    const StartConfig cfg = config_from_starts(starts);
    for (const Weights& w : {make_w(1, 1, 1, 1), make_w(3, 2, 4, 5), make_w(0, 1, 7, 6)}) {
      if (partition_det(cfg, w) != partition_product(cfg, w)) {
        r.pass = false;
        r.detail = "mismatch for m=" + std::to_string(cfg.m);
        return r;
      }
      ++checked;
    }
  }
  r.detail = std::to_string(checked) + " config/weight pairs";
  return r;
}

CheckResult check_one_point_support() {
  CheckResult r{"one-point function normalization and monotonicity", true, ""};
  int checked = 0;
  // the residue-sum formula needs pairwise distinct q^{2 a_i}, so q != 1 here
  for (const auto& starts : {std::vector<int>{0, 1, 2}, {0, 2, 3}, {0, 1, 4}, {0, 2, 3, 5}}) {
    const StartConfig cfg = config_from_starts(starts);
    for (const Weights& w : {make_w(1, 1, 5, 6), make_w(5, 4, 6, 7)}) {
      if (one_point_H(cfg, 0, w) != 1 || one_point_H(cfg, cfg.m + 1, w) != 0) {
        r.pass = false;
        r.detail = "normalization failed for m=" + std::to_string(cfg.m);
        return r;
      }
      Rational prev = 1;
      for (int ell = 1; ell <= cfg.m; ++ell) {
        const Rational h = one_point_H(cfg, ell, w);
        if (h < 0 || h > prev) {
          r.pass = false;
          r.detail = "monotonicity failed at ell=" + std::to_string(ell);
          return r;
        }
        prev = h;
        ++checked;
      }
    }
  }
  r.detail = std::to_string(checked) + " interior values, H(0)=1, H(m+1)=0";
  return r;
}

// Replays the top path of an enumeration key and tests passage through
// (ell, n); the weighted fraction must equal the residue-sum formula.
bool top_path_through(const std::string& key, const StartConfig& cfg, int ell) {
  const size_t bar = key.rfind('|');
  const std::string top = bar == std::string::npos ? key : key.substr(bar + 1);
  int x = cfg.starts[cfg.n], y = 0;
  if (x == ell && y == cfg.n) return true;
  for (char c : top) {
    if (c == 'U') ++y;
    else if (c == 'L') --x;
    else { --x; ++y; }
    if (x == ell && y == cfg.n) return true;
  }
  return false;
}

CheckResult check_one_point_enumeration() {
  CheckResult r{"one-point function vs weighted enumeration", true, ""};
  int checked = 0;
  for (const auto& starts : {std::vector<int>{0, 1, 2}, {0, 2, 3}, {0, 1, 4}, {0, 2, 4, 5}}) {
    const StartConfig cfg = config_from_starts(starts);
    for (const Weights& w : {make_w(1, 1, 4, 3), make_w(3, 2, 5, 4), make_w(0, 1, 3, 4)}) {
      const auto table = exact_enumerate_small(cfg, w);
      Rational total = 0;
      for (const auto& [key, wt] : table) total += wt;
      for (int ell = 0; ell <= cfg.m + 1; ++ell) {
        Rational through = 0;
        for (const auto& [key, wt] : table)
          if (top_path_through(key, cfg, ell)) through += wt;
        if (one_point_H(cfg, ell, w) != through / total) {
          r.pass = false;
          r.detail = "mismatch at ell=" + std::to_string(ell) +
                     " m=" + std::to_string(cfg.m);
          return r;
        }
        ++checked;
      }
    }
  }
  r.detail = std::to_string(checked) + " exact ratios across 4 configs";
  return r;
}

CheckResult check_enumeration_det() {
  CheckResult r{"enumeration total vs determinant", true, ""};
  int checked = 0;
  for (const auto& starts :
       {std::vector<int>{0, 1, 2, 3}, {0, 2, 3, 4}, {0, 1, 3, 5}, {0, 1, 2, 3, 4}}) {
    const StartConfig cfg = config_from_starts(starts);
    for (const Weights& w : {make_w(1, 1, 1, 1), make_w(2, 3, 7, 5), make_w(0, 1, 6, 5)}) {
      Rational total = 0;
      for (const auto& [key, wt] : exact_enumerate_small(cfg, w)) total += wt;
      if (total != partition_det(cfg, w)) {
        r.pass = false;
        r.detail = "mismatch for m=" + std::to_string(cfg.m);
        return r;
      }
      ++checked;
    }
  }
  r.detail = std::to_string(checked) + " configs x weights";
  return r;
}

CheckResult check_arctic_fixtures() {
  CheckResult r{"arctic curve fixtures (circle, semicircle)", true, ""};
  double worst = 0.0;
  {
    const MomentX mx(profile_aztec_diamond(), AsymParams::at_q_one(1.0));
    for (const CurveSample& s : arctic_curve(mx, 300)) {
      const double res = std::fabs((s.x - 0.5) * (s.x - 0.5) + (s.y - 0.5) * (s.y - 0.5) - 0.25);
      worst = std::max(worst, res);
    }
  }
  {
    const MomentX mx(profile_two_sigma(), AsymParams::at_q_one(1.0));
    for (const CurveSample& s : arctic_curve(mx, 300)) {
      const double res = std::fabs(s.x * s.x + s.y * s.y - 2.0 * s.x);
      worst = std::max(worst, res);
    }
  }
  r.pass = worst <= 1e-9;
  r.detail = fmt("worst residual %.3g over 2 fixtures", worst);
  return r;
}

CheckResult check_envelope() {
  CheckResult r{"tangent family envelopes the arctic curve", true, ""};
  double worst = 0.0;
  int checked = 0;
  const std::vector<std::pair<BoundaryProfile, AsymParams>> cases = {
      {profile_minimal_run(), AsymParams::at(0.8, 1.4)},
      {profile_single_gap(), AsymParams::at_q_one(1.5)},
      {profile_aztec_diamond(), AsymParams::at(1.0, 0.7)}};
  for (const auto& [prof, par] : cases) {
    const MomentX mx(prof, par);
    for (const CurveSample& s : arctic_curve(mx, 12)) {
      // the implicit curves live in multiplicative coordinates away from qq=1
      const double X = par.q_one ? s.x : std::pow(par.qq, 2.0 * s.x);
      const double Y = par.q_one ? s.y : std::pow(par.qq, 2.0 * s.y);
      const LineCoeffs lc = tangent_line(mx, s.t);
      if (lc.status != EvalStatus::Ok) continue;
      const double h = 1e-6 * std::max(1.0, std::fabs(s.t));
      const LineCoeffs lp = tangent_line(mx, s.t + h), lm = tangent_line(mx, s.t - h);
      if (lp.status != EvalStatus::Ok || lm.status != EvalStatus::Ok) continue;
      const LineCoeffs dc{(lp.c_xy - lm.c_xy) / (2 * h), (lp.c_y - lm.c_y) / (2 * h),
                          (lp.c_x - lm.c_x) / (2 * h), (lp.c_1 - lm.c_1) / (2 * h)};
      const auto scale = [&](const LineCoeffs& c) {
        return std::max(std::fabs(c.c_xy * X * Y) + std::fabs(c.c_y * Y) +
                            std::fabs(c.c_x * X) + std::fabs(c.c_1),
                        1e-9);
      };
      worst = std::max(worst, std::fabs(line_eval(lc, X, Y)) / scale(lc));
      worst = std::max(worst, std::fabs(line_eval(dc, X, Y)) / scale(dc));
      ++checked;
    }
  }
  r.pass = worst <= 1e-6 && checked >= 20;
  r.detail = fmt("worst normalized residual %.3g over %.0f points", worst, checked);
  return r;
}

CheckResult check_geodesic() {
  CheckResult r{"geodesic lies on its algebraic invariant", true, ""};
  double worst = 0.0;
  const double grid[] = {0.1, 0.25, 0.4, 0.55, 0.7, 0.85};
  for (const auto& [u, v, g, qq] :
       std::vector<std::array<double, 4>>{{1.0, 2.0, 1.0, 1.5},
                                          {0.7, 0.3, 2.5, 0.7},
                                          {1.3, 0.9, 0.0, 1.2}}) {
    const AsymParams par = AsymParams::at(g, qq);
    const double lq = std::log(qq);
    const double U = std::exp(2 * u * lq), V = std::exp(2 * v * lq);
    for (double f : grid) {
      const double x = f * u;
      const double y = geodesic_y(u, v, x, par);
      const double X = std::exp(2 * x * lq), Y = std::exp(2 * y * lq);
      const double res = std::fabs(geodesic_residual(X, Y, U, V, g)) /
                         std::max(geodesic_residual_scale(X, Y, U, V, g), 1e-12);
      worst = std::max(worst, res);
    }
    if (geodesic_y(u, v, u, par) != 0.0) r.pass = false;
    if (std::fabs(geodesic_y(u, v, 0.0, par) - v) > 1e-12 * v) r.pass = false;
  }
  if (worst > 1e-9) r.pass = false;
  r.detail = fmt("worst normalized residual %.3g, endpoints exact", worst);
  return r;
}

CheckResult check_symmetry() {
  CheckResult r{"left-right mirror symmetry of the arctic curve", true, ""};
  const BoundaryProfile prof = profile_minimal_run();
  const BoundaryProfile mir = mirrored(prof);
  const AsymParams par = AsymParams::at(2.0, 1.3);
  const AsymParams par_inv = AsymParams::at(0.5, 1.0 / 1.3);
  const MomentX mx(prof, par), my(mir, par_inv);
  const double mu = mx.mu();
  const double shift = std::pow(1.3, -2.0 * mu);
  double worst = 0.0;
  int matched = 0;
  for (const CurveSample& s : arctic_curve(mx, 40)) {
    const CurveSample t = arctic_point(my, s.t * shift);
    if (t.status != EvalStatus::Ok) continue;
    worst = std::max(worst, std::fabs(t.x - (mu - s.x)));
    worst = std::max(worst, std::fabs(t.y - s.y));
    ++matched;
  }
  r.pass = worst <= 1e-8 && matched >= 20;
  r.detail = fmt("worst deviation %.3g over %.0f mirrored samples", worst, matched);
  return r;
}

CheckResult check_saddle() {
  CheckResult r{"saddle closed forms solve the saddle equations", true, ""};
  double worst = 0.0;
  int checked = 0;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [prof, par] :
       std::vector<std::pair<BoundaryProfile, AsymParams>>{
           {profile_aztec_diamond(), AsymParams::at(1.0, 1.5)},
           {profile_two_sigma(), AsymParams::at(0.5, 0.8)},
           {profile_single_gap(), AsymParams::at(2.0, 1.25)}}) {
    const MomentX mx(prof, par);
    for (const auto& [lo, hi] : mx.domain().merged) {
      for (int k = 0; k < 25; ++k) {
        const double a = std::isinf(lo) ? std::atan(hi) - 1.4 : std::atan(lo);
        const double b = std::isinf(hi) ? std::atan(lo) + 1.4 : std::atan(hi);
        const double t = std::tan(a + (b - a) * (0.02 + 0.96 * unif(rng)));
        const SaddleSolution s = saddle_KFLR(mx, t);
        if (s.status != EvalStatus::Ok) continue;
        for (double res : saddle_residuals(s, par)) worst = std::max(worst, std::fabs(res));
        ++checked;
      }
    }
  }
  r.pass = worst <= 1e-9 && checked >= 100;
  r.detail = fmt("worst residual %.3g over %.0f saddle points", worst, checked);
  return r;
}

CheckResult check_free_energy() {
  CheckResult r{"free energy vs finite-size partition function", true, ""};
  double worst = 0.0;
  for (double qq : {2.0, 0.5}) {
    const AsymParams par = AsymParams::at(1.0, qq);
    const int n = 400;
    const double lz = log_single_path_Z(n, n, 1.0, std::log(qq) / n) / n;
    worst = std::max(worst, std::fabs(lz - free_energy_S0(1.0, 1.0, par).s0));
  }
  r.pass = worst <= 0.05;
  r.detail = fmt("worst |1/n log Z - S0| = %.4f at n=400", worst);
  return r;
}

CheckResult check_sampler_stationarity() {
  CheckResult r{"sampler stationarity (chi-square vs exact weights)", true, ""};
  double worst_p = 1.0;
  const auto run_case = [&](const StartConfig& cfg, const Weights& w, long steps,
                            long thin, std::uint64_t seed) {
    std::map<std::string, double> probs;
    Rational total_w = 0;
    const auto table = exact_enumerate_small(cfg, w);
    for (const auto& [key, wt] : table) total_w += wt;
    for (const auto& [key, wt] : table)
      if (wt > 0) probs[key] = Rational(wt / total_w).get_d();
    Chain chain(cfg, w, w.gamma == 0 ? ExtremalMode::MaxArea : ExtremalMode::MinArea);
    std::mt19937_64 rng(seed);
    std::map<std::string, long long> hist;
    long long total = 0;
    for (long s = 0; s < steps; ++s) {
      chain.step(rng);
      if (s >= steps / 10 && s % thin == 0) {
        ++hist[canonical_key(chain.snapshot())];
        ++total;
      }
    }
    double stat = 0.0;
    for (const auto& [key, p] : probs) {
      const auto it = hist.find(key);
      const double o = it == hist.end() ? 0.0 : static_cast<double>(it->second);
      const double e = p * total;
      stat += (o - e) * (o - e) / e;
    }
    boost::math::chi_squared dist(static_cast<double>(probs.size() - 1));
    worst_p = std::min(worst_p, boost::math::cdf(boost::math::complement(dist, stat)));
  };
  run_case(aztec_diamond_config(1), make_w(3, 2, 4, 5), 200000, 15, 2024);
  run_case(aztec_diamond_config(2), make_w(1, 1, 1, 1), 1500000, 48, 7);
  r.pass = worst_p > 0.01;
  r.detail = fmt("smallest p-value %.3f over 2 chains", worst_p);
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification(bool quick) {
  std::vector<CheckResult (*)()> checks = {
      check_poly_eval,     check_single_path_oracle, check_det_product,
      check_one_point_support, check_arctic_fixtures, check_envelope,
      check_geodesic,      check_symmetry,           check_saddle};
  if (!quick) {
    checks.push_back(check_one_point_enumeration);
    checks.push_back(check_enumeration_det);
    checks.push_back(check_free_energy);
    checks.push_back(check_sampler_stationarity);
  }
  std::vector<CheckResult> out;
  out.reserve(checks.size());
  for (auto* c : checks) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"unexpected exception", false, e.what()});
    }
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace aztec
