#include "aztec/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aztec {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Rational floor_rational(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(q);
}
}  // namespace

Rational BoundaryProfile::alpha(const Rational& sigma) const {
  if (segments.empty()) throw std::invalid_argument("alpha: empty profile");
  if (sigma < segments.front().sigma_lo || sigma > segments.back().sigma_hi)
    throw std::invalid_argument("alpha: sigma outside [0,1]");
  // First piece whose closed interval contains sigma: at a jump point this
  // picks the earlier piece, i.e. the left value.
  for (const auto& s : segments)
    if (sigma <= s.sigma_hi)
      return s.alpha_lo + s.slope * (sigma - s.sigma_lo);
  return segments.back().alpha_hi();  // unreachable for valid profiles
}

Rational BoundaryProfile::mu() const {
  if (segments.empty()) throw std::invalid_argument("mu: empty profile");
  return segments.back().alpha_hi();
}

ProfileReport validate_profile(const BoundaryProfile& p) {
  ProfileReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  if (p.segments.empty()) {
    fail("profile has no segments");
    return rep;
  }
  const auto& segs = p.segments;
  if (segs.front().sigma_lo != 0) fail("first segment must start at sigma=0");
  if (segs.back().sigma_hi != 1) fail("last segment must end at sigma=1");
  if (segs.front().alpha_lo != 0) fail("alpha(0) must be 0");
  for (size_t k = 0; k < segs.size(); ++k) {
    std::ostringstream at;
    at << "segment " << k << ": ";
    if (segs[k].sigma_lo >= segs[k].sigma_hi)
      fail(at.str() + "sigma_lo must be < sigma_hi");
    if (segs[k].slope < 1) fail(at.str() + "slope must be >= 1");
    if (k > 0) {
      if (segs[k].sigma_lo != segs[k - 1].sigma_hi)
        fail(at.str() + "sigma pieces must tile [0,1] contiguously");
      if (segs[k].alpha_lo < segs[k - 1].alpha_hi())
        fail(at.str() + "alpha must not decrease across the junction");
    }
  }
  if (!rep.ok) return rep;
  // Soft flags: a slope-1 run reaching the boundary of [0,1] has an
  // admissible interval touching the edge of the parameter domain; we keep
  // the profile but surface the ambiguity.
  for (size_t k = 0; k < segs.size(); ++k) {
    if (segs[k].slope != 1) continue;
    if (segs[k].sigma_lo == 0) rep.flags.push_back("minimal-slope segment touches sigma=0");
    if (segs[k].sigma_hi == 1) rep.flags.push_back("minimal-slope segment touches sigma=1");
  }
  return rep;
}

StartConfig discretize(const BoundaryProfile& p, int n) {
  if (n < 1) throw std::invalid_argument("discretize: n must be >= 1");
  auto rep = validate_profile(p);
  if (!rep.ok)
    throw std::invalid_argument("discretize: invalid profile: " + rep.violations.front());
  std::vector<int> starts(n + 1);
  for (int k = 0; k <= n; ++k) {
    Rational v = Rational(n) * p.alpha(Rational(k, n));
    Rational f = floor_rational(v);
    starts[k] = static_cast<int>(f.get_num().get_si());
    if (k > 0 && starts[k] <= starts[k - 1]) {
      std::ostringstream msg;
      msg << "discretize: floor collision a_" << k - 1 << "=a_" << k << "="
          << starts[k] << " at n=" << n;
      throw std::invalid_argument(msg.str());
    }
  }
  return config_from_starts(starts);
}

namespace {
double alpha_to_t(const Rational& a, double qq, bool q_one) {
  double ad = a.get_d();
  return q_one ? ad : std::pow(qq, 2.0 * ad);
}
}  // namespace

bool TDomain::covers(double t) const {
  // Slack from |t|, not the endpoints: those may be infinite.
  double slack = 1e-12 * std::max(1.0, std::fabs(t));
  for (const auto& [lo, hi] : merged)
    if (t >= lo - slack && t <= hi + slack) return true;
  return false;
}

TDomain classify(const BoundaryProfile& p, double qq, bool q_one) {
  auto rep = validate_profile(p);
  if (!rep.ok)
    throw std::invalid_argument("classify: invalid profile: " + rep.violations.front());
  if (!q_one && (qq <= 0 || qq == 1))
    throw std::invalid_argument("classify: qq must be positive and != 1 (or use the qq=1 mode)");

  std::vector<SegmentClass> feats;
  Rational mu = p.mu();
  feats.push_back({SegmentClass::Kind::Generic, Rational(0), Rational(0), 0, 0});  // below alpha=0
  feats.push_back({SegmentClass::Kind::Generic, mu, mu, 0, 0});                    // above alpha=mu

  const auto& segs = p.segments;
  // Gaps between consecutive pieces, and maximal slope-1 runs (a gap inside
  // a would-be run splits it).
  bool in_run = false;
  Rational run_lo;
  auto close_run = [&](const Rational& hi) {
    if (in_run) feats.push_back({SegmentClass::Kind::MinimalSlope, run_lo, hi, 0, 0});
    in_run = false;
  };
  for (size_t k = 0; k < segs.size(); ++k) {
    if (k > 0 && segs[k].alpha_lo > segs[k - 1].alpha_hi()) {
      close_run(segs[k - 1].alpha_hi());
      feats.push_back({SegmentClass::Kind::Gap, segs[k - 1].alpha_hi(), segs[k].alpha_lo, 0, 0});
    }
    if (segs[k].slope == 1) {
      if (!in_run) {
        in_run = true;
        run_lo = segs[k].alpha_lo;
      }
    } else {
      close_run(k > 0 ? segs[k - 1].alpha_hi() : Rational(0));
    }
  }
  close_run(segs.back().alpha_hi());

  // Map alpha-ranges to t = qq^{2 alpha} (tau = alpha when qq = 1). The map
  // is decreasing for qq < 1, so endpoints swap there. feats[0]/feats[1] are
  // the below-zero / above-mu generic features by construction.
  bool increasing = q_one || qq > 1;
  for (size_t k = 0; k < feats.size(); ++k) {
    auto& f = feats[k];
    if (k == 0) {
      double edge = alpha_to_t(Rational(0), qq, q_one);
      f.t_lo = increasing ? -kInf : edge;
      f.t_hi = increasing ? edge : kInf;
    } else if (k == 1) {
      double edge = alpha_to_t(mu, qq, q_one);
      f.t_lo = increasing ? edge : -kInf;
      f.t_hi = increasing ? kInf : edge;
    } else {
      double u = alpha_to_t(f.a_lo, qq, q_one);
      double v = alpha_to_t(f.a_hi, qq, q_one);
      f.t_lo = std::min(u, v);
      f.t_hi = std::max(u, v);
    }
  }
  std::sort(feats.begin(), feats.end(), [](const SegmentClass& a, const SegmentClass& b) {
    if (a.t_lo != b.t_lo) return a.t_lo < b.t_lo;
    return a.t_hi < b.t_hi;
  });

  TDomain dom;
  dom.features = feats;
  for (const auto& f : feats) {
    double slack = 1e-12 * std::max(1.0, std::fabs(f.t_lo));
    if (!dom.merged.empty() && f.t_lo <= dom.merged.back().second + slack)
      dom.merged.back().second = std::max(dom.merged.back().second, f.t_hi);
    else
      dom.merged.emplace_back(f.t_lo, f.t_hi);
  }
  return dom;
}

BoundaryProfile mirrored(const BoundaryProfile& p) {
  BoundaryProfile m;
  m.name = p.name;
  Rational mu = p.mu();
  for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it) {
    ProfileSegment s;
    s.sigma_lo = 1 - it->sigma_hi;
    s.sigma_hi = 1 - it->sigma_lo;
    s.alpha_lo = mu - it->alpha_hi();
    s.slope = it->slope;
    m.segments.push_back(s);
  }
  return m;
}

BoundaryProfile profile_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BoundaryProfile p;
  p.name = j.value("name", std::string());
  if (!j.contains("segments") || !j["segments"].is_array())
    throw std::invalid_argument("profile json: missing \"segments\" array");
  for (const auto& js : j["segments"]) {
    ProfileSegment s;
    s.sigma_lo = parse_rational(js.at("sigma_lo").get<std::string>());
    s.sigma_hi = parse_rational(js.at("sigma_hi").get<std::string>());
    s.alpha_lo = parse_rational(js.at("alpha_lo").get<std::string>());
    s.slope = parse_rational(js.at("slope").get<std::string>());
    p.segments.push_back(s);
  }
  return p;
}

std::string profile_to_json(const BoundaryProfile& p) {
  nlohmann::json j;
  j["name"] = p.name;
  j["segments"] = nlohmann::json::array();
  for (const auto& s : p.segments) {
    nlohmann::json js;
    js["sigma_lo"] = to_fraction_string(s.sigma_lo);
    js["sigma_hi"] = to_fraction_string(s.sigma_hi);
    js["alpha_lo"] = to_fraction_string(s.alpha_lo);
    js["slope"] = to_fraction_string(s.slope);
    j["segments"].push_back(js);
  }
  return j.dump(2) + "\n";
}

BoundaryProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return profile_from_json(ss.str());
}

void save_profile(const BoundaryProfile& p, const std::string& path) {
  std::string text = profile_to_json(p);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile file: " + path);
  out << text;
}

namespace {
ProfileSegment seg(const Rational& slo, const Rational& shi, const Rational& alo,
                   const Rational& slope) {
  return ProfileSegment{slo, shi, alo, slope};
}
}  // namespace

BoundaryProfile profile_aztec_diamond() {
  return {"aztec-diamond", {seg(0, 1, 0, 1)}};
}

BoundaryProfile profile_two_sigma() {
  return {"two-sigma", {seg(0, 1, 0, 2)}};
}

BoundaryProfile profile_minimal_run() {
  return {"minimal-run",
          {seg(0, Rational(1, 3), 0, 2),
           seg(Rational(1, 3), Rational(2, 3), Rational(2, 3), 1),
           seg(Rational(2, 3), 1, 1, 2)}};
}

BoundaryProfile profile_single_gap() {
  return {"single-gap",
          {seg(0, Rational(1, 2), 0, 2), seg(Rational(1, 2), 1, 2, 2)}};
}

BoundaryProfile profile_two_runs() {
  return {"two-runs",
          {seg(0, Rational(2, 5), 0, 1),
           seg(Rational(2, 5), Rational(3, 5), Rational(2, 5), 2),
           seg(Rational(3, 5), 1, Rational(4, 5), 1)}};
}

BoundaryProfile profile_frozen_gap() {
  return {"frozen-gap",
          {seg(0, Rational(1, 2), 0, 1), seg(Rational(1, 2), 1, 1, 1)}};
}

}  // namespace aztec
