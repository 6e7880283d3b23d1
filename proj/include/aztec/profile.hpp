#pragma once
// Piecewise-linear boundary profiles alpha(sigma): the continuum description
// of where paths start on the south boundary. Validation, conversion to
// finite start configurations, and classification of the admissible
// parameter intervals for the tangent method.
#include <string>
#include <utility>
#include <vector>

#include "aztec/lgv.hpp"
#include "aztec/rational.hpp"

namespace aztec {

// One linear piece: alpha(sigma) = alpha_lo + slope * (sigma - sigma_lo) on
// [sigma_lo, sigma_hi]. A jump between consecutive pieces is a gap (a run of
// boundary defects); slope exactly 1 is a minimal-slope (defect-free) piece.
struct ProfileSegment {
  Rational sigma_lo, sigma_hi, alpha_lo, slope;
  Rational alpha_hi() const { return alpha_lo + slope * (sigma_hi - sigma_lo); }
};

struct BoundaryProfile {
  std::string name;
  std::vector<ProfileSegment> segments;
  Rational alpha(const Rational& sigma) const;  // left value at jump points
  Rational mu() const;                          // alpha(1)
};

struct ProfileReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> flags;  // soft warnings, e.g. minimal slope touching sigma=0/1
};

// Checks the profile invariants (sigma pieces partition [0,1], slopes >= 1,
// alpha(0) = 0, strict increase); never throws. Minimal-slope runs touching
// sigma = 0 or sigma = 1 are flagged, not rejected: the admissible-interval
// semantics there is not settled and we expose rather than guess.
ProfileReport validate_profile(const BoundaryProfile& p);

// a_k = floor(n * alpha(k/n)); throws std::invalid_argument on an invalid
// profile or if two floors collide at this n.
StartConfig discretize(const BoundaryProfile& p, int n);

// One admissible parameter interval. The t endpoints are qq^{2 alpha} of the
// stored alpha-range (tau = alpha itself in the qq = 1 mode); Generic
// features are the two semi-infinite intervals.
struct SegmentClass {
  enum class Kind { Generic, Gap, MinimalSlope };
  Kind kind;
  Rational a_lo, a_hi;  // alpha-range of the feature
  double t_lo, t_hi;    // -inf / +inf on unbounded sides
};

struct TDomain {
  std::vector<SegmentClass> features;            // ordered by t
  std::vector<std::pair<double, double>> merged; // disjoint union, touching intervals merged
  bool covers(double t) const;
};

TDomain classify(const BoundaryProfile& p, double qq, bool q_one);

// Left-right mirror alpha~(sigma) = alpha(1) - alpha(1 - sigma).
BoundaryProfile mirrored(const BoundaryProfile& p);

// Profile file format: {"name": ..., "segments": [{"sigma_lo": "1/3", ...}]}
// with exact fraction strings; round-trip preserves the values bit for bit.
BoundaryProfile profile_from_json(const std::string& text);
std::string profile_to_json(const BoundaryProfile& p);
BoundaryProfile load_profile(const std::string& path);
void save_profile(const BoundaryProfile& p, const std::string& path);

// Fixture profiles used across tests and examples.
BoundaryProfile profile_aztec_diamond();  // alpha = sigma (minimal slope everywhere)
BoundaryProfile profile_two_sigma();      // alpha = 2 sigma (generic, defect-free of features)
BoundaryProfile profile_minimal_run();    // 2s | s+1/3 | 2s-1/3 : one interior minimal run
BoundaryProfile profile_single_gap();     // 2s with a jump 1 -> 2 at sigma = 1/2
BoundaryProfile profile_two_runs();       // s | 2s-2/5 | s+1/5 : two minimal runs
BoundaryProfile profile_frozen_gap();     // s | s+1/2 : runs + gap, fully frozen boundary

}  // namespace aztec
