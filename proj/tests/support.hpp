#pragma once
// Shared helpers for the test suites.
#include <cmath>
#include <random>
#include <string>

#include "aztec/rational.hpp"
#include "aztec/weights.hpp"

namespace testsup {

inline aztec::Rational ratio(const std::string& s) { return aztec::parse_rational(s); }

inline aztec::Weights weights(const std::string& gamma, const std::string& q) {
  return {ratio(gamma), ratio(q)};
}

// Random rational in [0, hi] with denominator <= den_max.
inline aztec::Rational rand_rational(std::mt19937& rng, int hi, int den_max) {
  std::uniform_int_distribution<int> den(1, den_max);
  const int d = den(rng);
  std::uniform_int_distribution<int> num(0, hi * d);
  aztec::Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

// gamma in [0,3]; q in (0,2) with q != 1 (and automatically q != -1, 0).
inline aztec::Weights rand_weights(std::mt19937& rng) {
  aztec::Weights w;
  w.gamma = rand_rational(rng, 3, 6);
  do {
    std::uniform_int_distribution<int> den(2, 7);
    const int d = den(rng);
    std::uniform_int_distribution<int> num(1, 2 * d - 1);
    aztec::Rational q(num(rng), d);
    q.canonicalize();
    w.q = q;
  } while (w.q == 1);
  return w;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

}  // namespace testsup
