#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aztec/lgv.hpp"
#include "aztec/sampler.hpp"
#include "support.hpp"

using namespace aztec;
using testsup::ratio;
using testsup::weights;

namespace {

// Pearson chi-square p-value of observed counts against exact probabilities.
double chisq_p(const std::map<std::string, long long>& counts,
               const std::map<std::string, double>& probs, long long total) {
  double stat = 0.0;
  for (const auto& [key, p] : probs) {
    const auto it = counts.find(key);
    const double o = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    const double e = p * total;
    stat += (o - e) * (o - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(probs.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

std::map<std::string, double> exact_probs(const StartConfig& cfg, const Weights& w) {
  std::map<std::string, double> probs;
  Rational total = 0;
  const auto table = exact_enumerate_small(cfg, w);
  for (const auto& [key, wt] : table) total += wt;
  for (const auto& [key, wt] : table)
    if (wt > 0) probs[key] = Rational(wt / total).get_d();
  return probs;
}

// Thinned state-key histogram from a fresh chain.
std::map<std::string, long long> chain_histogram(const StartConfig& cfg, const Weights& w,
                                                 long steps, long thin, std::uint64_t seed,
                                                 long long& total) {
  Chain chain(cfg, w, w.gamma == 0 ? ExtremalMode::MaxArea : ExtremalMode::MinArea);
  std::mt19937_64 rng(seed);
  std::map<std::string, long long> hist;
  total = 0;
  for (long s = 0; s < steps; ++s) {
    chain.step(rng);
    if (s >= steps / 10 && s % thin == 0) {
      ++hist[canonical_key(chain.snapshot())];
      ++total;
    }
  }
  return hist;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("extremal configs: frozen small cases") {
  const StartConfig d1 = aztec_diamond_config(1);
  const PathSystem lo = extremal_config(d1, ExtremalMode::MinArea);
  CHECK(lo.paths[1].steps == std::vector<Step>{Step::Diag});
  CHECK(lo.area == 1);
  CHECK(lo.diag == 1);
  const PathSystem hi = extremal_config(d1, ExtremalMode::MaxArea);
  CHECK(hi.paths[1].steps == std::vector<Step>{Step::Up, Step::Left});
  CHECK(hi.area == 2);
  CHECK(hi.diag == 0);
  // diamond min-area state is the all-Diag staircase: area sum i^2, diag sum i
  const PathSystem lo3 = extremal_config(aztec_diamond_config(3), ExtremalMode::MinArea);
  CHECK(lo3.area == 14);
  CHECK(lo3.diag == 6);
  for (int i = 1; i <= 3; ++i)
    for (Step s : lo3.paths[i].steps) CHECK(s == Step::Diag);
  const PathSystem hi3 = extremal_config(aztec_diamond_config(3), ExtremalMode::MaxArea);
  CHECK(hi3.area == 28);  // 2 sum i^2
  CHECK(hi3.diag == 0);
}

TEST_CASE("extremal configs are valid and extremal against enumeration") {
  for (const auto& starts :
       {std::vector<int>{0, 1}, {0, 2}, {0, 1, 2}, {0, 2, 4}, {0, 1, 3}, {0, 2, 3, 5},
        {0, 1, 2, 3}, {0, 3, 4, 6}}) {
    const StartConfig cfg = config_from_starts(starts);
    const PathSystem lo = extremal_config(cfg, ExtremalMode::MinArea);
    const PathSystem hi = extremal_config(cfg, ExtremalMode::MaxArea);
    validate_system(lo);
    validate_system(hi);
    CHECK(lo.area <= hi.area);
    CHECK(hi.diag == 0);
    // gamma = 1 kills the diag dependence; q > 1 ranks by area, q < 1 reversed.
    const Weights up = weights("1", "2"), down = weights("1", "1/2");
    Rational best_hi = 0, best_lo = 0;
    for (const auto& [key, wt] : exact_enumerate_small(cfg, up))
      if (wt > best_hi) best_hi = wt;
    for (const auto& [key, wt] : exact_enumerate_small(cfg, down))
      if (wt > best_lo) best_lo = wt;
    CHECK(system_weight(hi, up) == best_hi);
    CHECK(system_weight(lo, down) == best_lo);
  }
}

TEST_CASE("exact enumeration: pinned counts and determinant identity") {
  std::mt19937 rng(31);
  // n=1 diamond: the trivial path blocks (0,0), leaving Diag and Up,Left.
  const Weights w = weights("3/2", "5/4");
  const auto e1 = exact_enumerate_small(aztec_diamond_config(1), w);
  REQUIRE(e1.size() == 2);
  CHECK(e1.at("D") == w.gamma * w.q);
  CHECK(e1.at("UL") == w.q * w.q);
  // n=2 diamond at gamma = q = 1: 2^{n(n+1)/2} states
  CHECK(exact_enumerate_small(aztec_diamond_config(2), weights("1", "1")).size() == 8);
  CHECK(exact_enumerate_small(aztec_diamond_config(3), weights("1", "1")).size() == 64);
  // sum of weights = LGV determinant, exactly
  for (const auto& starts :
       {std::vector<int>{0, 1}, {0, 3}, {0, 1, 2}, {0, 1, 4}, {0, 2, 5}, {0, 1, 2, 3},
        {0, 2, 3, 4}, {0, 1, 3, 6}}) {
    const StartConfig cfg = config_from_starts(starts);
    for (int rep = 0; rep < 2; ++rep) {
      const Weights rw = testsup::rand_weights(rng);
      if (rw.q <= 0) continue;
      Rational total = 0;
      for (const auto& [key, wt] : exact_enumerate_small(cfg, rw)) total += wt;
      CHECK(total == partition_det(cfg, rw));
    }
  }
  // keys of both extremal states appear in the enumeration
  const StartConfig c = config_from_starts({0, 2, 4});
  const auto table = exact_enumerate_small(c, w);
  CHECK(table.count(canonical_key(extremal_config(c, ExtremalMode::MinArea))) == 1);
  CHECK(table.count(canonical_key(extremal_config(c, ExtremalMode::MaxArea))) == 1);
  // budget guard: n=6 diamond exceeds 10^6 states
  CHECK_THROWS_AS(exact_enumerate_small(aztec_diamond_config(6), weights("1", "1")),
                  std::length_error);
}

TEST_CASE("moves are involutions that keep caches and occupancy exact") {
  const Weights w = weights("4/5", "7/6");
  for (const auto& starts : {std::vector<int>{0, 1}, {0, 1, 2}, {0, 2, 4}, {0, 1, 2, 3}}) {
    const StartConfig cfg = config_from_starts(starts);
    for (ExtremalMode mode : {ExtremalMode::MinArea, ExtremalMode::MaxArea}) {
      // also probe a handful of evolved states
      Chain warm(cfg, w, mode);
      std::mt19937_64 rng(7);
      for (int burn = 0; burn < 50; ++burn) warm.step(rng);
      for (const PathSystem& base :
           {extremal_config(cfg, mode), warm.snapshot()}) {
        const std::string key0 = canonical_key(base);
        for (int i = 1; i <= cfg.n; ++i) {
          for (int s = 0; s < cfg.starts[i] + i - 1; ++s) {
            for (int mv = 0; mv < 3; ++mv) {
              Chain c(base, w);
              const auto r = c.try_move(i, s, mv, 0.0);  // forced acceptance
              if (r != Chain::MoveResult::Applied) continue;
              const PathSystem mid = c.snapshot();
              validate_system(mid);
              CHECK(canonical_key(mid) != key0);
              REQUIRE(c.try_move(i, s, mv, 0.0) == Chain::MoveResult::Applied);
              const PathSystem back = c.snapshot();
              validate_system(back);
              CHECK(canonical_key(back) == key0);
              CHECK(back.area == base.area);
              CHECK(back.diag == base.diag);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("move results and counters") {
  const Weights w = weights("3/2", "4/5");
  const StartConfig d1 = aztec_diamond_config(1);
  {
    Chain c(d1, w, ExtremalMode::MinArea);  // state "D"
    CHECK(c.site_count() == 1);
    // corner flip needs two steps: inapplicable on the single Diag
    CHECK(c.try_move(1, 0, 0, 0.0) == Chain::MoveResult::Inapplicable);
    // Diag -> Left,Up inserts (0,0): blocked by the trivial path
    CHECK(c.try_move(1, 0, 2, 0.0) == Chain::MoveResult::Blocked);
    // Diag -> Up,Left applies
    CHECK(c.try_move(1, 0, 1, 0.0) == Chain::MoveResult::Applied);
    CHECK(canonical_key(c.snapshot()) == "UL");
    CHECK(c.attempts() == 3);
    CHECK(c.inapplicable() == 1);
    CHECK(c.blocked() == 1);
    CHECK(c.accepted() == 1);
    // contraction back to "D" has ratio gamma/q > 1: accepted at any draw
    CHECK(c.try_move(1, 0, 1, 0.999999) == Chain::MoveResult::Applied);
    CHECK(canonical_key(c.snapshot()) == "D");
    // expansion "D" -> "UL" has ratio q/gamma = 8/15: a draw above it rejects
    CHECK(c.try_move(1, 0, 1, 0.9) == Chain::MoveResult::Rejected);
    CHECK(c.rejected() == 1);
  }
  // gamma = q = 1: no Metropolis rejections, ever
  {
    Chain c(aztec_diamond_config(3), weights("1", "1"), ExtremalMode::MinArea);
    std::mt19937_64 rng(12345);
    for (int s = 0; s < 20000; ++s) c.step(rng);
    CHECK(c.rejected() == 0);
    CHECK(c.accepted() + c.blocked() + c.inapplicable() == c.attempts());
    validate_system(c.snapshot());
  }
}

TEST_CASE("one-step wrapper follows the in-place chain") {
  const Weights w = weights("5/4", "6/5");
  PathSystem s = extremal_config(aztec_diamond_config(2), ExtremalMode::MinArea);
  Chain c(s, w);
  std::mt19937_64 r1(99), r2(99);
  for (int k = 0; k < 60; ++k) {
    s = mcmc_step(s, w, r1);
    c.step(r2);
    REQUIRE(canonical_key(s) == canonical_key(c.snapshot()));
    CHECK(s.area == c.area());
    CHECK(s.diag == c.diag());
  }
  validate_system(s);
}

TEST_CASE("stationary distribution matches the exact weights (chi-square)") {
  // n=1 diamond, gamma=3/2, q=4/5: two states with probs (gamma q, q^2)/Z
  {
    const StartConfig cfg = aztec_diamond_config(1);
    const Weights w = weights("3/2", "4/5");
    const auto probs = exact_probs(cfg, w);
    REQUIRE(probs.size() == 2);
    long long total = 0;
    const auto hist = chain_histogram(cfg, w, 200000, 15, 2024, total);
    CHECK(chisq_p(hist, probs, total) > 0.01);
    // detailed balance read off the occupancies: N_D / N_UL -> gamma/q
    const double flow = static_cast<double>(hist.at("D")) / hist.at("UL");
    const double want = Rational(w.gamma / w.q).get_d();
    const double p = probs.at("D");
    const double sigma = std::sqrt(p * (1 - p) / total) / ((1 - p) * (1 - p));
    CHECK(std::fabs(flow - want) <= 3.0 * sigma);
  }
  // n=2 diamond, gamma=q=1: uniform over the 8 states
  {
    const StartConfig cfg = aztec_diamond_config(2);
    const Weights w = weights("1", "1");
    long long total = 0;
    const auto hist = chain_histogram(cfg, w, 1500000, 48, 7, total);
    REQUIRE(hist.size() == 8);
    CHECK(chisq_p(hist, exact_probs(cfg, w), total) > 0.01);
  }
  // n=3 diamond, skewed weights: 64 states
  {
    const StartConfig cfg = aztec_diamond_config(3);
    const Weights w = weights("7/5", "5/6");
    long long total = 0;
    const auto hist = chain_histogram(cfg, w, 3000000, 45, 31, total);
    REQUIRE(hist.size() == 64);  // chain support covers every enumerated state
    CHECK(chisq_p(hist, exact_probs(cfg, w), total) > 0.01);
  }
}

TEST_CASE("run_chain: determinism, thinning bookkeeping, two-start agreement") {
  const StartConfig cfg = aztec_diamond_config(3);
  const Weights w = weights("1", "6/5");
  ChainOptions opt;
  opt.sweeps = 40;
  opt.burn_in = 10;
  opt.stride = 3;
  opt.seed = 5150;
  const auto a = run_chain(cfg, w, opt);
  const auto b = run_chain(cfg, w, opt);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() == 10);  // ceil((40 - 10)/3)
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(canonical_key(a[k]) == canonical_key(b[k]));
    validate_system(a[k]);
  }
  const auto c = run_chain(cfg, w, 40, 10, 5150);  // stride-1 overload
  CHECK(c.size() == 30);
  CHECK(canonical_key(c[0]) == canonical_key(a[0]));
  CHECK_THROWS_AS(run_chain(cfg, w, 10, 10, 1), std::invalid_argument);
  ChainOptions bad = opt;
  bad.stride = 0;
  CHECK_THROWS_AS(run_chain(cfg, w, bad), std::invalid_argument);
  bad = opt;
  bad.burn_in = -1;
  CHECK_THROWS_AS(run_chain(cfg, w, bad), std::invalid_argument);

  // two-start convergence diagnostic: post-burn-in mean area within 3 sigma
  const StartConfig d4 = aztec_diamond_config(4);
  const Weights w4 = weights("1", "11/10");
  auto mean_sem = [&](StartMode start, std::uint64_t seed) {
    ChainOptions o;
    o.sweeps = 6000;
    o.burn_in = 2000;
    o.stride = 4;
    o.seed = seed;
    o.start = start;
    const auto snaps = run_chain(d4, w4, o);
    const int nb = 10;
    const size_t bs = snaps.size() / nb;
    std::vector<double> bm(nb, 0.0);
    for (int bb = 0; bb < nb; ++bb) {
      for (size_t k = 0; k < bs; ++k) bm[bb] += static_cast<double>(snaps[bb * bs + k].area);
      bm[bb] /= static_cast<double>(bs);
    }
    double m = 0.0, v = 0.0;
    for (double x : bm) m += x;
    m /= nb;
    for (double x : bm) v += (x - m) * (x - m);
    v /= nb - 1;
    return std::pair<double, double>(m, std::sqrt(v / nb));
  };
  const auto [ma, sa] = mean_sem(StartMode::MinArea, 11);
  const auto [mb, sb] = mean_sem(StartMode::MaxArea, 22);
  CHECK(std::fabs(ma - mb) <= 3.0 * std::sqrt(sa * sa + sb * sb));
}

TEST_CASE("gamma = 0: diag-free dynamics against the restricted enumeration") {
  CHECK_THROWS_AS(ChainWeights::from(weights("-1", "1")), std::domain_error);
  CHECK_THROWS_AS(ChainWeights::from(weights("1", "0")), std::domain_error);
  CHECK_THROWS_AS(ChainWeights::from(weights("1", "-2")), std::domain_error);
  const Weights w0 = weights("0", "11/10");
  // Auto start must pick the diag-free max-area state
  const auto snaps = run_chain(aztec_diamond_config(2), w0, 40, 5, 3);
  for (const auto& ps : snaps) CHECK(ps.diag == 0);
  // restricted stationarity on a config with several diag-free states
  const StartConfig cfg = config_from_starts({0, 2, 4});
  const auto probs = exact_probs(cfg, w0);  // zero-weight states drop out
  CHECK(probs.size() > 1);
  Rational total_w = 0;
  for (const auto& [key, wt] : exact_enumerate_small(cfg, w0)) total_w += wt;
  CHECK(total_w == partition_det(cfg, w0));
  long long total = 0;
  const auto hist = chain_histogram(cfg, w0, 400000, 20, 17, total);
  REQUIRE(hist.size() == probs.size());
  CHECK(chisq_p(hist, probs, total) > 0.01);
}

TEST_CASE("heatmap: deterministic start, conservation, csv shape") {
  const StartConfig cfg = config_from_starts({0, 1, 3});
  const PathSystem lo = extremal_config(cfg, ExtremalMode::MinArea);
  const std::vector<PathSystem> frozen{lo, lo, lo};
  const Heatmap hm = density_heatmap(frozen, 4, 4);
  CHECK(hm.samples == 3);
  CHECK(hm.mu == doctest::Approx(1.5));
  // counts are exactly 3x the single-configuration occupancy
  Heatmap one = density_heatmap({lo}, 4, 4);
  for (int k = 0; k < 16; ++k) {
    CHECK(hm.up[k] == 3 * one.up[k]);
    CHECK(hm.left[k] == 3 * one.left[k]);
    CHECK(hm.diag[k] == 3 * one.diag[k]);
  }
  // totals: sum Up = sum i - k, sum Left = sum a_i - k, sum Diag = k, per snapshot
  const auto snaps = run_chain(cfg, weights("1", "1"), 50, 10, 9);
  const Heatmap h2 = density_heatmap(snaps, 5, 3);
  long long up = 0, left = 0, diag = 0, eup = 0, eleft = 0, ediag = 0;
  for (int k = 0; k < 15; ++k) {
    up += h2.up[k];
    left += h2.left[k];
    diag += h2.diag[k];
  }
  for (const auto& ps : snaps) {
    eup += 3 - ps.diag;   // sum_i i = 3
    eleft += 4 - ps.diag; // sum_i a_i = 4
    ediag += ps.diag;
  }
  CHECK(up == eup);
  CHECK(left == eleft);
  CHECK(diag == ediag);
  // csv: header plus one row per cell
  std::ostringstream os;
  write_heatmap_csv(h2, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "x_lo,x_hi,y_lo,y_hi,up,left,diag,samples");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 15);
  CHECK_THROWS_AS(density_heatmap({}, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(density_heatmap(frozen, 0, 4), std::invalid_argument);
  std::vector<PathSystem> mixed{lo, extremal_config(aztec_diamond_config(2),
                                                    ExtremalMode::MinArea)};
  CHECK_THROWS_AS(density_heatmap(mixed, 4, 4), std::invalid_argument);
}

TEST_CASE("validate_system rejects broken systems") {
  const StartConfig cfg = aztec_diamond_config(2);
  PathSystem ok = extremal_config(cfg, ExtremalMode::MinArea);
  validate_system(ok);
  PathSystem bad = ok;
  bad.area += 1;
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
  bad = ok;
  bad.paths[1].steps = {Step::Up, Step::Left};  // ends at (0,1) but hits (1,1)
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
  bad = ok;
  bad.paths[2].steps.pop_back();  // wrong endpoint
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
  bad = ok;
  bad.paths[0].steps = {Step::Up};  // trivial path must stay trivial
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
  bad = ok;
  bad.paths[1].start_col = 2;
  CHECK_THROWS_AS(validate_system(bad), std::invalid_argument);
}

}  // TEST_SUITE
