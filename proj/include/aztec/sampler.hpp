#pragma once
// Metropolis sampling of non-intersecting path systems at finite size, with
// an exhaustive-enumeration oracle for tiny instances and rescaled density
// heatmaps of the step occupancies.
#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "aztec/lattice_path.hpp"
#include "aztec/lgv.hpp"
#include "aztec/weights.hpp"

namespace aztec {

// A full system of n+1 vertex-disjoint paths, path i running from (a_i, 0)
// to (0, i).  paths[0] is the trivial path at the origin and never moves.
// area/diag cache the totals of the per-path statistics.
struct PathSystem {
  StartConfig cfg;
  std::vector<LatticePath> paths;
  long long area = 0;
  long long diag = 0;
};

enum class ExtremalMode { MinArea, MaxArea };

// Deterministic endpoint states of the weight range.  MinArea lets each path,
// from the bottom of the family up, hug the lowest vertex-disjoint profile;
// MaxArea sends path i straight up at column a_i and then left along row i.
PathSystem extremal_config(const StartConfig& cfg, ExtremalMode mode);

// Throws std::invalid_argument if the system violates an invariant:
// step legality, endpoints, vertex-disjointness, or stale caches.
void validate_system(const PathSystem& ps);

// gamma^k q^A as an exact rational.
Rational system_weight(const PathSystem& ps, const Weights& w);

// Steps of each path as U/L/D runs joined by '|'; stable across runs and
// usable as an exact state identifier.
std::string canonical_key(const PathSystem& ps);

// Chain-side weights: the Metropolis ratio gamma^{dk} q^{dA} is evaluated in
// log space so large area offsets cannot overflow.  gamma = 0 is tracked
// separately (moves that create a diagonal step are rejected outright, moves
// that remove one are always accepted).
struct ChainWeights {
  double log_gamma = 0.0;
  double log_q = 0.0;
  bool gamma_zero = false;
  static ChainWeights from(const Weights& w);  // needs q > 0, gamma >= 0
};

// Single-site Metropolis chain over PathSystems.  A site is a (path, slot)
// pair with slot < a_i + i - 1, indexing the first step the move touches in
// the current step sequence of the path; slots past the current length are
// no-ops, which keeps the proposal distribution state-independent (detailed
// balance).  Moves: 0 = corner flip Left,Up <-> Up,Left; 1 = Diag <-> Up,Left;
// 2 = Diag <-> Left,Up.
class Chain {
 public:
  enum class MoveResult { Inapplicable, Blocked, Rejected, Applied };

  Chain(const StartConfig& cfg, const Weights& w, ExtremalMode start);
  Chain(const PathSystem& start, const Weights& w);

  // Deterministic core: tries one move; accept_u in [0,1) is the Metropolis
  // draw (pass 0 to force acceptance of any admissible move).
  MoveResult try_move(int path, int slot, int move, double accept_u);

  void step(std::mt19937_64& rng);                  // one random site + move
  void sweep(std::mt19937_64& rng);                 // site_count() steps
  PathSystem snapshot() const;                      // materialized copy

  long long site_count() const { return static_cast<long long>(sites_.size()); }
  long long area() const { return area_; }
  long long diag() const { return diag_; }
  long long attempts() const { return attempts_; }
  long long accepted() const { return accepted_; }
  long long blocked() const { return blocked_; }    // would intersect
  long long rejected() const { return rejected_; }  // failed the Metropolis draw
  long long inapplicable() const { return inapplicable_; }

 private:
  struct Vert {
    int x, y;
  };
  void init(const PathSystem& start);
  int occ_at(int x, int y) const { return occ_[x * (n_ + 1) + y]; }
  void occ_set(int x, int y, int v) { occ_[x * (n_ + 1) + y] = v; }

  StartConfig cfg_;
  ChainWeights cw_;
  int n_ = 0, m_ = 0;
  std::vector<std::vector<Vert>> verts_;  // verts_[i] has length (steps)+1
  std::vector<int> occ_;                  // (m+1)*(n+1), path id or -1
  std::vector<std::pair<int, int>> sites_;
  long long area_ = 0, diag_ = 0;
  long long attempts_ = 0, accepted_ = 0, blocked_ = 0, rejected_ = 0, inapplicable_ = 0;
};

// Functional step used by tests and tools: copies the state, performs one
// Metropolis step drawing from rng, returns the successor.
PathSystem mcmc_step(const PathSystem& state, const Weights& w, std::mt19937_64& rng);

enum class StartMode { Auto, MinArea, MaxArea };  // Auto: MaxArea iff gamma == 0

struct ChainOptions {
  long sweeps = 0;    // total sweeps, burn-in included
  long burn_in = 0;   // discarded leading sweeps
  long stride = 1;    // keep one snapshot per this many post-burn-in sweeps
  std::uint64_t seed = 1;
  StartMode start = StartMode::Auto;
};

// Runs a chain and returns the thinned snapshot stream (deterministic in
// opt.seed).  Requires sweeps > burn_in >= 0 and stride >= 1.
std::vector<PathSystem> run_chain(const StartConfig& cfg, const Weights& w,
                                  const ChainOptions& opt);
std::vector<PathSystem> run_chain(const StartConfig& cfg, const Weights& w, long sweeps,
                                  long burn_in, std::uint64_t seed);

// Exhaustive recursion over all vertex-disjoint systems; key -> exact weight.
// Throws std::length_error when the state/visit budget (10^6 states) is hit.
std::map<std::string, Rational> exact_enumerate_small(const StartConfig& cfg,
                                                      const Weights& w);

// Occupation counts of Up/Left/Diag edges on a bx-by-by grid over the
// rescaled window [0, mu] x [0, 1], mu = m/n; each edge is binned at its
// midpoint (x/n, y/n).  Counts are raw sums over all snapshots.
struct Heatmap {
  int bx = 0, by = 0;
  double mu = 0.0;
  long long samples = 0;
  std::vector<long long> up, left, diag;  // bx*by, row-major ix + bx*iy
  int index(int ix, int iy) const { return ix + bx * iy; }
};

Heatmap density_heatmap(const std::vector<PathSystem>& snapshots, int bx, int by);

// CSV with header x_lo,x_hi,y_lo,y_hi,up,left,diag,samples (one row per cell).
void write_heatmap_csv(const Heatmap& hm, std::ostream& out);

}  // namespace aztec
