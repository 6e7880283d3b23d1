#include "aztec/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace aztec {

namespace {

Step step_between(int dx, int dy) {
  if (dx == 0 && dy == 1) return Step::Up;
  if (dx == -1 && dy == 0) return Step::Left;
  if (dx == -1 && dy == 1) return Step::Diag;
  throw std::invalid_argument("path system: illegal step displacement");
}

// Replays a path into the vertex list starting at (start, 0).
std::vector<std::pair<int, int>> path_vertices(const LatticePath& p) {
  std::vector<std::pair<int, int>> v;
  v.reserve(p.steps.size() + 1);
  int x = p.start_col, y = 0;
  v.emplace_back(x, y);
  for (Step s : p.steps) {
    if (s != Step::Up) --x;
    if (s != Step::Left) ++y;
    if (x < 0) throw std::invalid_argument("path system: path leaves the quadrant");
    v.emplace_back(x, y);
  }
  return v;
}

}  // namespace

PathSystem extremal_config(const StartConfig& cfg, ExtremalMode mode) {
  validate_config(cfg);
  const int n = cfg.n, m = cfg.m;
  std::vector<int> occ((m + 1) * (n + 1), -1);
  auto at = [&](int x, int y) -> int& { return occ[x * (n + 1) + y]; };
  PathSystem ps;
  ps.cfg = cfg;
  ps.paths.resize(n + 1);
  ps.paths[0].start_col = 0;
  at(0, 0) = 0;
  for (int i = 1; i <= n; ++i) {
    LatticePath& p = ps.paths[i];
    p.start_col = cfg.starts[i];
    int x = cfg.starts[i], y = 0;
    at(x, y) = i;
    while (!(x == 0 && y == i)) {
      // Lowest profile: Left, then Diag, then Up, first free target wins.
      // MaxArea instead climbs the start column and runs left along row i,
      // which is the highest profile (every Up is taken at the start column).
      int nx, ny;
      if (mode == ExtremalMode::MaxArea) {
        if (y < i) {
          nx = x;
          ny = y + 1;
        } else {
          nx = x - 1;
          ny = y;
        }
        if (nx < 0 || at(nx, ny) != -1)
          throw std::logic_error("extremal_config: max-area profile blocked");
      } else if (x > 0 && at(x - 1, y) == -1) {
        nx = x - 1;
        ny = y;
      } else if (x > 0 && y < i && at(x - 1, y + 1) == -1) {
        nx = x - 1;
        ny = y + 1;
      } else if (y < i && at(x, y + 1) == -1) {
        nx = x;
        ny = y + 1;
      } else {
        throw std::logic_error("extremal_config: min-area profile trapped");
      }
      p.steps.push_back(step_between(nx - x, ny - y));
      x = nx;
      y = ny;
      at(x, y) = i;
    }
    const AreaDiag ad = path_area_and_diag(p);
    ps.area += ad.area;
    ps.diag += ad.diag;
  }
  validate_system(ps);
  return ps;
}

void validate_system(const PathSystem& ps) {
  validate_config(ps.cfg);
  const int n = ps.cfg.n;
  if (static_cast<int>(ps.paths.size()) != n + 1)
    throw std::invalid_argument("path system: expected n+1 paths");
  if (!ps.paths[0].steps.empty() || ps.paths[0].start_col != 0)
    throw std::invalid_argument("path system: path 0 must be the trivial path");
  std::vector<char> used((ps.cfg.m + 1) * (n + 1), 0);
  long long area = 0, diag = 0;
  for (int i = 0; i <= n; ++i) {
    const LatticePath& p = ps.paths[i];
    if (p.start_col != ps.cfg.starts[i])
      throw std::invalid_argument("path system: start column mismatch");
    const auto verts = path_vertices(p);
    if (verts.back() != std::pair<int, int>(0, i))
      throw std::invalid_argument("path system: path must end at (0, i)");
    for (const auto& [x, y] : verts) {
      char& u = used[x * (n + 1) + y];
      if (u) throw std::invalid_argument("path system: two paths share a vertex");
      u = 1;
    }
    const AreaDiag ad = path_area_and_diag(p);
    area += ad.area;
    diag += ad.diag;
  }
  if (area != ps.area || diag != ps.diag)
    throw std::invalid_argument("path system: stale area/diag caches");
}

Rational system_weight(const PathSystem& ps, const Weights& w) {
  return pow_rational(w.gamma, ps.diag) * pow_rational(w.q, ps.area);
}

std::string canonical_key(const PathSystem& ps) {
  std::string key;
  for (size_t i = 1; i < ps.paths.size(); ++i) {
    if (i > 1) key += '|';
    for (Step s : ps.paths[i].steps)
      key += s == Step::Up ? 'U' : (s == Step::Left ? 'L' : 'D');
  }
  return key;
}

ChainWeights ChainWeights::from(const Weights& w) {
  if (w.gamma < 0) throw std::domain_error("chain weights: gamma must be >= 0");
  if (w.q <= 0) throw std::domain_error("chain weights: q must be positive");
  ChainWeights cw;
  cw.gamma_zero = w.gamma == 0;
  cw.log_gamma = cw.gamma_zero ? -std::numeric_limits<double>::infinity()
                               : std::log(w.gamma.get_d());
  cw.log_q = std::log(w.q.get_d());
  return cw;
}

Chain::Chain(const StartConfig& cfg, const Weights& w, ExtremalMode start)
    : Chain(extremal_config(cfg, start), w) {}

Chain::Chain(const PathSystem& start, const Weights& w) : cw_(ChainWeights::from(w)) {
  validate_system(start);
  init(start);
}

void Chain::init(const PathSystem& start) {
  cfg_ = start.cfg;
  n_ = cfg_.n;
  m_ = cfg_.m;
  occ_.assign((m_ + 1) * (n_ + 1), -1);
  verts_.resize(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    const auto vs = path_vertices(start.paths[i]);
    verts_[i].clear();
    for (const auto& [x, y] : vs) {
      verts_[i].push_back({x, y});
      occ_set(x, y, i);
    }
  }
  area_ = start.area;
  diag_ = start.diag;
  sites_.clear();
  for (int i = 1; i <= n_; ++i)
    for (int s = 0; s < cfg_.starts[i] + i - 1; ++s) sites_.emplace_back(i, s);
}

Chain::MoveResult Chain::try_move(int path, int slot, int move, double accept_u) {
  ++attempts_;
  std::vector<Vert>& v = verts_[path];
  const int len = static_cast<int>(v.size()) - 1;
  auto kind = [&](int s) { return step_between(v[s + 1].x - v[s].x, v[s + 1].y - v[s].y); };

  // Decode the move at this slot: the vertex to insert/replace/remove, and
  // the (area, diag) increments.  All increments are column-independent.
  enum class Action { Swap, Insert, Erase } action;
  Vert nv{0, 0};
  int da = 0, dk = 0;
  if (move == 0) {
    if (slot + 2 > len) {
      ++inapplicable_;
      return MoveResult::Inapplicable;
    }
    const Step a = kind(slot), b = kind(slot + 1);
    action = Action::Swap;
    if (a == Step::Left && b == Step::Up) {
      nv = {v[slot].x, v[slot].y + 1};
      da = 2;
    } else if (a == Step::Up && b == Step::Left) {
      nv = {v[slot].x - 1, v[slot].y};
      da = -2;
    } else {
      ++inapplicable_;
      return MoveResult::Inapplicable;
    }
  } else {
    const Step want_a = move == 1 ? Step::Up : Step::Left;
    const Step want_b = move == 1 ? Step::Left : Step::Up;
    if (slot < len && kind(slot) == Step::Diag) {
      action = Action::Insert;
      nv = move == 1 ? Vert{v[slot].x, v[slot].y + 1} : Vert{v[slot].x - 1, v[slot].y};
      da = move == 1 ? 1 : -1;
      dk = -1;
    } else if (slot + 2 <= len && kind(slot) == want_a && kind(slot + 1) == want_b) {
      action = Action::Erase;
      da = move == 1 ? -1 : 1;
      dk = 1;
    } else {
      ++inapplicable_;
      return MoveResult::Inapplicable;
    }
  }

  if (action != Action::Erase && occ_at(nv.x, nv.y) != -1) {
    ++blocked_;
    return MoveResult::Blocked;
  }

  // Metropolis gate on the weight ratio gamma^dk q^da.
  if (cw_.gamma_zero && dk > 0) {
    ++rejected_;
    return MoveResult::Rejected;
  }
  if (!(cw_.gamma_zero && dk < 0)) {
    double lr = da * cw_.log_q;
    if (dk != 0) lr += dk * cw_.log_gamma;
    if (lr < 0 && !(accept_u < std::exp(lr))) {
      ++rejected_;
      return MoveResult::Rejected;
    }
  }

  switch (action) {
    case Action::Swap:
      occ_set(v[slot + 1].x, v[slot + 1].y, -1);
      v[slot + 1] = nv;
      occ_set(nv.x, nv.y, path);
      break;
    case Action::Insert:
      v.insert(v.begin() + slot + 1, nv);
      occ_set(nv.x, nv.y, path);
      break;
    case Action::Erase:
      occ_set(v[slot + 1].x, v[slot + 1].y, -1);
      v.erase(v.begin() + slot + 1);
      break;
  }
  area_ += da;
  diag_ += dk;
  ++accepted_;

#ifndef NDEBUG
  if (accepted_ % 1000 == 0) {
    const PathSystem check = snapshot();
    PathSystem fresh = check;
    fresh.area = fresh.diag = 0;
    for (const LatticePath& p : fresh.paths) {
      const AreaDiag ad = path_area_and_diag(p);
      fresh.area += ad.area;
      fresh.diag += ad.diag;
    }
    assert(fresh.area == area_ && fresh.diag == diag_);
    validate_system(check);
  }
#endif
  return MoveResult::Applied;
}

void Chain::step(std::mt19937_64& rng) {
  const size_t idx = std::uniform_int_distribution<size_t>(0, sites_.size() - 1)(rng);
  const int move = std::uniform_int_distribution<int>(0, 2)(rng);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  try_move(sites_[idx].first, sites_[idx].second, move, u);
}

void Chain::sweep(std::mt19937_64& rng) {
  for (size_t k = 0; k < sites_.size(); ++k) step(rng);
}

PathSystem Chain::snapshot() const {
  PathSystem ps;
  ps.cfg = cfg_;
  ps.paths.resize(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    LatticePath& p = ps.paths[i];
    p.start_col = cfg_.starts[i];
    p.steps.reserve(verts_[i].size() - 1);
    for (size_t s = 0; s + 1 < verts_[i].size(); ++s)
      p.steps.push_back(step_between(verts_[i][s + 1].x - verts_[i][s].x,
                                     verts_[i][s + 1].y - verts_[i][s].y));
  }
  ps.area = area_;
  ps.diag = diag_;
  return ps;
}

PathSystem mcmc_step(const PathSystem& state, const Weights& w, std::mt19937_64& rng) {
  Chain c(state, w);
  c.step(rng);
  return c.snapshot();
}

std::vector<PathSystem> run_chain(const StartConfig& cfg, const Weights& w,
                                  const ChainOptions& opt) {
  if (opt.burn_in < 0 || opt.sweeps <= opt.burn_in || opt.stride < 1)
    throw std::invalid_argument("run_chain: need sweeps > burn_in >= 0 and stride >= 1");
  ExtremalMode start = ExtremalMode::MinArea;
  if (opt.start == StartMode::MaxArea || (opt.start == StartMode::Auto && w.gamma == 0))
    start = ExtremalMode::MaxArea;
  Chain chain(cfg, w, start);
  std::mt19937_64 rng(opt.seed);
  std::vector<PathSystem> out;
  for (long s = 0; s < opt.sweeps; ++s) {
    chain.sweep(rng);
    if (s >= opt.burn_in && (s - opt.burn_in) % opt.stride == 0) out.push_back(chain.snapshot());
  }
  return out;
}

std::vector<PathSystem> run_chain(const StartConfig& cfg, const Weights& w, long sweeps,
                                  long burn_in, std::uint64_t seed) {
  ChainOptions opt;
  opt.sweeps = sweeps;
  opt.burn_in = burn_in;
  opt.seed = seed;
  return run_chain(cfg, w, opt);
}

namespace {

struct Enumerator {
  const StartConfig& cfg;
  const Weights& w;
  std::vector<int> occ;
  std::map<std::string, Rational> out;
  std::string key;
  long long nodes = 0;
  static constexpr long long kBudget = 1'000'000;

  int& at(int x, int y) { return occ[x * (cfg.n + 1) + y]; }

  void path(int i, int x, int y, long long area, long long diag) {
    if (++nodes > 4 * kBudget)
      throw std::length_error("exact_enumerate_small: search budget exceeded");
    if (x == 0 && y == i) {
      if (i == cfg.n) {
        if (static_cast<long long>(out.size()) >= kBudget)
          throw std::length_error("exact_enumerate_small: more than 10^6 states");
        out.emplace(key, pow_rational(w.gamma, diag) * pow_rational(w.q, area));
        return;
      }
      const int nx = cfg.starts[i + 1];
      at(nx, 0) = i + 1;
      const size_t mark = key.size();
      key += '|';
      path(i + 1, nx, 0, area, diag);
      key.resize(mark);
      at(nx, 0) = -1;
      return;
    }
    auto attempt = [&](int dx, int dy, char c, long long darea, long long ddiag) {
      const int nx = x + dx, ny = y + dy;
      if (nx < 0 || ny > i || at(nx, ny) != -1) return;
      at(nx, ny) = i;
      key += c;
      path(i, nx, ny, area + darea, diag + ddiag);
      key.pop_back();
      at(nx, ny) = -1;
    };
    attempt(0, 1, 'U', 2 * x, 0);
    attempt(-1, 0, 'L', 0, 0);
    attempt(-1, 1, 'D', 2 * x - 1, 1);
  }
};

}  // namespace

std::map<std::string, Rational> exact_enumerate_small(const StartConfig& cfg,
                                                      const Weights& w) {
  validate_config(cfg);
  Enumerator e{cfg, w, std::vector<int>((cfg.m + 1) * (cfg.n + 1), -1), {}, {}, 0};
  e.at(0, 0) = 0;
  if (cfg.n == 0) {
    e.out.emplace("", Rational(1));
    return std::move(e.out);
  }
  e.at(cfg.starts[1], 0) = 1;
  e.path(1, cfg.starts[1], 0, 0, 0);
  return std::move(e.out);
}

Heatmap density_heatmap(const std::vector<PathSystem>& snapshots, int bx, int by) {
  if (snapshots.empty())
    throw std::invalid_argument("density_heatmap: need at least one snapshot");
  if (bx < 1 || by < 1) throw std::invalid_argument("density_heatmap: bins must be >= 1");
  const StartConfig& cfg = snapshots.front().cfg;
  Heatmap hm;
  hm.bx = bx;
  hm.by = by;
  hm.mu = static_cast<double>(cfg.m) / cfg.n;
  hm.samples = static_cast<long long>(snapshots.size());
  hm.up.assign(static_cast<size_t>(bx) * by, 0);
  hm.left.assign(static_cast<size_t>(bx) * by, 0);
  hm.diag.assign(static_cast<size_t>(bx) * by, 0);
  const double n = cfg.n;
  for (const PathSystem& ps : snapshots) {
    if (ps.cfg.starts != cfg.starts)
      throw std::invalid_argument("density_heatmap: snapshots from different configs");
    for (const LatticePath& p : ps.paths) {
      int x = p.start_col, y = 0;
      for (Step s : p.steps) {
        const int nx = s == Step::Up ? x : x - 1;
        const int ny = s == Step::Left ? y : y + 1;
        const double mx = 0.5 * (x + nx) / n, my = 0.5 * (y + ny) / n;
        int ix = static_cast<int>(mx / hm.mu * bx);
        int iy = static_cast<int>(my * by);
        ix = std::min(std::max(ix, 0), bx - 1);
        iy = std::min(std::max(iy, 0), by - 1);
        auto& grid = s == Step::Up ? hm.up : (s == Step::Left ? hm.left : hm.diag);
        ++grid[hm.index(ix, iy)];
        x = nx;
        y = ny;
      }
    }
  }
  return hm;
}

void write_heatmap_csv(const Heatmap& hm, std::ostream& out) {
  out << "x_lo,x_hi,y_lo,y_hi,up,left,diag,samples\n";
  for (int iy = 0; iy < hm.by; ++iy)
    for (int ix = 0; ix < hm.bx; ++ix) {
      const int k = hm.index(ix, iy);
      out << hm.mu * ix / hm.bx << ',' << hm.mu * (ix + 1) / hm.bx << ','
          << static_cast<double>(iy) / hm.by << ',' << static_cast<double>(iy + 1) / hm.by
          << ',' << hm.up[k] << ',' << hm.left[k] << ',' << hm.diag[k] << ','
          << hm.samples << '\n';
    }
}

}  // namespace aztec
