// Command-line surface over the exact engines (single-path and family
// partition functions, one-point function), the asymptotic engine (arctic
// curves, geodesics, tangent families), the Metropolis sampler and the
// cross-module verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input. Output
// files are assembled in memory and written only after the computation
// succeeds, so invalid inputs never leave partial files behind.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "aztec/asymptotics.hpp"
#include "aztec/lgv.hpp"
#include "aztec/profile.hpp"
#include "aztec/qcomb.hpp"
#include "aztec/sampler.hpp"
#include "aztec/svg.hpp"
#include "aztec/verify.hpp"

namespace {

using namespace aztec;

std::string dec(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Weights make_weights(const std::string& gamma, const std::string& q) {
  Weights w;
  w.gamma = parse_rational(gamma);
  w.q = parse_rational(q);
  if (w.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (w.q <= 0) throw std::invalid_argument("q must be > 0");
  return w;
}

std::vector<int> parse_defects(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = item.find_last_not_of(" \t");
    size_t used = 0;
    int v = std::stoi(item.substr(a, b - a + 1), &used);
    if (used != b - a + 1) throw std::invalid_argument("bad defect entry: " + item);
    out.push_back(v);
  }
  return out;
}

// qq > 0 as a double, from a fraction or decimal string.
double parse_positive(const std::string& text, const char* what) {
  const Rational r = parse_rational(text);
  if (r <= 0) throw std::invalid_argument(std::string(what) + " must be > 0");
  return r.get_d();
}

AsymParams make_params(const std::string& gamma, const std::string& qq, bool q_one) {
  const Rational g = parse_rational(gamma);
  if (g < 0) throw std::invalid_argument("gamma must be >= 0");
  if (q_one) {
    if (!qq.empty()) throw std::invalid_argument("give either --qq or --q1, not both");
    return AsymParams::at_q_one(g.get_d());
  }
  if (qq.empty()) throw std::invalid_argument("one of --qq or --q1 is required");
  return AsymParams::at(g.get_d(), parse_positive(qq, "--qq"));
}

BoundaryProfile load_valid_profile(const std::string& path) {
  const BoundaryProfile prof = load_profile(path);
  const ProfileReport rep = validate_profile(prof);
  if (!rep.ok)
    throw std::invalid_argument("invalid profile: " + rep.violations.front());
  return prof;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << content;
  f.flush();
  if (!f) throw std::invalid_argument("write failed: " + path);
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "svg")
    throw std::invalid_argument("--format must be csv or svg");
}

// Splits a point run at gaps (skipped samples or window exits) so polylines
// never bridge across undefined stretches.
void draw_runs(SvgCanvas& canvas, const std::vector<std::pair<double, double>>& pts,
               const std::string& stroke, double width) {
  std::vector<std::pair<double, double>> run;
  for (const auto& p : pts) {
    if (std::isfinite(p.first) && std::isfinite(p.second)) {
      run.push_back(p);
    } else if (run.size() > 1) {
      canvas.polyline(run, stroke, width);
      run.clear();
    } else {
      run.clear();
    }
  }
  if (run.size() > 1) canvas.polyline(run, stroke, width);
}

// ---------------------------------------------------------------- exact ----

struct ExactOpts {
  long i = 0, j = 0, ell = 0;
  int n = 0, m = 0;
  std::string defects, gamma = "1", q = "1";
};

int cmd_exact_single(const ExactOpts& o) {
  if (o.i < 0 || o.j < 0) throw std::invalid_argument("--i and --j must be >= 0");
  const Weights w = make_weights(o.gamma, o.q);
  const Rational z = single_path_Z(o.i, o.j, w);
  std::cout << to_fraction_string(z) << '\n' << "decimal: " << dec(z.get_d()) << '\n';
  return 0;
}

int cmd_exact_partition(const ExactOpts& o) {
  const Weights w = make_weights(o.gamma, o.q);
  const StartConfig cfg = config_from_defects(o.n, o.m, parse_defects(o.defects));
  const Rational d = partition_det(cfg, w);
  const Rational p = partition_product(cfg, w);
  std::cout << to_fraction_string(d) << '\n'
            << "product: " << to_fraction_string(p) << '\n'
            << "equal: " << (d == p ? "yes" : "no") << '\n'
            << "decimal: " << dec(d.get_d()) << '\n';
  return 0;
}

int cmd_exact_onepoint(const ExactOpts& o) {
  if (o.ell < 0) throw std::invalid_argument("--ell must be >= 0");
  const Weights w = make_weights(o.gamma, o.q);
  const StartConfig cfg = config_from_defects(o.n, o.m, parse_defects(o.defects));
  const Rational h = one_point_H(cfg, static_cast<int>(o.ell), w);
  std::cout << to_fraction_string(h) << '\n' << "decimal: " << dec(h.get_d()) << '\n';
  return 0;
}

// ---------------------------------------------------------------- curve ----

struct CurveOpts {
  std::string profile, gamma = "1", qq, out, format = "csv";
  bool q_one = false;
  int samples = 200;
};

int cmd_curve(const CurveOpts& o) {
  check_format(o.format);
  if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const BoundaryProfile prof = load_valid_profile(o.profile);
  const AsymParams par = make_params(o.gamma, o.qq, o.q_one);
  const MomentX mx(prof, par);
  const auto pts = arctic_curve(mx, o.samples);
  const long expected =
      static_cast<long>(mx.domain().merged.size()) * static_cast<long>(o.samples);
  const long skipped = expected - static_cast<long>(pts.size());
  if (skipped > 0)
    std::cerr << "skipped " << skipped << " singular samples\n";

  std::string content;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "interval,t,x,y\n";
    for (const auto& s : pts)
      os << s.interval << ',' << g17(s.t) << ',' << g17(s.x) << ',' << g17(s.y) << '\n';
    content = os.str();
  } else {
    const double mu = mx.mu();
    SvgCanvas canvas(0.0, mu, 0.0, 1.0);
    canvas.axes("x", "y");
    std::vector<std::pair<double, double>> run;
    int current = -1;
    for (const auto& s : pts) {
      if (s.interval != current) {
        if (run.size() > 1) canvas.polyline(run, "#1f77b4", 2.0);
        run.clear();
        current = s.interval;
      }
      run.emplace_back(s.x, s.y);
    }
    if (run.size() > 1) canvas.polyline(run, "#1f77b4", 2.0);
    for (const auto& tp : tangency_points(mx))
      if (!tp.degenerate) canvas.circle(tp.x, 0.0, 4.0, "#d62728");
    canvas.text(0.02 * mu, 1.06, "arctic curve: " + prof.name);
    content = canvas.str();
  }
  write_file(o.out, content);
  return 0;
}

// ------------------------------------------------------------- geodesic ----

struct GeoOpts {
  std::string u, v, gamma = "1", qq, out, format = "csv";
  bool q_one = false;
  int samples = 200;
};

int cmd_geodesic(const GeoOpts& o) {
  check_format(o.format);
  if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const double u = parse_positive(o.u, "--u");
  const double v = parse_positive(o.v, "--v");
  const AsymParams par = make_params(o.gamma, o.qq, o.q_one);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(o.samples);
  for (int k = 0; k < o.samples; ++k) {
    const double x = u * k / (o.samples - 1);
    // x = 0 carries the boundary value exactly
    pts.emplace_back(x, k == 0 ? v : geodesic_y(u, v, x, par));
  }
  std::string content;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "x,y\n";
    for (const auto& p : pts) os << g17(p.first) << ',' << g17(p.second) << '\n';
    content = os.str();
  } else {
    SvgCanvas canvas(0.0, u, 0.0, v);
    canvas.axes("x", "y");
    draw_runs(canvas, pts, "#1f77b4", 2.0);
    canvas.circle(u, 0.0, 4.0, "#d62728");
    canvas.circle(0.0, v, 4.0, "#d62728");
    content = canvas.str();
  }
  write_file(o.out, content);
  return 0;
}

// -------------------------------------------------------------- tangents ---

struct TanOpts {
  std::string profile, gamma = "1", qq, out, format = "svg";
  bool q_one = false;
  int num = 12, samples = 200;
};

int cmd_tangents(const TanOpts& o) {
  check_format(o.format);
  if (o.num < 1) throw std::invalid_argument("--num must be >= 1");
  if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const BoundaryProfile prof = load_valid_profile(o.profile);
  const AsymParams par = make_params(o.gamma, o.qq, o.q_one);
  const MomentX mx(prof, par);
  const double mu = mx.mu();
  const auto& merged = mx.domain().merged;

  // tangent parameters: a compactified midpoint grid over every interval
  std::vector<double> ts;
  const int per = (o.num + static_cast<int>(merged.size()) - 1) /
                  static_cast<int>(merged.size());
  const double cap = 1.5697963267948966;
  for (const auto& [lo, hi] : merged) {
    const double a = std::isinf(lo) ? -cap : std::atan(lo);
    const double b = std::isinf(hi) ? cap : std::atan(hi);
    for (int k = 0; k < per && static_cast<int>(ts.size()) < o.num; ++k)
      ts.push_back(std::tan(a + (b - a) * (k + 0.5) / per));
  }

  struct Series {
    int index;
    double t;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> tangents;
  const double lq2 = par.q_one ? 0.0 : 2.0 * par.log_qq();
  for (size_t k = 0; k < ts.size(); ++k) {
    const LineCoeffs lc = tangent_line(mx, ts[k]);
    if (lc.status != EvalStatus::Ok) continue;
    Series s{static_cast<int>(k), ts[k], {}};
    for (int j = 0; j < o.samples; ++j) {
      const double x = mu * j / (o.samples - 1);
      const double X = par.q_one ? x : std::exp(x * lq2);
      const double den = lc.c_xy * X + lc.c_y;
      double y = std::numeric_limits<double>::quiet_NaN();
      if (den != 0.0) {
        const double Y = -(lc.c_x * X + lc.c_1) / den;
        y = par.q_one ? Y : (Y > 0 ? std::log(Y) / lq2 : y);
      }
      s.pts.emplace_back(x, y);
    }
    tangents.push_back(std::move(s));
  }
  const auto curve = arctic_curve(mx, o.samples);

  std::string content;
  if (o.format == "csv") {
    std::ostringstream os;
    os << "kind,index,t,x,y\n";
    for (const auto& s : tangents)
      for (const auto& p : s.pts)
        if (std::isfinite(p.second))
          os << "tangent," << s.index << ',' << g17(s.t) << ',' << g17(p.first) << ','
             << g17(p.second) << '\n';
    for (const auto& s : curve)
      os << "arctic,-1," << g17(s.t) << ',' << g17(s.x) << ',' << g17(s.y) << '\n';
    content = os.str();
  } else {
    SvgCanvas canvas(0.0, mu, 0.0, 1.0);
    canvas.axes("x", "y");
    for (const auto& s : tangents) {
      std::vector<std::pair<double, double>> clipped;
      for (const auto& p : s.pts)
        clipped.emplace_back(p.first, (std::isfinite(p.second) && p.second >= -0.02 &&
                                       p.second <= 1.02)
                                          ? p.second
                                          : std::numeric_limits<double>::quiet_NaN());
      draw_runs(canvas, clipped, "#999999", 1.0);
    }
    std::vector<std::pair<double, double>> arc;
    int current = -1;
    for (const auto& s : curve) {
      if (s.interval != current && arc.size() > 1) {
        canvas.polyline(arc, "#d62728", 2.5);
        arc.clear();
      } else if (s.interval != current) {
        arc.clear();
      }
      current = s.interval;
      arc.emplace_back(s.x, s.y);
    }
    if (arc.size() > 1) canvas.polyline(arc, "#d62728", 2.5);
    for (const auto& tp : tangency_points(mx))
      if (!tp.degenerate) canvas.circle(tp.x, 0.0, 4.0, "#2ca02c");
    canvas.text(0.02 * mu, 1.06, "tangent family: " + prof.name);
    content = canvas.str();
  }
  write_file(o.out, content);
  return 0;
}

// ---------------------------------------------------------------- sample ---

struct SampleOpts {
  std::string profile, gamma = "1", q = "1", qq, bins = "32,32", out, overlay;
  bool q_one = false;
  int n = 0, match_scaling = 0;
  long sweeps = 0, burnin = 0, stride = 1;
  std::uint64_t seed = 1;
  bool q_given = false;
};

int cmd_sample(const SampleOpts& o) {
  if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
  int bx = 0, by = 0;
  if (std::sscanf(o.bins.c_str(), "%d,%d", &bx, &by) != 2 || bx < 1 || by < 1)
    throw std::invalid_argument("--bins must be BX,BY with both >= 1");

  Weights w = make_weights(o.gamma, "1");
  if (o.match_scaling > 0) {
    if (o.q_given)
      throw std::invalid_argument("--match-scaling derives q; do not also pass --q");
    if (o.qq.empty())
      throw std::invalid_argument("--match-scaling needs --qq");
    // q = qq^{1/N} as the exact rational value of the double
    w.q = Rational(std::pow(parse_positive(o.qq, "--qq"), 1.0 / o.match_scaling));
  } else {
    w.q = parse_rational(o.q);
    if (w.q <= 0) throw std::invalid_argument("q must be > 0");
  }

  const BoundaryProfile prof = load_valid_profile(o.profile);
  const StartConfig cfg = discretize(prof, o.n);

  std::vector<PathSystem> snaps;
  if (o.sweeps == 0) {
    if (o.burnin != 0)
      throw std::invalid_argument("--sweeps 0 requires --burnin 0");
    snaps.push_back(extremal_config(
        cfg, w.gamma == 0 ? ExtremalMode::MaxArea : ExtremalMode::MinArea));
  } else {
    ChainOptions copt;
    copt.sweeps = o.sweeps;
    copt.burn_in = o.burnin;
    copt.stride = o.stride;
    copt.seed = o.seed;
    snaps = run_chain(cfg, w, copt);
  }
  const Heatmap hm = density_heatmap(snaps, bx, by);
  std::ostringstream os;
  write_heatmap_csv(hm, os);

  std::string overlay_content;
  if (!o.overlay.empty()) {
    const AsymParams par = make_params(o.gamma, o.qq, o.q_one);
    const MomentX mx(prof, par);
    const auto curve = arctic_curve(mx, 400);
    const double mu = std::max(hm.mu, mx.mu());
    SvgCanvas canvas(0.0, mu, 0.0, 1.0);
    long long peak = 1;
    for (int k = 0; k < bx * by; ++k)
      peak = std::max(peak, hm.up[k] + hm.left[k] + hm.diag[k]);
    for (int iy = 0; iy < by; ++iy)
      for (int ix = 0; ix < bx; ++ix) {
        const long long tot = hm.up[hm.index(ix, iy)] + hm.left[hm.index(ix, iy)] +
                              hm.diag[hm.index(ix, iy)];
        if (tot == 0) continue;
        canvas.cell(hm.mu * ix / bx, 1.0 * iy / by, hm.mu * (ix + 1) / bx,
                    1.0 * (iy + 1) / by,
                    grey_fill(static_cast<double>(tot) / static_cast<double>(peak)));
      }
    std::vector<std::pair<double, double>> arc;
    int current = -1;
    for (const auto& s : curve) {
      if (s.interval != current && arc.size() > 1) {
        canvas.polyline(arc, "#d62728", 2.5);
        arc.clear();
      } else if (s.interval != current) {
        arc.clear();
      }
      current = s.interval;
      arc.emplace_back(s.x, s.y);
    }
    if (arc.size() > 1) canvas.polyline(arc, "#d62728", 2.5);
    canvas.axes("x", "y");
    canvas.text(0.02 * mu, 1.06, "sampled density: " + prof.name);
    overlay_content = canvas.str();
  }

  write_file(o.out, os.str());
  if (!overlay_content.empty()) write_file(o.overlay, overlay_content);
  return 0;
}

// ---------------------------------------------------------------- verify ---

int cmd_verify(bool quick) {
  const auto results = run_verification(quick);
  const CheckResult* first_fail = nullptr;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " - " << r.detail << '\n';
    if (!r.pass && !first_fail) first_fail = &r;
  }
  if (first_fail) {
    std::cerr << "verification failed: " << first_fail->name << '\n';
    return 1;
  }
  std::cout << "all " << results.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("AZTEC_THREADS")) {
    const int t = std::atoi(env);
#ifdef _OPENMP
    if (t > 0) omp_set_num_threads(t);
#else
    (void)t;
#endif
  }

  CLI::App app{
      "aztec: exact partition functions, arctic curves and Metropolis sampling of "
      "weighted Schroder-path families (domino tilings of Aztec rectangles with "
      "boundary defects).\n"
      "Exact parameters (gamma, q) are fraction strings like 3/2 or 0.25; the "
      "rescaled parameter qq corresponds to q^n at finite size n (pass --match-scaling "
      "N to derive q = qq^{1/N} for the sampler). AZTEC_THREADS sets the worker count."};
  app.require_subcommand(1);

  ExactOpts eo;
  auto* exact = app.add_subcommand("exact", "Exact rational computations");
  exact->require_subcommand(1);
  auto* single = exact->add_subcommand("single", "Single-path partition function Z(i, j)");
  single->add_option("--i", eo.i, "Start column i")->required();
  single->add_option("--j", eo.j, "End row j")->required();
  single->add_option("--gamma", eo.gamma, "Diagonal-step weight (fraction string)");
  single->add_option("--q", eo.q, "Area weight (fraction string)");
  auto* partition = exact->add_subcommand(
      "partition", "Family partition function: LGV determinant and product formula");
  partition->add_option("--defects", eo.defects,
                        "Comma-separated defect columns (empty for the Aztec diamond)");
  partition->add_option("--n", eo.n, "Number of nontrivial paths")->required();
  partition->add_option("--m", eo.m, "Width (last start column)")->required();
  partition->add_option("--gamma", eo.gamma, "Diagonal-step weight (fraction string)");
  partition->add_option("--q", eo.q, "Area weight (fraction string)");
  auto* onepoint = exact->add_subcommand(
      "onepoint", "One-point function H(ell) of the top path (needs q != 1 for 0 < ell <= m)");
  onepoint->add_option("--ell", eo.ell, "Exit column")->required();
  onepoint->add_option("--defects", eo.defects, "Comma-separated defect columns");
  onepoint->add_option("--n", eo.n, "Number of nontrivial paths")->required();
  onepoint->add_option("--m", eo.m, "Width (last start column)")->required();
  onepoint->add_option("--gamma", eo.gamma, "Diagonal-step weight (fraction string)");
  onepoint->add_option("--q", eo.q, "Area weight (fraction string)");

  CurveOpts co;
  auto* curve = app.add_subcommand("curve", "Arctic curve of a boundary profile");
  curve->add_option("--profile", co.profile, "Profile JSON file")->required();
  curve->add_option("--gamma", co.gamma, "Diagonal weight (fraction string)");
  curve->add_option("--qq", co.qq, "Rescaled area parameter (fraction string, != 1)");
  curve->add_flag("--q1", co.q_one, "Use the exact qq = 1 mode");
  curve->add_option("--samples", co.samples, "Samples per admissible interval");
  curve->add_option("--out", co.out, "Output path")->required();
  curve->add_option("--format", co.format, "csv (interval,t,x,y) or svg");

  GeoOpts go;
  auto* geo = app.add_subcommand("geodesic", "Most likely single-path trajectory");
  geo->add_option("--u", go.u, "Horizontal endpoint (fraction string)")->required();
  geo->add_option("--v", go.v, "Vertical endpoint (fraction string)")->required();
  geo->add_option("--gamma", go.gamma, "Diagonal weight (fraction string)");
  geo->add_option("--qq", go.qq, "Rescaled area parameter (fraction string, != 1)");
  geo->add_flag("--q1", go.q_one, "Use the exact qq = 1 mode");
  geo->add_option("--samples", go.samples, "Sample count on [0, u]");
  geo->add_option("--out", go.out, "Output path")->required();
  geo->add_option("--format", go.format, "csv (x,y) or svg");

  TanOpts to;
  auto* tan = app.add_subcommand("tangents",
                                 "Tangent-curve family with the arctic envelope");
  tan->add_option("--profile", to.profile, "Profile JSON file")->required();
  tan->add_option("--gamma", to.gamma, "Diagonal weight (fraction string)");
  tan->add_option("--qq", to.qq, "Rescaled area parameter (fraction string, != 1)");
  tan->add_flag("--q1", to.q_one, "Use the exact qq = 1 mode");
  tan->add_option("--num", to.num, "Number of tangent curves");
  tan->add_option("--samples", to.samples, "Samples per curve");
  tan->add_option("--out", to.out, "Output path")->required();
  tan->add_option("--format", to.format, "csv (kind,index,t,x,y) or svg");

  SampleOpts so;
  auto* sample = app.add_subcommand("sample", "Metropolis sampling and density heatmap");
  sample->add_option("--profile", so.profile, "Profile JSON file")->required();
  sample->add_option("--n", so.n, "Discretization size")->required();
  sample->add_option("--gamma", so.gamma, "Diagonal weight (fraction string)");
  auto* qopt = sample->add_option("--q", so.q, "Finite-size area weight (fraction string)");
  sample->add_option("--qq", so.qq, "Rescaled parameter for --overlay / --match-scaling");
  sample->add_flag("--q1", so.q_one, "Overlay curve in the qq = 1 mode");
  sample->add_option("--match-scaling", so.match_scaling,
                     "Derive q = qq^{1/N} for this N instead of --q");
  sample->add_option("--sweeps", so.sweeps, "Total sweeps (0: just the start state)")
      ->required();
  sample->add_option("--burnin", so.burnin, "Discarded leading sweeps");
  sample->add_option("--stride", so.stride, "Keep one snapshot per this many sweeps");
  sample->add_option("--seed", so.seed, "RNG seed");
  sample->add_option("--bins", so.bins, "Heatmap bins BX,BY");
  sample->add_option("--out", so.out, "Heatmap CSV path")->required();
  sample->add_option("--overlay", so.overlay, "Overlay SVG path (needs --qq or --q1)");

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Cross-module invariant suite");
  verify->add_flag("--quick", quick, "Sub-second subset only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    so.q_given = qopt->count() > 0;
    if (single->parsed()) return cmd_exact_single(eo);
    if (partition->parsed()) return cmd_exact_partition(eo);
    if (onepoint->parsed()) return cmd_exact_onepoint(eo);
    if (curve->parsed()) return cmd_curve(co);
    if (geo->parsed()) return cmd_geodesic(go);
    if (tan->parsed()) return cmd_tangents(to);
    if (sample->parsed()) return cmd_sample(so);
    if (verify->parsed()) return cmd_verify(quick);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
