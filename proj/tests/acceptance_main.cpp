// Acceptance suite: runs every criterion end to end and prints one line per
// criterion. Exit code 0 only when all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sqfn/generators.hpp"
#include "sqfn/rng.hpp"

using namespace sqfn;

namespace {

constexpr double kPi = 3.141592653589793;

struct Check {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static auto start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::vector<GeometrySpec> suite_geometries() {
  std::vector<GeometrySpec> specs;
  GeometrySpec seg;
  seg.kind = GeometryKind::Segment;
  seg.resolution = 1024;
  specs.push_back(seg);
  GeometrySpec circle;
  circle.kind = GeometryKind::Circle;
  circle.resolution = 1024;
  specs.push_back(circle);
  GeometrySpec graph;
  graph.kind = GeometryKind::LipschitzGraph;
  graph.resolution = 2048;
  graph.period = 1.0 / 64.0;
  graph.amplitude = 1.0 / 128.0;  // slope 1
  specs.push_back(graph);
  GeometrySpec cantor;
  cantor.kind = GeometryKind::Cantor4;
  cantor.generation = 3;
  specs.push_back(cantor);
  GeometrySpec composite;
  composite.kind = GeometryKind::Composite;
  GeometrySpec left = graph;
  left.resolution = 512;
  left.length = 0.5;
  GeometrySpec right = left;
  right.amplitude = 1.0 / 256.0;
  right.offset = {0.5, 0.0};
  composite.pieces = {left, right};
  specs.push_back(composite);
  return specs;
}

AdrReport run_adr(const QuasiMetricSpace& space, const AdrSet& e, int radii_count,
                  int max_centers) {
  double h = e.index().max_nn_spacing();
  double lo = std::min(4.0 * h, e.diam / 4.0);
  std::vector<double> radii;
  for (int i = 0; i < radii_count; ++i)
    radii.push_back(lo * std::pow(e.diam / lo, static_cast<double>(i) / (radii_count - 1)));
  std::vector<int> centers;
  std::size_t step = std::max<std::size_t>(1, e.size() / static_cast<std::size_t>(max_centers));
  for (std::size_t i = 0; i < e.size(); i += step) centers.push_back(static_cast<int>(i));
  return check_adr(space, e, radii, centers);
}

// ---- criterion 1: geometry suite ----
Check criterion1() {
  Check check;
  double t0 = now_seconds();
  QuasiMetricSpace space = euclidean_space(2);
  for (const GeometrySpec& spec : suite_geometries()) {
    AdrSet e = generate(spec);
    AdrReport report = run_adr(space, e, 16, 128);
    check.require(report.pass, geometry_kind_name(spec.kind) + " exceeded its claimed ADR constant (" +
                                   std::to_string(report.best_const) + ")");
  }

  GeometrySpec circle;
  circle.kind = GeometryKind::Circle;
  circle.resolution = 4096;
  AdrSet e = generate(circle);
  std::vector<double> radii;
  for (int i = 0; i < 24; ++i) radii.push_back(0.01 * std::pow(e.diam / 0.01, i / 23.0));
  std::vector<int> centers;
  for (int i = 0; i < 4096; i += 16) centers.push_back(i);
  AdrReport report = check_adr(space, e, radii, centers);
  double oracle = 1.0;
  for (double r : radii) {
    double sigma = 4.0 * std::asin(std::min(r, 2.0) / 2.0);
    oracle = std::max({oracle, sigma / r, r / sigma});
  }
  check.require(report.best_const >= 2.0 && report.best_const <= 3.3,
                "circle best_const outside [2.0, 3.3]");
  check.require(std::abs(report.best_const - oracle) <= 0.05 * oracle,
                "circle constant deviates from the arc-length oracle by more than 5%");
  double elapsed = now_seconds() - t0;
  check.require(elapsed < 10.0, "geometry suite exceeded 10 s");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "circle const %.3f vs oracle %.3f, %.1f s", report.best_const,
                oracle, elapsed);
  if (check.pass) check.detail = buf;
  return check;
}

// ---- criterion 2: lattice and cover invariants ----
void check_lattice(const QuasiMetricSpace& space, const AdrSet& e, const DyadicLattice& lat,
                   Check& check) {
  for (const auto& gen : lat.by_generation) {
    std::vector<int> seen(e.size(), 0);
    double mass = 0.0;
    for (int id : gen) {
      for (int i : lat.cube(id).members) seen[static_cast<std::size_t>(i)]++;
      mass += lat.cube(id).mass;
    }
    for (std::size_t i = 0; i < e.size(); ++i)
      if (seen[i] != 1) {
        check.require(false, "generation partition violated");
        return;
      }
    check.require(std::abs(mass - e.total_weight()) <= 1e-9 * e.total_weight(),
                  "generation mass drifted");
  }
  for (std::size_t id = 0; id < lat.cubes.size(); ++id) {
    const DyadicCube& q = lat.cubes[id];
    std::size_t child_members = 0;
    for (int cid : q.children) {
      const DyadicCube& child = lat.cube(cid);
      if (child.parent != static_cast<int>(id) || child.generation != q.generation + 1)
        check.require(false, "nesting links broken");
      child_members += child.members.size();
    }
    if (!q.children.empty() && child_members != q.members.size())
      check.require(false, "children do not partition the parent");
    PointView center = e.point(static_cast<std::size_t>(q.center_index));
    std::set<int> inside(q.members.begin(), q.members.end());
    for (int i : q.members)
      if (euclid(center, e.point(static_cast<std::size_t>(i))) > lat.c_out * q.side * (1 + 1e-12)) {
        check.require(false, "outer containment violated");
        break;
      }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (inside.count(static_cast<int>(i))) continue;
      if (euclid(center, e.point(i)) < lat.c_in * q.side * (1 - 1e-12)) {
        check.require(false, "inner ball contains a foreign point");
        break;
      }
    }
  }
}

void check_cover(const QuasiMetricSpace& space, const AdrSet& e, const DyadicLattice& lat,
                 const WhitneyCover& cover, Check& check) {
  for (const WhitneyCell& cell : cover.cells) {
    if (cell.side > cell.dist_to_e * (1 + 1e-12) || cell.dist_to_e > 6.0 * cell.side * (1 + 1e-12)) {
      check.require(false, "side-distance rule violated");
      break;
    }
    if (cell.cube_id < 0) {
      check.require(false, "unassigned cell");
      break;
    }
  }
  // structural disjointness: no accepted cell is an ancestor of another
  std::set<std::pair<int, std::vector<int>>> keys;
  for (const WhitneyCell& cell : cover.cells) keys.insert({cell.level, cell.coords});
  for (const WhitneyCell& cell : cover.cells) {
    std::vector<int> coords = cell.coords;
    for (int level = cell.level - 1; level >= 0; --level) {
      for (int& c : coords) c >>= 1;
      if (keys.count({level, coords})) {
        check.require(false, "nested accepted cells");
        break;
      }
    }
  }
  // completeness on random samples of the collar
  Rng rng(99);
  Point lo = cover.root_center, hi = cover.root_center;
  for (std::size_t d = 0; d < lo.size(); ++d) {
    lo[d] -= cover.root_side / 2;
    hi[d] += cover.root_side / 2;
  }
  int checked = 0;
  for (int t = 0; t < 20000; ++t) {
    Point x(lo.size());
    for (std::size_t d = 0; d < lo.size(); ++d) x[d] = rng.uniform(lo[d], hi[d]);
    double delta = regularized_distance(space, e, x);
    if (delta < cover.eps_min || delta > cover.truncation_radius) continue;
    ++checked;
    if (cover.find_cell(x) < 0) {
      check.require(false, "collar point not covered");
      break;
    }
  }
  check.require(checked > 1000, "completeness sampling starved");
  // tent monotonicity across all parent/child pairs
  for (std::size_t id = 0; id < lat.cubes.size(); ++id) {
    const DyadicCube& q = lat.cubes[id];
    if (q.parent < 0) continue;
    Tent child = tent(lat, static_cast<int>(id), cover);
    Tent parent = tent(lat, q.parent, cover);
    if (!std::includes(parent.cells.begin(), parent.cells.end(), child.cells.begin(),
                       child.cells.end())) {
      check.require(false, "tent monotonicity violated");
      break;
    }
  }
}

Check criterion2() {
  Check check;
  QuasiMetricSpace space = euclidean_space(2);
  for (const GeometrySpec& spec : suite_geometries()) {
    double t0 = now_seconds();
    AdrSet e = generate(spec);
    auto lat = std::make_shared<DyadicLattice>(build_lattice(space, e, 5));
    double eps = spec.kind == GeometryKind::Cantor4 ? std::pow(0.25, spec.generation) / 4.0
                                                    : 1.0 / 256.0;
    WhitneyCover cover = whitney_cover(space, e, lat, 0.0, eps);
    check_lattice(space, e, *lat, check);
    check_cover(space, e, *lat, cover, check);
    double elapsed = now_seconds() - t0;
    check.require(elapsed < 30.0,
                  geometry_kind_name(spec.kind) + " lattice/cover suite exceeded 30 s");
    if (!check.pass) {
      check.detail += " [" + geometry_kind_name(spec.kind) + "]";
      return check;
    }
  }
  check.detail = "5 geometries, depth 5, all invariants at 100%";
  return check;
}

// ---- criterion 3: kernel suite ----
Check criterion3() {
  Check check;
  Rng rng(4);
  for (int j : {1, 2}) {
    HomogeneousKernel k = riesz_kernel(j, 1);
    for (int t = 0; t < 1000; ++t) {
      Point x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      if (x[0] * x[0] + x[1] * x[1] < 1e-3) continue;
      Point neg{-x[0], -x[1]};
      Point twice{2 * x[0], 2 * x[1]};
      double v = k.eval(x);
      check.require(std::abs(k.eval(neg) + v) <= 1e-12 * std::abs(v), "oddness beyond 1e-12");
      check.require(std::abs(k.eval(twice) - 0.5 * v) <= 1e-12 * std::abs(v),
                    "homogeneity beyond 1e-12");
    }
  }
  // observed finite-difference order of the analytic gradient
  HomogeneousKernel k = riesz_kernel(1, 1);
  double worst_order = 10.0;
  for (int t = 0; t < 200; ++t) {
    Point u{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    if (u[0] * u[0] + u[1] * u[1] < 0.25) continue;
    double g[2];
    k.grad(u, g);
    for (int i = 0; i < 2; ++i) {
      auto fd = [&](double h) {
        Point up = u, um = u;
        up[static_cast<std::size_t>(i)] += h;
        um[static_cast<std::size_t>(i)] -= h;
        return (k.eval(up) - k.eval(um)) / (2 * h);
      };
      double e1 = std::abs(fd(1e-3) - g[i]);
      double e2 = std::abs(fd(5e-4) - g[i]);
      if (e1 > 1e-10 && e2 > 1e-12) worst_order = std::min(worst_order, std::log2(e1 / e2));
    }
  }
  check.require(worst_order >= 1.9, "finite-difference order below 1.9");

  KernelSpec grad = gradient_kernel(riesz_kernel(1, 1), 1.0);
  KernelAxiomReport axioms = verify_kernel_axioms(euclidean_space(2), grad, 20000, 7);
  check.require(axioms.pass, "kernel axioms failed for the riesz gradient");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "fd order %.2f, axiom constant %.2f <= %.0f", worst_order,
                axioms.c_theta_measured, axioms.declared);
  if (check.pass) check.detail = buf;
  return check;
}

// ---- criterion 4: operator oracles ----
Check criterion4() {
  Check check;
  QuasiMetricSpace space = euclidean_space(2);
  GeometrySpec spec;
  spec.kind = GeometryKind::Line;
  spec.resolution = 8192;
  spec.length = 2.0;
  AdrSet seg = generate(spec);
  SurfaceFunction ones = constant_function(seg, 1.0);
  HomogeneousKernel k2 = riesz_kernel(2, 1);
  for (double h : {0.1, 0.5, 1.0}) {
    Point x{0.0, h};
    double value = apply_T(seg, k2, ones, x);
    double oracle = 2.0 * std::atan(1.0 / h);
    check.require(std::abs(value - oracle) <= 0.01 * oracle,
                  "convolution quadrature off by more than 1% at h=" + std::to_string(h));
  }

  GeometrySpec line;
  line.kind = GeometryKind::Line;
  line.resolution = 2048;
  AdrSet e = generate(line);
  auto lat = std::make_shared<DyadicLattice>(build_lattice(space, e, 5));
  WhitneyCover cover = whitney_cover(space, e, lat, 0.0, 1.0 / 256.0);
  KernelSpec grad = gradient_kernel(riesz_kernel(2, 1), 1.0);
  SurfaceFunction bump;
  bump.values.resize(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    bump.values[i] = std::exp(-sq(e.point(i)[0]) / (2.0 * 0.05 * 0.05));
  double ratio = square_energy(space, e, grad, bump, cover).total / bump.l2_norm_sq(e);
  check.require(std::abs(ratio - kPi * kPi) <= 0.05 * kPi * kPi,
                "energy constant deviates from the extension oracle by more than 5%");

  GeometrySpec line2 = line;
  line2.resolution = 1024;
  AdrSet e2 = generate(line2);
  auto lat2 = std::make_shared<DyadicLattice>(build_lattice(space, e2, 5));
  WhitneyCover coarse = whitney_cover(space, e2, lat2, 0.0, 1.0 / 128.0);
  WhitneyCover fine = whitney_cover(space, e2, lat2, 0.0, 1.0 / 256.0);
  SurfaceFunction bump2;
  bump2.values.resize(e2.size());
  for (std::size_t i = 0; i < e2.size(); ++i)
    bump2.values[i] = std::exp(-sq(e2.point(i)[0]) / (2.0 * 0.06 * 0.06));
  double ea = square_energy(space, e2, grad, bump2, coarse).total;
  double eb = square_energy(space, e2, grad, bump2, fine).total;
  check.require(std::abs(ea - eb) / eb < 0.02, "refinement shift at least 2%");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "energy/pi^2 = %.4f, refinement shift %.2f%%",
                ratio / (kPi * kPi), 100.0 * std::abs(ea - eb) / eb);
  if (check.pass) check.detail = buf;
  return check;
}

// ---- criterion 5: local T(b) and comparability chain ----
struct TbBench {
  AdrSet e;
  std::shared_ptr<DyadicLattice> lattice;
  WhitneyCover cover;
};

TbBench make_bench(const QuasiMetricSpace& space, const GeometrySpec& spec, int depth, double eps) {
  TbBench bench;
  bench.e = generate(spec);
  bench.lattice = std::make_shared<DyadicLattice>(build_lattice(space, bench.e, depth));
  bench.cover = whitney_cover(space, bench.e, bench.lattice, 0.0, eps);
  return bench;
}

Check criterion5() {
  Check check;
  QuasiMetricSpace space = euclidean_space(2);
  KernelSpec grad = gradient_kernel(riesz_kernel(2, 1), 1.0);

  std::vector<std::pair<std::string, GeometrySpec>> cases;
  GeometrySpec line;
  line.kind = GeometryKind::Segment;
  line.resolution = 2048;
  cases.push_back({"line", line});
  // teeth sit two octaves below the finest tested cube scale so every tested
  // generation sees a homogenized sawtooth
  GeometrySpec graph;
  graph.kind = GeometryKind::LipschitzGraph;
  graph.resolution = 4096;
  graph.period = 1.0 / 128.0;
  graph.amplitude = 1.0 / 256.0;
  cases.push_back({"sawtooth", graph});

  std::string detail;
  for (auto& [name, spec] : cases) {
    double eps = spec.kind == GeometryKind::LipschitzGraph ? 1.0 / 512.0 : 1.0 / 256.0;
    TbBench bench = make_bench(space, spec, 5, eps);
    TbReport tb = check_local_tb(space, bench.e, grad, indicator_tb_family(bench.e, *bench.lattice),
                                 *bench.lattice, bench.cover);
    check.require(tb.pass && tb.failed_cubes.empty(), name + ": local testing failed");
    SfeReport sfe = estimate_sfe_constant(space, bench.e, grad, bench.cover,
                                          indicator_family(bench.e, *bench.lattice));
    check.require(std::isfinite(sfe.best_ratio) && sfe.best_ratio > 0.0,
                  name + ": constant not finite");
    std::map<int, double> best;
    for (const PerFunctionRow& row : sfe.per_function) {
      if (row.name.rfind("1_Q[g", 0) != 0) continue;
      int gen = std::stoi(row.name.substr(5));
      best[gen] = std::max(best[gen], row.ratio);
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int gen = 1; gen <= 4; ++gen) {
      if (!best.count(gen)) {
        check.require(false, name + ": missing generation " + std::to_string(gen));
        continue;
      }
      lo = std::min(lo, best[gen]);
      hi = std::max(hi, best[gen]);
    }
    check.require(hi / lo <= 1.10, name + ": scale drift " + std::to_string(hi / lo) + " > 1.10");
    detail += name + " C=" + std::to_string(sfe.best_ratio).substr(0, 5) + " drift=" +
              std::to_string(hi / lo).substr(0, 5) + " ";
  }

  // comparability split on the segment with the left half as the big piece
  TbBench bench = make_bench(space, line, 5, 1.0 / 256.0);
  std::vector<int> left;
  for (std::size_t i = 0; i < bench.e.size(); ++i)
    if (bench.e.point(i)[0] < 0.5) left.push_back(static_cast<int>(i));
  BigPiece half = make_big_piece(bench.e, left);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int lvl = 1; lvl <= 3; ++lvl) {
    double scale_best = 0.0;
    for (int id : bench.lattice->by_generation[static_cast<std::size_t>(lvl)]) {
      SplitReport split =
          comparability_split(space, bench.e, grad, *bench.lattice, id, half, 8.0, bench.cover);
      check.require(split.i_a + split.i_not_a == split.tent_total, "split additivity not exact");
      scale_best = std::max(scale_best, split.carleson_lhs / bench.lattice->cube(id).mass);
    }
    lo = std::min(lo, scale_best);
    hi = std::max(hi, scale_best);
  }
  check.require(lo > 0.0 && hi / lo <= 4.0, "carleson ratio drift exceeds 4");
  if (check.pass) check.detail = detail + "carleson drift " + std::to_string(hi / lo).substr(0, 5);
  return check;
}

// ---- criterion 6: negative control ----
Check criterion6() {
  Check check;
  QuasiMetricSpace space = euclidean_space(2);
  KernelSpec grad = gradient_kernel(riesz_kernel(2, 1), 1.0);
  std::string detail = "cantor";
  for (std::uint64_t seed : {1ull, 2ull}) {
    double last = 0.0;
    for (int g : {2, 3, 4}) {
      GeometrySpec spec;
      spec.kind = GeometryKind::Cantor4;
      spec.generation = g;
      TbBench bench = make_bench(space, spec, 2 * g, std::pow(0.25, g) / 4.0);
      TestFamily family = default_family(bench.e, *bench.lattice, seed, 32, 0);
      SfeReport report = estimate_sfe_constant(space, bench.e, grad, bench.cover, family);
      check.require(report.best_ratio > last,
                    "cantor constant not increasing at g=" + std::to_string(g) + " seed " +
                        std::to_string(seed));
      last = report.best_ratio;
      if (seed == 1) detail += " g" + std::to_string(g) + "=" + std::to_string(report.best_ratio).substr(0, 5);
    }
  }

  // refinement control: ever finer samplings of one fixed graph
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n : {1024, 2048, 4096}) {
    GeometrySpec graph;
    graph.kind = GeometryKind::LipschitzGraph;
    graph.resolution = n;
    graph.period = 1.0 / 64.0;
    graph.amplitude = 1.0 / 128.0;
    TbBench bench = make_bench(space, graph, 5, 1.0 / 256.0);
    TestFamily family = default_family(bench.e, *bench.lattice, 1, 32, 0);
    SfeReport report = estimate_sfe_constant(space, bench.e, grad, bench.cover, family);
    lo = std::min(lo, report.best_ratio);
    hi = std::max(hi, report.best_ratio);
  }
  check.require(hi / lo <= 1.10, "graph constants drift more than 10% under refinement");
  if (check.pass) check.detail = detail + ", graph flat " + std::to_string(hi / lo).substr(0, 5);
  return check;
}

// ---- criterion 7: extrapolation suite ----
Check criterion7() {
  Check check;
  double t0 = now_seconds();
  QuasiMetricSpace space = euclidean_space(2);
  KernelSpec grad = gradient_kernel(riesz_kernel(2, 1), 1.0);
  GeometrySpec line;
  line.kind = GeometryKind::Segment;
  line.resolution = 2048;
  TbBench bench = make_bench(space, line, 5, 1.0 / 256.0);

  std::vector<SurfaceBall> balls;
  for (int b = 1; b <= 3; ++b)
    balls.push_back(SurfaceBall{static_cast<int>(b * bench.e.size() / 4), bench.e.diam / 8.0});
  std::vector<DistributionCurve> curves =
      weak_lp_indicator_test(space, bench.e, grad, 1.0, 2.0, balls, {}, bench.cover);
  std::string detail = "exponents";
  for (const DistributionCurve& curve : curves) {
    check.require(curve.fitted_exponent >= 1.7,
                  "weak-type fit " + std::to_string(curve.fitted_exponent) + " below 1.7");
    for (std::size_t i = 1; i < curve.measures.size(); ++i)
      check.require(curve.measures[i] <= curve.measures[i - 1], "distribution not monotone");
    detail += " " + std::to_string(curve.fitted_exponent).substr(0, 4);
  }

  TestFamily family = default_family(bench.e, *bench.lattice, 1, 16, 8);
  std::vector<double> ps{1.5, 2.0, 3.0, 4.0};
  std::vector<LpSweepRow> rows = lp_sweep(space, bench.e, grad, 1.0, ps, family, bench.cover);
  for (const LpSweepRow& row : rows)
    check.require(std::isfinite(row.ratio) && row.ratio > 0.0,
                  "sweep ratio not finite at p=" + std::to_string(row.p));

  // the admissible atomic range (d/(d+gamma), 1] is enforced exactly
  bool gated_low = false, gated_high = false;
  try {
    atomic_hp_test(space, bench.e, grad, 1.0, 0.5, 2, 1, bench.cover);
  } catch (const ValidationError&) {
    gated_low = true;
  }
  try {
    atomic_hp_test(space, bench.e, grad, 1.0, 1.0 + 1e-9, 2, 1, bench.cover);
  } catch (const ValidationError&) {
    gated_high = true;
  }
  check.require(gated_low && gated_high, "atomic range gate leaks");
  HpAtomReport a1 = atomic_hp_test(space, bench.e, grad, 1.0, 0.8, 32, 1, bench.cover);
  HpAtomReport a2 = atomic_hp_test(space, bench.e, grad, 1.0, 0.8, 32, 2, bench.cover);
  check.require(a1.p_min == 0.5, "p_min is not d/(d+gamma)");
  double stability = a1.sup_value / a2.sup_value;
  check.require(stability > 0.8 && stability < 1.25, "atomic sup varies more than 20% across seeds");
  check.require(std::isfinite(a1.sup_value) && a1.sup_value > 0.0, "atomic sup not finite");

  double elapsed = now_seconds() - t0;
  check.require(elapsed < 900.0, "extrapolation suite exceeded 15 minutes");
  char buf[64];
  std::snprintf(buf, sizeof(buf), ", atoms %.3f/%.3f, %.0f s", a1.sup_value, a2.sup_value, elapsed);
  if (check.pass) check.detail = detail + buf;
  return check;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Check (*fn)();
  };
  const Entry entries[] = {
      {"criterion 1: geometry suite (ADR checks, circle oracle, timing)", criterion1},
      {"criterion 2: lattice/cover invariants on 5 geometries", criterion2},
      {"criterion 3: kernel identities, gradient order, axiom verification", criterion3},
      {"criterion 4: operator quadrature oracles and refinement stability", criterion4},
      {"criterion 5: local testing chain and comparability split", criterion5},
      {"criterion 6: negative control separation", criterion6},
      {"criterion 7: extrapolation sweep (weak-type, Lebesgue, atomic)", criterion7},
  };
  int failures = 0;
  for (const Entry& entry : entries) {
    double t0 = now_seconds();
    Check check = entry.fn();
    double dt = now_seconds() - t0;
    std::printf("[%s] %s (%.1f s)%s%s\n", check.pass ? "PASS" : "FAIL", entry.label, dt,
                check.detail.empty() ? "" : " -- ", check.detail.c_str());
    std::fflush(stdout);
    failures += !check.pass;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all acceptance criteria passed\n");
  return failures == 0 ? 0 : 1;
}
