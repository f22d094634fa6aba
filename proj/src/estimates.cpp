#include "sqfn/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "sqfn/rng.hpp"

namespace sqfn {

TestFamily indicator_family(const AdrSet& e, const DyadicLattice& lattice) {
  TestFamily family;
  family.spec = "cube indicators";
  for (std::size_t id = 0; id < lattice.cubes.size(); ++id) {
    const DyadicCube& q = lattice.cubes[id];
    TestFunction tf;
    tf.name = "1_Q[g" + std::to_string(q.generation) + ":" + std::to_string(id) + "]";
    tf.f = indicator(e, q.members);
    family.funcs.push_back(std::move(tf));
  }
  return family;
}

TestFamily default_family(const AdrSet& e, const DyadicLattice& lattice, std::uint64_t seed,
                          int n_signs, int n_bumps) {
  TestFamily family = indicator_family(e, lattice);
  family.spec = "cube indicators + " + std::to_string(n_signs) + " sign functions + " +
                std::to_string(n_bumps) + " bumps (seed " + std::to_string(seed) + ")";
  Rng rng(seed);
  const std::size_t n = e.size();
  for (int s = 0; s < n_signs; ++s) {
    TestFunction tf;
    tf.name = "sign[" + std::to_string(s) + "]";
    tf.f.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) tf.f.values[i] = static_cast<double>(rng.sign());
    family.funcs.push_back(std::move(tf));
  }
  const double diam = e.diam > 0.0 ? e.diam : 1.0;
  const double h = e.index().max_nn_spacing();
  for (int b = 0; b < n_bumps; ++b) {
    TestFunction tf;
    tf.name = "bump[" + std::to_string(b) + "]";
    std::size_t center = rng.below(n);
    double width = rng.log_uniform(std::max(4.0 * h, 1e-6 * diam), diam / 4.0);
    PointView z = e.point(center);
    tf.f.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      tf.f.values[i] = std::exp(-dist2(e.point(i), z) / (2.0 * width * width));
    family.funcs.push_back(std::move(tf));
  }
  return family;
}

SfeReport estimate_sfe_constant(const QuasiMetricSpace& space, const AdrSet& e,
                                const KernelSpec& spec, const WhitneyCover& cover,
                                const TestFamily& family, std::uint64_t config_hash) {
  SfeReport report;
  report.family_spec = family.spec;
  report.config_hash = config_hash;

  std::vector<const SurfaceFunction*> funcs;
  std::vector<const TestFunction*> kept;
  for (const TestFunction& tf : family.funcs) {
    if (tf.f.lp_norm(e, 2.0) <= 0.0) {
      ++report.skipped;
      log_msg(LogLevel::Info, "skipping zero-norm test function " + tf.name);
      continue;
    }
    funcs.push_back(&tf.f);
    kept.push_back(&tf);
  }
  if (funcs.empty()) throw ValidationError("empty effective family");

  const double w_exp = energy_weight_exponent(space, e, spec);
  const std::size_t fn = funcs.size();
  std::vector<double> energy(fn, 0.0);
  // process the family in chunks so the node-by-function matrix stays small
  const std::size_t chunk = std::max<std::size_t>(1, (16u << 20) / std::max<std::size_t>(1, cover.nodes.size()));
  for (std::size_t begin = 0; begin < fn; begin += chunk) {
    std::size_t count = std::min(chunk, fn - begin);
    std::vector<double> mag2 =
        theta_mag2_nodes(e, spec, cover, std::span(funcs.data() + begin, count));
    for (std::size_t ni = 0; ni < cover.nodes.size(); ++ni) {
      const QuadNode& node = cover.nodes[ni];
      double scale = std::pow(node.delta, w_exp) * node.measure;
      const double* row = mag2.data() + ni * count;
      for (std::size_t k = 0; k < count; ++k) energy[begin + k] += row[k] * scale;
    }
  }
  report.per_function.reserve(fn);
  for (std::size_t k = 0; k < fn; ++k) {
    PerFunctionRow row;
    row.name = kept[k]->name;
    row.norm_sq = kept[k]->f.l2_norm_sq(e);
    row.energy = energy[k];
    row.ratio = row.energy / row.norm_sq;
    if (row.ratio > report.best_ratio) {
      report.best_ratio = row.ratio;
      report.argmax = row.name;
    }
    report.per_function.push_back(std::move(row));
  }
  return report;
}

TbFamily indicator_tb_family(const AdrSet& e, const DyadicLattice& lattice) {
  TbFamily family;
  family.bq = [&e, &lattice](int cube_id) {
    return indicator(e, lattice.cube(cube_id).members);
  };
  return family;
}

TbReport check_local_tb(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                        const TbFamily& family, const DyadicLattice& lattice,
                        const WhitneyCover& cover) {
  if (!family.bq) throw ValidationError("testing family has no generator");
  TbReport report;
  report.c0_claimed = family.c0_claimed;
  report.small_c0_claimed = family.small_c0_claimed;
  report.c0_measured = 1.0;
  report.C0_measured = 0.0;

  const int max_levels_down =
      std::max(0, static_cast<int>(std::floor(-std::log2(family.small_c0_claimed) + 1e-9)));

  for (std::size_t id = 0; id < lattice.cubes.size(); ++id) {
    const DyadicCube& q = lattice.cubes[id];
    TbCubeRow row;
    row.cube = static_cast<int>(id);
    SurfaceFunction b = family.bq(static_cast<int>(id));
    if (b.values.empty()) {
      report.failed_cubes.push_back(static_cast<int>(id));
      report.per_cube.push_back(row);
      log_msg(LogLevel::Error, "testing function missing for cube " + std::to_string(id));
      continue;
    }
    // (1) L2 normalization
    double norm_sq = b.l2_norm_sq(e);
    row.norm_ratio = norm_sq / q.mass;
    // (2) non-degeneracy over admissible sub-cubes, shallowest tie wins
    std::vector<int> frontier{static_cast<int>(id)};
    for (int lvl = 0; lvl <= max_levels_down && !frontier.empty(); ++lvl) {
      for (int qt_id : frontier) {
        const DyadicCube& qt = lattice.cube(qt_id);
        double integral = 0.0;
        for (int j : qt.members) integral += b.values[static_cast<std::size_t>(j)] *
                                             e.weights[static_cast<std::size_t>(j)];
        double ratio = std::abs(integral) / qt.mass;
        if (ratio > row.nondeg_ratio) {
          row.nondeg_ratio = ratio;
          row.ell_ratio = qt.side / q.side;
        }
      }
      std::vector<int> next;
      for (int qt_id : frontier)
        for (int child : lattice.cube(qt_id).children) next.push_back(child);
      frontier = std::move(next);
    }
    // (3) tent energy
    row.tent_ratio = tent_energy(space, e, spec, b, lattice, static_cast<int>(id), cover) / q.mass;
    row.ok = row.nondeg_ratio > 0.0;
    if (!row.ok) report.failed_cubes.push_back(static_cast<int>(id));
    if (row.ok) {
      double c0_cube = std::max({row.norm_ratio, 1.0 / row.nondeg_ratio, row.tent_ratio});
      report.C0_measured = std::max(report.C0_measured, c0_cube);
      report.c0_measured = std::min(report.c0_measured, row.ell_ratio);
    }
    report.per_cube.push_back(std::move(row));
  }
  report.pass = report.failed_cubes.empty() && report.C0_measured <= family.c0_claimed &&
                report.c0_measured >= family.small_c0_claimed;
  return report;
}

BigPiece make_big_piece(const AdrSet& e, std::span<const int> indices) {
  BigPiece piece;
  piece.source_indices.assign(indices.begin(), indices.end());
  std::sort(piece.source_indices.begin(), piece.source_indices.end());
  for (int i : piece.source_indices)
    if (i < 0 || static_cast<std::size_t>(i) >= e.size())
      throw ValidationError("E_Q not aligned with E");
  piece.cloud = e.subset(piece.source_indices);
  return piece;
}

namespace {

void check_alignment(const AdrSet& e, const BigPiece& piece) {
  if (piece.cloud.size() != piece.source_indices.size())
    throw ValidationError("E_Q not aligned with E");
  for (std::size_t k = 0; k < piece.source_indices.size(); ++k) {
    int i = piece.source_indices[k];
    if (i < 0 || static_cast<std::size_t>(i) >= e.size())
      throw ValidationError("E_Q not aligned with E");
    PointView a = e.point(static_cast<std::size_t>(i));
    PointView b = piece.cloud.point(k);
    for (std::size_t d = 0; d < a.size(); ++d)
      if (a[d] != b[d]) throw ValidationError("E_Q not aligned with E");
  }
}

}  // namespace

SurfaceFunction bq_from_bigpiece(const AdrSet& e, const DyadicCube& q, const BigPiece& e_q) {
  check_alignment(e, e_q);
  std::vector<int> common;
  std::set_intersection(q.members.begin(), q.members.end(), e_q.source_indices.begin(),
                        e_q.source_indices.end(), std::back_inserter(common));
  return indicator(e, common);
}

SplitReport comparability_split(const QuasiMetricSpace& space, const AdrSet& e,
                                const KernelSpec& spec, const DyadicLattice& lattice,
                                int cube_id, const BigPiece& e_q, double c_a,
                                const WhitneyCover& cover) {
  if (!(c_a > 1.0)) throw ValidationError("comparability constant C_A must exceed 1");
  check_alignment(e, e_q);
  if (e_q.cloud.size() == 0) throw ValidationError("empty big piece");
  const DyadicCube& q = lattice.cube(cube_id);
  SurfaceFunction b = bq_from_bigpiece(e, q, e_q);
  const KdTree& piece_index = e_q.cloud.index();
  const double w_exp = energy_weight_exponent(space, e, spec);
  const double m = static_cast<double>(space.ambient_dim);
  const double d = e.dim;
  const double u2 = 2.0 * spec.decay_exp;

  Tent t = tent(lattice, cube_id, cover);
  SplitReport out;
  for (int ci : t.cells) {
    const WhitneyCell& cell = cover.cells[static_cast<std::size_t>(ci)];
    double delta_e = cell.dist_to_e;
    double delta_eq = piece_index.nearest_dist(cell.center);
    int region;  // 0 comparable, 1 above, -1 below
    if (delta_eq > c_a * delta_e) region = 1;
    else if (delta_eq < delta_e / c_a) region = -1;
    else region = 0;
    if (region == 0) ++out.cells_comparable;
    else if (region == 1) ++out.cells_above;
    else ++out.cells_below;

    double tent_part = 0.0, geo_part = 0.0;
    for (int ni = cover.node_begin[static_cast<std::size_t>(ci)];
         ni < cover.node_begin[static_cast<std::size_t>(ci) + 1]; ++ni) {
      const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
      double mag2 = 0.0;
      {
        double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
        double buf[8];
        for (int j : b.support) {
          std::size_t jj = static_cast<std::size_t>(j);
          spec.eval(node.point, e.point(jj), buf);
          double fw = b.values[jj] * e.weights[jj];
          for (int c = 0; c < spec.components; ++c) acc[c] += buf[c] * fw;
        }
        for (int c = 0; c < spec.components; ++c) mag2 += acc[c] * acc[c];
      }
      tent_part += mag2 * std::pow(node.delta, w_exp) * node.measure;
      if (region == 1) {
        double node_delta_eq = piece_index.nearest_dist(node.point);
        geo_part += std::pow(node_delta_eq, -u2) * std::pow(node.delta, u2 - (m - d)) * node.measure;
      } else if (region == -1) {
        double node_delta_eq = piece_index.nearest_dist(node.point);
        geo_part += std::pow(node.delta, -u2) * std::pow(node_delta_eq, u2 - (m - d)) * node.measure;
      }
    }
    if (region == 0) out.i_a += tent_part;
    else out.i_not_a += tent_part;
    if (region == 1) out.carleson_lhs += geo_part;
    else if (region == -1) out.carleson_mirror += geo_part;
  }
  out.tent_total = out.i_a + out.i_not_a;
  return out;
}

BpsfePipelineReport bpsfe_pipeline(const QuasiMetricSpace& space, const AdrSet& e,
                                   const KernelSpec& spec, const BpsfeWitness& witness,
                                   const DyadicLattice& lattice, const WhitneyCover& cover,
                                   std::uint64_t seed) {
  std::unordered_map<int, const WitnessEntry*> by_cube;
  for (const WitnessEntry& entry : witness.per_cube) by_cube[entry.cube] = &entry;
  for (std::size_t id = 0; id < lattice.cubes.size(); ++id)
    if (!by_cube.count(static_cast<int>(id)))
      throw ValidationError("witness incomplete: cube " + std::to_string(id) + " missing");

  BpsfePipelineReport report;
  report.eta = witness.eta;

  // materialize testing functions, recording mass-fraction failures
  auto bqs = std::make_shared<std::unordered_map<int, SurfaceFunction>>();
  for (std::size_t id = 0; id < lattice.cubes.size(); ++id) {
    const DyadicCube& q = lattice.cubes[id];
    const WitnessEntry& entry = *by_cube[static_cast<int>(id)];
    SurfaceFunction b = entry.piece.source_indices.empty()
                            ? indicator(e, std::span<const int>())
                            : bq_from_bigpiece(e, q, entry.piece);
    double mass = 0.0;
    for (int j : b.support) mass += e.weights[static_cast<std::size_t>(j)];
    bool valid = mass > 0.0 && mass + 1e-12 * q.mass >= witness.eta * q.mass;
    if (!valid) report.failed_cubes.push_back(static_cast<int>(id));
    (*bqs)[static_cast<int>(id)] = std::move(b);
  }

  TbFamily family;
  family.bq = [bqs](int cube_id) { return bqs->at(cube_id); };
  TbReport tb = check_local_tb(space, e, spec, family, lattice, cover);
  report.C0_measured = tb.C0_measured;
  report.c0_measured = tb.c0_measured;
  for (int id : tb.failed_cubes)
    if (std::find(report.failed_cubes.begin(), report.failed_cubes.end(), id) ==
        report.failed_cubes.end())
      report.failed_cubes.push_back(id);

  SfeReport sfe = estimate_sfe_constant(space, e, spec, cover, default_family(e, lattice, seed, 32, 8));
  report.sfe_best_ratio = sfe.best_ratio;

  // constants of the distinct pieces: ADR bound and per-piece square-function bound
  std::map<std::vector<int>, const BigPiece*> distinct;
  for (const WitnessEntry& entry : witness.per_cube)
    if (entry.piece.source_indices.size() >= 16) distinct[entry.piece.source_indices] = &entry.piece;
  double c1 = 0.0, c2 = 0.0;
  for (const auto& [key, piece] : distinct) {
    AdrSet sub = piece->cloud;
    sub.diam = diameter(space, sub);
    double h = sub.index().max_nn_spacing();
    std::vector<double> radii;
    for (int i = 0; i < 12; ++i)
      radii.push_back(4.0 * h * std::pow(sub.diam / (4.0 * h), i / 11.0));
    std::vector<int> centers;
    std::size_t step = std::max<std::size_t>(1, sub.size() / 64);
    for (std::size_t i = 0; i < sub.size(); i += step) centers.push_back(static_cast<int>(i));
    AdrReport adr = check_adr(space, sub, radii, centers);
    c1 = std::max(c1, adr.best_const);

    auto sub_lat = std::make_shared<DyadicLattice>(build_lattice(space, sub, lattice.depth));
    WhitneyCover sub_cover = whitney_cover(space, sub, sub_lat, 0.0, cover.eps_min, cover.c_assign);
    SfeReport piece_sfe =
        estimate_sfe_constant(space, sub, spec, sub_cover, default_family(sub, *sub_lat, seed, 16, 4));
    c2 = std::max(c2, piece_sfe.best_ratio);
  }
  report.c1 = c1 > 0.0 ? c1 : witness.c1;
  report.c2 = c2 > 0.0 ? c2 : witness.c2;
  report.pass = report.failed_cubes.empty();
  return report;
}

namespace {

// least squares slope of log(measure) vs log(lambda) over the middle 80% of
// the grid, skipping empty and saturated rows
double fit_decay_exponent(std::span<const double> lambdas, std::span<const double> measures,
                          double total_mass) {
  std::size_t n = lambdas.size();
  std::size_t lo = n / 10;
  std::size_t hi = n - n / 10;
  std::vector<double> xs, ys;
  for (std::size_t i = lo; i < hi; ++i) {
    if (measures[i] <= 0.0 || measures[i] >= total_mass * (1.0 - 1e-12)) continue;
    xs.push_back(std::log(lambdas[i]));
    ys.push_back(std::log(measures[i]));
  }
  if (xs.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += sq(xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) return 0.0;
  return -sxy / sxx;
}

// cone square-function values S(x) for all cloud points, from per-cell integrands
std::vector<double> cone_values(const AdrSet& e, std::span<const double> cell_g,
                                const std::vector<std::vector<int>>& cones, double q) {
  std::vector<double> s(e.size(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    double acc = 0.0;
    for (int ci : cones[i]) acc += cell_g[static_cast<std::size_t>(ci)];
    s[i] = std::pow(acc, 1.0 / q);
  }
  return s;
}

}  // namespace

std::vector<DistributionCurve> weak_lp_indicator_test(
    const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec, double kappa,
    double p, std::span<const SurfaceBall> balls, std::span<const double> lambda_grid,
    const WhitneyCover& cover, int auto_grid_size) {
  if (balls.empty()) throw ValidationError("no surface balls given");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (lambda_grid[i] <= lambda_grid[i - 1] || lambda_grid[0] <= 0.0)
      throw ValidationError("lambda grid must be positive increasing");

  const double total_mass = e.total_weight();
  std::vector<std::vector<int>> cones = cone_table(space, e, kappa, cover);
  std::vector<DistributionCurve> curves;
  for (const SurfaceBall& ball : balls) {
    std::vector<int> members;
    e.index().indices_within(e.point(static_cast<std::size_t>(ball.center_index)), ball.radius,
                             members);
    std::sort(members.begin(), members.end());
    SurfaceFunction f = indicator(e, members);
    DistributionCurve curve;
    curve.ball = ball;
    for (int j : members) curve.ball_mass += e.weights[static_cast<std::size_t>(j)];
    if (members.empty()) {
      curves.push_back(std::move(curve));
      continue;
    }
    const SurfaceFunction* fp = &f;
    std::vector<double> mag2 = theta_mag2_nodes(e, spec, cover, std::span(&fp, 1));
    std::vector<double> cell_g = cell_cone_integrand(space, spec, cover, mag2, 1, 0, 2.0);
    std::vector<double> s = cone_values(e, cell_g, cones, 2.0);

    if (lambda_grid.empty()) {
      // the automatic grid spans the upper half of the observed range, where
      // the super-level measure is genuinely decaying
      std::vector<double> positive;
      for (double v : s)
        if (v > 0.0) positive.push_back(v);
      std::sort(positive.begin(), positive.end());
      if (positive.empty()) {
        curves.push_back(std::move(curve));
        continue;
      }
      double lo = positive[static_cast<std::size_t>(0.5 * (positive.size() - 1))];
      double hi = positive.back();
      if (lo <= 0.0 || lo >= hi) lo = hi / 100.0;
      for (int i = 0; i < auto_grid_size; ++i)
        curve.lambdas.push_back(lo * std::pow(hi / lo, (i + 0.5) / auto_grid_size));
    } else {
      curve.lambdas.assign(lambda_grid.begin(), lambda_grid.end());
    }
    for (double lambda : curve.lambdas) {
      double meas = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (s[i] > lambda) meas += e.weights[i];
      curve.measures.push_back(meas);
      if (meas > 0.0)
        curve.c_o = std::max(curve.c_o, meas * std::pow(lambda, p) / curve.ball_mass);
    }
    curve.fitted_exponent = fit_decay_exponent(curve.lambdas, curve.measures, total_mass);
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<LpSweepRow> lp_sweep(const QuasiMetricSpace& space, const AdrSet& e,
                                 const KernelSpec& spec, double kappa,
                                 std::span<const double> p_list, const TestFamily& family,
                                 const WhitneyCover& cover) {
  for (double p : p_list)
    if (p <= 1.0)
      throw ValidationError("p <= 1 is outside the Lebesgue sweep; use the atomic Hardy test");
  std::vector<const SurfaceFunction*> funcs;
  std::vector<const TestFunction*> kept;
  for (const TestFunction& tf : family.funcs) {
    if (tf.f.lp_norm(e, 2.0) <= 0.0) continue;
    funcs.push_back(&tf.f);
    kept.push_back(&tf);
  }
  if (funcs.empty()) throw ValidationError("empty effective family");

  std::vector<double> mag2 = theta_mag2_nodes(e, spec, cover, funcs);
  std::vector<std::vector<int>> cones = cone_table(space, e, kappa, cover);

  // S f per function, shared across exponents
  std::vector<std::vector<double>> s_values(funcs.size());
  for (std::size_t k = 0; k < funcs.size(); ++k) {
    std::vector<double> cell_g = cell_cone_integrand(space, spec, cover, mag2, funcs.size(), k, 2.0);
    s_values[k] = cone_values(e, cell_g, cones, 2.0);
  }

  std::vector<LpSweepRow> rows;
  for (double p : p_list) {
    LpSweepRow row;
    row.p = p;
    for (std::size_t k = 0; k < funcs.size(); ++k) {
      double num = 0.0;
      for (std::size_t i = 0; i < e.size(); ++i)
        num += std::pow(s_values[k][i], p) * e.weights[i];
      num = std::pow(num, 1.0 / p);
      double ratio = num / kept[k]->f.lp_norm(e, p);
      if (ratio > row.ratio) {
        row.ratio = ratio;
        row.argmax = kept[k]->name;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HpAtomReport atomic_hp_test(const QuasiMetricSpace& space, const AdrSet& e,
                            const KernelSpec& spec, double kappa, double p, int n_atoms,
                            std::uint64_t seed, const WhitneyCover& cover) {
  HpAtomReport report;
  report.gamma = std::min(alpha_rho(space), spec.hoelder_exp);
  report.p_min = e.dim / (e.dim + report.gamma);
  report.p = p;
  if (!(p > report.p_min) || p > 1.0)
    throw ValidationError("p outside the admissible atomic range (d/(d+gamma), 1]");
  if (n_atoms < 1) throw ValidationError("need at least one atom");

  Rng rng(seed);
  const double diam = e.diam > 0.0 ? e.diam : diameter(space, e);
  const double h = e.index().max_nn_spacing();
  const double r_lo = std::min(4.0 * h, diam / 8.0);
  const double r_hi = diam / 4.0;

  std::vector<TestFunction> atoms;
  std::vector<AtomRow> meta;
  const int m = space.ambient_dim;
  for (int a = 0; a < n_atoms; ++a) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::size_t z = rng.below(e.size());
      double r = rng.log_uniform(r_lo, r_hi);
      std::vector<int> members;
      e.index().indices_within(e.point(z), r, members);
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      double ball_mass = 0.0;
      for (int j : members) ball_mass += e.weights[static_cast<std::size_t>(j)];
      double height = std::pow(ball_mass, -1.0 / p);
      // dipole pattern: +height on a random half of the ball, -height on the
      // other, split by a random hyperplane through the center
      std::vector<double> dir(static_cast<std::size_t>(m));
      double nrm = 0.0;
      for (auto& c : dir) {
        c = rng.normal();
        nrm += c * c;
      }
      if (nrm < 1e-12) continue;
      double flip = static_cast<double>(rng.sign());
      PointView center = e.point(z);
      SurfaceFunction atom;
      atom.values.assign(e.size(), 0.0);
      atom.support = members;
      bool mixed_lo = false, mixed_hi = false;
      for (int j : members) {
        PointView y = e.point(static_cast<std::size_t>(j));
        double side = 0.0;
        for (int dcoord = 0; dcoord < m; ++dcoord)
          side += dir[static_cast<std::size_t>(dcoord)] *
                  (y[static_cast<std::size_t>(dcoord)] - center[static_cast<std::size_t>(dcoord)]);
        double sign = side < 0.0 ? -1.0 : 1.0;
        (sign < 0.0 ? mixed_lo : mixed_hi) = true;
        atom.values[static_cast<std::size_t>(j)] = flip * sign * height;
      }
      if (!mixed_lo || !mixed_hi) continue;  // degenerate split
      // mean correction, then renormalize the sup bound
      double mean = 0.0;
      for (int j : members)
        mean += atom.values[static_cast<std::size_t>(j)] * e.weights[static_cast<std::size_t>(j)];
      mean /= ball_mass;
      double sup = 0.0;
      for (int j : members) {
        atom.values[static_cast<std::size_t>(j)] -= mean;
        sup = std::max(sup, std::abs(atom.values[static_cast<std::size_t>(j)]));
      }
      if (sup <= 0.0) continue;
      double scale = height / sup;
      double residual = 0.0;
      for (int j : members) {
        atom.values[static_cast<std::size_t>(j)] *= scale;
        residual += atom.values[static_cast<std::size_t>(j)] * e.weights[static_cast<std::size_t>(j)];
      }
      if (std::abs(residual) > 1e-12 * height * ball_mass)
        throw std::logic_error("atom mean correction failed");
      TestFunction tf;
      tf.name = "atom[" + std::to_string(a) + "]";
      tf.f = std::move(atom);
      atoms.push_back(std::move(tf));
      AtomRow row;
      row.center_index = static_cast<int>(z);
      row.radius = r;
      meta.push_back(row);
      break;
    }
  }
  if (atoms.empty()) throw ValidationError("atom sampling failed");

  std::vector<const SurfaceFunction*> funcs;
  for (const TestFunction& tf : atoms) funcs.push_back(&tf.f);
  std::vector<double> mag2 = theta_mag2_nodes(e, spec, cover, funcs);
  std::vector<std::vector<int>> cones = cone_table(space, e, kappa, cover);
  for (std::size_t k = 0; k < funcs.size(); ++k) {
    std::vector<double> cell_g = cell_cone_integrand(space, spec, cover, mag2, funcs.size(), k, 2.0);
    std::vector<double> s = cone_values(e, cell_g, cones, 2.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) acc += std::pow(s[i], p) * e.weights[i];
    meta[k].value = std::pow(acc, 1.0 / p);
    report.sup_value = std::max(report.sup_value, meta[k].value);
  }
  report.per_atom = std::move(meta);
  return report;
}

}  // namespace sqfn
