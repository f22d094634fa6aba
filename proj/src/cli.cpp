#include "sqfn/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include "CLI11.hpp"

#include "sqfn/report_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqfn {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kSubcommands = {"gen",   "check-adr", "lattice", "cover",    "sfe",
                                            "tb",    "bpsfe",     "weak-lp", "lp-sweep", "hp-atoms"};

void print_usage() {
  std::fprintf(stderr,
               "usage: sqfn <subcommand> --config <path> [--out <dir>] [--seed <n>] [--threads <n>]\n"
               "subcommands: gen check-adr lattice cover sfe tb bpsfe weak-lp lp-sweep hp-atoms\n"
               "environment: SQFN_LOG = error | info | debug\n");
}

const std::vector<std::string> kArtifacts = {
    "cloud.meta.json", "cover.meta.json",  "lattice.json",  "adr_report.json",
    "sfe_report.json", "energy_report.json", "tb_report.json", "bpsfe_report.json",
    "weaklp_report.json", "lp_sweep.json", "hp_report.json"};

void check_digests(const std::string& out_dir, const std::string& digest) {
  for (const std::string& name : kArtifacts) {
    fs::path path = fs::path(out_dir) / name;
    if (!fs::exists(path)) continue;
    std::string found = read_report_digest(path.string());
    if (!found.empty() && found != digest)
      throw ValidationError("artifact " + name + " carries config digest " + found +
                            " but this run has " + digest + "; refusing to mix pipelines");
  }
}

struct Workspace {
  QuasiMetricSpace space;
  AdrSet e;
  std::shared_ptr<DyadicLattice> lattice;
  WhitneyCover cover;
  KernelSpec kernel;
};

Workspace make_workspace(const RunConfig& run, bool need_lattice, bool need_cover,
                         bool need_kernel) {
  Workspace ws;
  ws.space = euclidean_space(2);
  ws.e = generate(run.geometry);
  if (need_lattice || need_cover) {
    ws.lattice = std::make_shared<DyadicLattice>(build_lattice(ws.space, ws.e, run.depth));
    if (need_cover)
      ws.cover = whitney_cover(ws.space, ws.e, ws.lattice, run.truncation_radius, run.eps_min,
                               run.c_assign);
  }
  if (need_kernel) {
    ws.kernel = make_kernel(run.kernel_name, run.kernel_n, ws.e.dim, run.kernel_alpha,
                            run.kernel_c_theta, run.kernel_expr, run.kernel_upsilon);
    // experiments only run against kernels whose declared constants verify
    KernelAxiomReport axioms = verify_kernel_axioms(ws.space, ws.kernel, 4000, run.seed);
    if (!axioms.pass) {
      log_msg(LogLevel::Error,
              "kernel " + ws.kernel.name + " failed axiom verification: measured C_theta " +
                  std::to_string(axioms.c_theta_measured) + " exceeds declared " +
                  std::to_string(axioms.declared));
      throw ValidationError("kernel axiom verification failed for " + ws.kernel.name);
    }
  }
  return ws;
}

std::vector<double> adr_radii(const Config& config, const AdrSet& e) {
  std::vector<double> radii = config.get_list("adr.radii");
  if (!radii.empty()) return radii;
  double h = e.index().max_nn_spacing();
  double lo = std::min(4.0 * h, e.diam / 4.0);
  int count = config.get_int("adr.radius_count", 16);
  for (int i = 0; i < count; ++i)
    radii.push_back(lo * std::pow(e.diam / lo, static_cast<double>(i) / (count - 1)));
  return radii;
}

std::vector<int> adr_centers(const Config& config, const AdrSet& e) {
  int count = std::min<int>(config.get_int("adr.center_count", 128), static_cast<int>(e.size()));
  std::vector<int> centers;
  std::size_t step = std::max<std::size_t>(1, e.size() / static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < e.size(); i += step) centers.push_back(static_cast<int>(i));
  return centers;
}

int dispatch(const std::string& cmd, const Config& config, const RunConfig& run) {
  const std::string out_dir = run.output_dir;
  fs::create_directories(out_dir);
  check_digests(out_dir, config.digest());
  auto out_path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

  if (cmd == "gen") {
    AdrSet e = generate(run.geometry);
    write_cloud_csv(out_path("cloud.csv"), e);
    Json meta{{"kind", geometry_kind_name(run.geometry.kind)},
              {"points", e.size()},
              {"dim", e.dim},
              {"diam", e.diam},
              {"adr_const", e.adr_const},
              {"total_weight", e.total_weight()}};
    write_report(out_path("cloud.meta.json"), config, meta);
    return kExitOk;
  }
  if (cmd == "check-adr") {
    Workspace ws = make_workspace(run, false, false, false);
    AdrReport report = check_adr(ws.space, ws.e, adr_radii(config, ws.e), adr_centers(config, ws.e));
    write_report(out_path("adr_report.json"), config, adr_report_to_json(report));
    return report.pass ? kExitOk : kExitExperimentFailed;
  }
  if (cmd == "lattice") {
    Workspace ws = make_workspace(run, true, false, false);
    write_report(out_path("lattice.json"), config, lattice_to_json(*ws.lattice));
    return kExitOk;
  }
  if (cmd == "cover") {
    Workspace ws = make_workspace(run, true, true, false);
    write_cover_csv(out_path("cover.csv"), ws.cover);
    Json meta{{"cells", ws.cover.cells.size()},
              {"nodes", ws.cover.nodes.size()},
              {"truncation_radius", ws.cover.truncation_radius},
              {"eps_min", ws.cover.eps_min},
              {"finest_side", ws.cover.finest_side}};
    write_report(out_path("cover.meta.json"), config, meta);
    return kExitOk;
  }
  if (cmd == "sfe") {
    Workspace ws = make_workspace(run, true, true, true);
    TestFamily family = default_family(ws.e, *ws.lattice, run.seed);
    SfeReport report = estimate_sfe_constant(ws.space, ws.e, ws.kernel, ws.cover, family,
                                             fnv1a(config.canonical()));
    write_report(out_path("sfe_report.json"), config, sfe_report_to_json(report));
    // full energy breakdown of the extremal test function
    for (const TestFunction& tf : family.funcs) {
      if (tf.name != report.argmax) continue;
      EnergyBreakdown energy = square_energy(ws.space, ws.e, ws.kernel, tf.f, ws.cover);
      Json body = energy_to_json(energy);
      body["function"] = tf.name;
      write_report(out_path("energy_report.json"), config, body);
      break;
    }
    return kExitOk;
  }
  if (cmd == "tb") {
    Workspace ws = make_workspace(run, true, true, true);
    TbFamily family = indicator_tb_family(ws.e, *ws.lattice);
    family.c0_claimed = config.get_double("tb.c0_claimed", 64.0);
    family.small_c0_claimed = config.get_double("tb.small_c0_claimed", 0.25);
    TbReport report = check_local_tb(ws.space, ws.e, ws.kernel, family, *ws.lattice, ws.cover);
    write_report(out_path("tb_report.json"), config, tb_report_to_json(report));
    return report.pass ? kExitOk : kExitExperimentFailed;
  }
  if (cmd == "bpsfe") {
    Workspace ws = make_workspace(run, true, true, true);
    BpsfeWitness witness = big_pieces_witness(ws.space, ws.e, *ws.lattice);
    BpsfePipelineReport report =
        bpsfe_pipeline(ws.space, ws.e, ws.kernel, witness, *ws.lattice, ws.cover, run.seed);
    write_report(out_path("bpsfe_report.json"), config, bpsfe_report_to_json(report));
    return report.pass ? kExitOk : kExitExperimentFailed;
  }
  if (cmd == "weak-lp") {
    Workspace ws = make_workspace(run, true, true, true);
    std::vector<SurfaceBall> balls;
    std::vector<double> radii = config.get_list("weak_lp.radii");
    if (radii.empty()) radii = {ws.e.diam / 8.0};
    for (int b = 0; b < run.weak_lp_balls; ++b) {
      int idx = static_cast<int>((b + 1) * ws.e.size() / (run.weak_lp_balls + 1));
      for (double r : radii) balls.push_back(SurfaceBall{idx, r});
    }
    std::vector<double> grid = config.get_list("lambda.grid");
    std::vector<DistributionCurve> curves = weak_lp_indicator_test(
        ws.space, ws.e, ws.kernel, run.kappa, run.weak_lp_p, balls, grid, ws.cover, run.lambda_count);
    Json body = Json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      body.push_back(curve_to_json(curves[i]));
      write_curve_csv(out_path("curve_ball" + std::to_string(i) + ".csv"), curves[i]);
    }
    write_report(out_path("weaklp_report.json"), config, Json{{"curves", body}});
    return kExitOk;
  }
  if (cmd == "lp-sweep") {
    Workspace ws = make_workspace(run, true, true, true);
    TestFamily family = default_family(ws.e, *ws.lattice, run.seed, 16, 8);
    std::vector<LpSweepRow> rows =
        lp_sweep(ws.space, ws.e, ws.kernel, run.kappa, run.p_list, family, ws.cover);
    write_report(out_path("lp_sweep.json"), config, Json{{"rows", lp_rows_to_json(rows)}});
    return kExitOk;
  }
  if (cmd == "hp-atoms") {
    Workspace ws = make_workspace(run, true, true, true);
    HpAtomReport report = atomic_hp_test(ws.space, ws.e, ws.kernel, run.kappa, run.hp_p,
                                         run.hp_atoms, run.seed, ws.cover);
    write_report(out_path("hp_report.json"), config, hp_report_to_json(report));
    return kExitOk;
  }
  throw ValidationError("unhandled subcommand " + cmd);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  if (args.empty()) {
    print_usage();
    return kExitUsage;
  }
  const std::string cmd = args[0];
  if (!kSubcommands.count(cmd)) {
    std::fprintf(stderr, "unknown subcommand: %s\n", cmd.c_str());
    print_usage();
    return kExitUsage;
  }

  CLI::App app{"square-function estimate experiments"};
  std::string config_path;
  std::string out_override;
  std::int64_t seed_override = -1;
  int threads_override = -1;
  app.add_option("--config", config_path, "flat key=value configuration file")->required();
  app.add_option("--out", out_override, "output directory (overrides output_dir)");
  app.add_option("--seed", seed_override, "seed override");
  app.add_option("--threads", threads_override, "thread count override");
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return kExitValidation;
  }

  try {
    Config config = Config::parse_file(config_path);
    if (!out_override.empty()) config.set("output_dir", out_override);
    if (seed_override >= 0) config.set("seed", std::to_string(seed_override));
    if (threads_override >= 0) config.set("runtime.threads", std::to_string(threads_override));
    RunConfig run = RunConfig::from_config(config);
#ifdef _OPENMP
    if (run.threads > 0) omp_set_num_threads(run.threads);
#endif
    log_msg(LogLevel::Debug, "running " + cmd + " with digest " + config.digest());
    return dispatch(cmd, config, run);
  } catch (const ValidationError& err) {
    log_msg(LogLevel::Error, err.what());
    return kExitValidation;
  } catch (const std::exception& err) {
    log_msg(LogLevel::Error, err.what());
    return kExitValidation;
  }
}

}  // namespace sqfn
