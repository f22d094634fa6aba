#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "sqfn/cli.hpp"
#include "sqfn/report_io.hpp"

using namespace sqfn;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sqfn_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_config(const TempDir& dir, const std::string& body) {
  std::string path = dir.file("run.cfg");
  std::ofstream out(path);
  out << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallLine =
    "geometry.kind = line\n"
    "geometry.resolution = 256\n"
    "kernel.name = riesz-grad\n"
    "depth = 3\n"
    "eps_min = 0.015625\n"
    "seed = 1\n";

}  // namespace

TEST_CASE("config parsing: dotted keys, comments, errors, digest stability") {
  Config config = Config::parse_text("# comment\ngeometry.kind = circle\n\nseed = 7\n");
  CHECK(config.get("geometry.kind", "") == "circle");
  CHECK(config.get_int("seed", 0) == 7);
  CHECK(config.get("missing", "fallback") == "fallback");
  CHECK_THROWS_AS(Config::parse_text("no equals sign\n"), ValidationError);
  CHECK_THROWS_AS(Config::parse_text("= empty key\n"), ValidationError);

  Config again = Config::parse_text("seed = 7\n# comment\ngeometry.kind = circle\n");
  CHECK(config.digest() == again.digest());  // canonical ordering
  again.set("seed", "8");
  CHECK(config.digest() != again.digest());

  Config listy = Config::parse_text("p_list = 1.5, 2, 3\n");
  CHECK(listy.get_list("p_list") == std::vector<double>{1.5, 2.0, 3.0});
  CHECK_THROWS_AS(Config::parse_text("p_list = 1,zap\n").get_list("p_list"), ValidationError);
}

TEST_CASE("cloud CSV round trip") {
  TempDir dir;
  GeometrySpec spec;
  spec.kind = GeometryKind::Cantor4;
  spec.generation = 2;
  AdrSet e = generate(spec);
  write_cloud_csv(dir.file("cloud.csv"), e);
  AdrSet back = read_cloud_csv(dir.file("cloud.csv"), e.dim, e.adr_const);
  CHECK(back.size() == e.size());
  CHECK(back.coords == e.coords);    // %.17g round-trips doubles exactly
  CHECK(back.weights == e.weights);
}

TEST_CASE("lattice JSON round trip") {
  GeometrySpec spec;
  spec.kind = GeometryKind::Segment;
  spec.resolution = 128;
  AdrSet e = generate(spec);
  DyadicLattice lat = build_lattice(euclidean_space(2), e, 3);
  Json j = lattice_to_json(lat);
  DyadicLattice back = lattice_from_json(j);
  CHECK(back.kappa_e == lat.kappa_e);
  CHECK(back.depth == lat.depth);
  CHECK(back.cubes.size() == lat.cubes.size());
  for (std::size_t i = 0; i < lat.cubes.size(); ++i) {
    CHECK(back.cubes[i].members == lat.cubes[i].members);
    CHECK(back.cubes[i].parent == lat.cubes[i].parent);
    CHECK(back.cubes[i].mass == lat.cubes[i].mass);
  }
}

TEST_CASE("unknown subcommand exits 64 with usage") {
  CHECK(run_cli({"frobnicate", "--config", "x"}) == kExitUsage);
  CHECK(run_cli({}) == kExitUsage);
}

TEST_CASE("gen is byte-identical across runs and validates configs") {
  TempDir dir;
  std::string cfg = write_config(dir, kSmallLine);
  CHECK(run_cli({"gen", "--config", cfg, "--out", dir.file("a")}) == kExitOk);
  CHECK(run_cli({"gen", "--config", cfg, "--out", dir.file("b")}) == kExitOk);
  CHECK(slurp(dir.file("a") + "/cloud.csv") == slurp(dir.file("b") + "/cloud.csv"));

  std::string bad = write_config(dir, "geometry.kind = blob\n");
  CHECK(run_cli({"gen", "--config", bad, "--out", dir.file("c")}) == kExitValidation);
  CHECK(run_cli({"gen", "--config", dir.file("nope.cfg")}) == kExitValidation);
}

TEST_CASE("pipeline artifacts share the digest; mismatches abort") {
  TempDir dir;
  std::string cfg = write_config(dir, kSmallLine);
  std::string out = dir.file("out");
  CHECK(run_cli({"gen", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"lattice", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"cover", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"sfe", "--config", cfg, "--out", out}) == kExitOk);
  for (const char* name : {"cloud.meta.json", "lattice.json", "cover.meta.json",
                           "sfe_report.json", "energy_report.json"})
    CHECK(fs::exists(fs::path(out) / name));
  std::string digest = read_report_digest((fs::path(out) / "sfe_report.json").string());
  CHECK(read_report_digest((fs::path(out) / "cloud.meta.json").string()) == digest);

  // a config change mid-pipeline is refused
  std::string cfg2 = write_config(dir, std::string(kSmallLine) + "depth = 4\n");
  CHECK(run_cli({"tb", "--config", cfg2, "--out", out}) == kExitValidation);
}

TEST_CASE("check-adr and tb succeed on the line; hp gate returns validation") {
  TempDir dir;
  std::string cfg = write_config(dir, kSmallLine);
  std::string out = dir.file("out");
  CHECK(run_cli({"check-adr", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"tb", "--config", cfg, "--out", out}) == kExitOk);

  std::string gated = write_config(dir, std::string(kSmallLine) + "p = 0.4\n");
  CHECK(run_cli({"hp-atoms", "--config", gated, "--out", dir.file("g")}) == kExitValidation);

  // kernels whose declared constants fail verification abort the experiment
  std::string bad_kernel = write_config(dir,
                                        "geometry.kind = line\n"
                                        "geometry.resolution = 256\n"
                                        "kernel.name = custom\n"
                                        "kernel.expr = 1\n"
                                        "kernel.upsilon = 1\n"
                                        "depth = 3\n"
                                        "eps_min = 0.015625\n");
  CHECK(run_cli({"sfe", "--config", bad_kernel, "--out", dir.file("k")}) == kExitValidation);
}

TEST_CASE("bpsfe subcommand: composite passes, cantor reports failure") {
  TempDir dir;
  std::string composite = write_config(dir,
                                       "geometry.kind = composite\n"
                                       "geometry.pieces = 2\n"
                                       "geometry.piece0.kind = lipschitz_graph\n"
                                       "geometry.piece0.resolution = 128\n"
                                       "geometry.piece0.length = 0.5\n"
                                       "geometry.piece0.period = 0.125\n"
                                       "geometry.piece0.amplitude = 0.0625\n"
                                       "geometry.piece1.kind = lipschitz_graph\n"
                                       "geometry.piece1.resolution = 128\n"
                                       "geometry.piece1.length = 0.5\n"
                                       "geometry.piece1.period = 0.125\n"
                                       "geometry.piece1.amplitude = 0.03125\n"
                                       "geometry.piece1.offset = 0.5,0\n"
                                       "depth = 3\n"
                                       "eps_min = 0.03125\n");
  CHECK(run_cli({"bpsfe", "--config", composite, "--out", dir.file("ok")}) == kExitOk);
  CHECK(fs::exists(fs::path(dir.file("ok")) / "bpsfe_report.json"));

  std::string cantor = write_config(dir,
                                    "geometry.kind = cantor4\n"
                                    "geometry.generation = 2\n"
                                    "depth = 4\n"
                                    "eps_min = 0.015625\n");
  CHECK(run_cli({"bpsfe", "--config", cantor, "--out", dir.file("bad")}) ==
        kExitExperimentFailed);
}

TEST_CASE("weak-lp, lp-sweep and hp-atoms write their artifacts") {
  TempDir dir;
  std::string cfg = write_config(dir, std::string(kSmallLine) +
                                          "weak_lp.balls = 2\np_list = 1.5,2\natoms = 4\n");
  std::string out = dir.file("out");
  CHECK(run_cli({"weak-lp", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"lp-sweep", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(run_cli({"hp-atoms", "--config", cfg, "--out", out}) == kExitOk);
  CHECK(fs::exists(fs::path(out) / "weaklp_report.json"));
  CHECK(fs::exists(fs::path(out) / "curve_ball0.csv"));
  CHECK(fs::exists(fs::path(out) / "curve_ball1.csv"));
  CHECK(fs::exists(fs::path(out) / "lp_sweep.json"));
  CHECK(fs::exists(fs::path(out) / "hp_report.json"));
}

TEST_CASE("report schemas are stable") {
  TempDir dir;
  std::string cfg = write_config(dir, kSmallLine);
  std::string out = dir.file("out");
  REQUIRE(run_cli({"check-adr", "--config", cfg, "--out", out}) == kExitOk);
  REQUIRE(run_cli({"sfe", "--config", cfg, "--out", out}) == kExitOk);
  REQUIRE(run_cli({"tb", "--config", cfg, "--out", out}) == kExitOk);

  auto keys_of = [](const std::string& path) {
    Json j;
    std::ifstream in(path);
    in >> j;
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    return keys;
  };
  // golden key sets: adding fields is allowed, renaming is not
  std::set<std::string> adr_expected{"best_const", "worst_radius", "samples",
                                     "per_radius_ratios", "pass", "spacing_h", "config",
                                     "config_digest"};
  std::set<std::string> sfe_expected{"best_ratio", "family_spec", "per_function", "argmax",
                                     "config_hash", "skipped", "config", "config_digest"};
  std::set<std::string> tb_expected{"C0_measured", "c0_measured", "pass", "C0_claimed",
                                    "c0_claimed", "per_cube", "failed_cubes", "config",
                                    "config_digest"};
  auto includes = [](const std::set<std::string>& have, const std::set<std::string>& want) {
    return std::includes(have.begin(), have.end(), want.begin(), want.end());
  };
  CHECK(includes(keys_of(out + "/adr_report.json"), adr_expected));
  CHECK(includes(keys_of(out + "/sfe_report.json"), sfe_expected));
  CHECK(includes(keys_of(out + "/tb_report.json"), tb_expected));
}

TEST_CASE("run_cli surfaces flag errors as validation failures") {
  CHECK(run_cli({"gen"}) == kExitValidation);                 // missing --config
  CHECK(run_cli({"gen", "--config"}) == kExitValidation);     // dangling value
  CHECK(run_cli({"gen", "--wat", "x"}) == kExitValidation);   // unknown flag
}
