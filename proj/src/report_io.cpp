#include "sqfn/report_io.hpp"

#include <cinttypes>
#include <fstream>
#include <sstream>

namespace sqfn {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  return out;
}

}  // namespace

void write_cloud_csv(const std::string& path, const AdrSet& e) {
  std::ofstream out = open_out(path);
  for (int d = 0; d < e.ambient_dim; ++d) out << "x" << d << ",";
  out << "weight";
  if (!e.labels.empty()) out << ",label";
  out << "\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    PointView p = e.point(i);
    for (int d = 0; d < e.ambient_dim; ++d) out << fmt(p[static_cast<std::size_t>(d)]) << ",";
    out << fmt(e.weights[i]);
    if (!e.labels.empty()) out << "," << e.labels[i];
    out << "\n";
  }
}

AdrSet read_cloud_csv(const std::string& path, double dim, double adr_const) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cloud file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw ValidationError("empty cloud file: " + path);
  int columns = 1;
  for (char c : header) columns += c == ',';
  bool labeled = header.size() >= 5 && header.substr(header.size() - 5) == "label";
  int m = columns - 1 - (labeled ? 1 : 0);
  if (m < 1) throw ValidationError("cloud header must list x0..x{m-1},weight");

  AdrSet e;
  e.ambient_dim = m;
  e.dim = dim;
  e.adr_const = adr_const;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string item;
    for (int d = 0; d < m; ++d) {
      if (!std::getline(row, item, ',')) throw ValidationError("short row in cloud file");
      e.coords.push_back(std::stod(item));
    }
    if (!std::getline(row, item, ',')) throw ValidationError("short row in cloud file");
    e.weights.push_back(std::stod(item));
    if (labeled) {
      if (!std::getline(row, item, ',')) throw ValidationError("short row in cloud file");
      e.labels.push_back(std::stoi(item));
    }
  }
  e.diam = diameter(euclidean_space(m), e);
  return e;
}

void write_cover_csv(const std::string& path, const WhitneyCover& cover) {
  std::ofstream out = open_out(path);
  const int m = cover.root_center.empty() ? 0 : static_cast<int>(cover.root_center.size());
  for (int d = 0; d < m; ++d) out << "c" << d << ",";
  out << "side,dist,cube\n";
  for (const WhitneyCell& cell : cover.cells) {
    for (int d = 0; d < m; ++d) out << fmt(cell.center[static_cast<std::size_t>(d)]) << ",";
    out << fmt(cell.side) << "," << fmt(cell.dist_to_e) << "," << cell.cube_id << "\n";
  }
}

Json lattice_to_json(const DyadicLattice& lattice) {
  Json cubes = Json::array();
  for (const DyadicCube& q : lattice.cubes) {
    cubes.push_back({{"generation", q.generation},
                     {"center_index", q.center_index},
                     {"members", q.members},
                     {"side", q.side},
                     {"parent", q.parent},
                     {"children", q.children},
                     {"mass", q.mass}});
  }
  return Json{{"kappa_e", lattice.kappa_e},
              {"depth", lattice.depth},
              {"truncated", lattice.truncated},
              {"c_in", lattice.c_in},
              {"c_out", lattice.c_out},
              {"cubes", cubes}};
}

DyadicLattice lattice_from_json(const Json& j) {
  DyadicLattice lattice;
  lattice.kappa_e = j.at("kappa_e").get<int>();
  lattice.depth = j.at("depth").get<int>();
  lattice.truncated = j.at("truncated").get<bool>();
  lattice.c_in = j.at("c_in").get<double>();
  lattice.c_out = j.at("c_out").get<double>();
  lattice.by_generation.assign(static_cast<std::size_t>(lattice.depth + 1), {});
  std::size_t n = 0;
  for (const Json& jq : j.at("cubes")) {
    DyadicCube q;
    q.generation = jq.at("generation").get<int>();
    q.center_index = jq.at("center_index").get<int>();
    q.members = jq.at("members").get<std::vector<int>>();
    q.side = jq.at("side").get<double>();
    q.parent = jq.at("parent").get<int>();
    q.children = jq.at("children").get<std::vector<int>>();
    q.mass = jq.at("mass").get<double>();
    for (int i : q.members) n = std::max(n, static_cast<std::size_t>(i) + 1);
    lattice.by_generation[static_cast<std::size_t>(q.generation - lattice.kappa_e)].push_back(
        static_cast<int>(lattice.cubes.size()));
    lattice.cubes.push_back(std::move(q));
  }
  lattice.point_cube.assign(static_cast<std::size_t>(lattice.depth + 1), std::vector<int>(n, -1));
  for (std::size_t id = 0; id < lattice.cubes.size(); ++id) {
    const DyadicCube& q = lattice.cubes[id];
    for (int i : q.members)
      lattice.point_cube[static_cast<std::size_t>(q.generation - lattice.kappa_e)]
                        [static_cast<std::size_t>(i)] = static_cast<int>(id);
  }
  return lattice;
}

Json adr_report_to_json(const AdrReport& report) {
  Json rows = Json::array();
  for (const AdrRadiusRow& row : report.per_radius_ratios)
    rows.push_back({{"radius", row.radius}, {"max_upper", row.max_upper}, {"max_lower", row.max_lower}});
  return Json{{"best_const", report.best_const},
              {"worst_radius", report.worst_radius},
              {"samples", report.samples},
              {"per_radius_ratios", rows},
              {"pass", report.pass},
              {"spacing_h", report.spacing_h}};
}

Json energy_to_json(const EnergyBreakdown& energy) {
  return Json{{"total", energy.total},
              {"truncation_tail_bound", energy.truncation_tail_bound},
              {"weight_exponent", energy.weight_exponent},
              {"cells", energy.cells},
              {"nodes", energy.nodes},
              {"wall_seconds", energy.wall_seconds}};
}

Json sfe_report_to_json(const SfeReport& report) {
  Json rows = Json::array();
  for (const PerFunctionRow& row : report.per_function)
    rows.push_back({{"name", row.name}, {"norm_sq", row.norm_sq}, {"energy", row.energy}, {"ratio", row.ratio}});
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016" PRIx64, report.config_hash);
  return Json{{"best_ratio", report.best_ratio},
              {"family_spec", report.family_spec},
              {"per_function", rows},
              {"argmax", report.argmax},
              {"config_hash", std::string(hash)},
              {"skipped", report.skipped}};
}

Json tb_report_to_json(const TbReport& report) {
  Json rows = Json::array();
  for (const TbCubeRow& row : report.per_cube)
    rows.push_back({{"cube", row.cube},
                    {"norm_ratio", row.norm_ratio},
                    {"nondeg_ratio", row.nondeg_ratio},
                    {"ell_ratio", row.ell_ratio},
                    {"tent_ratio", row.tent_ratio},
                    {"ok", row.ok}});
  return Json{{"C0_measured", report.C0_measured},
              {"c0_measured", report.c0_measured},
              {"pass", report.pass},
              {"C0_claimed", report.c0_claimed},
              {"c0_claimed", report.small_c0_claimed},
              {"per_cube", rows},
              {"failed_cubes", report.failed_cubes}};
}

Json split_report_to_json(const SplitReport& report) {
  return Json{{"I_A", report.i_a},
              {"I_notA", report.i_not_a},
              {"tent_total", report.tent_total},
              {"carleson_lhs", report.carleson_lhs},
              {"carleson_mirror", report.carleson_mirror},
              {"cells_comparable", report.cells_comparable},
              {"cells_above", report.cells_above},
              {"cells_below", report.cells_below}};
}

Json bpsfe_report_to_json(const BpsfePipelineReport& report) {
  return Json{{"eta", report.eta},
              {"C1", report.c1},
              {"C2", report.c2},
              {"C0_measured", report.C0_measured},
              {"c0_measured", report.c0_measured},
              {"sfe_best_ratio", report.sfe_best_ratio},
              {"failed_cubes", report.failed_cubes},
              {"pass", report.pass}};
}

Json curve_to_json(const DistributionCurve& curve) {
  return Json{{"center_index", curve.ball.center_index},
              {"radius", curve.ball.radius},
              {"ball_mass", curve.ball_mass},
              {"lambdas", curve.lambdas},
              {"measures", curve.measures},
              {"fitted_exponent", curve.fitted_exponent},
              {"C_o", curve.c_o}};
}

Json lp_rows_to_json(const std::vector<LpSweepRow>& rows) {
  Json out = Json::array();
  for (const LpSweepRow& row : rows)
    out.push_back({{"p", row.p}, {"ratio", row.ratio}, {"argmax", row.argmax}});
  return out;
}

Json hp_report_to_json(const HpAtomReport& report) {
  Json atoms = Json::array();
  for (const AtomRow& row : report.per_atom)
    atoms.push_back({{"center_index", row.center_index}, {"radius", row.radius}, {"value", row.value}});
  return Json{{"p", report.p},
              {"gamma", report.gamma},
              {"p_min", report.p_min},
              {"sup_value", report.sup_value},
              {"per_atom", atoms}};
}

void write_curve_csv(const std::string& path, const DistributionCurve& curve) {
  std::ofstream out = open_out(path);
  out << "lambda,measure\n";
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i)
    out << fmt(curve.lambdas[i]) << "," << fmt(curve.measures[i]) << "\n";
}

void write_report(const std::string& path, const Config& config, const Json& body) {
  Json full = body;
  full["config"] = config.entries();
  full["config_digest"] = config.digest();
  std::ofstream out = open_out(path);
  out << full.dump(2) << "\n";
}

std::string read_report_digest(const std::string& path) {
  std::ifstream in(path);
  if (!in) return "";
  Json j;
  try {
    in >> j;
  } catch (const std::exception&) {
    return "";
  }
  if (j.contains("config_digest")) return j["config_digest"].get<std::string>();
  return "";
}

}  // namespace sqfn
