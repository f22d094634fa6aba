#include "sqfn/config.hpp"

#include <fstream>
#include <sstream>

namespace sqfn {

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
    config.values_[key] = value;
  }
  return config;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError("missing config key: " + key);
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ValidationError("config key " + key + " is not a number: " + it->second);
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ValidationError("config key " + key + " is not an integer: " + it->second);
  }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ValidationError("config key " + key + " is not an integer: " + it->second);
  }
}

std::vector<double> Config::get_list(const std::string& key) const {
  auto it = values_.find(key);
  std::vector<double> out;
  if (it == values_.end()) return out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ValidationError("config key " + key + " has a non-numeric entry: " + item);
    }
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

std::string Config::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical())));
  return std::string(buf);
}

GeometrySpec geometry_from_config(const Config& config, const std::string& prefix) {
  GeometrySpec spec;
  spec.kind = parse_geometry_kind(config.get(prefix + ".kind", "segment"));
  spec.resolution = config.get_int(prefix + ".resolution", 1024);
  spec.length = config.get_double(prefix + ".length", 1.0);
  spec.radius = config.get_double(prefix + ".radius", 1.0);
  spec.profile = config.get(prefix + ".profile", "sawtooth");
  spec.period = config.get_double(prefix + ".period", 0.125);
  spec.amplitude = config.get_double(prefix + ".amplitude", 0.0625);
  spec.lipschitz_const = config.get_double(prefix + ".lipschitz", 0.0);
  spec.generation = config.get_int(prefix + ".generation", 3);
  spec.seed = config.get_u64(prefix + ".seed", 0);
  if (spec.kind == GeometryKind::Composite) {
    int pieces = config.get_int(prefix + ".pieces", 0);
    if (pieces < 1) throw ValidationError("composite geometry needs " + prefix + ".pieces >= 1");
    for (int i = 0; i < pieces; ++i) {
      std::string sub = prefix + ".piece" + std::to_string(i);
      GeometrySpec piece = geometry_from_config(config, sub);
      piece.offset = config.get_list(sub + ".offset");
      spec.pieces.push_back(std::move(piece));
    }
  }
  return spec;
}

RunConfig RunConfig::from_config(const Config& config) {
  RunConfig run;
  run.geometry = geometry_from_config(config, "geometry");
  run.kernel_name = config.get("kernel.name", "riesz-grad");
  run.kernel_n = config.get_int("kernel.n", 1);
  run.kernel_alpha = config.get_double("kernel.alpha", 1.0);
  run.kernel_c_theta = config.get_double("kernel.c_theta", 0.0);
  run.kernel_upsilon = config.get_double("kernel.upsilon", 0.0);
  run.kernel_expr = config.get("kernel.expr", "");
  run.kappa = config.get_double("kappa", 1.0);
  run.depth = config.get_int("depth", 5);
  run.truncation_radius = config.get_double("truncation_radius", 0.0);
  run.eps_min = config.get_double("eps_min", 1.0 / 256.0);
  run.c_assign = config.get_double("c_assign", 8.0);
  run.c_a = config.get_double("c_a", 8.0);
  if (config.has("p_list")) run.p_list = config.get_list("p_list");
  run.hp_p = config.get_double("p", 0.8);
  run.hp_atoms = config.get_int("atoms", 32);
  run.weak_lp_balls = config.get_int("weak_lp.balls", 3);
  run.weak_lp_p = config.get_double("weak_lp.p", 2.0);
  run.lambda_count = config.get_int("lambda.count", 24);
  run.seed = config.get_u64("seed", 1);
  run.output_dir = config.get("output_dir", "out");
  run.threads = config.get_int("runtime.threads", 0);

  if (run.kappa <= 0.0) throw ValidationError("kappa must be positive");
  if (run.depth < 0) throw ValidationError("depth must be >= 0");
  if (run.eps_min <= 0.0) throw ValidationError("eps_min must be positive");
  if (run.hp_atoms < 1) throw ValidationError("atoms must be >= 1");
  if (run.lambda_count < 4) throw ValidationError("lambda.count must be >= 4");
  return run;
}

}  // namespace sqfn
