#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqfn/generators.hpp"

namespace sqfn {

/// Flat key-value configuration with dotted section names, e.g.
/// `geometry.kind = circle`. Lines starting with '#' are comments.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_list(const std::string& key) const;  // comma separated

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Canonical serialization (sorted keys) and its FNV-1a digest.
  std::string canonical() const;
  std::string digest() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Validated run parameters shared by the CLI subcommands.
struct RunConfig {
  GeometrySpec geometry;
  std::string kernel_name = "riesz-grad";
  int kernel_n = 1;
  double kernel_alpha = 1.0;
  double kernel_c_theta = 0.0;  // 0 = kernel default
  double kernel_upsilon = 0.0;  // custom kernels only
  std::string kernel_expr;
  double kappa = 1.0;
  int depth = 5;
  double truncation_radius = 0.0;  // 0 = 4 * diam
  double eps_min = 1.0 / 256.0;
  double c_assign = 8.0;
  double c_a = 8.0;
  std::vector<double> p_list{1.5, 2.0, 3.0, 4.0};
  double hp_p = 0.8;
  int hp_atoms = 32;
  int weak_lp_balls = 3;
  double weak_lp_p = 2.0;
  int lambda_count = 24;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  int threads = 0;  // 0 = hardware default

  static RunConfig from_config(const Config& config);
};

/// Parses a GeometrySpec from keys under `prefix` (e.g. "geometry").
GeometrySpec geometry_from_config(const Config& config, const std::string& prefix);

}  // namespace sqfn
