#include "sqfn/operators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqfn {

double SurfaceFunction::lp_norm(const AdrSet& e, double p) const {
  if (values.size() != e.size()) throw ValidationError("surface function length mismatch");
  auto it = p_norms_.find(p);
  if (it != p_norms_.end()) return it->second;
  double acc = 0.0;
  if (!support.empty()) {
    for (int i : support)
      acc += std::pow(std::abs(values[static_cast<std::size_t>(i)]), p) *
             e.weights[static_cast<std::size_t>(i)];
  } else {
    for (std::size_t i = 0; i < values.size(); ++i)
      acc += std::pow(std::abs(values[i]), p) * e.weights[i];
  }
  double norm = std::pow(acc, 1.0 / p);
  p_norms_[p] = norm;
  return norm;
}

double SurfaceFunction::l2_norm_sq(const AdrSet& e) const {
  double n = lp_norm(e, 2.0);
  return n * n;
}

double SurfaceFunction::l1_norm(const AdrSet& e) const { return lp_norm(e, 1.0); }

SurfaceFunction indicator(const AdrSet& e, std::span<const int> indices) {
  SurfaceFunction f;
  f.values.assign(e.size(), 0.0);
  f.support.assign(indices.begin(), indices.end());
  std::sort(f.support.begin(), f.support.end());
  for (int i : f.support) f.values[static_cast<std::size_t>(i)] = 1.0;
  return f;
}

SurfaceFunction constant_function(const AdrSet& e, double value) {
  SurfaceFunction f;
  f.values.assign(e.size(), value);
  return f;
}

namespace {

// theta components at (x, y_j) times w_j, for all j; row is N x components.
void weighted_row(const AdrSet& e, const KernelSpec& spec, PointView x, double* row) {
  const int comps = spec.components;
  const std::size_t n = e.size();
  double out[8];
  for (std::size_t j = 0; j < n; ++j) {
    spec.eval(x, e.point(j), out);
    double w = e.weights[j];
    for (int c = 0; c < comps; ++c) row[j * static_cast<std::size_t>(comps) + c] = out[c] * w;
  }
}

// |Theta f(x)|^2 via a sparse kernel sum over the support of f.
double sparse_mag2(const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                   PointView x) {
  const int comps = spec.components;
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  double out[8];
  for (int j : f.support) {
    std::size_t jj = static_cast<std::size_t>(j);
    spec.eval(x, e.point(jj), out);
    double fw = f.values[jj] * e.weights[jj];
    for (int c = 0; c < comps; ++c) acc[c] += out[c] * fw;
  }
  double mag2 = 0.0;
  for (int c = 0; c < comps; ++c) mag2 += acc[c] * acc[c];
  return mag2;
}

double dense_mag2(const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                  PointView x) {
  const int comps = spec.components;
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  double out[8];
  for (std::size_t j = 0; j < e.size(); ++j) {
    spec.eval(x, e.point(j), out);
    double fw = f.values[j] * e.weights[j];
    for (int c = 0; c < comps; ++c) acc[c] += out[c] * fw;
  }
  double mag2 = 0.0;
  for (int c = 0; c < comps; ++c) mag2 += acc[c] * acc[c];
  return mag2;
}

double function_mag2(const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                     PointView x) {
  return f.support.empty() ? dense_mag2(e, spec, f, x) : sparse_mag2(e, spec, f, x);
}

}  // namespace

void apply_theta(const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                 PointView x, double* out) {
  if (f.values.size() != e.size()) throw ValidationError("surface function length mismatch");
  const int comps = spec.components;
  for (int c = 0; c < comps; ++c) out[c] = 0.0;
  double buf[8];
  if (!f.support.empty()) {
    for (int j : f.support) {
      std::size_t jj = static_cast<std::size_t>(j);
      spec.eval(x, e.point(jj), buf);
      double fw = f.values[jj] * e.weights[jj];
      for (int c = 0; c < comps; ++c) out[c] += buf[c] * fw;
    }
    return;
  }
  for (std::size_t j = 0; j < e.size(); ++j) {
    spec.eval(x, e.point(j), buf);
    double fw = f.values[j] * e.weights[j];
    for (int c = 0; c < comps; ++c) out[c] += buf[c] * fw;
  }
}

double apply_T(const AdrSet& sigma, const HomogeneousKernel& k, const SurfaceFunction& f,
               PointView x) {
  if (f.values.size() != sigma.size()) throw ValidationError("surface function length mismatch");
  const int m = k.ambient_dim;
  double u[8];
  double acc = 0.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    PointView y = sigma.point(j);
    for (int d = 0; d < m; ++d) u[d] = x[static_cast<std::size_t>(d)] - y[static_cast<std::size_t>(d)];
    acc += k.eval(PointView(u, static_cast<std::size_t>(m))) * f.values[j] * sigma.weights[j];
  }
  return acc;
}

double energy_weight_exponent(const QuasiMetricSpace& space, const AdrSet& e,
                              const KernelSpec& spec) {
  return 2.0 * spec.decay_exp - (static_cast<double>(space.ambient_dim) - e.dim);
}

double truncation_tail_bound(const QuasiMetricSpace& space, const AdrSet& e,
                             const KernelSpec& spec, const SurfaceFunction& f,
                             double truncation_radius) {
  // |Theta f(x)| <= C_theta ||f||_1 / delta^(d+u) beyond the collar, and
  // mu{delta <= t} <= omega_m (t + diam)^m, so the tail integral of
  // delta^(-(m+d)) is controlled by R^-d up to geometry factors.
  const double m = static_cast<double>(space.ambient_dim);
  const double d = e.dim;
  const double omega_m = std::pow(3.141592653589793, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
  double l1 = f.l1_norm(e);
  double geometry = (m + d) / d * std::pow(1.25, m) * omega_m;
  return sq(spec.decay_const) * sq(l1) * geometry * std::pow(truncation_radius, -d);
}

EnergyBreakdown square_energy(const QuasiMetricSpace& space, const AdrSet& e,
                              const KernelSpec& spec, const SurfaceFunction& f,
                              const WhitneyCover& cover, bool want_per_cell) {
  if (cover.cells.empty()) throw ValidationError("missing cover");
  if (f.values.size() != e.size()) throw ValidationError("surface function length mismatch");
  auto t0 = std::chrono::steady_clock::now();
  EnergyBreakdown out;
  out.weight_exponent = energy_weight_exponent(space, e, spec);
  out.cells = cover.cells.size();
  out.nodes = cover.nodes.size();

  std::vector<double> contrib(cover.nodes.size(), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (std::int64_t ni = 0; ni < static_cast<std::int64_t>(cover.nodes.size()); ++ni) {
    const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
    double mag2 = function_mag2(e, spec, f, node.point);
    contrib[static_cast<std::size_t>(ni)] =
        mag2 * std::pow(node.delta, out.weight_exponent) * node.measure;
  }
  for (double c : contrib) out.total += c;

  if (want_per_cell) {
    out.per_cell.resize(cover.cells.size());
    for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
      out.per_cell[ci].cell = static_cast<int>(ci);
      for (int ni = cover.node_begin[ci]; ni < cover.node_begin[ci + 1]; ++ni)
        out.per_cell[ci].value += contrib[static_cast<std::size_t>(ni)];
    }
  }
  out.truncation_tail_bound = truncation_tail_bound(space, e, spec, f, cover.truncation_radius);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double tent_energy(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                   const SurfaceFunction& b, const DyadicLattice& lattice, int cube_id,
                   const WhitneyCover& cover) {
  Tent t = tent(lattice, cube_id, cover);
  const double w_exp = energy_weight_exponent(space, e, spec);
  double total = 0.0;
  for (int ci : t.cells) {
    std::size_t c = static_cast<std::size_t>(ci);
    for (int ni = cover.node_begin[c]; ni < cover.node_begin[c + 1]; ++ni) {
      const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
      double mag2 = function_mag2(e, spec, b, node.point);
      total += mag2 * std::pow(node.delta, w_exp) * node.measure;
    }
  }
  return total;
}

double cone_functional(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                       const SurfaceFunction& f, PointView x, double kappa, double q,
                       const WhitneyCover& cover, bool* empty_flag) {
  if (!(q > 0.0)) throw ValidationError("cone exponent q must be positive");
  std::vector<int> cells = cone_cells(space, x, kappa, cover);
  if (empty_flag) *empty_flag = cells.empty();
  if (cells.empty()) return 0.0;
  const double exponent = q * spec.decay_exp - static_cast<double>(space.ambient_dim);
  double acc = 0.0;
  for (int ci : cells) {
    std::size_t c = static_cast<std::size_t>(ci);
    for (int ni = cover.node_begin[c]; ni < cover.node_begin[c + 1]; ++ni) {
      const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
      double mag2 = function_mag2(e, spec, f, node.point);
      acc += std::pow(mag2, q / 2.0) * std::pow(node.delta, exponent) * node.measure;
    }
  }
  return std::pow(acc, 1.0 / q);
}

std::vector<double> theta_mag2_nodes(const AdrSet& e, const KernelSpec& spec,
                                     const WhitneyCover& cover,
                                     std::span<const SurfaceFunction* const> funcs) {
  const std::size_t fn = funcs.size();
  const std::size_t nn = cover.nodes.size();
  const int comps = spec.components;
  const std::size_t n = e.size();
  std::vector<double> out(fn * nn, 0.0);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> row(n * static_cast<std::size_t>(comps));
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
    for (std::int64_t ni = 0; ni < static_cast<std::int64_t>(nn); ++ni) {
      const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
      weighted_row(e, spec, node.point, row.data());
      for (std::size_t k = 0; k < fn; ++k) {
        const SurfaceFunction& f = *funcs[k];
        double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
        if (!f.support.empty()) {
          for (int j : f.support) {
            double fv = f.values[static_cast<std::size_t>(j)];
            const double* r = row.data() + static_cast<std::size_t>(j) * comps;
            for (int c = 0; c < comps; ++c) acc[c] += r[c] * fv;
          }
        } else {
          for (std::size_t j = 0; j < n; ++j) {
            double fv = f.values[j];
            const double* r = row.data() + j * static_cast<std::size_t>(comps);
            for (int c = 0; c < comps; ++c) acc[c] += r[c] * fv;
          }
        }
        double mag2 = 0.0;
        for (int c = 0; c < comps; ++c) mag2 += acc[c] * acc[c];
        out[static_cast<std::size_t>(ni) * fn + k] = mag2;
      }
    }
  }
  return out;
}

std::vector<double> cell_cone_integrand(const QuasiMetricSpace& space, const KernelSpec& spec,
                                        const WhitneyCover& cover, std::span<const double> mag2,
                                        std::size_t funcs, std::size_t func, double q) {
  const double exponent = q * spec.decay_exp - static_cast<double>(space.ambient_dim);
  std::vector<double> g(cover.cells.size(), 0.0);
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
    for (int ni = cover.node_begin[ci]; ni < cover.node_begin[ci + 1]; ++ni) {
      const QuadNode& node = cover.nodes[static_cast<std::size_t>(ni)];
      double m2 = mag2[static_cast<std::size_t>(ni) * funcs + func];
      g[ci] += std::pow(m2, q / 2.0) * std::pow(node.delta, exponent) * node.measure;
    }
  }
  return g;
}

std::vector<std::vector<int>> cone_table(const QuasiMetricSpace& space, const AdrSet& e,
                                         double kappa, const WhitneyCover& cover) {
  std::vector<std::vector<int>> table(e.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(e.size()); ++i) {
    PointView x = e.point(static_cast<std::size_t>(i));
    for (std::size_t ci = 0; ci < cover.cells.size(); ++ci)
      if (cone_contains(space, x, kappa, cover.cells[ci]))
        table[static_cast<std::size_t>(i)].push_back(static_cast<int>(ci));
  }
  return table;
}

}  // namespace sqfn
