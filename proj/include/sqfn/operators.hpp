#pragma once

#include <map>
#include <optional>
#include <string>

#include "sqfn/kernels.hpp"
#include "sqfn/whitney.hpp"

namespace sqfn {

/// Function on E, sampled at the cloud points. `support` optionally lists the
/// nonzero indices (ascending); sparse functions use faster kernel sums.
struct SurfaceFunction {
  std::vector<double> values;
  std::vector<int> support;  // empty = dense

  /// Weighted L^p (quasi-)norm, cached per exponent. Not thread-safe.
  double lp_norm(const AdrSet& e, double p) const;
  double l2_norm_sq(const AdrSet& e) const;
  double l1_norm(const AdrSet& e) const;

 private:
  mutable std::map<double, double> p_norms_;
};

SurfaceFunction indicator(const AdrSet& e, std::span<const int> indices);
SurfaceFunction constant_function(const AdrSet& e, double value);

struct CellEnergy {
  int cell = -1;
  double value = 0.0;
};

/// Weighted square-function energy over the Whitney cover.
struct EnergyBreakdown {
  double total = 0.0;
  std::vector<CellEnergy> per_cell;      // filled when requested
  double truncation_tail_bound = 0.0;    // analytic bound on the discarded tail
  double weight_exponent = 0.0;          // 2*upsilon - (m - d)
  std::size_t cells = 0;
  std::size_t nodes = 0;
  double wall_seconds = 0.0;
};

/// (Theta_E f)(x) as a weighted kernel sum; `out` holds spec.components values.
void apply_theta(const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                 PointView x, double* out);

/// Convolution operator T f(x) = sum_j K(x - y_j) f_j w_j.
double apply_T(const AdrSet& sigma, const HomogeneousKernel& k, const SurfaceFunction& f,
               PointView x);

/// Midpoint-rule energy  sum |Theta f|^2 delta^(2u-(m-d)) mu  over the cover
/// nodes, plus an analytic tail bound for the region beyond the truncation
/// radius. Deterministic: contributions are reduced in node order.
EnergyBreakdown square_energy(const QuasiMetricSpace& space, const AdrSet& e,
                              const KernelSpec& spec, const SurfaceFunction& f,
                              const WhitneyCover& cover, bool want_per_cell = false);

/// Same integrand restricted to the tent of a cube.
double tent_energy(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                   const SurfaceFunction& b, const DyadicLattice& lattice, int cube_id,
                   const WhitneyCover& cover);

/// Cone functional ( sum_{cells in Gamma_kappa(x)} |Theta f|^q delta^(q*u-m) mu )^(1/q),
/// evaluated at the quadrature nodes of the member cells. `empty_flag` is set
/// when the cone holds no cells.
double cone_functional(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                       const SurfaceFunction& f, PointView x, double kappa, double q,
                       const WhitneyCover& cover, bool* empty_flag = nullptr);

// ---- batch facilities shared by the experiment harnesses ----

/// |Theta f_k(node)|^2 for every cover node and family entry, row-major
/// nodes x funcs. Kernel rows are computed once per node and reused.
std::vector<double> theta_mag2_nodes(const AdrSet& e, const KernelSpec& spec,
                                     const WhitneyCover& cover,
                                     std::span<const SurfaceFunction* const> funcs);

/// Aggregates node values into per-cell cone integrands with the exponent
/// q*upsilon - m:  g[cell] = sum_nodes mag2^(q/2) delta^(q*u-m) mu.
std::vector<double> cell_cone_integrand(const QuasiMetricSpace& space, const KernelSpec& spec,
                                        const WhitneyCover& cover, std::span<const double> mag2,
                                        std::size_t funcs, std::size_t func, double q);

/// Cone cell lists for every cloud point (reused across sweep experiments).
std::vector<std::vector<int>> cone_table(const QuasiMetricSpace& space, const AdrSet& e,
                                         double kappa, const WhitneyCover& cover);

double energy_weight_exponent(const QuasiMetricSpace& space, const AdrSet& e,
                              const KernelSpec& spec);

/// Analytic bound on the energy integral beyond the truncation radius, from
/// the kernel decay bound and the ambient volume growth.
double truncation_tail_bound(const QuasiMetricSpace& space, const AdrSet& e,
                             const KernelSpec& spec, const SurfaceFunction& f,
                             double truncation_radius);

}  // namespace sqfn
