#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "sqfn/common.hpp"
#include "sqfn/kdtree.hpp"

namespace sqfn {

using DistFn = std::function<double(PointView, PointView)>;

/// Ambient quasi-metric measure space (X, rho, mu). The default ambient is
/// R^m with the Euclidean distance and Lebesgue measure; cell_measure returns
/// the mu-mass of an axis-aligned cube given its center and side, which is
/// what the Whitney quadrature machinery consumes.
struct QuasiMetricSpace {
  int ambient_dim = 2;                     // m
  double sym_const = 1.0;                  // C~_rho: rho(y,x) <= C~ rho(x,y)
  double tri_const = 2.0;                  // C_rho: rho(x,y) <= C max{rho(x,z), rho(z,y)}
  DistFn quasi_distance;                   // rho
  std::function<double(PointView, double)> cell_measure;  // mu(axis cube(center, side))
  bool euclidean = true;                   // enables spatial-index fast paths
};

QuasiMetricSpace euclidean_space(int m);

/// Symmetrization rho#(x,y) = max(rho(x,y), rho(y,x)). Metric inputs
/// (sym_const == 1) are returned unchanged.
DistFn regularized_metric(const QuasiMetricSpace& space);

/// alpha_rho = 1/log2(C_rho); +infinity when C_rho == 1.
double alpha_rho(const QuasiMetricSpace& space);

/// Weighted point cloud approximating a d-dimensional ADR set (E, rho|_E, sigma).
/// Weights carry the sigma-mass of each sample (units of length^d).
struct AdrSet {
  std::vector<double> coords;   // N x ambient_dim, row-major
  std::vector<double> weights;  // N
  int ambient_dim = 2;
  double dim = 1.0;       // d, with 0 < d < m
  double diam = 0.0;      // diam_rho(E); finite for point clouds
  double adr_const = 4.0; // claimed ADR constant C >= 1
  std::vector<int> labels;  // optional per-point piece labels (composites); empty = none

  // the cached spatial index refers into this object's vectors, so copies and
  // moves must drop it and rebuild on demand
  AdrSet() = default;
  AdrSet(const AdrSet& other)
      : coords(other.coords), weights(other.weights), ambient_dim(other.ambient_dim),
        dim(other.dim), diam(other.diam), adr_const(other.adr_const), labels(other.labels) {}
  AdrSet(AdrSet&& other) noexcept
      : coords(std::move(other.coords)), weights(std::move(other.weights)),
        ambient_dim(other.ambient_dim), dim(other.dim), diam(other.diam),
        adr_const(other.adr_const), labels(std::move(other.labels)) {
    other.index_.reset();
  }
  AdrSet& operator=(const AdrSet& other) {
    if (this != &other) {
      coords = other.coords;
      weights = other.weights;
      ambient_dim = other.ambient_dim;
      dim = other.dim;
      diam = other.diam;
      adr_const = other.adr_const;
      labels = other.labels;
      index_.reset();
    }
    return *this;
  }
  AdrSet& operator=(AdrSet&& other) noexcept {
    coords = std::move(other.coords);
    weights = std::move(other.weights);
    ambient_dim = other.ambient_dim;
    dim = other.dim;
    diam = other.diam;
    adr_const = other.adr_const;
    labels = std::move(other.labels);
    index_.reset();
    other.index_.reset();
    return *this;
  }

  std::size_t size() const { return weights.size(); }
  PointView point(std::size_t i) const {
    return PointView(coords.data() + i * static_cast<std::size_t>(ambient_dim),
                     static_cast<std::size_t>(ambient_dim));
  }
  double total_weight() const;

  /// Validates basic invariants (nonnegative weights, positive total, d < m).
  void validate(int ambient_m) const;

  /// Sub-cloud at the given indices (weights and labels carried over).
  AdrSet subset(std::span<const int> indices) const;

  /// Euclidean spatial index, built on first use.
  const KdTree& index() const;

 private:
  mutable std::shared_ptr<KdTree> index_;
};

struct AdrRadiusRow {
  double radius = 0.0;
  double max_upper = 0.0;  // max over centers of sigma(B)/r^d
  double max_lower = 0.0;  // max over centers of r^d/(sigma(B) * slack)
};

/// Result of the ADR two-sided bound scan.
struct AdrReport {
  double best_const = 1.0;   // smallest C validating both bounds on the grid
  double worst_radius = 0.0;
  std::size_t samples = 0;
  std::vector<AdrRadiusRow> per_radius_ratios;
  bool pass = false;         // best_const <= claimed adr_const
  double spacing_h = 0.0;    // max nearest-neighbor spacing used in the slack
};

/// Regularized distance from x to the cloud: min_j rho#(x, y_j).
double regularized_distance(const QuasiMetricSpace& space, const AdrSet& e, PointView x);

/// Scans sigma(B(x,r)) / r^d over the given centers and radii. The lower
/// bound carries a discretization slack factor (1 + 4h/r) because small balls
/// under-sample the cloud.
AdrReport check_adr(const QuasiMetricSpace& space, const AdrSet& e,
                    std::span<const double> radii, std::span<const int> centers);

/// Exact diameter of the cloud under rho. Euclidean clouds use bounding-box
/// branch-and-bound above the brute-force cutoff; quasi-metric clouds are
/// scanned pairwise.
double diameter(const QuasiMetricSpace& space, const AdrSet& e);

}  // namespace sqfn
