#include "sqfn/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sqfn {

QuasiMetricSpace euclidean_space(int m) {
  QuasiMetricSpace space;
  space.ambient_dim = m;
  space.sym_const = 1.0;
  // |x-y| <= |x-z| + |z-y| <= 2 max{...}
  space.tri_const = 2.0;
  space.quasi_distance = [](PointView a, PointView b) { return euclid(a, b); };
  space.cell_measure = [m](PointView, double side) { return std::pow(side, m); };
  space.euclidean = true;
  return space;
}

DistFn regularized_metric(const QuasiMetricSpace& space) {
  if (!space.quasi_distance) throw ValidationError("quasi_distance not set");
  if (space.sym_const == 1.0) return space.quasi_distance;
  DistFn rho = space.quasi_distance;
  return [rho](PointView a, PointView b) { return std::max(rho(a, b), rho(b, a)); };
}

double alpha_rho(const QuasiMetricSpace& space) {
  if (space.tri_const < 1.0) throw ValidationError("invalid quasi-triangle constant");
  if (space.tri_const == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::log2(space.tri_const);
}

double AdrSet::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void AdrSet::validate(int ambient_m) const {
  if (coords.size() != weights.size() * static_cast<std::size_t>(ambient_dim))
    throw ValidationError("coords/weights size mismatch");
  if (!(dim > 0.0 && dim < static_cast<double>(ambient_m)))
    throw ValidationError("set dimension d must satisfy 0 < d < m");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("total weight must be positive");
  if (!labels.empty() && labels.size() != weights.size())
    throw ValidationError("labels size mismatch");
}

AdrSet AdrSet::subset(std::span<const int> indices) const {
  AdrSet out;
  out.ambient_dim = ambient_dim;
  out.dim = dim;
  out.adr_const = adr_const;
  out.coords.reserve(indices.size() * static_cast<std::size_t>(ambient_dim));
  out.weights.reserve(indices.size());
  for (int i : indices) {
    PointView p = point(static_cast<std::size_t>(i));
    out.coords.insert(out.coords.end(), p.begin(), p.end());
    out.weights.push_back(weights[static_cast<std::size_t>(i)]);
    if (!labels.empty()) out.labels.push_back(labels[static_cast<std::size_t>(i)]);
  }
  // diameter of the subset is recomputed on demand by callers that need it
  out.diam = 0.0;
  return out;
}

const KdTree& AdrSet::index() const {
  if (!index_) index_ = std::make_shared<KdTree>(coords, ambient_dim, weights);
  return *index_;
}

double regularized_distance(const QuasiMetricSpace& space, const AdrSet& e, PointView x) {
  if (e.size() == 0) throw ValidationError("empty ADR set");
  if (space.euclidean) return e.index().nearest_dist(x);
  DistFn rho_sharp = regularized_metric(space);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.size(); ++i) best = std::min(best, rho_sharp(x, e.point(i)));
  return best;
}

namespace {

double ball_mass(const QuasiMetricSpace& space, const AdrSet& e, PointView x, double r) {
  if (space.euclidean) return e.index().mass_within(x, r);
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (space.quasi_distance(x, e.point(i)) < r) acc += e.weights[i];
  return acc;
}

double max_spacing(const QuasiMetricSpace& space, const AdrSet& e) {
  if (space.euclidean) return e.index().max_nn_spacing();
  double worst = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != i) best = std::min(best, space.quasi_distance(e.point(i), e.point(j)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

AdrReport check_adr(const QuasiMetricSpace& space, const AdrSet& e,
                    std::span<const double> radii, std::span<const int> centers) {
  if (e.size() < 2) throw ValidationError("degenerate point cloud: cardinality at least two required");
  double diam = e.diam > 0.0 ? e.diam : diameter(space, e);
  if (!(diam > 0.0)) throw ValidationError("degenerate point cloud: diameter is zero");
  for (double r : radii)
    if (!(r > 0.0) || r > diam * (1.0 + 1e-12)) throw ValidationError("radius out of range");
  if (centers.empty() || radii.empty()) throw ValidationError("empty centers or radii");
  for (int ci : centers)
    if (ci < 0 || static_cast<std::size_t>(ci) >= e.size())
      throw ValidationError("center index out of range");

  AdrReport report;
  report.spacing_h = max_spacing(space, e);
  report.best_const = 1.0;
  report.per_radius_ratios.reserve(radii.size());
  for (double r : radii) {
    AdrRadiusRow row;
    row.radius = r;
    double rd = std::pow(r, e.dim);
    double slack = 1.0 + 4.0 * report.spacing_h / r;
    for (int ci : centers) {
      double mass = ball_mass(space, e, e.point(static_cast<std::size_t>(ci)), r);
      double upper = mass / rd;
      double lower = rd / (mass * slack);  // mass > 0: the center itself is in the open ball
      row.max_upper = std::max(row.max_upper, upper);
      row.max_lower = std::max(row.max_lower, lower);
      ++report.samples;
    }
    double cand = std::max(row.max_upper, row.max_lower);
    if (cand > report.best_const) {
      report.best_const = cand;
      report.worst_radius = r;
    }
    report.per_radius_ratios.push_back(row);
  }
  report.pass = report.best_const <= e.adr_const;
  return report;
}

double diameter(const QuasiMetricSpace& space, const AdrSet& e) {
  if (e.size() < 2) throw ValidationError("diameter needs at least two points");
  if (space.euclidean && e.size() > 10000) return e.index().farthest_pair_dist();
  double best = 0.0;
  bool sym = space.sym_const == 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = sym ? i + 1 : 0; j < e.size(); ++j) {
      if (i == j) continue;
      best = std::max(best, space.quasi_distance(e.point(i), e.point(j)));
    }
  }
  return best;
}

}  // namespace sqfn
