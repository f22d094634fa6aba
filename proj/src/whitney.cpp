#include "sqfn/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sqfn {

std::uint64_t WhitneyCover::key_of(int level, std::span<const int> coords) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(level));
  for (int c : coords) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(c)) + (1ull << 62));
  return h;
}

int WhitneyCover::find_cell(PointView x) const {
  const int m = static_cast<int>(root_center.size());
  for (int d = 0; d < m; ++d)
    if (x[d] < root_center[d] - root_side / 2 || x[d] >= root_center[d] + root_side / 2) return -1;
  int max_level = static_cast<int>(std::round(std::log2(root_side / finest_side)));
  std::vector<int> coords(static_cast<std::size_t>(m));
  for (int level = 0; level <= max_level; ++level) {
    double side = root_side * std::exp2(-level);
    for (int d = 0; d < m; ++d)
      coords[static_cast<std::size_t>(d)] =
          static_cast<int>(std::floor((x[d] - (root_center[d] - root_side / 2)) / side));
    auto it = cell_key_.find(key_of(level, coords));
    if (it != cell_key_.end()) return it->second;
  }
  return -1;
}

namespace {

struct Box {
  Point center;
  double side;
  int level;
  std::vector<int> coords;
};

}  // namespace

WhitneyCover whitney_cover(const QuasiMetricSpace& space, const AdrSet& e,
                           std::shared_ptr<const DyadicLattice> lattice,
                           double truncation_radius, double eps_min, double c_assign) {
  if (!space.euclidean)
    throw ValidationError("whitney_cover requires the Euclidean ambient sampler");
  if (!lattice) throw ValidationError("whitney_cover requires a lattice");
  e.validate(space.ambient_dim);
  const double diam = e.diam > 0.0 ? e.diam : diameter(space, e);
  if (truncation_radius <= 0.0) truncation_radius = 4.0 * diam;
  if (truncation_radius < diam) throw ValidationError("truncation_radius must be >= diam(E)");
  if (!(eps_min > 0.0)) throw ValidationError("eps_min must be positive");
  if (eps_min >= truncation_radius) throw ValidationError("eps_min must be < truncation_radius");

  const int m = space.ambient_dim;
  const KdTree& index = e.index();

  WhitneyCover cover;
  cover.lattice = lattice;
  cover.truncation_radius = truncation_radius;
  cover.eps_min = eps_min;
  cover.c_assign = c_assign;

  // Root box: cloud bounding box inflated by the truncation radius.
  Point lo(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
  Point hi(static_cast<std::size_t>(m), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < e.size(); ++i) {
    PointView p = e.point(i);
    for (int d = 0; d < m; ++d) {
      lo[static_cast<std::size_t>(d)] = std::min(lo[static_cast<std::size_t>(d)], p[d]);
      hi[static_cast<std::size_t>(d)] = std::max(hi[static_cast<std::size_t>(d)], p[d]);
    }
  }
  double half = 0.0;
  cover.root_center.assign(static_cast<std::size_t>(m), 0.0);
  for (int d = 0; d < m; ++d) {
    std::size_t dd = static_cast<std::size_t>(d);
    cover.root_center[dd] = 0.5 * (lo[dd] + hi[dd]);
    half = std::max(half, 0.5 * (hi[dd] - lo[dd]));
  }
  half += truncation_radius * 1.25;
  cover.root_side = std::exp2(std::ceil(std::log2(2.0 * half)));

  // Recursion floor two levels below eps_min so dropped fine boxes only hold
  // points with delta_E < eps_min.
  const double eps_pow2 = std::exp2(std::floor(std::log2(eps_min)));
  const double side_floor = eps_pow2 / 4.0;
  const double half_diag_unit = 0.5 * std::sqrt(static_cast<double>(m));

  std::deque<Box> queue;
  queue.push_back(Box{cover.root_center, cover.root_side, 0, std::vector<int>(static_cast<std::size_t>(m), 0)});
  while (!queue.empty()) {
    Box box = std::move(queue.front());
    queue.pop_front();
    double delta = index.nearest_dist(box.center);
    double d_lo = delta - box.side * half_diag_unit;
    if (d_lo > truncation_radius) continue;  // entirely beyond the truncation collar
    if (box.side <= d_lo) {
      WhitneyCell cell;
      cell.center = box.center;
      cell.side = box.side;
      cell.measure = space.cell_measure(cell.center, cell.side);
      cell.dist_to_e = delta;
      cell.level = box.level;
      cell.coords = box.coords;
      cover.cells.push_back(std::move(cell));
      continue;
    }
    if (box.side / 2.0 < side_floor) continue;  // below resolution, too close to E
    const int kids = 1 << m;
    for (int mask = 0; mask < kids; ++mask) {
      Box child;
      child.side = box.side / 2.0;
      child.level = box.level + 1;
      child.center = box.center;
      child.coords = box.coords;
      for (int d = 0; d < m; ++d) {
        std::size_t dd = static_cast<std::size_t>(d);
        int bit = (mask >> d) & 1;
        child.center[dd] += (bit ? 0.25 : -0.25) * box.side;
        child.coords[dd] = box.coords[dd] * 2 + bit;
      }
      queue.push_back(std::move(child));
    }
  }

  cover.finest_side = cover.root_side;
  for (const WhitneyCell& cell : cover.cells) cover.finest_side = std::min(cover.finest_side, cell.side);
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci)
    cover.cell_key_[cover.key_of(cover.cells[ci].level, cover.cells[ci].coords)] = static_cast<int>(ci);

  // Assignment: scale-matched cube through the nearest cloud point, coarsened
  // until the distance bound c_assign * l(Q) holds; root as a last resort.
  const DyadicLattice& lat = *lattice;
  cover.cells_by_cube.assign(lat.cubes.size(), {});
  const int k_min = lat.kappa_e;
  const int k_max = lat.kappa_e + lat.depth;
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
    WhitneyCell& cell = cover.cells[ci];
    int nearest = index.nearest_index(cell.center);
    int k_target = static_cast<int>(std::lround(-std::log2(cell.side)));
    k_target = std::clamp(k_target, k_min, k_max);
    int assigned = -1;
    for (int k = k_target; k >= k_min; --k) {
      if (cell.dist_to_e <= c_assign * std::exp2(-k)) {
        assigned = lat.point_cube[static_cast<std::size_t>(k - k_min)][static_cast<std::size_t>(nearest)];
        break;
      }
    }
    if (assigned < 0) assigned = lat.root();
    cell.cube_id = assigned;
    cover.cells_by_cube[static_cast<std::size_t>(assigned)].push_back(static_cast<int>(ci));
  }

  // Quadrature nodes: one midpoint per cell, or 2^m children when the side
  // exceeds delta/2 (the integrand varies on the scale of delta).
  cover.node_begin.assign(cover.cells.size() + 1, 0);
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci) {
    const WhitneyCell& cell = cover.cells[ci];
    cover.node_begin[ci] = static_cast<int>(cover.nodes.size());
    if (cell.side > cell.dist_to_e / 2.0) {
      const int kids = 1 << m;
      for (int mask = 0; mask < kids; ++mask) {
        QuadNode node;
        node.point = cell.center;
        for (int d = 0; d < m; ++d)
          node.point[static_cast<std::size_t>(d)] += (((mask >> d) & 1) ? 0.25 : -0.25) * cell.side;
        node.measure = space.cell_measure(node.point, cell.side / 2.0);
        node.delta = index.nearest_dist(node.point);
        node.cell = static_cast<int>(ci);
        cover.nodes.push_back(std::move(node));
      }
    } else {
      QuadNode node;
      node.point = cell.center;
      node.measure = cell.measure;
      node.delta = cell.dist_to_e;
      node.cell = static_cast<int>(ci);
      cover.nodes.push_back(std::move(node));
    }
  }
  cover.node_begin[cover.cells.size()] = static_cast<int>(cover.nodes.size());
  return cover;
}

Tent tent(const DyadicLattice& lattice, int cube_id, const WhitneyCover& cover) {
  if (cover.lattice.get() != &lattice || cube_id < 0 ||
      cube_id >= static_cast<int>(lattice.cubes.size()))
    throw ValidationError("cube not in lattice");
  Tent result;
  result.cube_id = cube_id;
  std::vector<int> stack{cube_id};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const auto& cells = cover.cells_by_cube[static_cast<std::size_t>(id)];
    result.cells.insert(result.cells.end(), cells.begin(), cells.end());
    for (int child : lattice.cube(id).children) stack.push_back(child);
  }
  std::sort(result.cells.begin(), result.cells.end());
  return result;
}

bool cone_contains(const QuasiMetricSpace& space, PointView x, double kappa,
                   const WhitneyCell& cell) {
  double d = space.euclidean ? euclid(x, cell.center)
                             : regularized_metric(space)(x, cell.center);
  return d < (1.0 + kappa) * cell.dist_to_e;
}

std::vector<int> cone_cells(const QuasiMetricSpace& space, PointView x, double kappa,
                            const WhitneyCover& cover) {
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  std::vector<int> out;
  for (std::size_t ci = 0; ci < cover.cells.size(); ++ci)
    if (cone_contains(space, x, kappa, cover.cells[ci])) out.push_back(static_cast<int>(ci));
  return out;
}

}  // namespace sqfn
