#include "sqfn/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace sqfn {

bool DyadicLattice::is_descendant(int desc, int anc) const {
  while (desc != -1) {
    if (desc == anc) return true;
    desc = cubes[static_cast<std::size_t>(desc)].parent;
  }
  return false;
}

int kappa_from_diam(double diam) {
  if (!(diam > 0.0)) throw ValidationError("diameter must be positive");
  int k = static_cast<int>(std::floor(-std::log2(diam)));
  while (std::exp2(-k) < diam) --k;
  while (std::exp2(-k - 1) >= diam) ++k;
  return k;
}

namespace {

// rho# distance fetcher: Euclidean fast path or symmetrized custom metric.
struct SharpDist {
  const QuasiMetricSpace* space;
  const AdrSet* e;
  DistFn rho_sharp;
  double operator()(std::size_t i, std::size_t j) const {
    if (space->euclidean) return euclid(e->point(i), e->point(j));
    return rho_sharp(e->point(i), e->point(j));
  }
};

}  // namespace

DyadicLattice build_lattice(const QuasiMetricSpace& space, const AdrSet& e, int depth) {
  if (depth < 0) throw ValidationError("depth must be >= 0");
  e.validate(space.ambient_dim);
  if (e.size() < 2) throw ValidationError("lattice needs at least two points");
  const double diam = e.diam > 0.0 ? e.diam : diameter(space, e);
  const std::size_t n = e.size();
  SharpDist dist{&space, &e, space.euclidean ? DistFn() : regularized_metric(space)};

  DyadicLattice lat;
  lat.kappa_e = kappa_from_diam(diam);

  // Nested greedy nets: net[k+1] extends net[k]; a point enters when its
  // distance to every current net point exceeds 2^-k (strict, so a cloud of
  // diameter exactly 2^-kappa_e still has a single root).
  std::vector<std::vector<int>> nets;
  std::vector<int> net;  // insertion-ordered
  int levels = depth + 1;
  for (int lvl = 0; lvl < levels; ++lvl) {
    double r = std::exp2(-(lat.kappa_e + lvl));
    for (std::size_t i = 0; i < n; ++i) {
      bool separated = true;
      for (int p : net) {
        if (dist(i, static_cast<std::size_t>(p)) <= r) {
          separated = false;
          break;
        }
      }
      if (separated) net.push_back(static_cast<int>(i));
    }
    nets.push_back(net);
    if (net.size() == n && lvl + 1 < levels) {
      // every point is already a net point; finer generations would repeat
      lat.truncated = true;
      levels = lvl + 1;
      log_msg(LogLevel::Info, "lattice truncated at generation offset " + std::to_string(lvl));
      break;
    }
  }
  lat.depth = levels - 1;

  // Ownership of each finest-level point: nearest finest net point, ties to
  // the lowest net order.
  auto nearest_net = [&](std::size_t q, const std::vector<int>& candidates) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c : candidates) {
      double d = dist(q, static_cast<std::size_t>(c));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  // Cube ids per level, keyed by net point order.
  std::vector<std::vector<int>> level_cube_ids(static_cast<std::size_t>(levels));
  lat.by_generation.resize(static_cast<std::size_t>(levels));
  for (int lvl = 0; lvl < levels; ++lvl) {
    for (int net_pt : nets[static_cast<std::size_t>(lvl)]) {
      DyadicCube cube;
      cube.generation = lat.kappa_e + lvl;
      cube.center_index = net_pt;
      cube.side = std::exp2(-cube.generation);
      int id = static_cast<int>(lat.cubes.size());
      lat.cubes.push_back(std::move(cube));
      level_cube_ids[static_cast<std::size_t>(lvl)].push_back(id);
      lat.by_generation[static_cast<std::size_t>(lvl)].push_back(id);
    }
  }

  // Finest-level membership by nearest net point.
  const int finest = levels - 1;
  const auto& finest_net = nets[static_cast<std::size_t>(finest)];
  std::vector<std::vector<int>> members_of(finest_net.size());
  for (std::size_t i = 0; i < n; ++i) {
    int owner = nearest_net(i, finest_net);
    // owner is the net point index; map to its order in the finest net
    auto it = std::find(finest_net.begin(), finest_net.end(), owner);
    members_of[static_cast<std::size_t>(it - finest_net.begin())].push_back(static_cast<int>(i));
  }
  for (std::size_t oi = 0; oi < finest_net.size(); ++oi) {
    DyadicCube& cube = lat.cubes[static_cast<std::size_t>(level_cube_ids[static_cast<std::size_t>(finest)][oi])];
    cube.members = members_of[oi];
  }

  // Link levels: each cube at level lvl+1 attaches to the level-lvl cube whose
  // net point is nearest to its center (its own center when nets are nested,
  // so chains of a shared net point stay aligned). Members accumulate upward.
  for (int lvl = finest - 1; lvl >= 0; --lvl) {
    const auto& coarse_net = nets[static_cast<std::size_t>(lvl)];
    std::vector<int> order_of_net(n, -1);
    for (std::size_t oi = 0; oi < coarse_net.size(); ++oi)
      order_of_net[static_cast<std::size_t>(coarse_net[oi])] = static_cast<int>(oi);
    for (int child_id : level_cube_ids[static_cast<std::size_t>(lvl + 1)]) {
      DyadicCube& child = lat.cubes[static_cast<std::size_t>(child_id)];
      int owner_pt = order_of_net[static_cast<std::size_t>(child.center_index)] >= 0
                         ? child.center_index
                         : nearest_net(static_cast<std::size_t>(child.center_index), coarse_net);
      int parent_id = level_cube_ids[static_cast<std::size_t>(lvl)]
                                    [static_cast<std::size_t>(order_of_net[static_cast<std::size_t>(owner_pt)])];
      child.parent = parent_id;
      DyadicCube& parent = lat.cubes[static_cast<std::size_t>(parent_id)];
      parent.children.push_back(child_id);
      parent.members.insert(parent.members.end(), child.members.begin(), child.members.end());
    }
    for (int id : level_cube_ids[static_cast<std::size_t>(lvl)])
      std::sort(lat.cubes[static_cast<std::size_t>(id)].members.begin(),
                lat.cubes[static_cast<std::size_t>(id)].members.end());
  }

  // masses and the per-generation point -> cube map
  lat.point_cube.assign(static_cast<std::size_t>(levels), std::vector<int>(n, -1));
  for (std::size_t id = 0; id < lat.cubes.size(); ++id) {
    DyadicCube& cube = lat.cubes[id];
    cube.mass = 0.0;
    for (int i : cube.members) cube.mass += e.weights[static_cast<std::size_t>(i)];
    int lvl = cube.generation - lat.kappa_e;
    for (int i : cube.members) lat.point_cube[static_cast<std::size_t>(lvl)][static_cast<std::size_t>(i)] =
        static_cast<int>(id);
  }

  // Measured inner-ball constant: worst clearance from a cube center to a
  // point outside the cube, relative to the cube side.
  double c_in = 0.5;
  for (const DyadicCube& cube : lat.cubes) {
    if (cube.members.size() == n) continue;  // no outside point
    std::vector<char> inside(n, 0);
    for (int i : cube.members) inside[static_cast<std::size_t>(i)] = 1;
    double clearance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (!inside[j])
        clearance = std::min(clearance, dist(static_cast<std::size_t>(cube.center_index), j));
    c_in = std::min(c_in, clearance / cube.side);
  }
  lat.c_in = c_in;
  lat.c_out = 2.0;
  return lat;
}

}  // namespace sqfn
