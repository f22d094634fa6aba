#pragma once

#include <vector>

#include "sqfn/geometry.hpp"

namespace sqfn {

/// One cube of the dyadic hierarchy on E. Side length is 2^-generation; the
/// center is a cloud point acting as the net point of the cube.
struct DyadicCube {
  int generation = 0;
  int center_index = 0;
  std::vector<int> members;   // cloud indices, ascending
  double side = 1.0;          // l(Q) = 2^-generation
  int parent = -1;            // cube id, -1 for roots
  std::vector<int> children;  // cube ids
  double mass = 0.0;          // sigma(Q) = sum of member weights
};

/// Christ-type cube hierarchy built over an AdrSet. Generations run from
/// kappa_e (coarsest, 2^-kappa_e-1 < diam <= 2^-kappa_e) to kappa_e + depth.
struct DyadicLattice {
  std::vector<DyadicCube> cubes;               // flat storage; ids index here
  std::vector<std::vector<int>> by_generation; // [k - kappa_e] -> cube ids
  int kappa_e = 0;
  int depth = 0;          // finest generation offset actually built
  bool truncated = false; // generations bottomed out at singletons before the requested depth
  double c_in = 0.25;     // published inner-ball constant
  double c_out = 2.0;     // published containment constant
  std::vector<std::vector<int>> point_cube;    // [k - kappa_e][point] -> cube id

  int generations() const { return depth + 1; }
  const DyadicCube& cube(int id) const { return cubes[static_cast<std::size_t>(id)]; }
  int root() const { return by_generation.front().front(); }

  /// True when `desc` equals `anc` or lies below it in the tree.
  bool is_descendant(int desc, int anc) const;
};

/// kappa_e from the diameter: the unique integer with 2^-k-1 < diam <= 2^-k.
int kappa_from_diam(double diam);

/// Builds the hierarchy from nested greedy nets at scales 2^-k, scanned in
/// cloud-index order. Finest-level points attach to their nearest net point;
/// coarser memberships are unions over the net-point ownership links, so
/// nesting and per-generation partitions hold exactly. Deterministic given
/// the cloud ordering. c_out = 2 by construction; c_in is measured as the
/// worst center clearance over all cubes (capped at 1/2).
DyadicLattice build_lattice(const QuasiMetricSpace& space, const AdrSet& e, int depth);

}  // namespace sqfn
