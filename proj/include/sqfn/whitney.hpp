#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "sqfn/lattice.hpp"

namespace sqfn {

/// Axis-aligned dyadic ambient cell of the Whitney decomposition of X \ E.
struct WhitneyCell {
  Point center;
  double side = 0.0;
  double measure = 0.0;    // mu(cell)
  double dist_to_e = 0.0;  // delta_E at the cell center
  int cube_id = -1;        // lattice cube defining U_Q
  int level = 0;           // subdivision level below the root box
  std::vector<int> coords; // integer coordinates within the level grid
};

/// Midpoint-rule quadrature node. Cells whose side exceeds delta/2 are
/// subdivided once, so a cell owns either one node or 2^m child nodes.
struct QuadNode {
  Point point;
  double measure = 0.0;
  double delta = 0.0;   // delta_E at the node
  int cell = -1;        // owning Whitney cell
};

struct WhitneyCover {
  std::vector<WhitneyCell> cells;
  std::vector<QuadNode> nodes;                  // grouped by cell
  std::vector<int> node_begin;                  // cells.size()+1 offsets into nodes
  std::vector<std::vector<int>> cells_by_cube;  // lattice cube id -> cell indices
  std::shared_ptr<const DyadicLattice> lattice;
  double truncation_radius = 0.0;
  double eps_min = 0.0;
  double finest_side = 0.0;
  double c_assign = 8.0;
  Point root_center;
  double root_side = 0.0;

  std::size_t size() const { return cells.size(); }

  /// Index of the cell containing x, or -1. Cells are half-open boxes.
  int find_cell(PointView x) const;

 private:
  friend WhitneyCover whitney_cover(const QuasiMetricSpace&, const AdrSet&,
                                    std::shared_ptr<const DyadicLattice>, double, double, double);
  std::unordered_map<std::uint64_t, int> cell_key_;
  std::uint64_t key_of(int level, std::span<const int> coords) const;
};

/// Whitney decomposition of the ambient complement of E, truncated at
/// rho#-distance `truncation_radius` (pass 0 for the default 4*diam).
/// Cells are maximal dyadic boxes with side <= delta_E(center) - halfdiag,
/// which lands every accepted cell in the classical window
/// side <= delta_E(center) <= 6*side (for m <= 3). Each cell is assigned to
/// the lattice cube of scale nearest its side within rho#-distance
/// c_assign * l(Q), coarsening until the bound holds.
WhitneyCover whitney_cover(const QuasiMetricSpace& space, const AdrSet& e,
                           std::shared_ptr<const DyadicLattice> lattice,
                           double truncation_radius, double eps_min, double c_assign = 8.0);

/// Carleson tent over Q: all cells assigned to Q or its descendants.
struct Tent {
  int cube_id = -1;
  std::vector<int> cells;  // ascending cell indices
};

Tent tent(const DyadicLattice& lattice, int cube_id, const WhitneyCover& cover);

/// Nontangential cone membership: cell centers y with
/// rho#(x, y) < (1 + kappa) * delta_E(y).
bool cone_contains(const QuasiMetricSpace& space, PointView x, double kappa,
                   const WhitneyCell& cell);

/// Cells of the cone over x. Monotone in kappa.
std::vector<int> cone_cells(const QuasiMetricSpace& space, PointView x, double kappa,
                            const WhitneyCover& cover);

}  // namespace sqfn
