#pragma once

#include <string>

#include "sqfn/estimates.hpp"

namespace sqfn {

enum class GeometryKind { Line, Segment, Circle, LipschitzGraph, Cantor4, Composite };

GeometryKind parse_geometry_kind(const std::string& name);
std::string geometry_kind_name(GeometryKind kind);

/// Declarative description of a test geometry. Curves are sampled with
/// endpoints included and arc-length-corrected weights; Cantor iterates carry
/// the self-similar mass splitting.
struct GeometrySpec {
  GeometryKind kind = GeometryKind::Segment;
  int resolution = 1024;  // N points (>= 16); Cantor uses 4^generation instead
  double length = 1.0;    // parameter-domain length for line/segment/graph
  double radius = 1.0;    // circle radius
  std::string profile = "sawtooth";  // lipschitz_graph: sawtooth | sine | flat
  double period = 0.125;
  double amplitude = 0.0625;
  double lipschitz_const = 0.0;  // declared L; 0 = derive from the profile
  int generation = 3;            // cantor4
  std::uint64_t seed = 0;
  std::vector<GeometrySpec> pieces;  // composite sub-specs (labels = piece order)
  std::vector<double> offset;        // translation applied to this piece
  std::vector<double> graph_samples; // user-supplied profile values (overrides `profile`)
};

/// Generates the weighted cloud. Deterministic given (spec, seed); every
/// generated set carries a kind-specific claimed ADR constant.
AdrSet generate(const GeometrySpec& spec);

/// Per-cube big-piece selection from the labels of a composite cloud: the
/// labeled piece with the largest mass in the cube, with its attained mass
/// fraction. Unlabeled clouds get eta = 0 everywhere.
BpsfeWitness big_pieces_witness(const QuasiMetricSpace& space, const AdrSet& e,
                                const DyadicLattice& lattice);

}  // namespace sqfn
