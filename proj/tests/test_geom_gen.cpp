#include "doctest.h"

#include <cmath>

#include "sqfn/generators.hpp"
#include "sqfn/rng.hpp"

using namespace sqfn;

namespace {

GeometrySpec cantor_spec_helper(int g) {
  GeometrySpec spec;
  spec.kind = GeometryKind::Cantor4;
  spec.generation = g;
  return spec;
}

AdrReport quick_adr(const AdrSet& e, int radii_count = 12, int center_step = 16) {
  QuasiMetricSpace space = euclidean_space(2);
  double h = e.index().max_nn_spacing();
  double lo = std::min(4.0 * h, e.diam / 4.0);
  std::vector<double> radii;
  for (int i = 0; i < radii_count; ++i)
    radii.push_back(lo * std::pow(e.diam / lo, static_cast<double>(i) / (radii_count - 1)));
  std::vector<int> centers;
  for (std::size_t i = 0; i < e.size(); i += static_cast<std::size_t>(center_step))
    centers.push_back(static_cast<int>(i));
  return check_adr(space, e, radii, centers);
}

}  // namespace

TEST_CASE("segment generator: uniform weights and interior ADR constant 2") {
  GeometrySpec spec;
  spec.kind = GeometryKind::Segment;
  spec.resolution = 1024;
  AdrSet e = generate(spec);
  CHECK(e.size() == 1024);
  for (double w : e.weights) CHECK(w == doctest::Approx(1.0 / 1024.0));
  CHECK(e.total_weight() == doctest::Approx(1.0));
  CHECK(e.diam == 1.0);
  AdrReport report = quick_adr(e);
  CHECK(report.pass);  // claimed constant covers the endpoint factor
}

TEST_CASE("all generated kinds pass check_adr below their claimed constants") {
  std::vector<GeometrySpec> specs;
  {
    GeometrySpec s;
    s.kind = GeometryKind::Segment;
    s.resolution = 512;
    specs.push_back(s);
    s.kind = GeometryKind::Circle;
    specs.push_back(s);
    s.kind = GeometryKind::LipschitzGraph;
    s.resolution = 512;
    specs.push_back(s);
    s.kind = GeometryKind::Cantor4;
    s.generation = 3;
    specs.push_back(s);
  }
  for (const GeometrySpec& spec : specs) {
    AdrSet e = generate(spec);
    AdrReport report = quick_adr(e);
    INFO("kind ", geometry_kind_name(spec.kind), " best_const ", report.best_const);
    CHECK(report.pass);
    CHECK(report.best_const >= 1.0);
  }
}

TEST_CASE("sawtooth graph: arc-length weights and declared modulus") {
  GeometrySpec spec;
  spec.kind = GeometryKind::LipschitzGraph;
  spec.resolution = 1024;
  spec.period = 0.125;
  spec.amplitude = 0.0625;  // slope 1
  AdrSet e = generate(spec);
  // total mass is the polyline arc length, within the corner-chord deficit of sqrt(2)
  CHECK(e.total_weight() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-2));
  // declared modulus holds on consecutive and random pairs
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    std::size_t i = rng.below(e.size()), j = rng.below(e.size());
    double ds = std::abs(e.point(i)[0] - e.point(j)[0]);
    double dphi = std::abs(e.point(i)[1] - e.point(j)[1]);
    CHECK(dphi <= ds * (1.0 + 1e-9));
  }
  AdrReport report = quick_adr(e);
  CHECK(report.best_const <= 4.0 * std::sqrt(2.0));
}

TEST_CASE("lipschitz violation in user-supplied samples is rejected") {
  GeometrySpec spec;
  spec.kind = GeometryKind::LipschitzGraph;
  spec.resolution = 16;
  spec.lipschitz_const = 1.0;
  spec.graph_samples.assign(16, 0.0);
  spec.graph_samples[8] = 5.0;  // jump far beyond slope 1
  CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("Lipschitz"), ValidationError);
}

TEST_CASE("cantor iterate: counts, masses, closed-form diameter, uniform constants") {
  for (int g : {2, 3, 4}) {
    GeometrySpec spec;
    spec.kind = GeometryKind::Cantor4;
    spec.generation = g;
    AdrSet e = generate(spec);
    CHECK(e.size() == static_cast<std::size_t>(std::pow(4.0, g)));
    for (double w : e.weights) CHECK(w == doctest::Approx(std::pow(0.25, g)));
    CHECK(e.total_weight() == doctest::Approx(1.0));
    CHECK(e.diam == doctest::Approx(std::sqrt(2.0) * (1.0 - std::pow(0.25, g))));
    CHECK(diameter(euclidean_space(2), e) == doctest::Approx(e.diam).epsilon(1e-12));
  }
  // the ADR constant stays bounded across generations
  double c2 = quick_adr(generate(cantor_spec_helper(2)), 10, 1).best_const;
  double c3 = quick_adr(generate(cantor_spec_helper(3)), 10, 4).best_const;
  CHECK(c2 <= 12.0);
  CHECK(c3 <= 12.0);
  CHECK(std::abs(c3 - c2) / c2 < 0.8);
}

TEST_CASE("generators are bit-deterministic") {
  GeometrySpec spec;
  spec.kind = GeometryKind::LipschitzGraph;
  spec.resolution = 256;
  AdrSet a = generate(spec);
  AdrSet b = generate(spec);
  CHECK(a.coords == b.coords);
  CHECK(a.weights == b.weights);
}

TEST_CASE("resolution gate") {
  GeometrySpec spec;
  spec.kind = GeometryKind::Segment;
  spec.resolution = 8;
  CHECK_THROWS_AS(generate(spec), ValidationError);
}

TEST_CASE("big-pieces witness labels") {
  QuasiMetricSpace space = euclidean_space(2);
  // a single graph: every cube attains eta = 1
  GeometrySpec solo;
  solo.kind = GeometryKind::Composite;
  GeometrySpec graph;
  graph.kind = GeometryKind::LipschitzGraph;
  graph.resolution = 256;
  solo.pieces = {graph};
  AdrSet e = generate(solo);
  DyadicLattice lat = build_lattice(space, e, 3);
  BpsfeWitness witness = big_pieces_witness(space, e, lat);
  CHECK(witness.eta == doctest::Approx(1.0));
  for (const WitnessEntry& entry : witness.per_cube)
    CHECK(entry.eta_attained == doctest::Approx(1.0));

  // two disjoint halves: coarse cubes keep at least half the mass
  GeometrySpec duo;
  duo.kind = GeometryKind::Composite;
  GeometrySpec left = graph;
  left.length = 0.5;
  left.period = 0.0625;
  left.amplitude = 0.03125;
  GeometrySpec right = left;
  right.offset = {0.5, 0.0};
  duo.pieces = {left, right};
  AdrSet e2 = generate(duo);
  DyadicLattice lat2 = build_lattice(space, e2, 3);
  BpsfeWitness witness2 = big_pieces_witness(space, e2, lat2);
  CHECK(witness2.eta >= 0.5 - 0.1);

  // unlabeled cantor: all eta vanish
  GeometrySpec cantor;
  cantor.kind = GeometryKind::Cantor4;
  cantor.generation = 2;
  AdrSet e3 = generate(cantor);
  DyadicLattice lat3 = build_lattice(space, e3, 3);
  BpsfeWitness witness3 = big_pieces_witness(space, e3, lat3);
  CHECK(witness3.eta == 0.0);
}
