#pragma once

#include <functional>
#include <string>

#include "sqfn/operators.hpp"

// Experiment harnesses. Heavy loops parallelize over quadrature nodes through
// the operators layer; per-function and per-cube results are assembled in
// index order, so reports are identical at any thread count.

namespace sqfn {

struct TestFunction {
  std::string name;
  SurfaceFunction f;
};

struct TestFamily {
  std::string spec;
  std::vector<TestFunction> funcs;
};

/// Default family probing the square-function constant: all cube indicators
/// across generations, Rademacher sign functions, and smooth bumps at
/// lattice-spread widths.
TestFamily default_family(const AdrSet& e, const DyadicLattice& lattice, std::uint64_t seed,
                          int n_signs = 64, int n_bumps = 16);

/// Cube indicators only.
TestFamily indicator_family(const AdrSet& e, const DyadicLattice& lattice);

struct PerFunctionRow {
  std::string name;
  double norm_sq = 0.0;
  double energy = 0.0;
  double ratio = 0.0;
};

struct SfeReport {
  double best_ratio = 0.0;
  std::string family_spec;
  std::vector<PerFunctionRow> per_function;
  std::string argmax;
  std::uint64_t config_hash = 0;
  std::size_t skipped = 0;  // zero-norm entries
};

/// Empirical square-function constant: sup over the family of
/// square_energy(f).total / ||f||_2^2.
SfeReport estimate_sfe_constant(const QuasiMetricSpace& space, const AdrSet& e,
                                const KernelSpec& spec, const WhitneyCover& cover,
                                const TestFamily& family, std::uint64_t config_hash = 0);

/// Per-cube testing functions with the claimed normalization constants.
struct TbFamily {
  std::function<SurfaceFunction(int cube_id)> bq;  // empty values => missing
  double c0_claimed = 64.0;        // C0 (normalization / tent bound)
  double small_c0_claimed = 0.25;  // c0 (scale floor of the testing sub-cube)
};

TbFamily indicator_tb_family(const AdrSet& e, const DyadicLattice& lattice);

struct TbCubeRow {
  int cube = -1;
  double norm_ratio = 0.0;      // int |b_Q|^2 dsigma / sigma(Q)
  double nondeg_ratio = 0.0;    // best |int_Qt b_Q| / sigma(Qt)
  double ell_ratio = 0.0;       // l(Qt*) / l(Q)
  double tent_ratio = 0.0;      // tent energy / sigma(Q)
  bool ok = false;
};

struct TbReport {
  double C0_measured = 0.0;  // smallest C0 validating all three conditions
  double c0_measured = 0.0;  // largest validating scale floor
  bool pass = false;
  double c0_claimed = 0.0;
  double small_c0_claimed = 0.0;
  std::vector<TbCubeRow> per_cube;
  std::vector<int> failed_cubes;
};

/// Local T(b) testing over every lattice cube: L^2 normalization, the
/// non-degeneracy search over admissible sub-cubes, and the tent energy bound.
TbReport check_local_tb(const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
                        const TbFamily& family, const DyadicLattice& lattice,
                        const WhitneyCover& cover);

/// Subset of E aligned with its parent cloud by explicit source indices.
struct BigPiece {
  std::vector<int> source_indices;  // ascending indices into the parent cloud
  AdrSet cloud;
};

BigPiece make_big_piece(const AdrSet& e, std::span<const int> indices);

/// b_Q = indicator of Q intersect E_Q (shared-index alignment required).
SurfaceFunction bq_from_bigpiece(const AdrSet& e, const DyadicCube& q, const BigPiece& e_q);

struct SplitReport {
  double i_a = 0.0;
  double i_not_a = 0.0;
  double tent_total = 0.0;      // = i_a + i_not_a exactly
  double carleson_lhs = 0.0;    // geometric integral over {delta_EQ > C_A delta_E}
  double carleson_mirror = 0.0; // swapped-exponent analog over {delta_EQ < delta_E / C_A}
  std::size_t cells_comparable = 0;
  std::size_t cells_above = 0;
  std::size_t cells_below = 0;
};

/// Splits the tent energy of b_Q by two-sided comparability of delta_E and
/// delta_EQ at cell centers, and evaluates the geometric Carleson integrals
/// on the non-comparable pieces.
SplitReport comparability_split(const QuasiMetricSpace& space, const AdrSet& e,
                                const KernelSpec& spec, const DyadicLattice& lattice,
                                int cube_id, const BigPiece& e_q, double c_a,
                                const WhitneyCover& cover);

struct WitnessEntry {
  int cube = -1;
  BigPiece piece;
  double eta_attained = 0.0;
};

struct BpsfeWitness {
  std::vector<WitnessEntry> per_cube;
  double eta = 0.0;  // uniform mass fraction over cubes
  double c1 = 0.0;   // ADR bound over the distinct pieces
  double c2 = 0.0;   // SFE bound over the distinct pieces (filled by the pipeline)
};

struct BpsfePipelineReport {
  double eta = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double C0_measured = 0.0;
  double c0_measured = 0.0;
  double sfe_best_ratio = 0.0;
  std::vector<int> failed_cubes;  // cubes whose witness misses the mass bound
  bool pass = false;
};

/// Runs the inductive chain: witness -> testing functions -> local T(b) ->
/// global constant, recording failures instead of aborting.
BpsfePipelineReport bpsfe_pipeline(const QuasiMetricSpace& space, const AdrSet& e,
                                   const KernelSpec& spec, const BpsfeWitness& witness,
                                   const DyadicLattice& lattice, const WhitneyCover& cover,
                                   std::uint64_t seed);

struct SurfaceBall {
  int center_index = 0;
  double radius = 0.0;
};

struct DistributionCurve {
  SurfaceBall ball;
  double ball_mass = 0.0;
  std::vector<double> lambdas;
  std::vector<double> measures;   // sigma of super-level sets, nonincreasing
  double fitted_exponent = 0.0;   // log-log least squares over the middle grid
  double c_o = 0.0;               // smallest validating constant on the grid
};

/// Super-level distribution of the cone square function applied to surface
/// ball indicators, with a log-log decay fit. Pass an empty grid for the
/// automatic log-spaced choice.
std::vector<DistributionCurve> weak_lp_indicator_test(
    const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec, double kappa,
    double p, std::span<const SurfaceBall> balls, std::span<const double> lambda_grid,
    const WhitneyCover& cover, int auto_grid_size = 24);

struct LpSweepRow {
  double p = 0.0;
  double ratio = 0.0;  // sup_f ||S f||_p / ||f||_p
  std::string argmax;
};

/// Cone square-function operator ratios over the family for each p > 1.
std::vector<LpSweepRow> lp_sweep(const QuasiMetricSpace& space, const AdrSet& e,
                                 const KernelSpec& spec, double kappa,
                                 std::span<const double> p_list, const TestFamily& family,
                                 const WhitneyCover& cover);

struct AtomRow {
  int center_index = 0;
  double radius = 0.0;
  double value = 0.0;  // ||S a||_p
};

struct HpAtomReport {
  double p = 0.0;
  double gamma = 0.0;
  double p_min = 0.0;  // d / (d + gamma)
  double sup_value = 0.0;
  std::vector<AtomRow> per_atom;
};

/// Cone square-function values on random mean-zero sup-normalized atoms.
/// The admissible range (d/(d+gamma), 1] is enforced exactly.
HpAtomReport atomic_hp_test(const QuasiMetricSpace& space, const AdrSet& e,
                            const KernelSpec& spec, double kappa, double p, int n_atoms,
                            std::uint64_t seed, const WhitneyCover& cover);

}  // namespace sqfn
