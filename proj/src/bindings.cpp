#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqfn/cli.hpp"
#include "sqfn/config.hpp"
#include "sqfn/report_io.hpp"

namespace py = pybind11;
using namespace sqfn;

namespace {

GeometrySpec spec_from_kwargs(const std::string& kind, int resolution, double length,
                              double radius, const std::string& profile, double period,
                              double amplitude, int generation) {
  GeometrySpec spec;
  spec.kind = parse_geometry_kind(kind);
  spec.resolution = resolution;
  spec.length = length;
  spec.radius = radius;
  spec.profile = profile;
  spec.period = period;
  spec.amplitude = amplitude;
  spec.generation = generation;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_sqfn, m) {
  m.doc() = "square-function estimates on Ahlfors-regular point clouds";

  py::class_<QuasiMetricSpace>(m, "QuasiMetricSpace")
      .def_readonly("ambient_dim", &QuasiMetricSpace::ambient_dim)
      .def_readonly("sym_const", &QuasiMetricSpace::sym_const)
      .def_readonly("tri_const", &QuasiMetricSpace::tri_const)
      .def("distance", [](const QuasiMetricSpace& s, Point a, Point b) {
        return s.quasi_distance(a, b);
      });
  m.def("euclidean_space", &euclidean_space, py::arg("m") = 2);
  m.def("alpha_rho", &alpha_rho);

  py::class_<AdrSet>(m, "AdrSet")
      .def_readonly("ambient_dim", &AdrSet::ambient_dim)
      .def_readonly("dim", &AdrSet::dim)
      .def_readonly("diam", &AdrSet::diam)
      .def_readonly("adr_const", &AdrSet::adr_const)
      .def_property_readonly("points",
                             [](const AdrSet& e) {
                               std::vector<std::vector<double>> out;
                               for (std::size_t i = 0; i < e.size(); ++i) {
                                 PointView p = e.point(i);
                                 out.emplace_back(p.begin(), p.end());
                               }
                               return out;
                             })
      .def_readonly("weights", &AdrSet::weights)
      .def_readonly("labels", &AdrSet::labels)
      .def("__len__", &AdrSet::size)
      .def("total_weight", &AdrSet::total_weight);

  m.def(
      "generate",
      [](const std::string& kind, int resolution, double length, double radius,
         const std::string& profile, double period, double amplitude, int generation) {
        return generate(spec_from_kwargs(kind, resolution, length, radius, profile, period,
                                         amplitude, generation));
      },
      py::arg("kind"), py::arg("resolution") = 1024, py::arg("length") = 1.0,
      py::arg("radius") = 1.0, py::arg("profile") = "sawtooth", py::arg("period") = 0.125,
      py::arg("amplitude") = 0.0625, py::arg("generation") = 3);

  py::class_<AdrRadiusRow>(m, "AdrRadiusRow")
      .def_readonly("radius", &AdrRadiusRow::radius)
      .def_readonly("max_upper", &AdrRadiusRow::max_upper)
      .def_readonly("max_lower", &AdrRadiusRow::max_lower);
  py::class_<AdrReport>(m, "AdrReport")
      .def_readonly("best_const", &AdrReport::best_const)
      .def_readonly("worst_radius", &AdrReport::worst_radius)
      .def_readonly("samples", &AdrReport::samples)
      .def_readonly("per_radius_ratios", &AdrReport::per_radius_ratios)
      .def_readonly("pass_", &AdrReport::pass);
  m.def("check_adr",
        [](const QuasiMetricSpace& space, const AdrSet& e, std::vector<double> radii,
           std::vector<int> centers) { return check_adr(space, e, radii, centers); });
  m.def("regularized_distance",
        [](const QuasiMetricSpace& space, const AdrSet& e, Point x) {
          return regularized_distance(space, e, x);
        });
  m.def("diameter", &diameter);

  py::class_<DyadicCube>(m, "DyadicCube")
      .def_readonly("generation", &DyadicCube::generation)
      .def_readonly("center_index", &DyadicCube::center_index)
      .def_readonly("members", &DyadicCube::members)
      .def_readonly("side", &DyadicCube::side)
      .def_readonly("parent", &DyadicCube::parent)
      .def_readonly("children", &DyadicCube::children)
      .def_readonly("mass", &DyadicCube::mass);
  py::class_<DyadicLattice, std::shared_ptr<DyadicLattice>>(m, "DyadicLattice")
      .def_readonly("kappa_e", &DyadicLattice::kappa_e)
      .def_readonly("depth", &DyadicLattice::depth)
      .def_readonly("truncated", &DyadicLattice::truncated)
      .def_readonly("c_in", &DyadicLattice::c_in)
      .def_readonly("c_out", &DyadicLattice::c_out)
      .def_readonly("cubes", &DyadicLattice::cubes)
      .def("generation_ids",
           [](const DyadicLattice& lat, int k) { return lat.by_generation.at(static_cast<std::size_t>(k)); });
  m.def("build_lattice", [](const QuasiMetricSpace& space, const AdrSet& e, int depth) {
    return std::make_shared<DyadicLattice>(build_lattice(space, e, depth));
  });

  py::class_<WhitneyCell>(m, "WhitneyCell")
      .def_readonly("center", &WhitneyCell::center)
      .def_readonly("side", &WhitneyCell::side)
      .def_readonly("measure", &WhitneyCell::measure)
      .def_readonly("dist_to_e", &WhitneyCell::dist_to_e)
      .def_readonly("cube_id", &WhitneyCell::cube_id);
  py::class_<WhitneyCover>(m, "WhitneyCover")
      .def_readonly("cells", &WhitneyCover::cells)
      .def_readonly("truncation_radius", &WhitneyCover::truncation_radius)
      .def_readonly("eps_min", &WhitneyCover::eps_min)
      .def("__len__", &WhitneyCover::size);
  m.def("whitney_cover",
        [](const QuasiMetricSpace& space, const AdrSet& e, std::shared_ptr<DyadicLattice> lat,
           double truncation_radius, double eps_min) {
          return whitney_cover(space, e, lat, truncation_radius, eps_min);
        },
        py::arg("space"), py::arg("e"), py::arg("lattice"), py::arg("truncation_radius") = 0.0,
        py::arg("eps_min") = 1.0 / 256.0);
  m.def("tent", [](const std::shared_ptr<DyadicLattice>& lat, int cube_id, const WhitneyCover& cover) {
    return tent(*lat, cube_id, cover).cells;
  });
  m.def("cone_cells", [](const QuasiMetricSpace& space, Point x, double kappa,
                         const WhitneyCover& cover) { return cone_cells(space, x, kappa, cover); });

  py::class_<HomogeneousKernel>(m, "HomogeneousKernel")
      .def_readonly("ambient_dim", &HomogeneousKernel::ambient_dim)
      .def_readonly("degree", &HomogeneousKernel::degree)
      .def("__call__", [](const HomogeneousKernel& k, Point u) { return k.eval(u); })
      .def("grad", [](const HomogeneousKernel& k, Point u) {
        std::vector<double> out(static_cast<std::size_t>(k.ambient_dim));
        k.grad(u, out.data());
        return out;
      });
  m.def("riesz_kernel", &riesz_kernel, py::arg("j"), py::arg("n"));
  py::class_<KernelSpec>(m, "KernelSpec")
      .def_readonly("components", &KernelSpec::components)
      .def_readonly("decay_const", &KernelSpec::decay_const)
      .def_readonly("hoelder_exp", &KernelSpec::hoelder_exp)
      .def_readonly("decay_exp", &KernelSpec::decay_exp)
      .def_readonly("name", &KernelSpec::name)
      .def("__call__", [](const KernelSpec& spec, Point x, Point y) {
        std::vector<double> out(static_cast<std::size_t>(spec.components));
        spec.eval(x, y, out.data());
        return out;
      });
  m.def("gradient_kernel", &gradient_kernel, py::arg("k"), py::arg("target_dim"),
        py::arg("alpha") = 1.0, py::arg("c_theta") = 0.0);
  m.def("make_kernel", &make_kernel, py::arg("name"), py::arg("n"), py::arg("target_dim"),
        py::arg("alpha") = 1.0, py::arg("c_theta") = 0.0, py::arg("expr") = "",
        py::arg("upsilon") = 0.0);
  py::class_<KernelAxiomReport>(m, "KernelAxiomReport")
      .def_readonly("measured_decay", &KernelAxiomReport::measured_decay)
      .def_readonly("measured_hoelder", &KernelAxiomReport::measured_hoelder)
      .def_readonly("c_theta_measured", &KernelAxiomReport::c_theta_measured)
      .def_readonly("declared", &KernelAxiomReport::declared)
      .def_readonly("pass_", &KernelAxiomReport::pass);
  m.def("verify_kernel_axioms", &verify_kernel_axioms, py::arg("space"), py::arg("spec"),
        py::arg("samples") = 10000, py::arg("seed") = 1);

  py::class_<SurfaceFunction>(m, "SurfaceFunction")
      .def_readonly("values", &SurfaceFunction::values)
      .def("lp_norm", &SurfaceFunction::lp_norm);
  m.def("indicator", [](const AdrSet& e, std::vector<int> idx) { return indicator(e, idx); });
  m.def("constant_function", &constant_function);
  m.def("surface_function", [](const AdrSet& e, std::vector<double> values) {
    if (values.size() != e.size()) throw ValidationError("surface function length mismatch");
    SurfaceFunction f;
    f.values = std::move(values);
    return f;
  });

  py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
      .def_readonly("total", &EnergyBreakdown::total)
      .def_readonly("truncation_tail_bound", &EnergyBreakdown::truncation_tail_bound)
      .def_readonly("weight_exponent", &EnergyBreakdown::weight_exponent);
  m.def("apply_theta", [](const AdrSet& e, const KernelSpec& spec, const SurfaceFunction& f,
                          Point x) {
    std::vector<double> out(static_cast<std::size_t>(spec.components));
    apply_theta(e, spec, f, x, out.data());
    return out;
  });
  m.def("apply_T", [](const AdrSet& sigma, const HomogeneousKernel& k, const SurfaceFunction& f,
                      Point x) { return apply_T(sigma, k, f, x); });
  m.def("square_energy",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
           const SurfaceFunction& f, const WhitneyCover& cover) {
          return square_energy(space, e, spec, f, cover);
        });
  m.def("tent_energy",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
           const SurfaceFunction& b, const std::shared_ptr<DyadicLattice>& lat, int cube_id,
           const WhitneyCover& cover) {
          return tent_energy(space, e, spec, b, *lat, cube_id, cover);
        });
  m.def("cone_functional",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
           const SurfaceFunction& f, Point x, double kappa, double q, const WhitneyCover& cover) {
          return cone_functional(space, e, spec, f, x, kappa, q, cover);
        });

  py::class_<PerFunctionRow>(m, "PerFunctionRow")
      .def_readonly("name", &PerFunctionRow::name)
      .def_readonly("norm_sq", &PerFunctionRow::norm_sq)
      .def_readonly("energy", &PerFunctionRow::energy)
      .def_readonly("ratio", &PerFunctionRow::ratio);
  py::class_<SfeReport>(m, "SfeReport")
      .def_readonly("best_ratio", &SfeReport::best_ratio)
      .def_readonly("family_spec", &SfeReport::family_spec)
      .def_readonly("per_function", &SfeReport::per_function)
      .def_readonly("argmax", &SfeReport::argmax);
  m.def("estimate_sfe_constant",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
           const WhitneyCover& cover, const std::shared_ptr<DyadicLattice>& lat,
           std::uint64_t seed) {
          return estimate_sfe_constant(space, e, spec, cover, default_family(e, *lat, seed));
        });

  py::class_<TbReport>(m, "TbReport")
      .def_readonly("C0_measured", &TbReport::C0_measured)
      .def_readonly("c0_measured", &TbReport::c0_measured)
      .def_readonly("pass_", &TbReport::pass)
      .def_readonly("failed_cubes", &TbReport::failed_cubes);
  m.def("check_local_tb_indicators",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec,
           const std::shared_ptr<DyadicLattice>& lat, const WhitneyCover& cover) {
          return check_local_tb(space, e, spec, indicator_tb_family(e, *lat), *lat, cover);
        });

  py::class_<DistributionCurve>(m, "DistributionCurve")
      .def_readonly("lambdas", &DistributionCurve::lambdas)
      .def_readonly("measures", &DistributionCurve::measures)
      .def_readonly("fitted_exponent", &DistributionCurve::fitted_exponent)
      .def_readonly("ball_mass", &DistributionCurve::ball_mass);
  m.def("weak_lp_indicator_test",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec, double kappa,
           double p, std::vector<std::pair<int, double>> balls, const WhitneyCover& cover) {
          std::vector<SurfaceBall> sb;
          for (auto& [idx, r] : balls) sb.push_back(SurfaceBall{idx, r});
          return weak_lp_indicator_test(space, e, spec, kappa, p, sb, {}, cover);
        });

  py::class_<LpSweepRow>(m, "LpSweepRow")
      .def_readonly("p", &LpSweepRow::p)
      .def_readonly("ratio", &LpSweepRow::ratio)
      .def_readonly("argmax", &LpSweepRow::argmax);
  m.def("lp_sweep",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec, double kappa,
           std::vector<double> p_list, const std::shared_ptr<DyadicLattice>& lat,
           const WhitneyCover& cover, std::uint64_t seed) {
          return lp_sweep(space, e, spec, kappa, p_list, default_family(e, *lat, seed, 16, 8), cover);
        });

  py::class_<HpAtomReport>(m, "HpAtomReport")
      .def_readonly("p", &HpAtomReport::p)
      .def_readonly("gamma", &HpAtomReport::gamma)
      .def_readonly("p_min", &HpAtomReport::p_min)
      .def_readonly("sup_value", &HpAtomReport::sup_value);
  m.def("atomic_hp_test",
        [](const QuasiMetricSpace& space, const AdrSet& e, const KernelSpec& spec, double kappa,
           double p, int n_atoms, std::uint64_t seed, const WhitneyCover& cover) {
          return atomic_hp_test(space, e, spec, kappa, p, n_atoms, seed, cover);
        });

  m.def("run_cli", &run_cli, "run a CLI invocation; returns the exit code");

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
}
