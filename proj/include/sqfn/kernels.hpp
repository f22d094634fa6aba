#pragma once

#include <string>

#include "sqfn/expr.hpp"
#include "sqfn/geometry.hpp"

namespace sqfn {

enum class KernelKind { RieszComponent, RieszGradient, Custom, CustomGradient };

/// Odd, C^2, homogeneous kernel on R^m \ {0} of degree -n (n = m-1 for the
/// classical Riesz family).
struct HomogeneousKernel {
  int ambient_dim = 2;  // m
  int degree = -1;      // homogeneity degree (-n)
  KernelKind kind = KernelKind::RieszComponent;
  int riesz_j = 1;      // 1-based component for Riesz kernels
  ExprPtr expr;         // custom closed form over the difference vector

  double eval(PointView u) const;
  /// Gradient: analytic for Riesz kernels, central differences otherwise.
  void grad(PointView u, double* out) const;
};

/// K_j(u) = u_j / |u|^(n+1) on R^(n+1).
HomogeneousKernel riesz_kernel(int j, int n);

/// User-supplied closed form with declared homogeneity degree.
HomogeneousKernel custom_kernel(const std::string& expr, int m, int degree);

/// Calderon-Zygmund-type kernel theta(x, y) with declared decay/regularity
/// constants: |theta| <= C_theta / rho^(d+upsilon), Hoelder exponent alpha.
struct KernelSpec {
  int ambient_dim = 2;   // m
  int components = 1;    // 1 for scalar, m for gradient kernels
  double decay_const = 16.0;  // C_theta
  double hoelder_exp = 1.0;   // alpha in (0, 1]
  double decay_exp = 1.0;     // upsilon > 0
  double target_dim = 1.0;    // d of the sets this kernel pairs with
  KernelKind kind = KernelKind::RieszGradient;
  int riesz_j = 1;
  int riesz_n = 1;
  ExprPtr expr;
  std::string name = "riesz-grad";

  /// out must hold `components` doubles. Throws on the diagonal.
  void eval(PointView x, PointView y, double* out) const;
};

/// theta(x, y) = (grad K)(x - y). Components are homogeneous of degree
/// -(n+1), so upsilon = (n+1) - d (= 1 in the codimension-one case d = n).
KernelSpec gradient_kernel(const HomogeneousKernel& k, double target_dim,
                           double alpha = 1.0, double c_theta = 0.0);

/// theta(x, y) = K(x - y) used directly; needs d < n so that upsilon > 0.
KernelSpec convolution_kernel(const HomogeneousKernel& k, double target_dim,
                              double alpha = 1.0, double c_theta = 0.0);

/// Builds a kernel from its config name: "riesz:<j>", "riesz-grad", "custom".
KernelSpec make_kernel(const std::string& name, int n, double target_dim,
                       double alpha = 1.0, double c_theta = 0.0,
                       const std::string& expr = "", double upsilon = 0.0);

struct KernelAxiomReport {
  double measured_decay = 0.0;    // sup |theta| * rho^(d+upsilon)
  double measured_hoelder = 0.0;  // sup of the regularity quotient
  double c_theta_measured = 0.0;  // max of the two
  double declared = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// Empirical verification of the decay and Hoelder bounds over random
/// configurations with log-uniform separations. Report-only.
KernelAxiomReport verify_kernel_axioms(const QuasiMetricSpace& space, const KernelSpec& spec,
                                       int samples, std::uint64_t seed);

}  // namespace sqfn
