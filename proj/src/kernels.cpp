#include "sqfn/kernels.hpp"

#include <cmath>

#include "sqfn/rng.hpp"

namespace sqfn {

namespace {

constexpr double kMinSeparationSq = 1e-24;

[[noreturn]] void singular() { throw std::domain_error("kernel singularity: evaluation on the diagonal"); }

double norm_sq(PointView u) {
  double s = 0.0;
  for (double c : u) s += c * c;
  return s;
}

}  // namespace

double HomogeneousKernel::eval(PointView u) const {
  double r2 = norm_sq(u);
  if (r2 < kMinSeparationSq) singular();
  if (kind == KernelKind::RieszComponent) {
    int n = -degree;
    return u[static_cast<std::size_t>(riesz_j - 1)] / std::pow(std::sqrt(r2), n + 1);
  }
  return expr->eval(u);
}

void HomogeneousKernel::grad(PointView u, double* out) const {
  double r2 = norm_sq(u);
  if (r2 < kMinSeparationSq) singular();
  const int m = ambient_dim;
  if (kind == KernelKind::RieszComponent) {
    int n = -degree;
    double r = std::sqrt(r2);
    double rn1 = std::pow(r, n + 1);
    double uj = u[static_cast<std::size_t>(riesz_j - 1)];
    for (int i = 0; i < m; ++i) {
      out[i] = -(n + 1) * uj * u[static_cast<std::size_t>(i)] / (rn1 * r2);
      if (i == riesz_j - 1) out[i] += 1.0 / rn1;
    }
    return;
  }
  // centered differences at a step proportional to |u|
  double r = std::sqrt(r2);
  double h = 6e-6 * r;
  Point up(u.begin(), u.end());
  for (int i = 0; i < m; ++i) {
    std::size_t ii = static_cast<std::size_t>(i);
    double save = up[ii];
    up[ii] = save + h;
    double fp = expr->eval(up);
    up[ii] = save - h;
    double fm = expr->eval(up);
    up[ii] = save;
    out[i] = (fp - fm) / (2.0 * h);
  }
}

HomogeneousKernel riesz_kernel(int j, int n) {
  if (j < 1 || j > n + 1) throw ValidationError("riesz component index must satisfy 1 <= j <= n+1");
  HomogeneousKernel k;
  k.ambient_dim = n + 1;
  k.degree = -n;
  k.kind = KernelKind::RieszComponent;
  k.riesz_j = j;
  return k;
}

HomogeneousKernel custom_kernel(const std::string& expr, int m, int degree) {
  HomogeneousKernel k;
  k.ambient_dim = m;
  k.degree = degree;
  k.kind = KernelKind::Custom;
  k.expr = parse_expr(expr, m);
  return k;
}

void KernelSpec::eval(PointView x, PointView y, double* out) const {
  const int m = ambient_dim;
  double u[8];
  double r2 = 0.0;
  for (int i = 0; i < m; ++i) {
    u[i] = x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
    r2 += u[i] * u[i];
  }
  if (r2 < kMinSeparationSq) singular();
  PointView uv(u, static_cast<std::size_t>(m));
  switch (kind) {
    case KernelKind::RieszGradient: {
      int n = riesz_n;
      double r = std::sqrt(r2);
      double rn1 = (n == 1) ? r2 : std::pow(r, n + 1);
      double uj = u[riesz_j - 1];
      double c = -(n + 1) * uj / (rn1 * r2);
      for (int i = 0; i < m; ++i) out[i] = c * u[i];
      out[riesz_j - 1] += 1.0 / rn1;
      return;
    }
    case KernelKind::RieszComponent: {
      int n = riesz_n;
      out[0] = u[riesz_j - 1] / std::pow(std::sqrt(r2), n + 1);
      return;
    }
    case KernelKind::Custom:
      out[0] = expr->eval(uv);
      return;
    case KernelKind::CustomGradient: {
      HomogeneousKernel k;
      k.ambient_dim = m;
      k.kind = KernelKind::Custom;
      k.expr = expr;
      k.grad(uv, out);
      return;
    }
  }
}

KernelSpec gradient_kernel(const HomogeneousKernel& k, double target_dim, double alpha,
                           double c_theta) {
  const int n = -k.degree;
  double upsilon = (n + 1) - target_dim;
  if (!(upsilon > 0.0)) throw ValidationError("gradient kernel needs d < n + 1");
  KernelSpec spec;
  spec.ambient_dim = k.ambient_dim;
  spec.components = k.ambient_dim;
  spec.target_dim = target_dim;
  spec.decay_exp = upsilon;
  spec.hoelder_exp = alpha;
  spec.riesz_j = k.riesz_j;
  spec.riesz_n = n;
  if (k.kind == KernelKind::RieszComponent) {
    spec.kind = KernelKind::RieszGradient;
    spec.name = "riesz-grad:" + std::to_string(k.riesz_j);
    // |grad K_j| <= n / r^(n+1); 16 leaves margin for the Hoelder quotient
    spec.decay_const = c_theta > 0.0 ? c_theta : 16.0 * n;
  } else {
    spec.kind = KernelKind::CustomGradient;
    spec.expr = k.expr;
    spec.name = "custom-grad";
    spec.decay_const = c_theta > 0.0 ? c_theta : 16.0;
  }
  return spec;
}

KernelSpec convolution_kernel(const HomogeneousKernel& k, double target_dim, double alpha,
                              double c_theta) {
  const int n = -k.degree;
  double upsilon = n - target_dim;
  if (!(upsilon > 0.0))
    throw ValidationError("scalar homogeneous kernel needs d < n for a positive decay margin");
  KernelSpec spec;
  spec.ambient_dim = k.ambient_dim;
  spec.components = 1;
  spec.target_dim = target_dim;
  spec.decay_exp = upsilon;
  spec.hoelder_exp = alpha;
  spec.riesz_j = k.riesz_j;
  spec.riesz_n = n;
  spec.kind = k.kind;
  spec.expr = k.expr;
  spec.name = k.kind == KernelKind::RieszComponent ? "riesz:" + std::to_string(k.riesz_j) : "custom";
  spec.decay_const = c_theta > 0.0 ? c_theta : 8.0;
  return spec;
}

KernelSpec make_kernel(const std::string& name, int n, double target_dim, double alpha,
                       double c_theta, const std::string& expr, double upsilon) {
  if (name == "riesz-grad" || name.rfind("riesz-grad:", 0) == 0) {
    int j = n + 1;  // normal-ish component by default
    if (auto pos = name.find(':'); pos != std::string::npos)
      j = std::stoi(name.substr(pos + 1));
    return gradient_kernel(riesz_kernel(j, n), target_dim, alpha, c_theta);
  }
  if (name.rfind("riesz:", 0) == 0) {
    int j = std::stoi(name.substr(6));
    return convolution_kernel(riesz_kernel(j, n), target_dim, alpha, c_theta);
  }
  if (name == "custom") {
    if (expr.empty()) throw ValidationError("custom kernel needs kernel.expr");
    KernelSpec spec;
    spec.ambient_dim = n + 1;
    spec.components = 1;
    spec.target_dim = target_dim;
    spec.decay_exp = upsilon > 0.0 ? upsilon : 1.0;
    spec.hoelder_exp = alpha;
    spec.kind = KernelKind::Custom;
    spec.expr = parse_expr(expr, n + 1);
    spec.name = "custom";
    spec.decay_const = c_theta > 0.0 ? c_theta : 8.0;
    return spec;
  }
  throw ValidationError("unknown kernel name: " + name);
}

KernelAxiomReport verify_kernel_axioms(const QuasiMetricSpace& space, const KernelSpec& spec,
                                       int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  Rng rng(seed);
  const int m = space.ambient_dim;
  const double dpu = spec.target_dim + spec.decay_exp;
  KernelAxiomReport report;
  report.declared = spec.decay_const;
  std::vector<double> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(m)),
      yt(static_cast<std::size_t>(m));
  std::vector<double> tx(static_cast<std::size_t>(spec.components)),
      ty(static_cast<std::size_t>(spec.components));
  auto random_dir = [&](std::vector<double>& dir) {
    double nrm = 0.0;
    do {
      nrm = 0.0;
      for (auto& c : dir) {
        c = rng.normal();
        nrm += c * c;
      }
    } while (nrm < 1e-12);
    nrm = std::sqrt(nrm);
    for (auto& c : dir) c /= nrm;
  };
  std::vector<double> dir(static_cast<std::size_t>(m));
  for (int s = 0; s < samples; ++s) {
    for (auto& c : x) c = rng.uniform(-1.0, 1.0);
    random_dir(dir);
    double radius = rng.log_uniform(1e-3, 10.0);
    for (int i = 0; i < m; ++i)
      y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + radius * dir[static_cast<std::size_t>(i)];
    double rho_xy = space.quasi_distance(x, y);
    if (rho_xy < 1e-9) continue;
    spec.eval(x, y, tx.data());
    double mag = 0.0;
    for (double v : tx) mag += v * v;
    mag = std::sqrt(mag);
    report.measured_decay = std::max(report.measured_decay, mag * std::pow(rho_xy, dpu));
    ++report.samples;

    random_dir(dir);
    double t = rng.log_uniform(1e-4, 0.5);
    for (int i = 0; i < m; ++i)
      yt[static_cast<std::size_t>(i)] =
          y[static_cast<std::size_t>(i)] + t * radius * dir[static_cast<std::size_t>(i)];
    double rho_yyt = space.quasi_distance(y, yt);
    if (rho_yyt <= 0.0 || rho_yyt > 0.5 * rho_xy) continue;
    spec.eval(x, yt, ty.data());
    double diff = 0.0;
    for (std::size_t c = 0; c < tx.size(); ++c) diff += sq(tx[c] - ty[c]);
    diff = std::sqrt(diff);
    double quotient = diff * std::pow(rho_xy, dpu + spec.hoelder_exp) /
                      std::pow(rho_yyt, spec.hoelder_exp);
    report.measured_hoelder = std::max(report.measured_hoelder, quotient);
  }
  report.c_theta_measured = std::max(report.measured_decay, report.measured_hoelder);
  report.pass = report.c_theta_measured <= report.declared;
  return report;
}

}  // namespace sqfn
