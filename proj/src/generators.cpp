#include "sqfn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sqfn {

GeometryKind parse_geometry_kind(const std::string& name) {
  if (name == "line") return GeometryKind::Line;
  if (name == "segment") return GeometryKind::Segment;
  if (name == "circle") return GeometryKind::Circle;
  if (name == "lipschitz_graph") return GeometryKind::LipschitzGraph;
  if (name == "cantor4") return GeometryKind::Cantor4;
  if (name == "composite") return GeometryKind::Composite;
  throw ValidationError("unknown geometry kind: " + name);
}

std::string geometry_kind_name(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Line: return "line";
    case GeometryKind::Segment: return "segment";
    case GeometryKind::Circle: return "circle";
    case GeometryKind::LipschitzGraph: return "lipschitz_graph";
    case GeometryKind::Cantor4: return "cantor4";
    case GeometryKind::Composite: return "composite";
  }
  return "?";
}

namespace {

constexpr double kPi = 3.141592653589793;

// graph profile value and derived Lipschitz constant
struct Profile {
  std::function<double(double)> phi;
  double lipschitz = 0.0;
};

Profile make_profile(const GeometrySpec& spec) {
  Profile out;
  if (spec.profile == "flat") {
    out.phi = [](double) { return 0.0; };
    out.lipschitz = 0.0;
  } else if (spec.profile == "sawtooth") {
    double period = spec.period;
    double amp = spec.amplitude;
    out.phi = [period, amp](double s) {
      double t = s / period - std::floor(s / period);
      return amp * (t < 0.5 ? 2.0 * t : 2.0 * (1.0 - t));
    };
    out.lipschitz = 2.0 * amp / period;
  } else if (spec.profile == "sine") {
    double period = spec.period;
    double amp = spec.amplitude;
    out.phi = [period, amp](double s) { return amp * std::sin(2.0 * kPi * s / period); };
    out.lipschitz = 2.0 * kPi * amp / period;
  } else {
    throw ValidationError("unknown graph profile: " + spec.profile);
  }
  return out;
}

AdrSet sampled_curve(const GeometrySpec& spec, const std::function<double(double)>& phi,
                     double declared_l, double claimed_adr) {
  const int n = spec.resolution;
  if (n < 16) throw ValidationError("resolution must be >= 16");
  const double len = spec.length;
  AdrSet e;
  e.ambient_dim = 2;
  e.dim = 1.0;
  e.adr_const = claimed_adr;
  e.coords.resize(2 * static_cast<std::size_t>(n));
  e.weights.resize(static_cast<std::size_t>(n));
  std::vector<double> s_vals(static_cast<std::size_t>(n)), phi_vals(static_cast<std::size_t>(n));
  const double shift = spec.kind == GeometryKind::Line ? -len / 2.0 : 0.0;
  for (int i = 0; i < n; ++i) {
    double s = shift + len * static_cast<double>(i) / (n - 1);
    s_vals[static_cast<std::size_t>(i)] = s;
    phi_vals[static_cast<std::size_t>(i)] = phi(s);
  }
  // Lipschitz modulus on consecutive pairs, against the declared constant
  if (declared_l > 0.0) {
    for (int i = 1; i < n; ++i) {
      double ds = s_vals[static_cast<std::size_t>(i)] - s_vals[static_cast<std::size_t>(i - 1)];
      double dphi = std::abs(phi_vals[static_cast<std::size_t>(i)] - phi_vals[static_cast<std::size_t>(i - 1)]);
      if (dphi > declared_l * std::abs(ds) * (1.0 + 1e-9))
        throw ValidationError("graph samples violate the declared Lipschitz constant");
    }
  }
  // arc-length-corrected weights: local speed from centered differences
  std::vector<double> speed(static_cast<std::size_t>(n));
  double speed_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    int a = std::max(0, i - 1), b = std::min(n - 1, i + 1);
    double ds = s_vals[static_cast<std::size_t>(b)] - s_vals[static_cast<std::size_t>(a)];
    double dphi = phi_vals[static_cast<std::size_t>(b)] - phi_vals[static_cast<std::size_t>(a)];
    speed[static_cast<std::size_t>(i)] = std::sqrt(1.0 + sq(dphi / ds));
    speed_sum += speed[static_cast<std::size_t>(i)];
  }
  // closed-form total arc length where the profile allows it
  double sigma_total;
  if (declared_l <= 0.0) sigma_total = len;
  else {
    sigma_total = 0.0;
    for (int i = 1; i < n; ++i) {
      double ds = s_vals[static_cast<std::size_t>(i)] - s_vals[static_cast<std::size_t>(i - 1)];
      double dphi = phi_vals[static_cast<std::size_t>(i)] - phi_vals[static_cast<std::size_t>(i - 1)];
      sigma_total += std::sqrt(sq(ds) + sq(dphi));
    }
  }
  for (int i = 0; i < n; ++i) {
    std::size_t ii = static_cast<std::size_t>(i);
    e.coords[2 * ii] = s_vals[ii];
    e.coords[2 * ii + 1] = phi_vals[ii];
    e.weights[ii] = sigma_total * speed[ii] / speed_sum;
  }
  return e;
}

AdrSet generate_cantor(const GeometrySpec& spec) {
  const int g = spec.generation;
  if (g < 1 || g > 8) throw ValidationError("cantor4 generation must lie in [1, 8]");
  const std::size_t count = static_cast<std::size_t>(std::pow(4.0, g));
  AdrSet e;
  e.ambient_dim = 2;
  e.dim = 1.0;
  e.adr_const = 12.0;
  e.coords.reserve(2 * count);
  e.weights.assign(count, std::pow(0.25, g));
  const double side_g = std::pow(0.25, g);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double x = side_g / 2.0, y = side_g / 2.0;
    std::size_t digits = idx;
    double scale = 0.75;
    for (int lvl = 0; lvl < g; ++lvl) {
      std::size_t corner = digits % 4;
      digits /= 4;
      x += (corner & 1) ? scale : 0.0;
      y += (corner & 2) ? scale : 0.0;
      scale /= 4.0;
    }
    e.coords.push_back(x);
    e.coords.push_back(y);
  }
  e.diam = std::sqrt(2.0) * (1.0 - std::pow(0.25, g));
  return e;
}

}  // namespace

AdrSet generate(const GeometrySpec& spec) {
  AdrSet e;
  switch (spec.kind) {
    case GeometryKind::Line:
    case GeometryKind::Segment: {
      e = sampled_curve(spec, [](double) { return 0.0; }, 0.0, 2.5);
      e.diam = spec.length;
      break;
    }
    case GeometryKind::Circle: {
      const int n = spec.resolution;
      if (n < 16) throw ValidationError("resolution must be >= 16");
      e.ambient_dim = 2;
      e.dim = 1.0;
      e.adr_const = 3.5;
      e.coords.resize(2 * static_cast<std::size_t>(n));
      e.weights.assign(static_cast<std::size_t>(n), 2.0 * kPi * spec.radius / n);
      for (int i = 0; i < n; ++i) {
        double angle = 2.0 * kPi * i / n;
        e.coords[2 * static_cast<std::size_t>(i)] = spec.radius * std::cos(angle);
        e.coords[2 * static_cast<std::size_t>(i) + 1] = spec.radius * std::sin(angle);
      }
      e.diam = (n % 2 == 0) ? 2.0 * spec.radius
                            : 2.0 * spec.radius * std::cos(kPi / (2.0 * n));
      break;
    }
    case GeometryKind::LipschitzGraph: {
      if (!spec.graph_samples.empty()) {
        if (static_cast<int>(spec.graph_samples.size()) != spec.resolution)
          throw ValidationError("graph_samples length must match resolution");
        double l = spec.lipschitz_const > 0.0 ? spec.lipschitz_const : 1.0;
        const auto& samples = spec.graph_samples;
        const double len = spec.length;
        const int n = spec.resolution;
        auto phi = [&samples, len, n](double s) {
          double t = std::clamp(s / len, 0.0, 1.0) * (n - 1);
          int i = std::min(static_cast<int>(t), n - 2);
          double frac = t - i;
          return samples[static_cast<std::size_t>(i)] * (1.0 - frac) +
                 samples[static_cast<std::size_t>(i + 1)] * frac;
        };
        e = sampled_curve(spec, phi, l, 4.0 * std::sqrt(1.0 + l * l));
      } else {
        Profile prof = make_profile(spec);
        double l = spec.lipschitz_const > 0.0 ? spec.lipschitz_const : std::max(prof.lipschitz, 1e-9);
        e = sampled_curve(spec, prof.phi, l, 4.0 * std::sqrt(1.0 + l * l));
      }
      e.diam = diameter(euclidean_space(2), e);
      break;
    }
    case GeometryKind::Cantor4:
      e = generate_cantor(spec);
      break;
    case GeometryKind::Composite: {
      if (spec.pieces.empty()) throw ValidationError("composite needs at least one piece");
      e.ambient_dim = 2;
      e.dim = 1.0;
      e.adr_const = 0.0;
      int label = 0;
      for (const GeometrySpec& sub : spec.pieces) {
        AdrSet part = generate(sub);
        if (!sub.offset.empty()) {
          for (std::size_t i = 0; i < part.size(); ++i)
            for (int d = 0; d < part.ambient_dim && d < static_cast<int>(sub.offset.size()); ++d)
              part.coords[i * static_cast<std::size_t>(part.ambient_dim) + static_cast<std::size_t>(d)] +=
                  sub.offset[static_cast<std::size_t>(d)];
        }
        e.coords.insert(e.coords.end(), part.coords.begin(), part.coords.end());
        e.weights.insert(e.weights.end(), part.weights.begin(), part.weights.end());
        bool labeled = sub.kind == GeometryKind::Line || sub.kind == GeometryKind::Segment ||
                       sub.kind == GeometryKind::LipschitzGraph;
        e.labels.insert(e.labels.end(), part.size(), labeled ? label : -1);
        e.adr_const = std::max(e.adr_const, part.adr_const * 2.0);
        ++label;
      }
      e.diam = diameter(euclidean_space(2), e);
      break;
    }
  }
  e.validate(e.ambient_dim);
  return e;
}

BpsfeWitness big_pieces_witness(const QuasiMetricSpace& space, const AdrSet& e,
                                const DyadicLattice& lattice) {
  BpsfeWitness witness;
  witness.eta = std::numeric_limits<double>::infinity();
  std::map<int, std::vector<int>> by_label;
  if (!e.labels.empty()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e.labels[i] >= 0) by_label[e.labels[i]].push_back(static_cast<int>(i));
  }
  std::map<int, BigPiece> pieces;
  for (const auto& [label, indices] : by_label) pieces[label] = make_big_piece(e, indices);

  double c1 = 0.0;
  for (auto& [label, piece] : pieces) {
    if (piece.cloud.size() < 2) continue;
    piece.cloud.diam = diameter(space, piece.cloud);
    double h = piece.cloud.index().max_nn_spacing();
    std::vector<double> radii;
    for (int i = 0; i < 10; ++i)
      radii.push_back(4.0 * h * std::pow(piece.cloud.diam / (4.0 * h), i / 9.0));
    std::vector<int> centers;
    std::size_t step = std::max<std::size_t>(1, piece.cloud.size() / 48);
    for (std::size_t i = 0; i < piece.cloud.size(); i += step) centers.push_back(static_cast<int>(i));
    c1 = std::max(c1, check_adr(space, piece.cloud, radii, centers).best_const);
  }
  witness.c1 = c1;

  for (std::size_t id = 0; id < lattice.cubes.size(); ++id) {
    const DyadicCube& q = lattice.cubes[id];
    WitnessEntry entry;
    entry.cube = static_cast<int>(id);
    int best_label = -1;
    double best_mass = 0.0;
    if (!e.labels.empty()) {
      std::map<int, double> mass;
      for (int i : q.members)
        if (e.labels[static_cast<std::size_t>(i)] >= 0)
          mass[e.labels[static_cast<std::size_t>(i)]] += e.weights[static_cast<std::size_t>(i)];
      for (const auto& [label, m] : mass) {
        if (m > best_mass) {
          best_mass = m;
          best_label = label;
        }
      }
    }
    if (best_label >= 0) {
      entry.piece = pieces.at(best_label);
      entry.eta_attained = best_mass / q.mass;
    }
    witness.eta = std::min(witness.eta, entry.eta_attained);
    witness.per_cube.push_back(std::move(entry));
  }
  if (!std::isfinite(witness.eta)) witness.eta = 0.0;
  return witness;
}

}  // namespace sqfn
