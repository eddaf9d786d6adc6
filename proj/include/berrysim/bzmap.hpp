#pragma once

// Haldane-model view of the single-qubit sphere: the confocal map from the
// parameter sphere onto the hexagonal Brillouin zone, ground-state spin textures,
// and their winding number.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "berrysim/berry.hpp"
#include "berrysim/controls.hpp"
#include "berrysim/errors.hpp"
#include "berrysim/propagator.hpp"

namespace berrysim {

struct Vec2 {
  double x = 0.0, y = 0.0;

  friend Vec2 operator+(Vec2 a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  double norm() const noexcept { return std::hypot(x, y); }
};

inline Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Regular hexagon centred on the origin with adjacent corners K (angle 0) and K'
// (angle 60 degrees). The side length equals |K - K'| = b.
class BrillouinZone {
 public:
  static constexpr int kSectors = 3;

  explicit BrillouinZone(double b = 1.0) : b_(b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ValidationError("Brillouin-zone scale b must be positive");
  }

  double b() const noexcept { return b_; }
  Vec2 vertex(int i) const { return rotate({b_, 0.0}, i * std::numbers::pi / 3.0); }
  std::array<Vec2, 6> vertices() const {
    std::array<Vec2, 6> v;
    for (int i = 0; i < 6; ++i) v[i] = vertex(i);
    return v;
  }
  // Sector s owns the K corner at 120 s degrees and the K' corner 60 degrees after it.
  Vec2 k_point(int sector = 0) const { return vertex(2 * wrap(sector)); }
  Vec2 k_prime_point(int sector = 0) const { return vertex(2 * wrap(sector) + 1); }

 private:
  static int wrap(int s) { return ((s % kSectors) + kSectors) % kSectors; }
  double b_;
};

// Distance from K to the edge of the equatorial triangle in direction phi.
inline double confocal_radius(double phi, double b) {
  constexpr double pi = std::numbers::pi;
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  const double half = b * std::sin(pi / 6.0);
  if (phi < 2.0 * pi / 3.0) return half / std::sin(5.0 * pi / 6.0 - phi);
  if (phi < 4.0 * pi / 3.0) return half / -std::cos(phi);
  return half / std::sin(phi - 7.0 * pi / 6.0);
}

// Northern hemisphere, equator included: polar coordinates (rho, phi) about K. Southern hemisphere:
// polar coordinates (rho, pi - phi) about K', with rho measured from the south pole.
// The reflection keeps both patches orientation-preserving.
inline Vec2 confocal_map(double theta, double phi, int sector = 0, const BrillouinZone& bz = BrillouinZone{}) {
  constexpr double pi = std::numbers::pi;
  if (!(theta >= 0.0 && theta <= pi)) throw ArgumentError("theta must lie in [0, pi]");
  if (!std::isfinite(phi)) throw ArgumentError("phi must be finite");
  const bool north = theta <= pi / 2.0;
  const double angle = north ? phi : pi - phi;
  const double rho = confocal_radius(angle, bz.b()) * std::tan((north ? theta : pi - theta) / 2.0);
  const Vec2 centre = north ? bz.k_point(0) : bz.k_prime_point(0);
  const Vec2 k = centre + Vec2{rho * std::cos(angle), rho * std::sin(angle)};
  return rotate(k, sector * 2.0 * pi / 3.0);
}

enum class TexturePrep { exact_ground, adiabatic_sim };

struct TexturePoint {
  Vec2 k;
  Vec3 bloch;
  int sector = 0;
};

// Bloch vectors on a (theta, phi) grid of the sphere (H_r n + H_0 z), plus their
// images in the Brillouin zone. theta nodes include both poles; phi is periodic.
struct TextureGrid {
  double h_r = 0.0;
  double h_0 = 0.0;
  int n_theta = 0;
  int n_phi = 0;
  TexturePrep prep = TexturePrep::exact_ground;
  BrillouinZone bz;
  std::vector<Vec3> bloch;   // n_theta * n_phi, theta-major
  std::vector<char> valid;   // 0 where the node sits on a degeneracy
  std::vector<TexturePoint> points;

  double theta(int i) const { return std::numbers::pi * i / (n_theta - 1); }
  double phi(int j) const { return 2.0 * std::numbers::pi * j / n_phi; }
  const Vec3& at(int i, int j) const { return bloch[i * n_phi + ((j % n_phi) + n_phi) % n_phi]; }
  bool ok(int i, int j) const { return valid[i * n_phi + ((j % n_phi) + n_phi) % n_phi] != 0; }
  int excluded() const {
    int n = 0;
    for (char v : valid) n += v == 0;
    return n;
  }
};

inline Vec3 unit(const Vec3& v) {
  const double n = v.norm();
  return {v.x / n, v.y / n, v.z / n};
}

inline ControlVector sphere_control(double h_r, double h_0, double theta, double phi) {
  return sphere_point(SphereParams{1, h_r, h_0, 0.0}, theta, phi);
}

inline TextureGrid texture_grid(double h_r, double h_0, int n_theta, int n_phi, TexturePrep prep,
                                const BrillouinZone& bz = BrillouinZone{}, const PrepareOptions& prep_opt = {}) {
  if (n_theta < 8 || n_phi < 8) throw ArgumentError("texture grid must be at least 8x8");
  if (!(h_r > 0.0)) throw ValidationError("H_r must be positive");
  TextureGrid g{h_r, h_0, n_theta, n_phi, prep, bz, {}, {}, {}};
  g.bloch.resize(static_cast<std::size_t>(n_theta) * n_phi);
  g.valid.assign(g.bloch.size(), 1);
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const ControlVector cv = sphere_control(h_r, h_0, g.theta(i), g.phi(j));
      const std::size_t idx = static_cast<std::size_t>(i) * n_phi + j;
      const HermitianOperator h = hamiltonian(cv, 1);
      if (prep == TexturePrep::exact_ground) {
        try {
          const BlochVector b = bloch_vector(ground_state(h), 0);
          g.bloch[idx] = unit({b.x, b.y, b.z});
        } catch (const DegeneracyError&) {
          g.valid[idx] = 0;
        }
      } else {
        const PreparedState ps = adiabatic_prepare(cv, 1, prep_opt);
        const BlochVector& b = ps.bloch[0];
        if (ps.degenerate || b.norm() == 0.0) {
          g.valid[idx] = 0;
        } else {
          g.bloch[idx] = unit({b.x, b.y, b.z});
        }
      }
    }
  }
  for (int s = 0; s < BrillouinZone::kSectors; ++s)
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j)
        if (g.ok(i, j)) g.points.push_back({confocal_map(g.theta(i), g.phi(j), s, bz), g.at(i, j), s});
  return g;
}

enum class TextureMethod { planar_eq_s5, solid_angle };

struct TextureChern {
  ChernEstimate sector;     // one sphere image, the reported Chern number
  double full_zone = 0.0;   // the same integrand summed over all three sectors
};

namespace detail {

inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline void check_resolution(const TextureGrid& g) {
  constexpr double limit = std::numbers::pi / 2.0;
  for (int i = 0; i < g.n_theta; ++i) {
    for (int j = 0; j < g.n_phi; ++j) {
      if (!g.ok(i, j)) continue;
      if (g.ok(i, j + 1) && angle_between(g.at(i, j), g.at(i, j + 1)) > limit)
        throw ResolutionError("adjacent Bloch vectors more than 90 degrees apart in phi");
      if (i + 1 < g.n_theta && g.ok(i + 1, j) && angle_between(g.at(i, j), g.at(i + 1, j)) > limit)
        throw ResolutionError("adjacent Bloch vectors more than 90 degrees apart in theta");
    }
  }
}

// Signed solid angle of the spherical triangle (a, b, c).
inline double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(num, den);
}

inline double solid_angle_sum(const TextureGrid& g, bool& skipped) {
  double total = 0.0;
  for (int i = 0; i + 1 < g.n_theta; ++i) {
    for (int j = 0; j < g.n_phi; ++j) {
      if (!g.ok(i, j) || !g.ok(i + 1, j) || !g.ok(i + 1, j + 1) || !g.ok(i, j + 1)) {
        skipped = true;
        continue;
      }
      total += triangle_solid_angle(g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1));
      total += triangle_solid_angle(g.at(i, j), g.at(i + 1, j + 1), g.at(i, j + 1));
    }
  }
  return total / (4.0 * std::numbers::pi);
}

// sigma . (d_kx sigma x d_ky sigma) d^2k over the cells of one sector image, with
// cell-centred differences of sigma and of the mapped k coordinates.
inline double planar_sum(const TextureGrid& g, int sector, bool& skipped) {
  const int eq = (g.n_theta - 1) / 2;
  double total = 0.0;
  for (int i = 0; i + 1 < g.n_theta; ++i) {
    // Map both corners of the cell through the hemisphere the cell belongs to.
    const bool north = i < eq;
    const double t0 = g.theta(i), t1 = g.theta(i + 1);
    auto map = [&](double t, double p) {
      const double tt = north ? t : std::max(t, std::nextafter(std::numbers::pi / 2.0, 4.0));
      return confocal_map(tt, p, sector, g.bz);
    };
    for (int j = 0; j < g.n_phi; ++j) {
      if (!g.ok(i, j) || !g.ok(i + 1, j) || !g.ok(i + 1, j + 1) || !g.ok(i, j + 1)) {
        skipped = true;
        continue;
      }
      const double p0 = g.phi(j), p1 = g.phi(j) + 2.0 * std::numbers::pi / g.n_phi;
      const Vec2 k00 = map(t0, p0), k10 = map(t1, p0), k11 = map(t1, p1), k01 = map(t0, p1);
      const Vec3 &s00 = g.at(i, j), &s10 = g.at(i + 1, j), &s11 = g.at(i + 1, j + 1), &s01 = g.at(i, j + 1);

      const Vec2 ku = 0.5 * ((k10 - k00) + (k11 - k01));
      const Vec2 kv = 0.5 * ((k01 - k00) + (k11 - k10));
      const Vec3 su = 0.5 * ((s10 - s00) + (s11 - s01));
      const Vec3 sv = 0.5 * ((s01 - s00) + (s11 - s10));
      const Vec3 sc = unit(0.25 * (s00 + s10 + s11 + s01));

      const double det = ku.x * kv.y - ku.y * kv.x;
      if (det == 0.0) continue;
      // Solve [ku kv]^T [d_kx; d_ky] = [su; sv] for the planar gradients.
      const Vec3 dx = (1.0 / det) * (kv.y * su - ku.y * sv);
      const Vec3 dy = (1.0 / det) * (ku.x * sv - kv.x * su);
      total += sc.dot(dx.cross(dy)) * std::abs(det);
    }
  }
  return total / (4.0 * std::numbers::pi);
}

}  // namespace detail

inline TextureChern texture_chern(const TextureGrid& g, TextureMethod method) {
  detail::check_resolution(g);
  bool skipped = false;
  TextureChern out;
  if (method == TextureMethod::solid_angle) {
    const double v = detail::solid_angle_sum(g, skipped);
    out.sector = ChernEstimate::of(v, ChernMethod::texture);
    out.full_zone = BrillouinZone::kSectors * v;
  } else {
    if (g.n_theta % 2 == 0) throw ArgumentError("planar evaluation needs the equator on the grid (odd n_theta)");
    double full = 0.0;
    for (int s = 0; s < BrillouinZone::kSectors; ++s) {
      const double v = detail::planar_sum(g, s, skipped);
      if (s == 0) out.sector = ChernEstimate::of(v, ChernMethod::texture);
      full += v;
    }
    out.full_zone = full;
  }
  if (skipped) {
    out.sector.set(ChernFlag::degenerate_encounter);
    out.sector.rounded.reset();
  }
  return out;
}

struct DiracParams {
  double m0 = 0.0;
  double mt = 1.0;
  double v_f = 1.0;
};

enum class DiracPhase { topological, trivial, boundary };

inline std::string to_string(DiracPhase p) {
  switch (p) {
    case DiracPhase::topological: return "topological";
    case DiracPhase::trivial: return "trivial";
    case DiracPhase::boundary: return "boundary";
  }
  return "unknown";
}

inline DiracPhase dirac_phase(const DiracParams& d) {
  if (!std::isfinite(d.m0) || !std::isfinite(d.mt)) throw ValidationError("Dirac masses must be finite");
  const double a = std::abs(d.m0), b = std::abs(d.mt);
  if (std::abs(a - b) <= 1e-12 * std::max(a, b)) return DiracPhase::boundary;
  return a > b ? DiracPhase::trivial : DiracPhase::topological;
}

// H_0/H_r on the sphere plays the role of m0/mt.
inline DiracParams dirac_from_sphere(double h_r, double h_0) { return {h_0, h_r, 1.0}; }

}  // namespace berrysim
