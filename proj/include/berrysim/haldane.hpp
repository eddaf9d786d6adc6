#pragma once

// Four-band stacked triangular lattice (orbitals A-up, B-up, B-down, C-down) whose
// ground band carries the two-qubit phase diagram, and a link-variable lattice Chern
// number for its bands.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "berrysim/berry.hpp"
#include "berrysim/bzmap.hpp"
#include "berrysim/errors.hpp"
#include "berrysim/qcore.hpp"

namespace berrysim {

struct HaldaneParams {
  double t1 = 1.0;
  double t2 = 0.0;
  double t3 = 0.0;
  double h_z = 0.0;

  static constexpr double kHoppingPhase = std::numbers::pi / 2.0;

  void validate() const {
    if (!(t1 > 0.0) || !std::isfinite(t1)) throw ValidationError("t1 must be positive");
    if (!std::isfinite(t2) || !std::isfinite(t3) || !std::isfinite(h_z)) throw ValidationError("hoppings must be finite");
  }
};

namespace lattice {

inline const double kSqrt3 = std::sqrt(3.0);

// Nearest-neighbour bond vectors (unit bond length).
inline const std::array<Vec2, 3> a{{{0.0, 1.0}, {-kSqrt3 / 2.0, -0.5}, {kSqrt3 / 2.0, -0.5}}};
// Next-nearest-neighbour vectors with positive hopping phase on the A sublattice.
inline const std::array<Vec2, 3> b{{{-kSqrt3, 0.0}, {kSqrt3 / 2.0, -1.5}, {kSqrt3 / 2.0, 1.5}}};

// Right-handed Bravais primitive vectors and their reciprocal partners, G_i . R_j = 2 pi delta_ij.
inline const Vec2 r1 = b[1];
inline const Vec2 r2 = b[2];
inline const Vec2 g1 = [] {
  const double det = r1.x * r2.y - r1.y * r2.x;
  return Vec2{2.0 * std::numbers::pi * r2.y / det, -2.0 * std::numbers::pi * r2.x / det};
}();
inline const Vec2 g2 = [] {
  const double det = r1.x * r2.y - r1.y * r2.x;
  return Vec2{-2.0 * std::numbers::pi * r1.y / det, 2.0 * std::numbers::pi * r1.x / det};
}();

inline const Vec2 k_point{4.0 * std::numbers::pi / (3.0 * kSqrt3), 0.0};
inline const Vec2 k_prime_point{-4.0 * std::numbers::pi / (3.0 * kSqrt3), 0.0};

inline double dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }

}  // namespace lattice

// sum_j cos(k . a_j), the real part of the nearest-neighbour form factor.
inline double nn_cos_sum(const Vec2& k) {
  double s = 0.0;
  for (const Vec2& a : lattice::a) s += std::cos(lattice::dot(k, a));
  return s;
}

inline double nnn_sin_sum(const Vec2& k) {
  double s = 0.0;
  for (const Vec2& b : lattice::b) s += std::sin(lattice::dot(k, b));
  return s;
}

// sum_j exp(i k . (a_j - a_1)): the nearest-neighbour form factor in the gauge where
// H(k) is periodic under reciprocal-lattice translations. |f| matches sum_j exp(i k . a_j).
inline Complex nn_form_factor(const Vec2& k) {
  Complex s{};
  for (const Vec2& a : lattice::a) s += std::polar(1.0, lattice::dot(k, a - lattice::a[0]));
  return s;
}

struct BlochPoint {
  Vec2 k;
  HermitianOperator h_k;
  std::array<double, 4> band_energies{};
};

inline HermitianOperator bloch_matrix(const HaldaneParams& p, const Vec2& k) {
  const Complex f = -p.t1 * nn_form_factor(k);
  const double m = 2.0 * p.t2 * nnn_sin_sum(k);
  Matrix h(4);
  h(0, 0) = -m - p.h_z;
  h(1, 1) = -p.h_z;
  h(2, 2) = p.h_z;
  h(3, 3) = m + p.h_z;
  h(0, 1) = h(0, 2) = f;
  h(1, 0) = h(2, 0) = std::conj(f);
  h(1, 3) = h(2, 3) = f;
  h(3, 1) = h(3, 2) = std::conj(f);
  h(1, 2) = h(2, 1) = p.t3;
  return HermitianOperator(h);
}

inline BlochPoint bloch_hamiltonian(const HaldaneParams& p, const Vec2& k) {
  p.validate();
  BlochPoint bp{k, bloch_matrix(p, k), {}};
  const SpectralDecomposition sd = eigh(bp.h_k);
  for (int n = 0; n < 4; ++n) bp.band_energies[n] = sd.eigenvalues[n];
  return bp;
}

// 3 sqrt(3) t2 = H_r, -t3 = g, 2 h_z = H_0, in units of `scale`.
inline HaldaneParams from_qubit_params(double h_r, double g, double h_0, double scale = 1.0) {
  if (!(h_r > 0.0)) throw ValidationError("H_r must be positive");
  if (!(scale > 0.0)) throw ValidationError("energy scale must be positive");
  HaldaneParams p;
  p.t2 = h_r / (3.0 * lattice::kSqrt3 * scale);
  p.t3 = -g / scale;
  p.h_z = h_0 / (2.0 * scale);
  p.t1 = std::max({5.0 * std::abs(p.t2), std::abs(p.t3), std::abs(p.h_z)});
  return p;
}

namespace detail {

inline Complex link(const Matrix& u, const Matrix& v, int band) {
  Complex s{};
  for (int r = 0; r < 4; ++r) s += std::conj(u(r, band)) * v(r, band);
  const double n = std::abs(s);
  if (n == 0.0) throw GaplessError("vanishing band overlap between neighbouring k points", 0.0);
  return s / n;
}

}  // namespace detail

// Link-variable Chern number of one band on an N x N grid of the reciprocal cell.
inline ChernEstimate lattice_chern(const HaldaneParams& p, int band = 0, int n = 48) {
  p.validate();
  if (band < 0 || band > 3) throw ArgumentError("band index must be 0..3");
  if (n < 2) throw ArgumentError("lattice grid must be at least 2x2");
  std::vector<Matrix> vecs;
  vecs.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 k = (static_cast<double>(i) / n) * lattice::g1 + (static_cast<double>(j) / n) * lattice::g2;
      const SpectralDecomposition sd = eigh(bloch_matrix(p, k));
      double gap = std::numeric_limits<double>::infinity();
      if (band > 0) gap = std::min(gap, sd.eigenvalues[band] - sd.eigenvalues[band - 1]);
      if (band < 3) gap = std::min(gap, sd.eigenvalues[band + 1] - sd.eigenvalues[band]);
      if (gap <= 1e-10) throw GaplessError("band gap closes on the lattice grid", gap);
      vecs.push_back(sd.eigenvectors);
    }
  }
  auto at = [&](int i, int j) -> const Matrix& { return vecs[static_cast<std::size_t>(i % n) * n + (j % n)]; };
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex u1 = detail::link(at(i, j), at(i + 1, j), band);
      const Complex u2 = detail::link(at(i + 1, j), at(i + 1, j + 1), band);
      const Complex u3 = detail::link(at(i, j + 1), at(i + 1, j + 1), band);
      const Complex u4 = detail::link(at(i, j), at(i, j + 1), band);
      total += std::arg(u1 * u2 * std::conj(u3) * std::conj(u4));
    }
  }
  const double value = total / (2.0 * std::numbers::pi);
  ChernEstimate e = ChernEstimate::of(std::round(value), ChernMethod::lattice);
  return e;
}

inline std::vector<std::array<double, 4>> band_dispersion(const HaldaneParams& p, const std::vector<Vec2>& path) {
  if (path.empty()) throw ArgumentError("k path is empty");
  std::vector<std::array<double, 4>> out;
  out.reserve(path.size());
  for (const Vec2& k : path) out.push_back(bloch_hamiltonian(p, k).band_energies);
  return out;
}

// Straight cut K' -> Gamma -> K along k_y = 0, n points inclusive.
inline std::vector<Vec2> corner_cut(int n, double overshoot = 0.25) {
  if (n < 2) throw ArgumentError("k path needs at least two points");
  const double kmax = lattice::k_point.x * (1.0 + overshoot);
  std::vector<Vec2> path;
  path.reserve(n);
  for (int i = 0; i < n; ++i) path.push_back({-kmax + 2.0 * kmax * i / (n - 1), 0.0});
  return path;
}

}  // namespace berrysim
