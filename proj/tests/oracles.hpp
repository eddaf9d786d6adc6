#pragma once

// Reference implementations used only by the tests. Each one takes a different
// numerical route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "berrysim/berry.hpp"
#include "berrysim/qcore.hpp"

namespace oracle {

using berrysim::Complex;
using berrysim::HermitianOperator;
using berrysim::Matrix;

inline HermitianOperator random_hermitian(std::mt19937_64& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(dim);
  for (int r = 0; r < dim; ++r) {
    m(r, r) = n(rng);
    for (int c = r + 1; c < dim; ++c) {
      m(r, c) = Complex(n(rng), n(rng));
      m(c, r) = std::conj(m(r, c));
    }
  }
  return HermitianOperator(m);
}

// exp(-i H dt) by scaling and squaring a truncated Taylor series.
inline Matrix taylor_expm(const HermitianOperator& h, double dt) {
  const int dim = h.dim();
  Matrix a(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(0.0, -dt) * h(r, c);
  int squarings = 0;
  double norm = a.max_abs() * dim;
  while (norm > 0.1) {
    norm /= 2.0;
    ++squarings;
  }
  const double s = std::ldexp(1.0, -squarings);
  a = a * Complex(s, 0.0);
  Matrix term = Matrix::identity(dim), sum = Matrix::identity(dim);
  for (int k = 1; k <= 30; ++k) {
    term = term * a * Complex(1.0 / k, 0.0);
    sum = sum + term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline Complex det(Matrix m) {
  const int n = m.dim();
  Complex d{1.0, 0.0};
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (std::abs(m(piv, c)) == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(m(c, k), m(piv, k));
      d = -d;
    }
    d *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const Complex f = m(r, c) / m(c, c);
      for (int k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return d;
}

// Eigenvalues as roots of det(H - x) found by scanning and bisection. Degenerate
// roots show up as sign-touching minima and are picked up from |det| minima.
inline std::vector<double> characteristic_roots(const HermitianOperator& h) {
  const int n = h.dim();
  Matrix base(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) base(r, c) = h(r, c);
  auto p = [&](double x) {
    Matrix m = base;
    for (int i = 0; i < n; ++i) m(i, i) -= x;
    return det(m).real();
  };
  const double bound = h.max_abs() * n + 1.0;
  const int steps = 20000;
  std::vector<double> roots;
  double prev_x = -bound, prev = p(prev_x);
  for (int i = 1; i <= steps && static_cast<int>(roots.size()) < n; ++i) {
    const double x = -bound + 2.0 * bound * i / steps;
    const double v = p(x);
    if (prev == 0.0) {
      roots.push_back(prev_x);
    } else if ((prev < 0.0) != (v < 0.0)) {
      double lo = prev_x, hi = x, flo = prev;
      for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev = v;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Sector energies of the two-qubit Hamiltonian with the field along z, read off
// the matrix blocks directly: |uu>, |dd> diagonal, and the 2x2 {|ud>, |du>} block
// solved by the quadratic formula.
inline std::array<double, 4> block_energies(const HermitianOperator& h) {
  const double uu = h(0, 0).real(), dd = h(3, 3).real();
  const double a = h(1, 1).real(), d = h(2, 2).real();
  const double off = std::abs(h(1, 2));
  const double mean = 0.5 * (a + d), half = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  std::array<double, 4> e{uu, dd, mean - half, mean + half};
  std::sort(e.begin(), e.end());
  return e;
}

// Ground-state Berry flux through a (theta, phi) grid on the sphere from the phases
// of plaquette overlaps, in units of the full Chern number.
inline double plaquette_chern(const berrysim::SphereParams& p, int n_theta, int n_phi) {
  std::vector<berrysim::StateVector> g;
  g.reserve(static_cast<std::size_t>(n_theta + 1) * n_phi);
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const double th = std::numbers::pi * i / n_theta, ph = 2.0 * std::numbers::pi * j / n_phi;
      g.push_back(berrysim::eigh(berrysim::sphere_hamiltonian(p, th, ph)).vector(0));
    }
  auto at = [&](int i, int j) -> const berrysim::StateVector& { return g[i * n_phi + (j % n_phi)]; };
  auto ov = [](const berrysim::StateVector& a, const berrysim::StateVector& b) { return a.inner(b); };
  double flux = 0.0;
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      flux += std::arg(ov(at(i, j), at(i + 1, j)) * ov(at(i + 1, j), at(i + 1, j + 1)) *
                       ov(at(i + 1, j + 1), at(i, j + 1)) * ov(at(i, j + 1), at(i, j)));
  return flux / (2.0 * std::numbers::pi);
}

// Finite-difference Berry curvature B_{theta phi} on the phi = 0 meridian from a
// small plaquette, for comparison with the spectral sum.
inline double plaquette_curvature(const berrysim::SphereParams& p, double theta, double d = 1e-4) {
  auto gs = [&](double th, double ph) { return berrysim::eigh(berrysim::sphere_hamiltonian(p, th, ph)).vector(0); };
  const auto a = gs(theta - d, -d), b = gs(theta + d, -d), c = gs(theta + d, d), e = gs(theta - d, d);
  const double phase = std::arg(a.inner(b) * b.inner(c) * c.inner(e) * e.inner(a));
  return phase / (4.0 * d * d);
}

}  // namespace oracle
