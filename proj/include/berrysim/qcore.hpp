#pragma once

// Dense complex linear algebra for one- and two-qubit Hilbert spaces (dim 2 and 4).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>

#include "berrysim/errors.hpp"

namespace berrysim {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 4;

namespace detail {

inline void require_dim(int dim) {
  if (dim != 2 && dim != 4) throw ArgumentError("dimension must be 2 or 4, got " + std::to_string(dim));
}

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

// General dim x dim complex matrix, row-major, fixed 4x4 storage.
class Matrix {
 public:
  explicit Matrix(int dim = 2) : dim_(dim) {
    detail::require_dim(dim);
    data_.fill(Complex{});
  }

  Matrix(int dim, std::initializer_list<Complex> rows) : Matrix(dim) {
    if (static_cast<int>(rows.size()) != dim * dim) throw ArgumentError("matrix literal has wrong entry count");
    int i = 0;
    for (Complex z : rows) {
      data_[(i / dim) * kMaxDim + i % dim] = z;
      ++i;
    }
  }

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  int dim() const noexcept { return dim_; }
  Complex& operator()(int r, int c) noexcept { return data_[r * kMaxDim + c]; }
  Complex operator()(int r, int c) const noexcept { return data_[r * kMaxDim + c]; }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  double max_abs() const noexcept {
    double best = 0.0;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) best = std::max(best, std::abs((*this)(r, c)));
    return best;
  }

  bool all_finite() const noexcept {
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        if (!detail::finite((*this)(r, c))) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    Matrix m(a.dim_);
    for (int r = 0; r < a.dim_; ++r)
      for (int k = 0; k < a.dim_; ++k) {
        const Complex ark = a(r, k);
        for (int c = 0; c < a.dim_; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.dim_ != dim_) throw ArgumentError("matrix dimension mismatch");
  }

  int dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.dim() != 2 || b.dim() != 2) throw ArgumentError("kron is only defined for 2x2 factors");
  Matrix m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Normalized pure state. Basis order is |up>, |down> per qubit with qubit 1 as the
// left tensor factor: |uu>, |ud>, |du>, |dd>.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  explicit StateVector(std::span<const Complex> amplitudes) : dim_(static_cast<int>(amplitudes.size())) {
    detail::require_dim(dim_);
    std::copy(amplitudes.begin(), amplitudes.end(), amps_.begin());
    for (int i = 0; i < dim_; ++i)
      if (!detail::finite(amps_[i])) throw ValidationError("state amplitude is not finite");
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) throw ValidationError("state vector is not normalized");
  }

  StateVector(std::initializer_list<Complex> amplitudes)
      : StateVector(std::span<const Complex>(amplitudes.begin(), amplitudes.size())) {}

  static StateVector basis(int dim, int index) {
    detail::require_dim(dim);
    if (index < 0 || index >= dim) throw ArgumentError("basis index out of range");
    std::array<Complex, kMaxDim> a{};
    a[index] = 1.0;
    return StateVector(std::span<const Complex>(a.data(), dim));
  }

  // |up ... up>, the sigma^z-aligned product state.
  static StateVector all_up(int n_qubits) { return basis(n_qubits == 1 ? 2 : 4, 0); }

  // Skips the normalization check; for results of unitary maps applied to valid states.
  static StateVector from_unitary_image(int dim, const std::array<Complex, kMaxDim>& a) {
    StateVector s;
    s.dim_ = dim;
    s.amps_ = a;
    return s;
  }

  int dim() const noexcept { return dim_; }
  Complex operator[](int i) const noexcept { return amps_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return {amps_.data(), static_cast<std::size_t>(dim_)}; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(amps_[i]);
    return s;
  }
  double norm() const noexcept { return std::sqrt(norm_squared()); }

  Complex inner(const StateVector& other) const {
    if (other.dim_ != dim_) throw ArgumentError("state dimension mismatch");
    Complex s{};
    for (int i = 0; i < dim_; ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  friend StateVector operator*(const Matrix& m, const StateVector& v) {
    if (m.dim() != v.dim_) throw ArgumentError("operator/state dimension mismatch");
    std::array<Complex, kMaxDim> out{};
    for (int r = 0; r < v.dim_; ++r)
      for (int c = 0; c < v.dim_; ++c) out[r] += m(r, c) * v.amps_[c];
    return from_unitary_image(v.dim_, out);
  }

 private:
  StateVector() = default;
  int dim_ = 2;
  std::array<Complex, kMaxDim> amps_{};
};

class HermitianOperator {
 public:
  static constexpr double kHermiticityTolerance = 1e-12;

  explicit HermitianOperator(const Matrix& m) : m_(m) {
    if (!m.all_finite()) throw ValidationError("operator has non-finite entries");
    double worst = 0.0;
    for (int r = 0; r < m.dim(); ++r)
      for (int c = 0; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    if (worst > kHermiticityTolerance * std::max(1.0, m.max_abs()))
      throw ValidationError("operator is not Hermitian (residual " + std::to_string(worst) + ")");
  }

  HermitianOperator(int dim, std::initializer_list<Complex> rows) : HermitianOperator(Matrix(dim, rows)) {}

  int dim() const noexcept { return m_.dim(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int r, int c) const noexcept { return m_(r, c); }
  double max_abs() const noexcept { return m_.max_abs(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ + b.m_);
  }
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(a.m_ - b.m_);
  }
  friend HermitianOperator operator*(double s, const HermitianOperator& a) { return HermitianOperator(a.m_ * s); }

 private:
  Matrix m_;
};

enum class Axis { x, y, z };

inline Axis parse_axis(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::x;
    case 'y': case 'Y': return Axis::y;
    case 'z': case 'Z': return Axis::z;
    default: throw ArgumentError(std::string("invalid Pauli axis '") + c + "'");
  }
}

inline Matrix pauli_2x2(Axis a) {
  const Complex i{0.0, 1.0};
  switch (a) {
    case Axis::x: return Matrix(2, {0.0, 1.0, 1.0, 0.0});
    case Axis::y: return Matrix(2, {0.0, -i, i, 0.0});
    case Axis::z: return Matrix(2, {1.0, 0.0, 0.0, -1.0});
  }
  throw ArgumentError("invalid Pauli axis");
}

// sigma^axis on `qubit` (0-based), identity on the other qubit.
inline HermitianOperator pauli(Axis axis, int qubit, int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) throw ArgumentError("n_qubits must be 1 or 2");
  if (qubit < 0 || qubit >= n_qubits) throw ArgumentError("qubit index out of range");
  const Matrix s = pauli_2x2(axis);
  if (n_qubits == 1) return HermitianOperator(s);
  const Matrix id = Matrix::identity(2);
  return HermitianOperator(qubit == 0 ? kron(s, id) : kron(id, s));
}

inline HermitianOperator pauli(char axis, int qubit, int n_qubits) { return pauli(parse_axis(axis), qubit, n_qubits); }

struct SpectralDecomposition {
  int source_dim = 2;
  std::array<double, kMaxDim> eigenvalues{};  // ascending, first source_dim entries valid
  Matrix eigenvectors{2};                     // orthonormal columns

  double value(int n) const { return eigenvalues.at(n); }

  StateVector vector(int n) const {
    std::array<Complex, kMaxDim> a{};
    for (int r = 0; r < source_dim; ++r) a[r] = eigenvectors(r, n);
    return StateVector::from_unitary_image(source_dim, a);
  }

  Matrix reconstruct() const {
    Matrix lambda(source_dim);
    for (int i = 0; i < source_dim; ++i) lambda(i, i) = eigenvalues[i];
    return eigenvectors * lambda * eigenvectors.adjoint();
  }
};

namespace detail {

// Multiply each column so its largest-magnitude component is real and positive.
// Ties within 1e-12 resolve to the lowest index.
inline void fix_phases(Matrix& v) {
  const int n = v.dim();
  for (int c = 0; c < n; ++c) {
    double best = 0.0;
    for (int r = 0; r < n; ++r) best = std::max(best, std::abs(v(r, c)));
    int pick = 0;
    for (int r = 0; r < n; ++r)
      if (std::abs(v(r, c)) >= best - 1e-12) {
        pick = r;
        break;
      }
    const Complex z = v(pick, c);
    if (std::abs(z) == 0.0) continue;
    const Complex phase = std::conj(z) / std::abs(z);
    for (int r = 0; r < n; ++r) v(r, c) *= phase;
    v(pick, c) = Complex(v(pick, c).real(), 0.0);
  }
}

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic complex Jacobi. Each rotation first makes a_pq real with a phase on column q,
// then applies the classical real rotation that annihilates it.
inline SpectralDecomposition eigh(const HermitianOperator& h) {
  const int n = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::identity(n);
  double frob = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) frob += std::norm(a(r, c));
  frob = std::sqrt(frob);
  const double threshold = std::max(1e-13 * frob, 1e-300);

  for (int sweep = 0; sweep < 64 && detail::off_diagonal_norm(a) > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex e = apq / mag;  // e^{i alpha}
        const Complex ec = std::conj(e);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]] on (p, q).
        for (int k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * ec * akq;
          a(k, q) = s * akp + c * ec * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * ec * vkq;
          v(k, q) = s * vkp + c * ec * vkq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::array<int, kMaxDim> order{0, 1, 2, 3};
  std::sort(order.begin(), order.begin() + n, [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out;
  out.source_dim = n;
  out.eigenvectors = Matrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  detail::fix_phases(out.eigenvectors);
  return out;
}

// Eigenvalues closer than this are treated as degenerate.
inline double degeneracy_tolerance(const HermitianOperator& h) { return 1e-9 * std::max(1.0, h.max_abs()); }

inline double expectation(const StateVector& psi, const HermitianOperator& a) {
  if (psi.dim() != a.dim()) throw ArgumentError("state/operator dimension mismatch");
  Complex s{};
  for (int r = 0; r < psi.dim(); ++r) {
    Complex row{};
    for (int c = 0; c < psi.dim(); ++c) row += a(r, c) * psi[c];
    s += std::conj(psi[r]) * row;
  }
  return s.real();
}

// exp(-i H dt). Closed-form SU(2) exponential for dim 2, spectral route for dim 4.
inline Matrix unitary_step(const HermitianOperator& h, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("time step must be positive and finite");
  const Complex i{0.0, 1.0};
  if (h.dim() == 2) {
    const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double hz = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double hx = h(0, 1).real();
    const double hy = -h(0, 1).imag();
    const double mag = std::sqrt(hx * hx + hy * hy + hz * hz);
    const double c = std::cos(mag * dt);
    const double sinc = mag > 0.0 ? std::sin(mag * dt) / mag : dt;
    const Complex g = std::exp(-i * (h0 * dt));
    // cos I - i sin (n . sigma)
    return Matrix(2, {g * Complex(c, -sinc * hz), g * (-i * sinc * Complex(hx, -hy)),
                      g * (-i * sinc * Complex(hx, hy)), g * Complex(c, sinc * hz)});
  }
  const SpectralDecomposition sd = eigh(h);
  Matrix phase(h.dim());
  for (int k = 0; k < h.dim(); ++k) phase(k, k) = std::exp(-i * (sd.eigenvalues[k] * dt));
  return sd.eigenvectors * phase * sd.eigenvectors.adjoint();
}

inline StateVector evolve_step(const StateVector& psi, const HermitianOperator& h, double dt) {
  if (psi.dim() != h.dim()) throw ArgumentError("state/operator dimension mismatch");
  return unitary_step(h, dt) * psi;
}

}  // namespace berrysim
