#pragma once

// Minimal complex 2x2 / 4x4 dense matrix algebra with eigenvalue solvers.
// Everything here is fixed-size and header-only; no external numerics.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

namespace esdsim {

using Complex = std::complex<double>;

/// Thrown when a matrix required to be Hermitian is not, within tolerance.
class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the QR iteration exhausts its sweep cap without converging.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> e{};

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2 identity() { return Mat2{{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)}}; }
};

/// Dense 4x4 complex matrix, row-major.
struct Mat4 {
  std::array<Complex, 16> e{};

  Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
  const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = Complex(1.0);
    return m;
  }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (std::size_t i = 0; i < 4; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (std::size_t i = 0; i < 4; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

inline Mat2 operator*(Complex s, const Mat2& a) {
  Mat2 m;
  for (std::size_t i = 0; i < 4; ++i) m.e[i] = s * a.e[i];
  return m;
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return m;
}

inline Mat2 adjoint(const Mat2& a) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = std::conj(a(j, i));
  return m;
}

inline Complex trace(const Mat2& a) { return a(0, 0) + a(1, 1); }

inline Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

inline Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

inline Mat4 operator*(Complex s, const Mat4& a) {
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = s * a.e[i];
  return m;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex acc(0.0);
      for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
      m(i, j) = acc;
    }
  return m;
}

inline Mat4 adjoint(const Mat4& a) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = std::conj(a(j, i));
  return m;
}

/// Entrywise complex conjugate (no transpose).
inline Mat4 conjugate(const Mat4& a) {
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.e[i] = std::conj(a.e[i]);
  return m;
}

inline Complex trace(const Mat4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

inline double max_abs(const Mat4& a) {
  double m = 0.0;
  for (const Complex& z : a.e) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
  return m;
}

inline bool is_finite(const Mat2& a) {
  for (const Complex& z : a.e)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

inline bool is_finite(const Mat4& a) {
  for (const Complex& z : a.e)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

/// max |a - a^dagger| over all entries.
inline double hermiticity_deviation(const Mat4& a) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

inline Mat2 sigma_x() { return Mat2{{Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0)}}; }
inline Mat2 sigma_y() { return Mat2{{Complex(0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0)}}; }
inline Mat2 sigma_z() { return Mat2{{Complex(1.0), Complex(0.0), Complex(0.0), Complex(-1.0)}}; }

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

namespace detail {

// Householder reduction to upper Hessenberg form, in place.
inline void reduce_to_hessenberg(std::array<Complex, 16>& a) {
  constexpr int n = 4;
  for (int k = 0; k + 2 < n; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += std::norm(a[i * n + k]);
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;

    const Complex x0 = a[(k + 1) * n + k];
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex(1.0);
    const Complex alpha = -phase * colnorm;

    std::array<Complex, n> v{};
    for (int i = k + 1; i < n; ++i) v[i] = a[i * n + k];
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // A <- P A, with P = I - beta v v^H acting on rows k+1..n-1
    for (int j = k; j < n; ++j) {
      Complex dot(0.0);
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a[i * n + j];
      dot *= beta;
      for (int i = k + 1; i < n; ++i) a[i * n + j] -= dot * v[i];
    }
    // A <- A P on columns k+1..n-1
    for (int i = 0; i < n; ++i) {
      Complex dot(0.0);
      for (int j = k + 1; j < n; ++j) dot += a[i * n + j] * v[j];
      dot *= beta;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= dot * std::conj(v[j]);
    }
  }
}

// Complex Givens rotation G = [[c, s], [-conj(s), c]] with c real, chosen so
// that G * (a, b)^T has a zero second component.
struct Givens {
  double c;
  Complex s;
};

inline Givens make_givens(Complex a, Complex b) {
  const double ab = std::abs(b);
  if (ab == 0.0) return {1.0, Complex(0.0)};
  const double aa = std::abs(a);
  if (aa == 0.0) return {0.0, std::conj(b) / ab};
  const double r = std::hypot(aa, ab);
  return {aa / r, (a / aa) * (std::conj(b) / r)};
}

// Eigenvalues of [[a, b], [c, d]], larger-magnitude root first; the smaller
// root is refined through the determinant to limit cancellation.
inline std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
  const Complex mid = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  Complex big = mid + disc;
  if (std::abs(mid - disc) > std::abs(big)) big = mid - disc;
  const Complex det = a * d - b * c;
  const Complex small = std::abs(big) > 0.0 ? det / big : mid;
  return {big, small};
}

// Shifted QR iteration on a 4x4 complex matrix. Returns the eigenvalues in
// no particular order; throws NonConvergenceError past the sweep cap unless
// the remaining subdiagonals are already below tol * norm.
inline std::array<Complex, 4> qr_eigenvalues(std::array<Complex, 16> a, double tol) {
  constexpr int n = 4;
  constexpr int sweep_cap = 500;
  const double eps = std::numeric_limits<double>::epsilon();

  double anorm = 0.0;
  for (const Complex& z : a) anorm = std::max(anorm, std::abs(z));
  std::array<Complex, 4> out{};
  if (anorm == 0.0) return out;

  reduce_to_hessenberg(a);

  auto sub_negligible = [&](int i) {
    double thresh = eps * (std::abs(a[(i - 1) * n + (i - 1)]) + std::abs(a[i * n + i]));
    if (thresh == 0.0) thresh = eps * anorm;
    return std::abs(a[i * n + (i - 1)]) <= thresh;
  };

  int end = n - 1;
  int sweeps = 0;
  while (end >= 0) {
    if (end == 0) {
      out[0] = a[0];
      break;
    }
    if (sub_negligible(end)) {
      out[end] = a[end * n + end];
      --end;
      continue;
    }
    int lo = end;
    while (lo > 0 && !sub_negligible(lo)) --lo;
    if (lo == end - 1) {
      auto [big, small] = eig2(a[lo * n + lo], a[lo * n + end], a[end * n + lo], a[end * n + end]);
      out[end] = big;
      out[lo] = small;
      end -= 2;
      continue;
    }

    if (++sweeps > sweep_cap) {
      bool acceptable = true;
      for (int i = 1; i <= end; ++i)
        if (std::abs(a[i * n + (i - 1)]) > tol * anorm) acceptable = false;
      if (!acceptable)
        throw NonConvergenceError("eigenvalue QR iteration did not converge within 500 sweeps");
      for (int i = 0; i <= end; ++i) out[i] = a[i * n + i];
      break;
    }

    // Wilkinson shift: eigenvalue of the trailing 2x2 closest to the corner.
    const Complex w11 = a[(end - 1) * n + (end - 1)];
    const Complex w12 = a[(end - 1) * n + end];
    const Complex w21 = a[end * n + (end - 1)];
    const Complex w22 = a[end * n + end];
    auto [m1, m2] = eig2(w11, w12, w21, w22);
    const Complex mu = std::abs(m1 - w22) < std::abs(m2 - w22) ? m1 : m2;

    // Explicit shifted QR step on the decoupled block [lo..end]; entries
    // outside the block do not affect the spectrum.
    for (int i = lo; i <= end; ++i) a[i * n + i] -= mu;
    std::array<Givens, 3> rot{};
    for (int i = lo; i < end; ++i) {
      const Givens g = make_givens(a[i * n + i], a[(i + 1) * n + i]);
      rot[static_cast<std::size_t>(i - lo)] = g;
      for (int j = i; j <= end; ++j) {
        const Complex t1 = a[i * n + j];
        const Complex t2 = a[(i + 1) * n + j];
        a[i * n + j] = g.c * t1 + g.s * t2;
        a[(i + 1) * n + j] = -std::conj(g.s) * t1 + g.c * t2;
      }
    }
    for (int i = lo; i < end; ++i) {
      const Givens g = rot[static_cast<std::size_t>(i - lo)];
      for (int r = lo; r <= end; ++r) {
        const Complex t1 = a[r * n + i];
        const Complex t2 = a[r * n + (i + 1)];
        a[r * n + i] = g.c * t1 + std::conj(g.s) * t2;
        a[r * n + (i + 1)] = -g.s * t1 + g.c * t2;
      }
    }
    for (int i = lo; i <= end; ++i) a[i * n + i] += mu;
  }
  return out;
}

}  // namespace detail

/// Eigenvalues of a general (non-Hermitian) 4x4 matrix, unordered.
inline std::array<Complex, 4> eig_general(const Mat4& m, double tol = 1e-9) {
  if (!is_finite(m)) throw std::invalid_argument("eig_general: matrix entries must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("eig_general: tol must be positive");
  return detail::qr_eigenvalues(m.e, tol);
}

/// Real ascending spectrum of a Hermitian 4x4 matrix.
/// Throws NotHermitianError when max |m - m^dagger| exceeds tol.
inline std::array<double, 4> eig_hermitian(const Mat4& m, double tol = 1e-9) {
  if (!is_finite(m)) throw std::invalid_argument("eig_hermitian: matrix entries must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("eig_hermitian: tol must be positive");
  if (hermiticity_deviation(m) > tol)
    throw NotHermitianError("eig_hermitian: matrix is not Hermitian within tolerance");
  const Mat4 h = Complex(0.5) * (m + adjoint(m));
  const auto ev = detail::qr_eigenvalues(h.e, tol);
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = ev[i].real();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace esdsim
