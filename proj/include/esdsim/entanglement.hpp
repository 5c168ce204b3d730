#pragma once

// Concurrence of two-qubit states, computed two independent ways:
//  - concurrence_eig: spectrum of rho * spin_flip(rho), valid for any state;
//  - concurrence_x: closed form valid for X states.
// The two must agree on X states; tests rely on that cross-check.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "matcore.hpp"
#include "states.hpp"

namespace esdsim {

/// Thrown when the spin-flipped product has a spectrum a two-qubit state
/// cannot produce (large imaginary parts or clearly negative eigenvalues).
class SpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concurrence value in [0, 1]; 0 for separable states, 1 for Bell states.
struct Concurrence {
  double value;
};

/// Spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y).
inline Mat4 spin_flip(const DensityMatrix& rho) {
  static const Mat4 syy = kron(sigma_y(), sigma_y());
  return syy * conjugate(rho.matrix()) * syy;
}

/// General-route concurrence: max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) -
/// sqrt(l4)} with l_i the descending eigenvalues of rho * spin_flip(rho).
/// That product is similar to the usual Hermitian form, so its spectrum is
/// real and nonnegative up to round-off; imaginary parts or negative parts
/// beyond 1e-9 raise SpectrumError, smaller ones are clamped.
inline Concurrence concurrence_eig(const DensityMatrix& rho) {
  const Mat4 product = rho.matrix() * spin_flip(rho);
  const auto lambdas = eig_general(product, 1e-9);

  std::array<double, 4> roots{};
  for (std::size_t i = 0; i < 4; ++i) {
    const double re = lambdas[i].real();
    const double im = lambdas[i].imag();
    if (std::abs(im) > 1e-9)
      throw SpectrumError("concurrence_eig: eigenvalue has imaginary part " + std::to_string(im));
    if (re < -1e-9)
      throw SpectrumError("concurrence_eig: eigenvalue is negative: " + std::to_string(re));
    roots[i] = std::sqrt(std::max(0.0, re));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return {std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3])};
}

/// X-state closed form: 2 max{0, |u| - sqrt(x w), |v| - sqrt(y z)}.
inline Concurrence concurrence_x(const XElements& xe) {
  const double inner = std::abs(xe.u) - std::sqrt(std::max(0.0, xe.x * xe.w));
  const double outer = std::abs(xe.v) - std::sqrt(std::max(0.0, xe.y * xe.z));
  return {2.0 * std::max({0.0, inner, outer})};
}

}  // namespace esdsim
