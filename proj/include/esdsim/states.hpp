#pragma once

// Two-qubit state construction and validation. Basis order is
// |00>, |01>, |10>, |11>; an "X state" has nonzero entries only on the
// diagonal and the anti-diagonal corners/center of that basis.

#include <cmath>
#include <stdexcept>
#include <string>

#include "matcore.hpp"

namespace esdsim {

/// Thrown when a matrix lacks the X sparsity pattern.
class NotXFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mixing weight r in [0, 1] and superposition angle theta (any finite real).
struct WernerLikeParams {
  double r;
  double theta;
};

inline void validate_params(const WernerLikeParams& params) {
  if (!(params.r >= 0.0 && params.r <= 1.0))
    throw std::domain_error("parameter r must lie in [0, 1]");
  if (!std::isfinite(params.theta)) throw std::domain_error("parameter theta must be finite");
}

/// Diagnostics from checking a candidate density matrix.
struct ValidationReport {
  double trace_deviation;
  double hermiticity_deviation;
  double min_eigenvalue;
  bool pass;
};

/// Check trace, Hermiticity and positive semidefiniteness of a candidate
/// density matrix. Never throws on finite input; the report carries failures.
/// The eigenvalue floor is 100x looser than tol to absorb accumulated
/// round-off in states produced by long channel compositions.
inline ValidationReport validate(const Mat4& rho, double tol = 1e-12) {
  if (!is_finite(rho)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, -inf, false};
  }
  ValidationReport report{};
  report.trace_deviation = std::abs(trace(rho) - Complex(1.0));
  report.hermiticity_deviation = hermiticity_deviation(rho);
  const Mat4 herm = Complex(0.5) * (rho + adjoint(rho));
  report.min_eigenvalue = eig_hermitian(herm, 1.0)[0];
  report.pass = report.trace_deviation <= tol && report.hermiticity_deviation <= tol &&
                report.min_eigenvalue >= -100.0 * tol;
  return report;
}

/// A validated two-qubit density matrix.
class DensityMatrix {
 public:
  /// Checked construction; throws std::invalid_argument with the failing
  /// deviation when the matrix is not a density matrix within tol.
  static DensityMatrix from_matrix(const Mat4& m, double tol = 1e-12) {
    const ValidationReport report = validate(m, tol);
    if (!report.pass)
      throw std::invalid_argument(
          "not a density matrix: trace deviation " + std::to_string(report.trace_deviation) +
          ", hermiticity deviation " + std::to_string(report.hermiticity_deviation) +
          ", min eigenvalue " + std::to_string(report.min_eigenvalue));
    return DensityMatrix(m);
  }

  /// Unchecked construction for callers that guarantee validity (exact
  /// formulas, hot loops).
  static DensityMatrix unchecked(const Mat4& m) { return DensityMatrix(m); }

  const Mat4& matrix() const& { return m_; }
  // Calling matrix() on a temporary must yield a copy, never a dangling
  // reference to the expiring member.
  Mat4 matrix() && { return m_; }

 private:
  explicit DensityMatrix(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

inline ValidationReport validate(const DensityMatrix& rho, double tol = 1e-12) {
  return validate(rho.matrix(), tol);
}

/// Pure state sin(theta)|00> + cos(theta)|11> as a projector.
inline DensityMatrix bell_like(double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("parameter theta must be finite");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  Mat4 m;
  m(0, 0) = s * s;
  m(0, 3) = s * c;
  m(3, 0) = s * c;
  m(3, 3) = c * c;
  return DensityMatrix::unchecked(m);
}

/// r |phi><phi| + (1 - r)/4 I with |phi> = sin(theta)|00> + cos(theta)|11>.
inline DensityMatrix werner_like(const WernerLikeParams& params) {
  validate_params(params);
  Mat4 m = Complex(params.r) * bell_like(params.theta).matrix();
  const double background = (1.0 - params.r) / 4.0;
  for (int i = 0; i < 4; ++i) m(i, i) += background;
  return DensityMatrix::unchecked(m);
}

/// The seven independent real degrees of freedom of an X state:
/// diagonal (x, y, z, w) and anti-diagonal coherences u = rho_{01,10},
/// v = rho_{00,11}.
struct XElements {
  double x;
  double y;
  double z;
  double w;
  Complex u;
  Complex v;
};

/// Rebuild the full matrix from X elements.
inline Mat4 x_matrix(const XElements& xe) {
  Mat4 m;
  m(0, 0) = xe.x;
  m(1, 1) = xe.y;
  m(2, 2) = xe.z;
  m(3, 3) = xe.w;
  m(0, 3) = xe.v;
  m(3, 0) = std::conj(xe.v);
  m(1, 2) = xe.u;
  m(2, 1) = std::conj(xe.u);
  return m;
}

/// Check the X-state constraints: unit diagonal sum and the block
/// positivity bounds |u| <= sqrt(yz), |v| <= sqrt(xw) (with slack for
/// round-off). Throws std::invalid_argument on violation.
inline void check_x(const XElements& xe, double slack = 1e-10) {
  if (xe.x < -slack || xe.y < -slack || xe.z < -slack || xe.w < -slack)
    throw std::invalid_argument("X elements: diagonal entries must be nonnegative");
  if (std::abs(xe.x + xe.y + xe.z + xe.w - 1.0) > 1e-12)
    throw std::invalid_argument("X elements: diagonal must sum to 1");
  if (std::abs(xe.u) > std::sqrt(std::max(0.0, xe.y * xe.z)) + slack)
    throw std::invalid_argument("X elements: |u| exceeds sqrt(y z)");
  if (std::abs(xe.v) > std::sqrt(std::max(0.0, xe.x * xe.w)) + slack)
    throw std::invalid_argument("X elements: |v| exceeds sqrt(x w)");
}

/// Checked promotion of X elements to a density matrix. The X-state block
/// bounds are exactly the positivity conditions, so no eigenvalue test is
/// needed.
inline DensityMatrix density_from_x(const XElements& xe) {
  check_x(xe);
  return DensityMatrix::unchecked(x_matrix(xe));
}

/// Extract X elements; throws NotXFormError when an off-pattern entry
/// exceeds tol.
inline XElements extract_x(const DensityMatrix& rho, double tol = 1e-12) {
  const Mat4& m = rho.matrix();
  static constexpr int off_pattern[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                            {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& ij : off_pattern) {
    if (std::abs(m(ij[0], ij[1])) > tol)
      throw NotXFormError("matrix entry (" + std::to_string(ij[0]) + ", " +
                          std::to_string(ij[1]) + ") breaks the X pattern");
  }
  XElements xe;
  xe.x = std::max(0.0, m(0, 0).real());
  xe.y = std::max(0.0, m(1, 1).real());
  xe.z = std::max(0.0, m(2, 2).real());
  xe.w = std::max(0.0, m(3, 3).real());
  xe.u = m(1, 2);
  xe.v = m(0, 3);
  return xe;
}

/// Purity Tr(rho^2); 1 for pure states, 1/4 for the maximally mixed state.
inline double purity_tr(const DensityMatrix& rho) {
  return trace(rho.matrix() * rho.matrix()).real();
}

}  // namespace esdsim
