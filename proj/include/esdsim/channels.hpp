#pragma once

// Single-qubit noise channels in Kraus form and their action on two-qubit
// states (one independent copy of the channel per qubit). For Werner-like
// inputs the evolved state stays in X form and its elements have closed
// expressions, implemented in evolve_werner_analytic; apply_local provides
// the generic Kraus route the closed forms are checked against.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matcore.hpp"
#include "states.hpp"

namespace esdsim {

enum class ChannelKind { AD, PD, D };

inline const char* channel_label(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::AD: return "ad";
    case ChannelKind::PD: return "pd";
    default: return "d";
  }
}

inline std::optional<ChannelKind> parse_channel(std::string_view label) {
  if (label == "ad") return ChannelKind::AD;
  if (label == "pd") return ChannelKind::PD;
  if (label == "d") return ChannelKind::D;
  return std::nullopt;
}

/// A single-qubit channel as a set of Kraus operators with sum E^dagger E = I.
struct KrausChannel {
  ChannelKind kind;
  double p;
  std::vector<Mat2> ops;
};

namespace detail {
inline void require_probability(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error(std::string(where) + ": probability p must lie in [0, 1]");
}
}  // namespace detail

/// Amplitude damping: E0 = |0><0| + sqrt(1-p)|1><1|, E1 = sqrt(p)|0><1|.
inline KrausChannel amplitude_damping(double p) {
  detail::require_probability(p, "amplitude_damping");
  Mat2 e0;
  e0(0, 0) = 1.0;
  e0(1, 1) = std::sqrt(1.0 - p);
  Mat2 e1;
  e1(0, 1) = std::sqrt(p);
  return {ChannelKind::AD, p, {e0, e1}};
}

/// Phase damping: {sqrt(1-p) I, sqrt(p)|0><0|, sqrt(p)|1><1|}.
/// Populations are untouched; coherences shrink by (1-p).
inline KrausChannel phase_damping(double p) {
  detail::require_probability(p, "phase_damping");
  const double sq = std::sqrt(p);
  Mat2 e0 = Complex(std::sqrt(1.0 - p)) * Mat2::identity();
  Mat2 e1;
  e1(0, 0) = sq;
  Mat2 e2;
  e2(1, 1) = sq;
  return {ChannelKind::PD, p, {e0, e1, e2}};
}

/// Depolarizing: {sqrt(1-3p/4) I, sqrt(p/4) sigma_x, sqrt(p/4) sigma_y,
/// sqrt(p/4) sigma_z}, i.e. rho -> (1-p) rho + p I/2.
inline KrausChannel depolarizing(double p) {
  detail::require_probability(p, "depolarizing");
  const Complex lead(std::sqrt(1.0 - 0.75 * p));
  const Complex wing(std::sqrt(0.25 * p));
  return {ChannelKind::D, p,
          {lead * Mat2::identity(), wing * sigma_x(), wing * sigma_y(), wing * sigma_z()}};
}

inline KrausChannel make_channel(ChannelKind kind, double p) {
  switch (kind) {
    case ChannelKind::AD: return amplitude_damping(p);
    case ChannelKind::PD: return phase_damping(p);
    default: return depolarizing(p);
  }
}

/// max-abs deviation of sum E^dagger E from the identity.
inline double completeness_deviation(const KrausChannel& channel) {
  Mat2 acc;
  for (const Mat2& op : channel.ops) acc = acc + adjoint(op) * op;
  return max_abs_diff(acc, Mat2::identity());
}

/// Apply channel a to the first qubit and channel b to the second:
/// rho -> sum_ij (E_i (x) F_j) rho (E_i (x) F_j)^dagger.
/// The output is re-validated, so round-off cannot leak an invalid state.
inline DensityMatrix apply_local(const KrausChannel& a, const KrausChannel& b,
                                 const DensityMatrix& rho) {
  Mat4 out;
  for (const Mat2& e : a.ops)
    for (const Mat2& f : b.ops) {
      const Mat4 k = kron(e, f);
      out = out + k * rho.matrix() * adjoint(k);
    }
  return DensityMatrix::from_matrix(out);
}

/// Decay parametrization p(t) = 1 - exp(-gamma t / 2) used to map a rate and
/// a time onto the channel probability axis.
inline double p_of_t(double gamma, double t) {
  if (!(gamma >= 0.0)) throw std::domain_error("p_of_t: gamma must be nonnegative");
  if (!(t >= 0.0)) throw std::domain_error("p_of_t: t must be nonnegative");
  return 1.0 - std::exp(-0.5 * gamma * t);
}

/// Closed-form X elements of a Werner-like state after both qubits pass
/// through independent copies of the same channel at strength p.
inline XElements evolve_werner_analytic(ChannelKind kind, const WernerLikeParams& params,
                                        double p) {
  validate_params(params);
  detail::require_probability(p, "evolve_werner_analytic");

  const double r = params.r;
  const double s = std::sin(params.theta);
  const double c = std::cos(params.theta);
  const double s2 = s * s;
  const double c2 = c * c;
  const double background = (1.0 - r) / 4.0;  // weight of the white-noise part

  XElements xe{};
  switch (kind) {
    case ChannelKind::AD: {
      // Population flows toward |00>; the |00><11| coherence picks up
      // sqrt(1-p) per qubit amplitude, i.e. (1-p) overall.
      xe.x = background * (1.0 + p) * (1.0 + p) + r * (c2 * p * p + s2);
      xe.y = background * (1.0 - p * p) + r * c2 * p * (1.0 - p);
      xe.z = xe.y;
      xe.w = (background + r * c2) * (1.0 - p) * (1.0 - p);
      xe.v = Complex(r * s * c * (1.0 - p));
      break;
    }
    case ChannelKind::PD: {
      // Populations are frozen; the two-qubit coherence shrinks by (1-p)^2.
      xe.x = background + r * s2;
      xe.y = background;
      xe.z = background;
      xe.w = background + r * c2;
      xe.v = Complex(r * s * c * (1.0 - p) * (1.0 - p));
      break;
    }
    case ChannelKind::D: {
      // Each qubit mixes toward I/2 with weight p.
      const double keep = 1.0 - 0.5 * p;  // single-qubit population retention
      const double half = 0.5 * p;
      xe.x = keep * keep * (background + r * s2) + p * keep * background +
             half * half * (background + r * c2);
      xe.y = background * (1.0 - p + 0.5 * p * p) + 0.25 * p * keep * (1.0 + r);
      xe.z = xe.y;
      xe.w = keep * keep * (background + r * c2) + p * keep * background +
             half * half * (background + r * s2);
      xe.v = Complex(r * s * c * (1.0 - p) * (1.0 - p));
      break;
    }
  }
  return xe;
}

}  // namespace esdsim
