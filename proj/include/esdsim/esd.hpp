#pragma once

// Entanglement sudden death: locate the channel strength p_c at which the
// concurrence of an evolving Werner-like state first reaches zero, either
// from closed-form expressions (amplitude/phase damping) or by a bracketed
// bisection on the concurrence discriminant (any channel).

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "channels.hpp"
#include "entanglement.hpp"
#include "states.hpp"

namespace esdsim {

/// Thrown when a closed form is requested for a channel that has none.
class UnsupportedChannelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the pre-scan finds more than one sign change, so a single
/// bracket cannot represent the zero set.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EsdStatus {
  NotEntangledInitially,  // concurrence is already zero at p = 0
  NoESD,                  // concurrence stays positive for all p < 1
  ESD,                    // concurrence hits zero at some p_c in (0, 1)
};

inline const char* status_label(EsdStatus status) {
  switch (status) {
    case EsdStatus::NotEntangledInitially: return "NotEntangledInitially";
    case EsdStatus::NoESD: return "NoESD";
    default: return "ESD";
  }
}

/// Outcome of a critical-probability query; pc is set only for status ESD.
struct CriticalResult {
  EsdStatus status;
  std::optional<double> pc;
};

/// Concurrence of the unevolved Werner-like state:
/// 2 max{0, r |sin(theta)cos(theta)| - (1 - r)/4}.
inline Concurrence initial_concurrence(const WernerLikeParams& params) {
  validate_params(params);
  const double sc = std::abs(std::sin(params.theta) * std::cos(params.theta));
  return {2.0 * std::max(0.0, params.r * sc - (1.0 - params.r) / 4.0)};
}

/// Amplitude damping admits ESD iff |sc| - cos^2(theta) < (1/r - 1)/2 with
/// sc = sin(theta)cos(theta); requires an initially entangled state.
inline bool esd_condition_ad(const WernerLikeParams& params) {
  validate_params(params);
  if (initial_concurrence(params).value <= 0.0)
    throw std::domain_error("esd_condition_ad requires an initially entangled state");
  const double s = std::sin(params.theta);
  const double c = std::cos(params.theta);
  const double sc = std::abs(s * c);
  return sc - c * c < 0.5 * (1.0 / params.r - 1.0);
}

/// Closed-form critical probability. Supported for amplitude damping
/// (p_c = (4 r |sc| + r - 1) / (4 r cos^2(theta) - r + 1), ESD iff p_c < 1)
/// and phase damping (p_c = 1 - sqrt((1 - r)/(4 r |sc|)), NoESD only at
/// r = 1). Throws UnsupportedChannelError for the depolarizing channel.
inline CriticalResult pc_analytic(ChannelKind kind, const WernerLikeParams& params) {
  validate_params(params);
  if (kind == ChannelKind::D)
    throw UnsupportedChannelError(
        "pc_analytic: no closed form for the depolarizing channel; use pc_numeric");
  if (initial_concurrence(params).value <= 0.0)
    return {EsdStatus::NotEntangledInitially, std::nullopt};

  const double r = params.r;
  const double s = std::sin(params.theta);
  const double c = std::cos(params.theta);
  const double sc = std::abs(s * c);

  if (kind == ChannelKind::AD) {
    const double pc = (4.0 * r * sc + r - 1.0) / (4.0 * r * c * c - r + 1.0);
    if (pc < 1.0) return {EsdStatus::ESD, pc};
    return {EsdStatus::NoESD, std::nullopt};
  }
  // Phase damping: the pure case r = 1 only reaches zero at p = 1 itself.
  if (r >= 1.0) return {EsdStatus::NoESD, std::nullopt};
  const double pc = 1.0 - std::sqrt((1.0 - r) / (4.0 * r * sc));
  return {EsdStatus::ESD, pc};
}

namespace detail {

// Evolved-state concurrence discriminant; the X-state concurrence is
// 2 max{0, f(p)} here because u stays zero for these channels.
inline double concurrence_discriminant(ChannelKind kind, const WernerLikeParams& params,
                                       double p) {
  const XElements xe = evolve_werner_analytic(kind, params, p);
  return std::abs(xe.v) - std::sqrt(std::max(0.0, xe.y * xe.z));
}

// Locate the first zero of f on (0, 1] given f(0) > 0: a dense pre-scan
// (1024 points) brackets the sign change, bisection narrows it to tol. More
// than one sign change on the scan grid raises BracketError. When f stays
// positive on [0, 1) and at most touches zero at p = 1 the verdict is NoESD.
template <typename F>
inline CriticalResult locate_first_zero(F&& f, double tol) {
  constexpr int scan_points = 1024;
  std::array<double, scan_points> samples{};
  for (int i = 0; i < scan_points; ++i)
    samples[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / (scan_points - 1));

  int first_nonpositive = -1;
  for (int i = 1; i < scan_points; ++i) {
    const double value = samples[static_cast<std::size_t>(i)];
    if (first_nonpositive < 0) {
      if (value <= 0.0) first_nonpositive = i;
    } else if (value > 0.0) {
      throw BracketError(
          "the concurrence discriminant changes sign more than once on the scan grid; no "
          "single critical probability exists");
    }
  }

  auto bisect = [&](double lo, double hi) {
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  if (first_nonpositive < 0) return {EsdStatus::NoESD, std::nullopt};

  if (first_nonpositive == scan_points - 1) {
    // Only the p = 1 sample is non-positive. Distinguish a zero sitting
    // exactly on the boundary (no sudden death) from a root hiding inside
    // the last scan interval by probing geometrically closer to 1.
    double lo = static_cast<double>(scan_points - 2) / (scan_points - 1);
    for (const double probe : {1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-8}) {
      if (f(probe) <= 0.0) return {EsdStatus::ESD, bisect(lo, probe)};
      lo = probe;
    }
    return {EsdStatus::NoESD, std::nullopt};
  }

  const double lo = static_cast<double>(first_nonpositive - 1) / (scan_points - 1);
  const double hi = static_cast<double>(first_nonpositive) / (scan_points - 1);
  return {EsdStatus::ESD, bisect(lo, hi)};
}

}  // namespace detail

/// Bisection route to the critical probability, channel-agnostic.
inline CriticalResult pc_numeric(ChannelKind kind, const WernerLikeParams& params,
                                 double tol = 1e-10) {
  validate_params(params);
  if (!(tol > 0.0)) throw std::domain_error("pc_numeric: tol must be positive");
  if (initial_concurrence(params).value <= 0.0)
    return {EsdStatus::NotEntangledInitially, std::nullopt};
  return detail::locate_first_zero(
      [&](double p) { return detail::concurrence_discriminant(kind, params, p); }, tol);
}

/// Verify on a uniform p grid that once the concurrence reaches zero it
/// stays there (no revival). Vacuously true for initially separable states.
inline bool no_revival_scan(ChannelKind kind, const WernerLikeParams& params, int steps) {
  validate_params(params);
  if (steps < 2) throw std::invalid_argument("no_revival_scan: steps must be at least 2");
  bool seen_zero = false;
  for (int i = 0; i < steps; ++i) {
    const double p = static_cast<double>(i) / (steps - 1);
    const double c = concurrence_x(evolve_werner_analytic(kind, params, p)).value;
    if (c == 0.0)
      seen_zero = true;
    else if (seen_zero)
      return false;
  }
  return true;
}

}  // namespace esdsim
