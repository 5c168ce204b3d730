#pragma once

// Parameter-space scans of the evolved concurrence and the fixed datasets
// behind the six reference figures, plus deterministic CSV/JSON emission.
// Output bytes are identical across runs and thread counts; the environment
// variable ESD_SIM_THREADS caps scan parallelism (0 or unset = auto).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "esd.hpp"

namespace esdsim {

/// Uniform grid start..stop with `steps` points (inclusive endpoints).
struct GridSpec {
  double start;
  double stop;
  int steps;

  double at(int i) const {
    if (steps <= 1) return start;
    return start + (stop - start) * (static_cast<double>(i) / (steps - 1));
  }
};

enum class OutputFormat { Csv, Json };

struct ScanConfig {
  ChannelKind kind = ChannelKind::AD;
  std::vector<double> r_values = {1.0};
  GridSpec theta = {0.0, std::numbers::pi, 101};
  GridSpec p = {0.0, 1.0, 101};
  OutputFormat format = OutputFormat::Csv;
};

/// One evaluated grid point.
struct ScanRow {
  double theta;
  double p;
  double r;
  double concurrence;
};

inline void validate_config(const ScanConfig& cfg) {
  if (cfg.r_values.empty())
    throw std::invalid_argument("scan config field 'r': at least one value is required");
  for (const double r : cfg.r_values)
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("scan config field 'r': values must lie in [0, 1]");
  if (!std::isfinite(cfg.theta.start) || !std::isfinite(cfg.theta.stop))
    throw std::invalid_argument("scan config field 'theta': bounds must be finite");
  if (cfg.theta.steps < 2)
    throw std::invalid_argument("scan config field 'theta.steps': at least 2 points required");
  if (!(cfg.p.start >= 0.0 && cfg.p.stop <= 1.0 && cfg.p.start <= cfg.p.stop))
    throw std::invalid_argument(
        "scan config field 'p': bounds must satisfy 0 <= start <= stop <= 1");
  if (cfg.p.steps < 2)
    throw std::invalid_argument("scan config field 'p.steps': at least 2 points required");
}

namespace detail {

inline unsigned scan_thread_count(std::size_t jobs) {
  long cap = 0;
  if (const char* env = std::getenv("ESD_SIM_THREADS")) {
    char* endp = nullptr;
    const long parsed = std::strtol(env, &endp, 10);
    if (endp != env && parsed > 0) cap = parsed;
  }
  unsigned n;
  if (cap > 0) {
    n = static_cast<unsigned>(cap);
  } else {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  if (static_cast<std::size_t>(n) > jobs) n = static_cast<unsigned>(jobs);
  return n == 0 ? 1 : n;
}

// Static block partition: each index is computed exactly once by exactly one
// thread, so results never depend on scheduling.
template <typename Fn>
inline void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned threads = scan_thread_count(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace detail

/// Evaluate the evolved concurrence over the full (r, theta, p) grid.
/// Row order: r outermost, then theta, then p innermost.
inline std::vector<ScanRow> scan_surface(const ScanConfig& cfg) {
  validate_config(cfg);
  const std::size_t nr = cfg.r_values.size();
  const std::size_t nt = static_cast<std::size_t>(cfg.theta.steps);
  const std::size_t np = static_cast<std::size_t>(cfg.p.steps);

  std::vector<ScanRow> rows(nr * nt * np);
  detail::parallel_for(nr * nt, [&](std::size_t slice) {
    const std::size_t ir = slice / nt;
    const std::size_t it = slice % nt;
    const double r = cfg.r_values[ir];
    const double theta = cfg.theta.at(static_cast<int>(it));
    const WernerLikeParams params{r, theta};
    for (std::size_t ip = 0; ip < np; ++ip) {
      const double p = cfg.p.at(static_cast<int>(ip));
      const double c = concurrence_x(evolve_werner_analytic(cfg.kind, params, p)).value;
      rows[slice * np + ip] = {theta, p, r, c};
    }
  });
  return rows;
}

/// Identifies one of the six reference datasets.
struct FigureSpec {
  int figure_number;
};

/// Grid/channel parameters behind each figure:
///   1: amplitude damping, r = 1          (ESD only for |tan(theta)| < 1)
///   2: amplitude damping, r = 0.7        (ESD for every entangled theta)
///   3: phase damping, r = 1              (no ESD anywhere)
///   4: phase damping, r = 0.7            (ESD for every entangled theta)
///   5: depolarizing, r = 1               (ESD for every entangled theta)
///   6: depolarizing, theta = pi/4, r in {0.4..1.0} (p_c grows with r)
/// Figures 1-5 use a 101x101 grid over theta in [0, pi], p in [0, 1].
inline std::vector<ScanRow> figure_dataset(const FigureSpec& spec) {
  auto surface = [](ChannelKind kind, double r) {
    ScanConfig cfg;
    cfg.kind = kind;
    cfg.r_values = {r};
    return scan_surface(cfg);
  };
  switch (spec.figure_number) {
    case 1: return surface(ChannelKind::AD, 1.0);
    case 2: return surface(ChannelKind::AD, 0.7);
    case 3: return surface(ChannelKind::PD, 1.0);
    case 4: return surface(ChannelKind::PD, 0.7);
    case 5: return surface(ChannelKind::D, 1.0);
    case 6: {
      const double theta = std::numbers::pi / 4.0;
      const GridSpec p_grid{0.0, 1.0, 101};
      std::vector<ScanRow> rows;
      rows.reserve(7 * static_cast<std::size_t>(p_grid.steps));
      for (const double r : {0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
        const WernerLikeParams params{r, theta};
        for (int i = 0; i < p_grid.steps; ++i) {
          const double p = p_grid.at(i);
          const double c = concurrence_x(evolve_werner_analytic(ChannelKind::D, params, p)).value;
          rows.push_back({theta, p, r, c});
        }
      }
      return rows;
    }
    default:
      throw std::invalid_argument("figure number must be between 1 and 6");
  }
}

// ---------------------------------------------------------------------------
// Deterministic number formatting: 9 significant digits, C locale semantics
// regardless of the global locale (std::to_chars never consults a locale).

/// Shortest representation with at most 9 significant digits (printf %.9g
/// semantics); may use scientific notation.
inline std::string format_sig9(double value) {
  std::array<char, 48> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

/// Like format_sig9 but never scientific, for grid coordinates.
inline std::string format_coord(double value) {
  std::string s = format_sig9(value);
  if (s.find('e') == std::string::npos) return s;
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int decimals = std::clamp(8 - exponent, 0, 340);
  std::array<char, 400> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  s.assign(buf.data(), res.ptr);
  // fixed notation pads with trailing zeros; trim back to nine significant
  // digits worth of content
  if (s.find('.') != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Emission. CSV: header theta,p,r,concurrence; LF line endings; no padding.

inline void write_csv(const std::vector<ScanRow>& rows, std::ostream& os) {
  os << "theta,p,r,concurrence\n";
  for (const ScanRow& row : rows)
    os << format_coord(row.theta) << ',' << format_coord(row.p) << ',' << format_coord(row.r)
       << ',' << format_sig9(row.concurrence) << '\n';
}

inline std::string csv_string(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  write_csv(rows, os);
  return os.str();
}

inline void write_json_rows(const std::vector<ScanRow>& rows, std::ostream& os) {
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ScanRow& row = rows[i];
    os << "  {\"theta\": " << format_coord(row.theta) << ", \"p\": " << format_coord(row.p)
       << ", \"r\": " << format_coord(row.r)
       << ", \"concurrence\": " << format_sig9(row.concurrence) << '}'
       << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << "]\n";
}

inline std::string json_rows_string(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  write_json_rows(rows, os);
  return os.str();
}

inline void write_rows(const std::vector<ScanRow>& rows, OutputFormat format, std::ostream& os) {
  if (format == OutputFormat::Csv)
    write_csv(rows, os);
  else
    write_json_rows(rows, os);
}

/// JSON object for a single evolved-state evaluation.
inline std::string evaluation_json(ChannelKind kind, const WernerLikeParams& params, double p,
                                   const XElements& xe, double concurrence) {
  std::ostringstream os;
  os << "{\n"
     << "  \"channel\": \"" << channel_label(kind) << "\",\n"
     << "  \"r\": " << format_coord(params.r) << ",\n"
     << "  \"theta\": " << format_coord(params.theta) << ",\n"
     << "  \"p\": " << format_coord(p) << ",\n"
     << "  \"x_elements\": {"
     << "\"x\": " << format_sig9(xe.x) << ", \"y\": " << format_sig9(xe.y)
     << ", \"z\": " << format_sig9(xe.z) << ", \"w\": " << format_sig9(xe.w) << ", \"u\": ["
     << format_sig9(xe.u.real()) << ", " << format_sig9(xe.u.imag()) << "], \"v\": ["
     << format_sig9(xe.v.real()) << ", " << format_sig9(xe.v.imag()) << "]},\n"
     << "  \"concurrence\": " << format_sig9(concurrence) << "\n}\n";
  return os.str();
}

/// JSON object for a critical-probability evaluation; the "pc" key is
/// present only when the status is ESD.
inline std::string critical_json(ChannelKind kind, const WernerLikeParams& params,
                                 const CriticalResult& result) {
  std::ostringstream os;
  os << "{\n"
     << "  \"channel\": \"" << channel_label(kind) << "\",\n"
     << "  \"r\": " << format_coord(params.r) << ",\n"
     << "  \"theta\": " << format_coord(params.theta) << ",\n"
     << "  \"status\": \"" << status_label(result.status) << "\"";
  if (result.pc) os << ",\n  \"pc\": " << format_sig9(*result.pc);
  os << "\n}\n";
  return os.str();
}

}  // namespace esdsim
