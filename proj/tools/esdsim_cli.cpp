// Command-line front end: evolve Werner-like states through local noise
// channels, evaluate concurrence, locate critical probabilities, and emit
// scan/figure datasets as CSV or JSON.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure.

#include <esdsim/esdsim.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;

// Writes to stdout when path is empty. Returns false on I/O failure.
bool emit(const std::string& text, const std::string& path, const std::string& what) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return false;
  }
  os << text;
  os.flush();
  if (!os) {
    std::cerr << "error: failed while writing '" << path << "'\n";
    return false;
  }
  std::cout << "wrote " << path << " (" << what << ")\n";
  return true;
}

struct StateFlags {
  double r = 1.0;
  double theta = 0.0;
  double theta_deg = 0.0;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* theta_deg_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r", r, "mixing weight r in [0, 1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    theta_opt = cmd->add_option("--theta", theta, "superposition angle in radians");
    theta_deg_opt = cmd->add_option("--theta-deg", theta_deg, "superposition angle in degrees");
    theta_opt->excludes(theta_deg_opt);
    theta_deg_opt->excludes(theta_opt);
  }

  // Resolved angle in radians; reports a usage error when neither flag given.
  std::optional<double> angle() const {
    if (theta_opt->count() > 0) return theta;
    if (theta_deg_opt->count() > 0) return theta_deg * kPi / 180.0;
    std::cerr << "error: one of --theta or --theta-deg is required\n";
    return std::nullopt;
  }
};

std::string evolve_text(esdsim::ChannelKind kind, const esdsim::WernerLikeParams& params,
                        double p, const esdsim::XElements& xe, double concurrence) {
  using esdsim::format_coord;
  using esdsim::format_sig9;
  std::ostringstream os;
  os << "channel: " << esdsim::channel_label(kind) << '\n'
     << "r: " << format_coord(params.r) << '\n'
     << "theta: " << format_coord(params.theta) << '\n'
     << "p: " << format_coord(p) << '\n'
     << "x: " << format_sig9(xe.x) << '\n'
     << "y: " << format_sig9(xe.y) << '\n'
     << "z: " << format_sig9(xe.z) << '\n'
     << "w: " << format_sig9(xe.w) << '\n'
     << "u: " << format_sig9(xe.u.real()) << ' ' << format_sig9(xe.u.imag()) << '\n'
     << "v: " << format_sig9(xe.v.real()) << ' ' << format_sig9(xe.v.imag()) << '\n'
     << "concurrence: " << format_sig9(concurrence) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Werner-like two-qubit states under local noise: evolution, concurrence,\n"
               "and entanglement-sudden-death critical probabilities."};
  app.require_subcommand(1);

  std::string channel_str = "ad";
  std::string output_path;
  bool as_json = false;

  auto add_common = [&](CLI::App* cmd, bool channel_required) {
    CLI::Option* ch = cmd->add_option("--channel", channel_str,
                                      "noise channel: ad (amplitude damping), pd (phase "
                                      "damping), d (depolarizing)")
                          ->check(CLI::IsMember({"ad", "pd", "d"}));
    if (channel_required) ch->required();
    cmd->add_flag("--json", as_json, "emit JSON instead of plain text/CSV");
    cmd->add_option("-o,--output", output_path, "output file (default: stdout)");
  };

  // evolve -------------------------------------------------------------
  CLI::App* evolve = app.add_subcommand("evolve", "evolved X elements and concurrence");
  StateFlags evolve_state;
  double evolve_p = 0.0;
  evolve_state.attach(evolve);
  evolve->add_option("--p", evolve_p, "channel strength p in [0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  add_common(evolve, true);

  // concurrence ----------------------------------------------------------
  CLI::App* conc = app.add_subcommand(
      "concurrence", "concurrence of the (optionally evolved) Werner-like state");
  StateFlags conc_state;
  double conc_p = 0.0;
  conc_state.attach(conc);
  conc->add_option("--p", conc_p, "channel strength p in [0, 1] (default 0 = initial state)")
      ->check(CLI::Range(0.0, 1.0));
  add_common(conc, false);

  // pc -------------------------------------------------------------------
  CLI::App* pc = app.add_subcommand("pc", "critical probability for sudden death");
  StateFlags pc_state;
  std::string method = "bisect";
  double tol = 1e-10;
  pc_state.attach(pc);
  pc->add_option("--method", method, "analytic (closed form) or bisect (numeric)")
      ->check(CLI::IsMember({"analytic", "bisect"}));
  pc->add_option("--tol", tol, "bisection interval tolerance")->check(CLI::PositiveNumber);
  add_common(pc, true);

  // scan -------------------------------------------------------------------
  CLI::App* scan = app.add_subcommand("scan", "concurrence over a (theta, p) grid");
  std::vector<double> scan_r = {1.0};
  esdsim::GridSpec theta_grid{0.0, kPi, 101};
  esdsim::GridSpec p_grid{0.0, 1.0, 101};
  scan->add_option("--r", scan_r, "mixing weight(s), comma separated")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  scan->add_option("--theta-min", theta_grid.start, "theta grid start (radians, default 0)");
  scan->add_option("--theta-max", theta_grid.stop, "theta grid stop (radians, default pi)");
  scan->add_option("--theta-steps", theta_grid.steps, "theta grid points (default 101)")
      ->check(CLI::Range(2, 1000000));
  scan->add_option("--p-min", p_grid.start, "p grid start (default 0)")
      ->check(CLI::Range(0.0, 1.0));
  scan->add_option("--p-max", p_grid.stop, "p grid stop (default 1)")
      ->check(CLI::Range(0.0, 1.0));
  scan->add_option("--p-steps", p_grid.steps, "p grid points (default 101)")
      ->check(CLI::Range(2, 1000000));
  add_common(scan, true);

  // figure -----------------------------------------------------------------
  CLI::App* figure = app.add_subcommand("figure", "one of the six reference datasets");
  int figure_number = 0;
  figure->add_option("number", figure_number, "figure number, 1-6")
      ->required()
      ->check(CLI::Range(1, 6));
  figure->add_flag("--json", as_json, "emit JSON instead of CSV");
  figure->add_option("-o,--output", output_path, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (evolve->parsed() || conc->parsed()) {
      const bool is_evolve = evolve->parsed();
      const StateFlags& flags = is_evolve ? evolve_state : conc_state;
      const double p = is_evolve ? evolve_p : conc_p;
      const auto theta = flags.angle();
      if (!theta) return 1;
      const esdsim::WernerLikeParams params{flags.r, *theta};
      const auto kind = *esdsim::parse_channel(channel_str);
      const esdsim::XElements xe = esdsim::evolve_werner_analytic(kind, params, p);
      const double c = esdsim::concurrence_x(xe).value;
      std::string text;
      if (as_json) {
        text = esdsim::evaluation_json(kind, params, p, xe, c);
      } else if (is_evolve) {
        text = evolve_text(kind, params, p, xe, c);
      } else {
        const double c_eig = esdsim::concurrence_eig(esdsim::density_from_x(xe)).value;
        text = "concurrence: " + esdsim::format_sig9(c) +
               "\nconcurrence_eig: " + esdsim::format_sig9(c_eig) + "\n";
      }
      return emit(text, output_path, "1 evaluation") ? 0 : 1;
    }

    if (pc->parsed()) {
      const auto theta = pc_state.angle();
      if (!theta) return 1;
      const esdsim::WernerLikeParams params{pc_state.r, *theta};
      const auto kind = *esdsim::parse_channel(channel_str);
      const esdsim::CriticalResult result = method == "analytic"
                                                ? esdsim::pc_analytic(kind, params)
                                                : esdsim::pc_numeric(kind, params, tol);
      std::string text;
      if (as_json) {
        text = esdsim::critical_json(kind, params, result);
      } else {
        text = std::string("status: ") + esdsim::status_label(result.status) + "\n";
        if (result.pc) text += "pc: " + esdsim::format_sig9(*result.pc) + "\n";
      }
      return emit(text, output_path, "1 evaluation") ? 0 : 1;
    }

    if (scan->parsed()) {
      esdsim::ScanConfig cfg;
      cfg.kind = *esdsim::parse_channel(channel_str);
      cfg.r_values = scan_r;
      cfg.theta = theta_grid;
      cfg.p = p_grid;
      cfg.format = as_json ? esdsim::OutputFormat::Json : esdsim::OutputFormat::Csv;
      const auto rows = esdsim::scan_surface(cfg);
      std::ostringstream os;
      esdsim::write_rows(rows, cfg.format, os);
      return emit(os.str(), output_path, std::to_string(rows.size()) + " rows") ? 0 : 1;
    }

    if (figure->parsed()) {
      const auto rows = esdsim::figure_dataset({figure_number});
      std::ostringstream os;
      esdsim::write_rows(rows, as_json ? esdsim::OutputFormat::Json : esdsim::OutputFormat::Csv,
                         os);
      return emit(os.str(), output_path, std::to_string(rows.size()) + " rows") ? 0 : 1;
    }
  } catch (const esdsim::NonConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const esdsim::BracketError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const esdsim::SpectrumError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
