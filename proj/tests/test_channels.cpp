#include <esdsim/channels.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace esdsim;

namespace {

constexpr double kPi = std::numbers::pi;

// Single-qubit channel action, sum_k E rho E^dagger.
Mat2 apply_single(const KrausChannel& channel, const Mat2& rho) {
  Mat2 out;
  for (const Mat2& op : channel.ops) out = out + op * rho * adjoint(op);
  return out;
}

// Literal channel maps, written independently of the Kraus operator sets.
// Channels are linear, so agreement on a matrix basis proves agreement
// everywhere; the depolarizing/phase maps use tr(rho) and diagonal
// projections so they stay correct on traceless basis elements.
Mat2 literal_map(ChannelKind kind, double p, const Mat2& rho) {
  Mat2 out;
  switch (kind) {
    case ChannelKind::AD:
      out(0, 0) = rho(0, 0) + p * rho(1, 1);
      out(0, 1) = std::sqrt(1.0 - p) * rho(0, 1);
      out(1, 0) = std::sqrt(1.0 - p) * rho(1, 0);
      out(1, 1) = (1.0 - p) * rho(1, 1);
      break;
    case ChannelKind::PD:
      out = Complex(1.0 - p) * rho;
      out(0, 0) += p * rho(0, 0);
      out(1, 1) += p * rho(1, 1);
      break;
    case ChannelKind::D: {
      out = Complex(1.0 - p) * rho;
      const Complex half_trace = 0.5 * trace(rho);
      out(0, 0) += p * half_trace;
      out(1, 1) += p * half_trace;
      break;
    }
  }
  return out;
}

DensityMatrix random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 g;
  for (auto& z : g.e) z = Complex(u(rng), u(rng));
  Mat4 m = g * adjoint(g);
  return DensityMatrix::from_matrix(Complex(1.0 / trace(m).real()) * m, 1e-9);
}

}  // namespace

TEST_CASE("kraus operator sets", "[channels]") {
  SECTION("operator counts and p = 0 limits") {
    REQUIRE(amplitude_damping(0.3).ops.size() == 2);
    REQUIRE(phase_damping(0.3).ops.size() == 3);
    REQUIRE(depolarizing(0.3).ops.size() == 4);

    REQUIRE(max_abs_diff(amplitude_damping(0.0).ops[0], Mat2::identity()) == 0.0);
    REQUIRE(max_abs_diff(depolarizing(0.0).ops[0], Mat2::identity()) == 0.0);
  }

  SECTION("amplitude damping at full strength empties the excited level") {
    const KrausChannel ch = amplitude_damping(1.0);
    Mat2 excited;
    excited(1, 1) = 1.0;
    const Mat2 out = apply_single(ch, excited);
    REQUIRE(out(0, 0).real() == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(std::abs(out(1, 1)) <= 1e-15);
  }

  SECTION("completeness sum E^dagger E = I across the strength range") {
    for (int ip = 0; ip <= 50; ++ip) {
      const double p = ip / 50.0;
      REQUIRE(completeness_deviation(amplitude_damping(p)) <= 1e-15);
      REQUIRE(completeness_deviation(phase_damping(p)) <= 1e-15);
      REQUIRE(completeness_deviation(depolarizing(p)) <= 1e-15);
    }
  }

  SECTION("rejects out-of-range strengths") {
    REQUIRE_THROWS_AS(amplitude_damping(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(phase_damping(1.1), std::domain_error);
    REQUIRE_THROWS_AS(depolarizing(std::numeric_limits<double>::quiet_NaN()),
                      std::domain_error);
  }

  SECTION("label round trip") {
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D})
      REQUIRE(parse_channel(channel_label(kind)) == kind);
    REQUIRE_FALSE(parse_channel("bogus").has_value());
  }
}

TEST_CASE("single-qubit channel action", "[channels]") {
  SECTION("named anchor points") {
    Mat2 plus;  // |+><+|
    plus(0, 0) = 0.5;
    plus(0, 1) = 0.5;
    plus(1, 0) = 0.5;
    plus(1, 1) = 0.5;
    const Mat2 dephased = apply_single(phase_damping(0.5), plus);
    REQUIRE(dephased(0, 0).real() == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(dephased(0, 1).real() == Catch::Approx(0.25).margin(1e-15));

    Mat2 ground;
    ground(0, 0) = 1.0;
    const Mat2 depolarized = apply_single(depolarizing(0.5), ground);
    REQUIRE(depolarized(0, 0).real() == Catch::Approx(0.75).margin(1e-15));
    REQUIRE(depolarized(1, 1).real() == Catch::Approx(0.25).margin(1e-15));

    Mat2 excited;
    excited(1, 1) = 1.0;
    const Mat2 damped = apply_single(amplitude_damping(0.3), excited);
    REQUIRE(damped(0, 0).real() == Catch::Approx(0.3).margin(1e-15));
    REQUIRE(damped(1, 1).real() == Catch::Approx(0.7).margin(1e-15));
  }

  SECTION("kraus sets realize the literal channel maps") {
    // check on the full single-qubit matrix basis; linearity does the rest
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D})
      for (const double p : {0.0, 0.15, 0.5, 0.85, 1.0})
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            Mat2 basis;
            basis(i, j) = 1.0;
            const Mat2 via_kraus = apply_single(make_channel(kind, p), basis);
            const Mat2 via_map = literal_map(kind, p, basis);
            REQUIRE(max_abs_diff(via_kraus, via_map) <= 1e-12);
          }
  }
}

TEST_CASE("two-qubit local application", "[channels]") {
  std::mt19937_64 rng(313);

  SECTION("identity channels leave states untouched") {
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_density(rng);
      const DensityMatrix out =
          apply_local(amplitude_damping(0.0), phase_damping(0.0), rho);
      REQUIRE(max_abs_diff(out.matrix(), rho.matrix()) <= 1e-14);
    }
  }

  SECTION("full depolarizing on both qubits reaches the maximally mixed state") {
    for (int trial = 0; trial < 5; ++trial) {
      const DensityMatrix out =
          apply_local(depolarizing(1.0), depolarizing(1.0), random_density(rng));
      REQUIRE(max_abs_diff(out.matrix(), Complex(0.25) * Mat4::identity()) <= 1e-14);
    }
  }

  SECTION("CPTP on random states: unit trace and positive output") {
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D})
      for (const double p : {0.1, 0.6, 1.0})
        for (int trial = 0; trial < 5; ++trial) {
          const KrausChannel ch = make_channel(kind, p);
          const DensityMatrix out = apply_local(ch, ch, random_density(rng));
          const ValidationReport report = validate(out);
          REQUIRE(report.trace_deviation <= 1e-12);
          REQUIRE(report.hermiticity_deviation <= 1e-12);
          REQUIRE(report.min_eigenvalue >= -1e-10);
        }
  }

  SECTION("asymmetric strengths are supported") {
    const DensityMatrix rho = werner_like({1.0, kPi / 4});
    const DensityMatrix out = apply_local(amplitude_damping(0.2), amplitude_damping(0.7), rho);
    REQUIRE(validate(out).pass);
    // coherence picks up sqrt(1-p1) sqrt(1-p2)
    REQUIRE(out.matrix()(0, 3).real() ==
            Catch::Approx(0.5 * std::sqrt(0.8) * std::sqrt(0.3)).margin(1e-14));
  }
}

TEST_CASE("analytic evolution", "[channels]") {
  SECTION("matches the Kraus route over a parameter grid") {
    double worst = 0.0;
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D})
      for (int ir = 0; ir <= 4; ++ir)
        for (int it = 0; it <= 8; ++it)
          for (int ip = 0; ip <= 10; ++ip) {
            const WernerLikeParams params{ir / 4.0, kPi * it / 8.0};
            const double p = ip / 10.0;
            const KrausChannel ch = make_channel(kind, p);
            const DensityMatrix kraus = apply_local(ch, ch, werner_like(params));
            const Mat4 analytic = x_matrix(evolve_werner_analytic(kind, params, p));
            worst = std::max(worst, max_abs_diff(kraus.matrix(), analytic));
          }
    REQUIRE(worst <= 1e-12);
  }

  SECTION("anchor values") {
    // amplitude damping, pure Bell state, half strength
    const XElements ad = evolve_werner_analytic(ChannelKind::AD, {1.0, kPi / 4}, 0.5);
    REQUIRE(ad.x == Catch::Approx(0.625).margin(1e-15));
    REQUIRE(ad.y == Catch::Approx(0.125).margin(1e-15));
    REQUIRE(ad.z == Catch::Approx(0.125).margin(1e-15));
    REQUIRE(ad.w == Catch::Approx(0.125).margin(1e-15));
    REQUIRE(std::abs(ad.u) == 0.0);
    REQUIRE(ad.v.real() == Catch::Approx(0.25).margin(1e-15));

    // amplitude damping drains everything into |00> at p = 1
    const XElements drained = evolve_werner_analytic(ChannelKind::AD, {0.6, 1.0}, 1.0);
    REQUIRE(drained.x == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(drained.y == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(drained.w == Catch::Approx(0.0).margin(1e-15));

    // full depolarizing lands on the maximally mixed state
    const XElements mixed = evolve_werner_analytic(ChannelKind::D, {1.0, kPi / 4}, 1.0);
    REQUIRE(mixed.x == Catch::Approx(0.25).margin(1e-15));
    REQUIRE(mixed.y == Catch::Approx(0.25).margin(1e-15));
    REQUIRE(std::abs(mixed.v) <= 1e-15);
  }

  SECTION("p = 0 reproduces the initial state for every kind") {
    const WernerLikeParams params{0.8, 0.9};
    const XElements initial = extract_x(werner_like(params));
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D}) {
      const XElements xe = evolve_werner_analytic(kind, params, 0.0);
      REQUIRE(max_abs_diff(x_matrix(xe), x_matrix(initial)) <= 1e-15);
    }
  }

  SECTION("phase damping freezes populations") {
    const WernerLikeParams params{0.65, 0.7};
    const XElements before = evolve_werner_analytic(ChannelKind::PD, params, 0.0);
    for (const double p : {0.2, 0.5, 0.9, 1.0}) {
      const XElements after = evolve_werner_analytic(ChannelKind::PD, params, p);
      REQUIRE(after.x == before.x);
      REQUIRE(after.y == before.y);
      REQUIRE(after.z == before.z);
      REQUIRE(after.w == before.w);
      // coherence scales by (1-p)^2
      REQUIRE(std::abs(after.v - Complex((1.0 - p) * (1.0 - p)) * before.v) <= 1e-15);
    }
  }

  SECTION("outputs are valid X states across the grid") {
    for (ChannelKind kind : {ChannelKind::AD, ChannelKind::PD, ChannelKind::D})
      for (int ir = 0; ir <= 4; ++ir)
        for (int it = 0; it <= 6; ++it)
          for (int ip = 0; ip <= 8; ++ip) {
            const XElements xe =
                evolve_werner_analytic(kind, {ir / 4.0, kPi * it / 6.0}, ip / 8.0);
            REQUIRE_NOTHROW(check_x(xe));
          }
  }

  SECTION("rejects out-of-range strengths and parameters") {
    REQUIRE_THROWS_AS(evolve_werner_analytic(ChannelKind::AD, {1.0, 0.5}, -0.1),
                      std::domain_error);
    REQUIRE_THROWS_AS(evolve_werner_analytic(ChannelKind::AD, {1.0, 0.5}, 1.1),
                      std::domain_error);
    REQUIRE_THROWS_AS(evolve_werner_analytic(ChannelKind::AD, {1.5, 0.5}, 0.5),
                      std::domain_error);
  }
}

TEST_CASE("decay parametrization", "[channels]") {
  REQUIRE(p_of_t(1.3, 0.0) == 0.0);
  REQUIRE(p_of_t(0.0, 5.0) == 0.0);
  REQUIRE(p_of_t(1.0, 2.0 * std::log(4.0)) == Catch::Approx(0.75).margin(1e-15));
  REQUIRE(p_of_t(1.0, 1e6) == Catch::Approx(1.0).margin(1e-15));
  REQUIRE_THROWS_AS(p_of_t(-1.0, 1.0), std::domain_error);
  REQUIRE_THROWS_AS(p_of_t(1.0, -1.0), std::domain_error);
}
