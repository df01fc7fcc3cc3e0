#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hgopo/errors.hpp"
#include "hgopo/langevin.hpp"

using namespace hgopo;

namespace {

SimConfig lossless(double sigma, int trajectories = 8) {
  SimConfig c;
  c.params.mu = 0.0;
  c.pump_ratio = sigma * sigma;
  c.n_trajectories = trajectories;
  c.seed = 7;
  return c;
}

// Squeezed joint quadrature of a lossless cavity, solved directly in the frequency domain.
double oracle_squeezed(double sigma, double omega) {
  return 1.0 - 4.0 * sigma / ((1.0 + sigma) * (1.0 + sigma) + omega * omega);
}
double oracle_antisqueezed(double sigma, double omega) {
  return 1.0 + 4.0 * sigma / ((1.0 - sigma) * (1.0 - sigma) + omega * omega);
}

}  // namespace

TEST_CASE("config resolution and validation") {
  SimConfig c = lossless(0.5).resolved();
  const double lifetime = c.params.lifetime();
  CHECK(c.dt == doctest::Approx(lifetime / 100.0));
  CHECK(c.segments_per_trajectory() == SimConfig::default_segments);
  CHECK(c.steps_per_segment() == 40000);
  CHECK(c.sigma() == doctest::Approx(0.5));
  CHECK(c.regime() == Regime::deamplification);

  SimConfig coarse = c;
  coarse.dt = lifetime / 10.0;
  CHECK_THROWS_AS(coarse.validate(), InvalidConfiguration);
  SimConfig hot = c;
  hot.pump_ratio = 0.97;
  CHECK_THROWS_AS(hot.validate(), InvalidConfiguration);
  SimConfig phase = c;
  phase.relative_phase = 1.0;
  CHECK_THROWS_AS(phase.validate(), InvalidConfiguration);
  SimConfig none = c;
  none.n_trajectories = 0;
  CHECK_THROWS_AS(none.validate(), InvalidConfiguration);
  SimConfig shortseg = c;
  shortseg.segment_lifetimes = 10.0;
  CHECK_THROWS_AS(shortseg.validate(), InvalidConfiguration);
  CHECK_THROWS_AS(simulate_spectrum(c, -0.5), InvalidConfiguration);
}

TEST_CASE("steady state without seed") {
  SimConfig c = lossless(0.0);
  SteadyState s = steady_state(c);
  CHECK(std::abs(s.pump) == 0.0);
  CHECK(std::abs(s.signal) == 0.0);
  CHECK(std::abs(s.idler) == 0.0);

  c.pump_ratio = 0.25;
  s = steady_state(c);
  const double eps_th = threshold(c.params, c.gamma_coupling).pump_amplitude;
  CHECK(std::abs(s.signal) == 0.0);
  CHECK(std::abs(s.pump) == doctest::Approx(0.5 * eps_th).epsilon(1e-12));
}

TEST_CASE("seeded classical gain") {
  // Small enough that pump depletion stays below 1e-12.
  const double alpha = 1e-8;
  for (double sigma : {0.2, 0.5, 0.8}) {
    SimConfig c = lossless(0.0);
    c.seed_amplitude = alpha;
    const SteadyState ref = steady_state(c);
    c.pump_ratio = sigma * sigma;
    const SteadyState de = steady_state(c);
    const double gain = std::norm(de.signal) / std::norm(ref.signal);
    CHECK(gain == doctest::Approx(1.0 / ((1.0 + sigma) * (1.0 + sigma))).epsilon(1e-9));
    // Lossless coupler: reflected amplitude (1 - sigma)/(1 + sigma).
    CHECK(de.signal_output.real() / alpha == doctest::Approx((1.0 - sigma) / (1.0 + sigma)).epsilon(1e-9));

    c.relative_phase = 0.0;
    const SteadyState amp = steady_state(c);
    CHECK(std::norm(amp.signal) / std::norm(ref.signal) ==
          doctest::Approx(1.0 / ((1.0 - sigma) * (1.0 - sigma))).epsilon(1e-9));
  }
}

TEST_CASE("shot noise at zero pump") {
  SimConfig c = lossless(0.0, 4);
  c.params.mu = 0.01;
  c.duration = 4 * c.segment_lifetimes * c.params.lifetime();
  for (const SpectrumEstimate& e : simulate_spectra(c, std::vector<double>{0.0, 0.18, 1.0})) {
    CHECK(e.std_error > 0.0);
    CHECK(std::abs(e.v_estimate - 1.0) <= 3.0 * e.std_error);
    CHECK(std::abs(e.v_antisqueezed - 1.0) <= 3.0 * e.antisqueezed_std_error);
  }
}

TEST_CASE("squeezing matches the frequency-domain solution") {
  const SimConfig c = lossless(0.7, 8);
  const SpectrumEstimate e = simulate_spectrum(c, 0.18);
  const double expect = oracle_squeezed(0.7, 0.18);
  CHECK(expect == doctest::Approx(0.0405).epsilon(0.05));
  CHECK(std::abs(e.v_estimate - expect) <= 0.05 * expect);
  CHECK(e.n_effective == 8 * SimConfig::default_segments);
  CHECK(e.v_antisqueezed > 1.0);
  CHECK(std::abs(e.v_antisqueezed - oracle_antisqueezed(0.7, 0.18)) <=
        std::max(0.05 * oracle_antisqueezed(0.7, 0.18), 3.0 * e.antisqueezed_std_error));
  const double product = e.v_estimate * e.v_antisqueezed;
  const double product_se =
      product * std::hypot(e.std_error / e.v_estimate, e.antisqueezed_std_error / e.v_antisqueezed);
  CHECK(product + 3.0 * product_se >= 1.0);
}

TEST_CASE("amplification regime squeezes the conjugate combinations") {
  SimConfig c = lossless(0.5, 4);
  c.relative_phase = 0.0;
  const SpectrumEstimate e = simulate_spectrum(c, 0.0);
  CHECK(e.regime == Regime::amplification);
  const double expect = oracle_squeezed(0.5, 0.0);
  CHECK(std::abs(e.v_estimate - expect) <= std::max(0.05 * expect, 3.0 * e.std_error));
}

TEST_CASE("escape loss follows the analytic spectrum") {
  SimConfig c = lossless(0.5, 4);
  c.params.mu = CavityParams{}.mu;
  const SpectrumEstimate e = simulate_spectrum(c, 0.18);
  const double expect =
      correlation_spectrum(0.25, 0.18, EfficiencyChain::from_totals(1.0, c.params.escape_efficiency())).v_x;
  CHECK(std::abs(e.v_estimate - expect) <= std::max(0.05 * expect, 3.0 * e.std_error));
}

TEST_CASE("determinism and execution paths") {
  SimConfig c = lossless(0.5, 3);
  c.duration = 2 * c.segment_lifetimes * c.params.lifetime();
  const std::vector<double> omegas{0.0, 1.0};
  const auto a = simulate_spectra(c, omegas, Execution::parallel);
  const auto b = simulate_spectra(c, omegas, Execution::parallel);
  const auto s = simulate_spectra(c, omegas, Execution::serial);
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    CHECK(a[k].v_estimate == b[k].v_estimate);
    CHECK(a[k].std_error == b[k].std_error);
    CHECK(a[k].v_estimate == s[k].v_estimate);
    CHECK(a[k].v_antisqueezed == s[k].v_antisqueezed);
  }
  c.seed = 8;
  CHECK(simulate_spectra(c, omegas)[0].v_estimate != a[0].v_estimate);
}

TEST_CASE("standard error shrinks as one over root trajectories") {
  SimConfig small = lossless(0.5, 2);
  small.duration = 8 * small.segment_lifetimes * small.params.lifetime();
  SimConfig large = small;
  large.n_trajectories = 32;
  const double ratio = simulate_spectrum(small, 0.18).std_error / simulate_spectrum(large, 0.18).std_error;
  CHECK(ratio >= 4.0 / 1.5);
  CHECK(ratio <= 4.0 * 1.5);
}
