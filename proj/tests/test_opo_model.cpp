#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hgopo/errors.hpp"
#include "hgopo/opo_model.hpp"

using namespace hgopo;

namespace {
EfficiencyChain lumped(double det, double esc) { return EfficiencyChain::from_totals(det, esc); }
}  // namespace

TEST_CASE("default cavity reproduces the reference NOPA") {
  const CavityParams p;
  CHECK(p.escape_efficiency() == doctest::Approx(0.79).epsilon(1e-12));
  // Full width of the Lorentzian, gamma'/tau/pi, close to the quoted 28 MHz.
  CHECK(p.bandwidth_rad() / std::numbers::pi / 1e6 == doctest::Approx(29.0).epsilon(0.01));
  CHECK(EfficiencyChain::experimental().eta_det() == doctest::Approx(0.64881).epsilon(1e-9));
  CHECK(EfficiencyChain::experimental().eta_total() == doctest::Approx(0.64881 * 0.79).epsilon(1e-9));
}

TEST_CASE("parameter validation") {
  CavityParams p;
  p.gamma_i = 0.05;
  CHECK_THROWS_AS(p.validate(), InvalidConfiguration);
  p = CavityParams{};
  p.gamma_p = 0.5;
  CHECK_THROWS_AS(p.validate(), InvalidConfiguration);
  p = CavityParams{};
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidConfiguration);
  EfficiencyChain e;
  e.eta_hd = 1.2;
  CHECK_THROWS_AS(e.validate(), InvalidConfiguration);
}

TEST_CASE("threshold ratios") {
  const CavityParams p;
  const double base = threshold(p, 1.0).power;
  CHECK(std::abs(threshold(p, 0.5).power / base - 4.0) <= 1e-12);
  CHECK(std::abs(threshold(p, 1.0 / std::numbers::sqrt2).power / base - 2.0) <= 1e-12);
  CHECK(std::abs(threshold(p, std::sqrt(3.0) / 2.0).power / base - 4.0 / 3.0) <= 1e-12);
  const Threshold t = threshold(p, 0.5);
  CHECK(t.pump_amplitude == doctest::Approx(p.gamma_prime() / (p.chi * 0.5)));
  CHECK(t.power == doctest::Approx(t.pump_amplitude * t.pump_amplitude));
  CHECK_THROWS_AS(threshold(p, 0.0), NoOscillation);
  CHECK_THROWS_AS(threshold(p, -0.2), NoOscillation);
}

TEST_CASE("correlation spectrum examples") {
  for (double omega : {0.0, 0.18, 5.0}) {
    const SpectrumPoint s = correlation_spectrum(0.0, omega, lumped(0.5, 0.7));
    CHECK(s.v_x == 1.0);
    CHECK(s.v_y == 1.0);
  }
  CHECK(correlation_spectrum(1.0 - 1e-14, 0.0, EfficiencyChain::ideal()).v_x < 1e-12);

  // sigma^2 = 500/2040; 1 - 0.65*0.79*4 sigma/((1+sigma)^2 + 0.18^2) worked by hand: 0.5516.
  const SpectrumPoint s = correlation_spectrum(500.0 / 2040.0, 0.18, lumped(0.65, 0.79));
  CHECK(s.v_x == doctest::Approx(0.5516).epsilon(2e-4));
  CHECK(s.v_x + s.v_y == doctest::Approx(1.103).epsilon(1e-3));
  CHECK(s.x_label() == "X_s+X_i");
  CHECK(correlation_spectrum(0.2, 0.0, lumped(1, 1), Regime::amplification).x_label() == "X_s-X_i");

  CHECK_THROWS_AS(correlation_spectrum(1.0, 0.0, EfficiencyChain::ideal()), AboveThreshold);
  CHECK_THROWS_AS(correlation_spectrum(1.7, 0.0, EfficiencyChain::ideal()), AboveThreshold);
  CHECK_THROWS_AS(correlation_spectrum(-0.1, 0.0, EfficiencyChain::ideal()), InvalidConfiguration);
}

TEST_CASE("inseparability examples") {
  CHECK(std::abs(inseparability(0.25, 0.0, EfficiencyChain::ideal()) - 2.0 / 9.0) <= 1e-12);
  CHECK(inseparability(0.0, 0.3, lumped(0.65, 0.79)) == 2.0);
  CHECK(inseparability(670.0 / 680.0, 0.18, lumped(0.65, 0.79)) == doctest::Approx(0.98).epsilon(0.01));
}

TEST_CASE("dB conversion, source inference and enhancement") {
  CHECK(inseparability_from_db(2.36, 2.56) == doctest::Approx(1.135).epsilon(0.005 / 1.135));
  CHECK(inseparability_from_db(2.92, 2.76) == doctest::Approx(1.041).epsilon(0.005 / 1.041));
  CHECK(inseparability_from_db(0.0, 0.0) == 2.0);

  CHECK(infer_source_inseparability(1.13, 0.65) == doctest::Approx(0.662).epsilon(1e-3));
  CHECK(infer_source_inseparability(0.98, 0.65) == doctest::Approx(0.431).epsilon(1e-3));
  for (double eta : {0.1, 0.5, 1.0}) CHECK(infer_source_inseparability(2.0, eta) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(infer_source_inseparability(0.5, 0.65), UnphysicalInput);
  CHECK_THROWS_AS(infer_source_inseparability(1.0, 0.0), InvalidConfiguration);

  CHECK(std::abs(enhancement(0.66, 0.43) - 53.5) <= 0.3);
  CHECK(enhancement(1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(enhancement(1.0, 0.0), InvalidConfiguration);
  CHECK(reduction(2.04, 0.68) == doctest::Approx(66.667).epsilon(1e-4));
}

TEST_CASE("property: monotone in pump and frequency") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const EfficiencyChain eff = lumped(0.05 + 0.95 * u(rng), 0.05 + 0.95 * u(rng));
    const double p1 = 0.999 * u(rng), p2 = 0.999 * u(rng);
    const double omega = 4.0 * u(rng), omega2 = 4.0 * u(rng);
    if (p1 != p2) {
      const bool lower = p1 < p2;
      CHECK((inseparability(p1, omega, eff) > inseparability(p2, omega, eff)) == lower);
    }
    if (omega != omega2 && p1 > 0.0) {
      CHECK((inseparability(p1, omega, eff) < inseparability(p1, omega2, eff)) == (omega < omega2));
    }
    const double v = correlation_spectrum(p1, omega, eff).v_x;
    CHECK(v >= 0.0);
    CHECK(v <= 2.0);
  }
}

TEST_CASE("property: efficiency composition and loss inversion") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 0.05 + 0.95 * u(rng), b = 0.05 + 0.95 * u(rng), esc = 0.05 + 0.95 * u(rng);
    const double p = 0.99 * u(rng), omega = 3.0 * u(rng);
    const double direct = inseparability(p, omega, lumped(a * b, esc));
    const double staged = apply_detection_loss(apply_detection_loss(inseparability(p, omega, lumped(1.0, esc)), a), b);
    CHECK(std::abs(direct - staged) <= 1e-12);

    const double v_src = 2.0 * u(rng);
    CHECK(std::abs(infer_source_inseparability(apply_detection_loss(v_src, a), a) - v_src) <= 1e-12);

    const SpectrumPoint amp = correlation_spectrum(p, omega, lumped(a, esc), Regime::amplification);
    const SpectrumPoint deamp = correlation_spectrum(p, omega, lumped(a, esc), Regime::deamplification);
    CHECK(amp.v_x == deamp.v_x);
    CHECK(amp.v_y == deamp.v_y);
  }
}

TEST_CASE("antisqueezed conjugate") {
  CHECK(antisqueezed_variance(0.0, 1.0, EfficiencyChain::ideal()) == 1.0);
  // Ideal cavity at DC is a minimum-uncertainty state.
  for (double p : {0.1, 0.49, 0.81}) {
    const double product =
        correlation_spectrum(p, 0.0, EfficiencyChain::ideal()).v_x * antisqueezed_variance(p, 0.0, EfficiencyChain::ideal());
    CHECK(product == doctest::Approx(1.0).epsilon(1e-12));
  }
  const double s = 0.7;
  CHECK(antisqueezed_variance(s * s, 0.18, EfficiencyChain::ideal()) ==
        doctest::Approx(1.0 + 4 * s / ((1 - s) * (1 - s) + 0.0324)));
}
