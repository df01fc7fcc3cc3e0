#pragma once

#include <string>

namespace hgopo {

/// Intracavity loss budget and round-trip time of the signal/idler cavity.
///
/// Losses are per-round-trip amplitude decay rates. The pump loss is fixed at
/// gamma_p = 1 and the idler mirrors the signal, which is what the closed-form
/// threshold and spectra below assume.
struct CavityParams {
  double gamma_s = 0.03;                 // output-coupler transmission loss (T/2 for T = 6%)
  double gamma_i = 0.03;
  double mu = 0.03 * (1.0 - 0.79) / 0.79;  // extra loss giving escape efficiency 0.79
  double tau = 1.0 / 2.4e9;              // round trip, s (inverse FSR)
  double chi = 1.0;
  double gamma_p = 1.0;

  double gamma_prime() const { return gamma_s + mu; }
  double escape_efficiency() const { return gamma_s / gamma_prime(); }
  /// Cavity amplitude decay rate gamma'/tau in rad/s.
  double bandwidth_rad() const { return gamma_prime() / tau; }
  /// Cavity field lifetime tau/gamma' in seconds.
  double lifetime() const { return tau / gamma_prime(); }

  /// Throws InvalidConfiguration on violated invariants.
  void validate() const;
};

/// Detection chain. eta_det = prop * hd * phot; eta_total = eta_det * eta_esc.
struct EfficiencyChain {
  double eta_prop = 1.0;
  double eta_hd = 1.0;
  double eta_phot = 1.0;
  double eta_esc = 1.0;

  double eta_det() const { return eta_prop * eta_hd * eta_phot; }
  double eta_total() const { return eta_det() * eta_esc; }

  void validate() const;

  static EfficiencyChain ideal() { return {}; }
  /// Measured chain of the reference NOPA experiment (0.89, 0.81, 0.90, escape 0.79).
  static EfficiencyChain experimental() { return {0.89, 0.81, 0.90, 0.79}; }
  /// Chain with a lumped detection efficiency.
  static EfficiencyChain from_totals(double eta_det, double eta_esc) { return {eta_det, 1.0, 1.0, eta_esc}; }
};

/// phi = 0 amplifies the seed, phi = pi deamplifies it.
enum class Regime { amplification, deamplification };

std::string to_string(Regime r);

/// Shot-noise-normalized variances of the squeezed joint quadratures at one frequency.
///
/// Deamplification squeezes X_s+X_i and Y_s-Y_i; amplification squeezes
/// X_s-X_i and Y_s+Y_i. `v_x` and `v_y` hold whichever pair the regime squeezes.
struct SpectrumPoint {
  double omega_norm = 0.0;
  double v_x = 1.0;
  double v_y = 1.0;
  Regime regime = Regime::deamplification;

  std::string x_label() const { return regime == Regime::deamplification ? "X_s+X_i" : "X_s-X_i"; }
  std::string y_label() const { return regime == Regime::deamplification ? "Y_s-Y_i" : "Y_s+Y_i"; }
};

struct Threshold {
  /// gamma'^2 / (chi Gamma)^2
  double power = 0.0;
  /// gamma' / (chi Gamma)
  double pump_amplitude = 0.0;
};

/// Oscillation threshold for coupling gamma_coupling; NoOscillation if gamma_coupling <= 0.
Threshold threshold(const CavityParams& params, double gamma_coupling);

/// Squeezed-quadrature variance 1 - eta_det eta_esc 4 sigma / ((1+sigma)^2 + Omega^2), sigma = sqrt(p/p_th).
/// AboveThreshold for pump_ratio >= 1.
SpectrumPoint correlation_spectrum(double pump_ratio, double omega_norm, const EfficiencyChain& eff,
                                   Regime regime = Regime::deamplification);

/// Conjugate (anti-squeezed) variance 1 + eta 4 sigma / ((1-sigma)^2 + Omega^2).
double antisqueezed_variance(double pump_ratio, double omega_norm, const EfficiencyChain& eff);

/// Duan sum V = v_x + v_y; V < 2 certifies entanglement.
double inseparability(double pump_ratio, double omega_norm, const EfficiencyChain& eff);

/// V from two noise powers quoted in dB below shot noise.
double inseparability_from_db(double db_x_sum, double db_y_diff);

/// Beam-splitter loss on the two-quadrature sum: V -> eta V + 2 (1 - eta).
double apply_detection_loss(double v_source, double eta_det);

/// Inverse of apply_detection_loss. UnphysicalInput if the result is negative.
double infer_source_inseparability(double v_measured, double eta_det);

/// (v_ref / v_new - 1) * 100.
double enhancement(double v_ref, double v_new);

/// (1 - new / ref) * 100, e.g. for thresholds.
double reduction(double ref, double new_value);

}  // namespace hgopo
