#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hgopo/execution.hpp"
#include "hgopo/opo_model.hpp"

namespace hgopo {

/**
 * Stochastic run of the linearized signal/idler Langevin equations.
 *
 * Times are in seconds. `dt` and `duration` left at zero resolve to
 * lifetime/100 and `default_segments` segments per trajectory; see resolved().
 */
struct SimConfig {
  CavityParams params;
  double gamma_coupling = 1.0;
  double pump_ratio = 0.0;
  /// phi = theta_p - (theta_s + theta_i); only 0 (amplification) and pi (deamplification) are supported.
  double relative_phase = 3.14159265358979323846;
  double dt = 0.0;
  double duration = 0.0;
  std::uint64_t seed = 1;
  int n_trajectories = 16;
  /// Length of one periodogram segment in cavity lifetimes.
  double segment_lifetimes = 400.0;
  /// Classical seed amplitude injected through the output coupler (steady_state only).
  double seed_amplitude = 0.0;

  static constexpr int default_segments = 16;
  static constexpr double default_steps_per_lifetime = 100.0;

  /// Copy with dt and duration filled in.
  SimConfig resolved() const;
  /// Throws InvalidConfiguration; call on a resolved config. The simulation entry points resolve on their own.
  void validate() const;
  Regime regime() const;
  double sigma() const;
  long steps_per_segment() const;
  long segments_per_trajectory() const;
};

struct SteadyState {
  std::complex<double> pump;
  std::complex<double> signal;
  std::complex<double> idler;
  /// sqrt(2 gamma) a - a_in for the signal port.
  std::complex<double> signal_output;
  int iterations = 0;
};

/// Stationary mean fields from the full (nonlinear) equations with noise removed.
/// Fixed-point iteration to 1e-12; ConvergenceError after 10^4 sweeps.
SteadyState steady_state(const SimConfig& config);

struct SpectrumEstimate {
  double omega_norm = 0.0;
  /// Mean over both squeezed combinations and all segments.
  double v_estimate = 0.0;
  double std_error = 0.0;
  /// Number of independent periodogram segments averaged.
  long n_effective = 0;
  double v_x = 0.0;  // squeezed X combination alone
  double v_y = 0.0;  // squeezed Y combination alone
  double v_antisqueezed = 0.0;
  double antisqueezed_std_error = 0.0;
  Regime regime = Regime::deamplification;
};

/// Euler-Maruyama integration and Hann-windowed periodogram at each analysis frequency.
/// Trajectories share nothing; the result does not depend on `exec`.
std::vector<SpectrumEstimate> simulate_spectra(const SimConfig& config, std::span<const double> omega_norms,
                                               Execution exec = Execution::parallel);

SpectrumEstimate simulate_spectrum(const SimConfig& config, double omega_norm, Execution exec = Execution::parallel);

}  // namespace hgopo
