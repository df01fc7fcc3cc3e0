#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgopo/hg_modes.hpp"
#include "hgopo/opo_model.hpp"
#include "hgopo/overlap.hpp"
#include "hgopo/quadrature.hpp"

namespace hgopo {

/// hg00, hg20, the optimal superposition for the signal mode, or explicit coefficients.
struct PumpModeSpec {
  enum class Kind { hg00, hg20, optimal, custom };
  Kind kind = Kind::optimal;
  std::vector<double> coefficients;  // custom only

  std::string name() const;
};

/// Parses "hg00", "hg20", "optimal" or "custom:c0,c1,...". Throws UsageError.
PumpModeSpec parse_pump_mode(const std::string& text);

/// Orders searched when resolving the optimal pump.
inline constexpr int kOptimalBasisMaxOrder = 6;

PumpSuperposition resolve_pump(const PumpModeSpec& spec, const HGMode& signal, const QuadratureOptions& opts = {});

struct SimulationSettings {
  int trajectories = 16;
  int segments = 16;
  double segment_lifetimes = 400.0;
  double steps_per_lifetime = 100.0;
  std::uint64_t seed = 42;
};

/// Everything a CLI run needs. Defaults reproduce the reference NOPA experiment.
struct ExperimentConfig {
  CavityParams cavity;
  EfficiencyChain efficiencies = EfficiencyChain::experimental();
  double omega_norm = 0.18;
  PumpModeSpec pump_mode;
  double reference_threshold_mw = 510.0;
  std::string signal = "10";
  SimulationSettings sim;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  HGMode signal_mode() const { return parse_mode(signal, 1.0); }
};

/**
 * Parses the flat `key = value` format. Lines starting with `#` are comments.
 *
 * Keys: cavity.{gamma_s,gamma_i,mu,tau,chi,gamma_p}, eff.{eta_prop,eta_hd,eta_phot,eta_esc,eta_det},
 * analysis.omega_norm, pump.mode, pump.reference_threshold_mw, signal.mode,
 * sim.{trajectories,segments,segment_lifetimes,steps_per_lifetime,seed}.
 * `eff.eta_det` replaces the prop*hd*phot product with a lumped value.
 */
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace hgopo
