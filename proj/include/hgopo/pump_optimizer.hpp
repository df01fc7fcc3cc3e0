#pragma once

#include <span>
#include <vector>

#include "hgopo/hg_modes.hpp"
#include "hgopo/opo_model.hpp"
#include "hgopo/overlap.hpp"

namespace hgopo {

/// Maximizer of the linear functional c -> sum c_n g_n over the unit sphere.
struct SphereMaximum {
  std::vector<double> argmax;  // g / |g|
  double value = 0.0;          // |g|
};

/// Closed-form Cauchy-Schwarz maximum. NoCoupling if |g| is below `zero_floor`.
SphereMaximum maximize_on_sphere(std::span<const double> g, double zero_floor = 1e-10);

struct OptimizationResult {
  /// Optimal pump, indexed by HG order (orders outside the basis are zero).
  PumpSuperposition coefficients;
  double gamma_max = 0.0;
  /// p_th of the target relative to the 00 -> 00 process, 1 / gamma_max^2.
  double threshold_ratio = 0.0;
  std::vector<int> basis_orders;
  std::vector<double> basis_gammas;
};

/// Unit-norm pump over `basis_orders` (pump waist w/sqrt2) maximizing Gamma for the signal/idler pair.
OptimizationResult optimize_pump(const HGMode& signal, const HGMode& idler, std::span<const int> basis_orders,
                                 const QuadratureOptions& opts = {});

struct ModeThreshold {
  HGMode mode;
  bool is_target = false;
  /// Gamma of the full pump for this mode (same signal and idler).
  double gamma = 0.0;
  /// Fraction of pump power in components that overlap this mode.
  double coupled_power_fraction = 0.0;
  /// Total pump power at which this mode starts to oscillate (infinity if uncoupled).
  double threshold = 0.0;
};

struct CompetitionReport {
  std::vector<ModeThreshold> per_mode;  // target first, then competitors in input order
  HGMode first_oscillator{0, 0, 1.0};
  /// Lowest competitor threshold; infinity when no competitor couples.
  double max_safe_pump = 0.0;
  /// p / p_th(target) reachable before a competitor oscillates, capped at 1.
  double achievable_pump_ratio = 0.0;
  double target_threshold = 0.0;
  /// gamma'^2 / chi^2, the 00 -> 00 threshold for the same cavity.
  double reference_threshold = 0.0;

  const ModeThreshold& entry(const HGMode& mode) const;
  /// Power carried by the pump components coupling to `mode` when the target sits at threshold.
  double coupled_power_at_target_threshold(const HGMode& mode) const;
};

/// All HG modes of lower total order than `target`, sharing its waist.
std::vector<HGMode> default_competitors(const HGMode& target);

/// Thresholds of the target and each competitor under `pump`; reports which oscillates first.
CompetitionReport competing_mode_analysis(const PumpSuperposition& pump, const HGMode& target,
                                          std::span<const HGMode> competitors, const CavityParams& params,
                                          const QuadratureOptions& opts = {});

}  // namespace hgopo
