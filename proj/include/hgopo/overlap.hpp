#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hgopo/hg_modes.hpp"
#include "hgopo/quadrature.hpp"

namespace hgopo {

/// A real transverse field together with the waist of its Gaussian envelope.
/// The envelope waist only steers the quadrature scale; it need not be exact.
struct TransverseProfile {
  std::function<double(double, double)> field;
  double envelope_waist;

  double operator()(double x, double y) const { return field(x, y); }
};

/// Unit-norm real pump superposition sum_n c_n v_n0 over an HG basis of common waist.
class PumpSuperposition {
 public:
  /// Throws InvalidConfiguration unless sum c_n^2 = 1 within 1e-12.
  PumpSuperposition(std::vector<double> coefficients, double basis_waist);

  /// Rescales to unit norm; throws InvalidConfiguration for an all-zero vector.
  static PumpSuperposition normalized(std::vector<double> coefficients, double basis_waist);
  /// Pure v_n0.
  static PumpSuperposition single(int order, double basis_waist);

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  double basis_waist() const noexcept { return basis_waist_; }
  double coefficient(int order) const {
    return order >= 0 && order < static_cast<int>(coefficients_.size()) ? coefficients_[order] : 0.0;
  }
  int size() const noexcept { return static_cast<int>(coefficients_.size()); }

  double field(double x, double y) const;
  TransverseProfile profile() const;

 private:
  std::vector<double> coefficients_;
  double basis_waist_;
};

/// Pump waist of a frequency-doubled beam sharing the signal cavity.
double default_pump_waist(double signal_waist);

TransverseProfile mode_profile(const HGMode& mode);

struct CouplingResult {
  /// Gamma relative to the 00 -> 00,00 process at the same signal waist.
  double gamma = 0.0;
  /// Unnormalized overlap integral (dimension 1/length).
  double raw_integral = 0.0;
  /// Gamma_n for each basis order of the pump.
  std::vector<double> per_order;
};

/// Integral of v_p * u_s * u_i over the transverse plane (adaptive Gauss-Hermite).
double raw_overlap(const TransverseProfile& pump, const HGMode& signal, const HGMode& idler,
                   const QuadratureOptions& opts = {});

/// raw_overlap(v00, u00, u00) at pump waist w/sqrt2; equals 1/(sqrt(pi) w).
double reference_overlap(double signal_waist, const QuadratureOptions& opts = {});

/// Normalized coupling coefficient of a pump superposition to a signal/idler pair.
/// Signal and idler must share a waist (InvalidConfiguration otherwise).
CouplingResult coupling_coefficient(const PumpSuperposition& pump, const HGMode& signal, const HGMode& idler,
                                    const QuadratureOptions& opts = {});

/// Gamma_n for each requested basis order, pump basis waist w/sqrt2.
std::vector<double> basis_couplings(const HGMode& signal, const HGMode& idler, std::span<const int> orders,
                                    const QuadratureOptions& opts = {});

struct ProfileExpansion {
  /// Projections c_n onto v_n0, not renormalized.
  std::vector<double> coefficients;
  double basis_waist = 0.0;
  /// sum c_n^2, i.e. the fraction of the profile's power the truncated basis holds.
  double captured_power = 0.0;
  double profile_power = 0.0;
  /// Set when captured_power / profile_power < 0.99.
  bool truncation_warning = false;

  /// Explicit renormalization into a PumpSuperposition.
  PumpSuperposition to_pump() const { return PumpSuperposition::normalized(coefficients, basis_waist); }
  double synthesize(double x, double y) const;
};

/// Project a profile onto v_00 ... v_(max_order)0 of the given basis waist.
ProfileExpansion expand_profile(const TransverseProfile& profile, double basis_waist, int max_order,
                                const QuadratureOptions& opts = {});

}  // namespace hgopo
