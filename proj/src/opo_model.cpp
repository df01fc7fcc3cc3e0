#include "hgopo/opo_model.hpp"

#include <cmath>

#include "hgopo/errors.hpp"

namespace hgopo {
namespace {

bool in_unit_interval(double v) { return v > 0.0 && v <= 1.0; }

double squeezing_term(double pump_ratio, double omega_norm, const EfficiencyChain& eff) {
  if (!(pump_ratio >= 0.0)) throw InvalidConfiguration("pump ratio must be non-negative");
  if (pump_ratio >= 1.0)
    throw AboveThreshold("pump ratio " + std::to_string(pump_ratio) + " is at or above threshold");
  if (!(omega_norm >= 0.0)) throw InvalidConfiguration("normalized analysis frequency must be non-negative");
  eff.validate();
  const double sigma = std::sqrt(pump_ratio);
  return eff.eta_total() * 4.0 * sigma / ((1.0 + sigma) * (1.0 + sigma) + omega_norm * omega_norm);
}

}  // namespace

void CavityParams::validate() const {
  if (!in_unit_interval(gamma_s)) throw InvalidConfiguration("cavity.gamma_s must lie in (0,1]");
  if (gamma_i != gamma_s) throw InvalidConfiguration("cavity.gamma_i must equal cavity.gamma_s");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidConfiguration("cavity.mu must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidConfiguration("cavity.tau must be positive");
  if (!(chi > 0.0) || !std::isfinite(chi)) throw InvalidConfiguration("cavity.chi must be positive");
  if (gamma_p != 1.0) throw InvalidConfiguration("cavity.gamma_p is fixed at 1");
}

void EfficiencyChain::validate() const {
  if (!in_unit_interval(eta_prop)) throw InvalidConfiguration("eff.eta_prop must lie in (0,1]");
  if (!in_unit_interval(eta_hd)) throw InvalidConfiguration("eff.eta_hd must lie in (0,1]");
  if (!in_unit_interval(eta_phot)) throw InvalidConfiguration("eff.eta_phot must lie in (0,1]");
  if (!in_unit_interval(eta_esc)) throw InvalidConfiguration("eff.eta_esc must lie in (0,1]");
}

std::string to_string(Regime r) { return r == Regime::amplification ? "amplification" : "deamplification"; }

Threshold threshold(const CavityParams& params, double gamma_coupling) {
  params.validate();
  if (!(gamma_coupling > 0.0))
    throw NoOscillation("coupling " + std::to_string(gamma_coupling) + " cannot pump this mode");
  const double amplitude = params.gamma_prime() / (params.chi * gamma_coupling);
  return {amplitude * amplitude, amplitude};
}

SpectrumPoint correlation_spectrum(double pump_ratio, double omega_norm, const EfficiencyChain& eff, Regime regime) {
  const double v = 1.0 - squeezing_term(pump_ratio, omega_norm, eff);
  return {omega_norm, v, v, regime};
}

double antisqueezed_variance(double pump_ratio, double omega_norm, const EfficiencyChain& eff) {
  squeezing_term(pump_ratio, omega_norm, eff);
  const double sigma = std::sqrt(pump_ratio);
  return 1.0 + eff.eta_total() * 4.0 * sigma / ((1.0 - sigma) * (1.0 - sigma) + omega_norm * omega_norm);
}

double inseparability(double pump_ratio, double omega_norm, const EfficiencyChain& eff) {
  const SpectrumPoint p = correlation_spectrum(pump_ratio, omega_norm, eff, Regime::deamplification);
  return p.v_x + p.v_y;
}

double inseparability_from_db(double db_x_sum, double db_y_diff) {
  if (!std::isfinite(db_x_sum) || !std::isfinite(db_y_diff)) throw InvalidConfiguration("dB values must be finite");
  return std::pow(10.0, -db_x_sum / 10.0) + std::pow(10.0, -db_y_diff / 10.0);
}

double apply_detection_loss(double v_source, double eta_det) {
  if (!in_unit_interval(eta_det)) throw InvalidConfiguration("eta_det must lie in (0,1]");
  return eta_det * v_source + 2.0 * (1.0 - eta_det);
}

double infer_source_inseparability(double v_measured, double eta_det) {
  if (!in_unit_interval(eta_det)) throw InvalidConfiguration("eta_det must lie in (0,1]");
  const double v = (v_measured - 2.0 * (1.0 - eta_det)) / eta_det;
  if (v < 0.0)
    throw UnphysicalInput("measured V=" + std::to_string(v_measured) + " is below what eta_det=" +
                          std::to_string(eta_det) + " allows");
  return v;
}

double enhancement(double v_ref, double v_new) {
  if (!(v_new > 0.0)) throw InvalidConfiguration("enhancement needs a positive new value");
  return (v_ref / v_new - 1.0) * 100.0;
}

double reduction(double ref, double new_value) {
  if (!(ref > 0.0)) throw InvalidConfiguration("reduction needs a positive reference");
  return (1.0 - new_value / ref) * 100.0;
}

}  // namespace hgopo
