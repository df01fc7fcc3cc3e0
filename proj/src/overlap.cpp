#include "hgopo/overlap.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "hgopo/errors.hpp"

namespace hgopo {
namespace {

constexpr double kNormTolerance = 1e-12;

double squared_norm(const std::vector<double>& c) { return std::inner_product(c.begin(), c.end(), c.begin(), 0.0); }

void check_waist(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw InvalidConfiguration("basis waist must be positive");
}

}  // namespace

PumpSuperposition::PumpSuperposition(std::vector<double> coefficients, double basis_waist)
    : coefficients_(std::move(coefficients)), basis_waist_(basis_waist) {
  check_waist(basis_waist_);
  if (coefficients_.empty()) throw InvalidConfiguration("pump superposition needs at least one coefficient");
  for (double c : coefficients_)
    if (!std::isfinite(c)) throw InvalidConfiguration("pump coefficients must be finite");
  const double norm2 = squared_norm(coefficients_);
  if (std::abs(norm2 - 1.0) > kNormTolerance)
    throw InvalidConfiguration("pump coefficients must have unit norm (sum c^2 = " + std::to_string(norm2) + ")");
}

PumpSuperposition PumpSuperposition::normalized(std::vector<double> coefficients, double basis_waist) {
  const double norm = std::sqrt(squared_norm(coefficients));
  if (!(norm > 0.0)) throw InvalidConfiguration("cannot normalize an all-zero pump");
  for (double& c : coefficients) c /= norm;
  return PumpSuperposition(std::move(coefficients), basis_waist);
}

PumpSuperposition PumpSuperposition::single(int order, double basis_waist) {
  if (order < 0) throw InvalidConfiguration("pump order must be non-negative");
  std::vector<double> c(order + 1, 0.0);
  c[order] = 1.0;
  return PumpSuperposition(std::move(c), basis_waist);
}

double PumpSuperposition::field(double x, double y) const {
  double acc = 0.0;
  for (int n = 0; n < size(); ++n)
    if (coefficients_[n] != 0.0) acc += coefficients_[n] * hg_factor(n, basis_waist_, x);
  return acc * hg_factor(0, basis_waist_, y);
}

TransverseProfile PumpSuperposition::profile() const {
  return {[pump = *this](double x, double y) { return pump.field(x, y); }, basis_waist_};
}

double default_pump_waist(double signal_waist) { return signal_waist / std::numbers::sqrt2; }

TransverseProfile mode_profile(const HGMode& mode) {
  return {[mode](double x, double y) { return mode.amplitude(x, y); }, mode.waist()};
}

double raw_overlap(const TransverseProfile& pump, const HGMode& signal, const HGMode& idler,
                   const QuadratureOptions& opts) {
  check_waist(pump.envelope_waist);
  const double ws = signal.waist();
  const double wi = idler.waist();
  const double wp = pump.envelope_waist;
  const double scale = std::sqrt(1.0 / (wp * wp) + 1.0 / (ws * ws) + 1.0 / (wi * wi));
  auto integrand = [&](double x, double y) { return pump(x, y) * signal.amplitude(x, y) * idler.amplitude(x, y); };
  return integrate_plane_adaptive(integrand, scale, opts).value;
}

double reference_overlap(double signal_waist, const QuadratureOptions& opts) {
  const HGMode u00(0, 0, signal_waist);
  return raw_overlap(mode_profile(HGMode(0, 0, default_pump_waist(signal_waist))), u00, u00, opts);
}

CouplingResult coupling_coefficient(const PumpSuperposition& pump, const HGMode& signal, const HGMode& idler,
                                    const QuadratureOptions& opts) {
  if (signal.waist() != idler.waist())
    throw InvalidConfiguration("signal and idler must share one waist (" + std::to_string(signal.waist()) + " vs " +
                               std::to_string(idler.waist()) + ")");
  const double reference = reference_overlap(signal.waist(), opts);

  CouplingResult result;
  result.raw_integral = raw_overlap(pump.profile(), signal, idler, opts);
  result.gamma = result.raw_integral / reference;
  result.per_order.reserve(pump.size());
  for (int n = 0; n < pump.size(); ++n) {
    const HGMode basis(n, 0, pump.basis_waist());
    result.per_order.push_back(raw_overlap(mode_profile(basis), signal, idler, opts) / reference);
  }
  return result;
}

std::vector<double> basis_couplings(const HGMode& signal, const HGMode& idler, std::span<const int> orders,
                                    const QuadratureOptions& opts) {
  if (signal.waist() != idler.waist()) throw InvalidConfiguration("signal and idler must share one waist");
  const double reference = reference_overlap(signal.waist(), opts);
  const double wp = default_pump_waist(signal.waist());
  std::vector<double> gammas;
  gammas.reserve(orders.size());
  for (int n : orders) gammas.push_back(raw_overlap(mode_profile(HGMode(n, 0, wp)), signal, idler, opts) / reference);
  return gammas;
}

double ProfileExpansion::synthesize(double x, double y) const {
  double acc = 0.0;
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    acc += coefficients[n] * hg_factor(static_cast<int>(n), basis_waist, x);
  return acc * hg_factor(0, basis_waist, y);
}

ProfileExpansion expand_profile(const TransverseProfile& profile, double basis_waist, int max_order,
                                const QuadratureOptions& opts) {
  check_waist(basis_waist);
  check_waist(profile.envelope_waist);
  if (max_order < 0) throw InvalidConfiguration("max_order must be non-negative");

  ProfileExpansion out;
  out.basis_waist = basis_waist;
  const double wq = profile.envelope_waist;
  const double cross_scale = std::sqrt(1.0 / (wq * wq) + 1.0 / (basis_waist * basis_waist));
  for (int n = 0; n <= max_order; ++n) {
    const HGMode basis(n, 0, basis_waist);
    auto integrand = [&](double x, double y) { return profile(x, y) * basis.amplitude(x, y); };
    out.coefficients.push_back(integrate_plane_adaptive(integrand, cross_scale, opts).value);
  }
  out.captured_power = squared_norm(out.coefficients);

  const double self_scale = std::numbers::sqrt2 / wq;
  auto power = [&](double x, double y) {
    const double v = profile(x, y);
    return v * v;
  };
  out.profile_power = integrate_plane_adaptive(power, self_scale, opts).value;
  out.truncation_warning = out.captured_power < 0.99 * out.profile_power;
  return out;
}

}  // namespace hgopo
