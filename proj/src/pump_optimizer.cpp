#include "hgopo/pump_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hgopo/errors.hpp"

namespace hgopo {
namespace {

// Overlaps below this are quadrature noise; parity-forbidden couplings land near 1e-17.
constexpr double kCouplingFloor = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SphereMaximum maximize_on_sphere(std::span<const double> g, double zero_floor) {
  double norm2 = 0.0;
  for (double v : g) norm2 += v * v;
  const double norm = std::sqrt(norm2);
  if (!(norm > zero_floor)) throw NoCoupling("no basis mode couples to the target (|Gamma| = " + std::to_string(norm) + ")");
  SphereMaximum out;
  out.value = norm;
  out.argmax.reserve(g.size());
  for (double v : g) out.argmax.push_back(v / norm);
  return out;
}

OptimizationResult optimize_pump(const HGMode& signal, const HGMode& idler, std::span<const int> basis_orders,
                                 const QuadratureOptions& opts) {
  if (basis_orders.empty()) throw InvalidConfiguration("basis_orders must not be empty");
  std::set<int> seen;
  for (int n : basis_orders) {
    if (n < 0) throw InvalidConfiguration("basis orders must be non-negative");
    if (!seen.insert(n).second) throw InvalidConfiguration("duplicate basis order " + std::to_string(n));
  }

  std::vector<double> gammas = basis_couplings(signal, idler, basis_orders, opts);
  const SphereMaximum best = maximize_on_sphere(gammas);

  std::vector<double> dense(*std::max_element(basis_orders.begin(), basis_orders.end()) + 1, 0.0);
  for (std::size_t k = 0; k < basis_orders.size(); ++k) dense[basis_orders[k]] = best.argmax[k];

  return OptimizationResult{
      PumpSuperposition::normalized(std::move(dense), default_pump_waist(signal.waist())),
      best.value,
      1.0 / (best.value * best.value),
      {basis_orders.begin(), basis_orders.end()},
      std::move(gammas),
  };
}

const ModeThreshold& CompetitionReport::entry(const HGMode& mode) const {
  for (const auto& e : per_mode)
    if (e.mode == mode) return e;
  throw InvalidConfiguration(mode.label() + " is not part of this report");
}

double CompetitionReport::coupled_power_at_target_threshold(const HGMode& mode) const {
  return entry(mode).coupled_power_fraction * target_threshold;
}

std::vector<HGMode> default_competitors(const HGMode& target) {
  std::vector<HGMode> out;
  for (int order = 0; order < target.order(); ++order)
    for (int n = order; n >= 0; --n) out.emplace_back(n, order - n, target.waist());
  return out;
}

CompetitionReport competing_mode_analysis(const PumpSuperposition& pump, const HGMode& target,
                                          std::span<const HGMode> competitors, const CavityParams& params,
                                          const QuadratureOptions& opts) {
  params.validate();
  for (const auto& c : competitors)
    if (c == target) throw InvalidConfiguration("competitor list contains the target mode " + target.label());

  // A mode sees only the pump components overlapping it; those carry a power
  // fraction f and, renormalized, a coupling gamma_sub. Its threshold in total
  // pump power is p_th(gamma_sub) / f.
  auto evaluate = [&](const HGMode& mode, bool is_target) {
    const CouplingResult coupling = coupling_coefficient(pump, mode, mode, opts);
    double fraction = 0.0;
    double projected = 0.0;
    for (int n = 0; n < pump.size(); ++n) {
      if (std::abs(coupling.per_order[n]) <= kCouplingFloor) continue;
      const double c = pump.coefficient(n);
      fraction += c * c;
      projected += c * coupling.per_order[n];
    }
    ModeThreshold entry{mode, is_target, coupling.gamma, fraction, kInf};
    if (fraction > 0.0 && projected > kCouplingFloor) {
      const double gamma_sub = projected / std::sqrt(fraction);
      entry.threshold = threshold(params, gamma_sub).power / fraction;
    }
    return entry;
  };

  CompetitionReport report;
  report.reference_threshold = threshold(params, 1.0).power;
  report.per_mode.push_back(evaluate(target, true));
  report.target_threshold = report.per_mode.front().threshold;
  report.max_safe_pump = kInf;
  report.first_oscillator = target;
  double lowest = report.target_threshold;
  for (const auto& mode : competitors) {
    report.per_mode.push_back(evaluate(mode, false));
    const double t = report.per_mode.back().threshold;
    report.max_safe_pump = std::min(report.max_safe_pump, t);
    if (t <= lowest && std::isfinite(t)) {
      lowest = t;
      report.first_oscillator = mode;
    }
  }

  if (std::isinf(report.target_threshold)) {
    report.achievable_pump_ratio = 0.0;
  } else {
    report.achievable_pump_ratio = std::min(1.0, report.max_safe_pump / report.target_threshold);
  }
  return report;
}

}  // namespace hgopo
