#include "hgopo/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "hgopo/errors.hpp"

namespace hgopo {
namespace {

// Newton iteration on the orthonormal Hermite functions, started from the
// classic asymptotic root guesses. Working with psi_n = H_n * exp(-t^2/2)
// keeps every intermediate bounded for large n.
GaussHermiteRule build_rule(int n) {
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.scaled_weights.assign(n, 0.0);

  const double pim4 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  const int half = (n + 1) / 2;
  std::vector<double> roots(half, 0.0);
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[i - 2];
    }

    double deriv = 0.0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4 * std::exp(-0.5 * z * z);
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      // psi_n'(z) = sqrt(2n) psi_{n-1}(z) - z psi_n(z); at a root the second term vanishes.
      deriv = std::sqrt(2.0 * n) * p2;
      const double step = p1 / (deriv - z * p1);
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("Gauss-Hermite root did not converge for n=" + std::to_string(n));

    // Recompute psi_{n-1} at the converged root for the weight.
    double p1 = pim4 * std::exp(-0.5 * z * z);
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
    }
    deriv = std::sqrt(2.0 * n) * p2;
    const double scaled = 2.0 / (deriv * deriv);

    roots[i] = z;
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.scaled_weights[i] = rule.scaled_weights[n - 1 - i] = scaled;
    rule.weights[i] = rule.weights[n - 1 - i] = scaled * std::exp(-z * z);
  }
  if (n % 2 == 1) rule.nodes[half - 1] = 0.0;
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1) throw InvalidConfiguration("Gauss-Hermite order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_rule(n));
  return *slot;
}

double integrate_plane(const Integrand2D& f, double scale, int points, Execution exec) {
  if (!(scale > 0.0)) throw InvalidConfiguration("quadrature scale must be positive");
  const GaussHermiteRule& rule = gauss_hermite_rule(points);
  const int n = points;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = rule.nodes[i] / scale;

  // Row sums are reduced serially afterwards so both paths add in the same order.
  std::vector<double> rows(n, 0.0);
  auto row_sum = [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += rule.scaled_weights[j] * f(xs[i], xs[j]);
    rows[i] = rule.scaled_weights[i] * acc;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) row_sum(i);
  } else {
    for (int i = 0; i < n; ++i) row_sum(i);
  }

  double total = 0.0;
  for (double r : rows) total += r;
  return total / (scale * scale);
}

QuadratureResult integrate_plane_adaptive(const Integrand2D& f, double scale, const QuadratureOptions& opts) {
  int points = opts.initial_points;
  double previous = integrate_plane(f, scale, points, opts.execution);
  double delta = 0.0;
  while (points * 2 <= opts.max_points) {
    points *= 2;
    const double current = integrate_plane(f, scale, points, opts.execution);
    delta = std::abs(current - previous);
    if (!std::isfinite(current)) throw QuadratureFailure("non-finite quadrature estimate", delta);
    if (delta <= opts.tolerance * std::max(1.0, std::abs(current))) return {current, delta, points};
    previous = current;
  }
  throw QuadratureFailure("Gauss-Hermite quadrature did not converge; last change " + std::to_string(delta), delta);
}

}  // namespace hgopo
