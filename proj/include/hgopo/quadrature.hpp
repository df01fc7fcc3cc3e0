#pragma once

#include <functional>
#include <vector>

#include "hgopo/execution.hpp"

namespace hgopo {

/// n-point Gauss-Hermite rule for the weight exp(-t^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2); lets the rule integrate f(t) directly without overflow.
  std::vector<double> scaled_weights;
};

/// Cached rule; safe to call concurrently. Throws ConvergenceError if a root refuses to converge.
const GaussHermiteRule& gauss_hermite_rule(int n);

using Integrand2D = std::function<double(double, double)>;

/// Tensor-product Gauss-Hermite estimate of the plane integral of f.
///
/// `scale` is the Gaussian decay rate of the integrand, f ~ exp(-scale^2 (x^2+y^2)).
/// When f * exp(scale^2 r^2) is a polynomial of degree < 2*points in each axis
/// the result is exact up to rounding.
double integrate_plane(const Integrand2D& f, double scale, int points, Execution exec = Execution::serial);

struct QuadratureOptions {
  int initial_points = 32;
  int max_points = 512;
  /// Stop once successive refinements differ by at most tolerance * max(1, |I|).
  double tolerance = 1e-12;
  Execution execution = Execution::serial;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int points = 0;
};

/// Doubles the per-axis order until two estimates agree; throws QuadratureFailure otherwise.
QuadratureResult integrate_plane_adaptive(const Integrand2D& f, double scale, const QuadratureOptions& opts = {});

}  // namespace hgopo
