#include "hgopo/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "hgopo/errors.hpp"

namespace hgopo {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool is_phase(double phi, double target) {
  const double d = std::remainder(phi - target, 2.0 * std::numbers::pi);
  return std::abs(d) <= 1e-12;
}

// One periodogram value per segment for each of the four joint quadratures.
struct SegmentPower {
  double x_plus, x_minus, y_plus, y_minus;
};

struct Kernel {
  double h;          // step in round trips
  double loss;       // gamma'
  double gain;       // +-sigma gamma'; negative for deamplification
  double couple_in;  // sqrt(2 gamma_s)
  double couple_mu;  // sqrt(2 mu)
  long steps;
  long segments;
  std::vector<std::vector<double>> cos_w, sin_w;  // window * phasor per analysis frequency
  double window_power;                           // sum of squared window weights
};

Kernel make_kernel(const SimConfig& cfg, std::span<const double> omegas) {
  const CavityParams& p = cfg.params;
  Kernel k;
  k.h = cfg.dt / p.tau;
  k.loss = p.gamma_prime();
  k.gain = (cfg.regime() == Regime::amplification ? 1.0 : -1.0) * cfg.sigma() * k.loss;
  k.couple_in = std::sqrt(2.0 * p.gamma_s);
  k.couple_mu = std::sqrt(2.0 * p.mu);
  k.steps = cfg.steps_per_segment();
  k.segments = cfg.segments_per_trajectory();

  std::vector<double> window(k.steps);
  k.window_power = 0.0;
  for (long j = 0; j < k.steps; ++j) {
    const double s = std::sin(std::numbers::pi * (j + 0.5) / static_cast<double>(k.steps));
    window[j] = s * s;
    k.window_power += window[j] * window[j];
  }
  for (double omega : omegas) {
    const double rate = omega * k.loss * k.h;  // radians per step
    std::vector<double> c(k.steps), s(k.steps);
    for (long j = 0; j < k.steps; ++j) {
      c[j] = window[j] * std::cos(rate * static_cast<double>(j));
      s[j] = -window[j] * std::sin(rate * static_cast<double>(j));
    }
    k.cos_w.push_back(std::move(c));
    k.sin_w.push_back(std::move(s));
  }
  return k;
}

// Integrates one trajectory and returns segment powers laid out [segment][omega].
std::vector<SegmentPower> run_trajectory(const Kernel& k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n_omega = k.cos_w.size();
  const double h = k.h;
  const double sqrt_h = std::sqrt(h);
  const double inv_sqrt_h = 1.0 / sqrt_h;
  const bool extra_loss = k.couple_mu > 0.0;

  // Start from the stationary distribution of each joint quadrature: var = 2 gamma' / rate.
  auto stationary = [&](double rate) { return std::sqrt(2.0 * k.loss / rate) * normal(rng); };
  const double xp0 = stationary(k.loss - k.gain), xm0 = stationary(k.loss + k.gain);
  const double yp0 = stationary(k.loss + k.gain), ym0 = stationary(k.loss - k.gain);
  double xs = 0.5 * (xp0 + xm0), xi = 0.5 * (xp0 - xm0);
  double ys = 0.5 * (yp0 + ym0), yi = 0.5 * (yp0 - ym0);

  std::vector<SegmentPower> out;
  out.reserve(static_cast<std::size_t>(k.segments) * n_omega);
  std::vector<double> acc(n_omega * 8);
  const double norm = h / (2.0 * k.window_power);

  for (long seg = 0; seg < k.segments; ++seg) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (long j = 0; j < k.steps; ++j) {
      const double nxs = normal(rng), nxi = normal(rng), nys = normal(rng), nyi = normal(rng);
      double dxs = k.couple_in * nxs, dxi = k.couple_in * nxi, dys = k.couple_in * nys, dyi = k.couple_in * nyi;
      if (extra_loss) {
        dxs += k.couple_mu * normal(rng);
        dxi += k.couple_mu * normal(rng);
        dys += k.couple_mu * normal(rng);
        dyi += k.couple_mu * normal(rng);
      }
      const double xs1 = xs + h * (-k.loss * xs + k.gain * xi) + sqrt_h * dxs;
      const double xi1 = xi + h * (-k.loss * xi + k.gain * xs) + sqrt_h * dxi;
      const double ys1 = ys + h * (-k.loss * ys - k.gain * yi) + sqrt_h * dys;
      const double yi1 = yi + h * (-k.loss * yi - k.gain * ys) + sqrt_h * dyi;

      // Output over the step: trapezoidal intracavity field minus the reflected input.
      const double oxs = k.couple_in * 0.5 * (xs + xs1) - nxs * inv_sqrt_h;
      const double oxi = k.couple_in * 0.5 * (xi + xi1) - nxi * inv_sqrt_h;
      const double oys = k.couple_in * 0.5 * (ys + ys1) - nys * inv_sqrt_h;
      const double oyi = k.couple_in * 0.5 * (yi + yi1) - nyi * inv_sqrt_h;
      const double xp = oxs + oxi, xm = oxs - oxi, yp = oys + oyi, ym = oys - oyi;

      for (std::size_t o = 0; o < n_omega; ++o) {
        const double c = k.cos_w[o][j], s = k.sin_w[o][j];
        double* a = &acc[o * 8];
        a[0] += c * xp; a[1] += s * xp;
        a[2] += c * xm; a[3] += s * xm;
        a[4] += c * yp; a[5] += s * yp;
        a[6] += c * ym; a[7] += s * ym;
      }
      xs = xs1; xi = xi1; ys = ys1; yi = yi1;
    }
    if (!std::isfinite(xs) || !std::isfinite(xi) || !std::isfinite(ys) || !std::isfinite(yi))
      throw NumericalInstability("Langevin integration produced a non-finite state");
    for (std::size_t o = 0; o < n_omega; ++o) {
      const double* a = &acc[o * 8];
      out.push_back({norm * (a[0] * a[0] + a[1] * a[1]), norm * (a[2] * a[2] + a[3] * a[3]),
                     norm * (a[4] * a[4] + a[5] * a[5]), norm * (a[6] * a[6] + a[7] * a[7])});
    }
  }
  return out;
}

struct MeanAndError {
  double mean, std_error;
};

MeanAndError mean_and_error(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

SimConfig SimConfig::resolved() const {
  SimConfig c = *this;
  params.validate();
  const double life = params.lifetime();
  if (c.dt == 0.0) c.dt = life / default_steps_per_lifetime;
  if (c.duration == 0.0) c.duration = default_segments * segment_lifetimes * life;
  return c;
}

void SimConfig::validate() const {
  params.validate();
  const double life = params.lifetime();
  if (!(gamma_coupling > 0.0)) throw InvalidConfiguration("gamma_coupling must be positive");
  if (!(pump_ratio >= 0.0 && pump_ratio <= 0.95))
    throw InvalidConfiguration("pump_ratio must lie in [0, 0.95] for the linearized model");
  if (!is_phase(relative_phase, 0.0) && !is_phase(relative_phase, std::numbers::pi))
    throw InvalidConfiguration("relative_phase must be 0 or pi");
  if (!(dt > 0.0)) throw InvalidConfiguration("dt must be positive");
  if (dt > life / 50.0 * (1.0 + 1e-12))
    throw InvalidConfiguration("dt too coarse: need at least 50 steps per cavity lifetime");
  if (!(segment_lifetimes >= 20.0)) throw InvalidConfiguration("segment length must be at least 20 lifetimes");
  if (n_trajectories < 1) throw InvalidConfiguration("n_trajectories must be positive");
  if (!(seed_amplitude >= 0.0) || !std::isfinite(seed_amplitude))
    throw InvalidConfiguration("seed_amplitude must be finite and non-negative");
  if (segments_per_trajectory() < 1) throw InvalidConfiguration("duration shorter than one periodogram segment");
}

Regime SimConfig::regime() const {
  return is_phase(relative_phase, 0.0) ? Regime::amplification : Regime::deamplification;
}

double SimConfig::sigma() const { return std::sqrt(pump_ratio); }

long SimConfig::steps_per_segment() const {
  return std::lround(segment_lifetimes * params.lifetime() / dt);
}

long SimConfig::segments_per_trajectory() const {
  const double seg = static_cast<double>(steps_per_segment()) * dt;
  return static_cast<long>(std::floor(duration / seg * (1.0 + 1e-12)));
}

SteadyState steady_state(const SimConfig& requested) {
  const SimConfig config = requested.resolved();
  config.validate();
  const CavityParams& p = config.params;
  const double coupling = p.chi * config.gamma_coupling;
  const double eps = config.sigma() * threshold(p, config.gamma_coupling).pump_amplitude;
  const std::complex<double> drive = std::polar(eps, -config.relative_phase);
  const double inject = std::sqrt(2.0 * p.gamma_s) * config.seed_amplitude;

  SteadyState st;
  st.pump = drive / p.gamma_p;
  for (int it = 1; it <= 10000; ++it) {
    const std::complex<double> s = (coupling * st.pump * std::conj(st.idler) + inject) / p.gamma_prime();
    const std::complex<double> i = (coupling * st.pump * std::conj(st.signal) + inject) / p.gamma_prime();
    const std::complex<double> pump = (drive - coupling * s * i) / p.gamma_p;
    // Relative per field: the seeded signal can be many orders below the pump.
    auto settled = [](std::complex<double> next, std::complex<double> prev) {
      return std::abs(next - prev) <= 1e-12 * std::abs(next);
    };
    const bool converged = settled(s, st.signal) && settled(i, st.idler) && settled(pump, st.pump);
    st.signal = s;
    st.idler = i;
    st.pump = pump;
    st.iterations = it;
    if (converged) {
      st.signal_output = std::sqrt(2.0 * p.gamma_s) * st.signal - config.seed_amplitude;
      return st;
    }
  }
  throw ConvergenceError("steady state did not converge in 10^4 iterations");
}

std::vector<SpectrumEstimate> simulate_spectra(const SimConfig& requested, std::span<const double> omega_norms,
                                               Execution exec) {
  const SimConfig config = requested.resolved();
  config.validate();
  for (double o : omega_norms)
    if (!(o >= 0.0) || !std::isfinite(o)) throw InvalidConfiguration("omega_norm must be finite and >= 0");
  const Kernel kernel = make_kernel(config, omega_norms);

  const int n_traj = config.n_trajectories;
  std::vector<std::vector<SegmentPower>> per_traj(n_traj);
  std::vector<std::exception_ptr> errors(n_traj);
  auto run = [&](int t) {
    try {
      per_traj[t] = run_trajectory(kernel, splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(t))));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n_traj; ++t) run(t);
  } else {
    for (int t = 0; t < n_traj; ++t) run(t);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Fixed trajectory order keeps the reduction identical for both execution paths.
  const bool deamp = config.regime() == Regime::deamplification;
  const std::size_t n_omega = omega_norms.size();
  std::vector<SpectrumEstimate> results;
  for (std::size_t o = 0; o < n_omega; ++o) {
    std::vector<double> squeezed, anti, vx, vy;
    for (const auto& traj : per_traj) {
      for (std::size_t idx = o; idx < traj.size(); idx += n_omega) {
        const SegmentPower& p = traj[idx];
        const double sx = deamp ? p.x_plus : p.x_minus;
        const double sy = deamp ? p.y_minus : p.y_plus;
        const double ax = deamp ? p.x_minus : p.x_plus;
        const double ay = deamp ? p.y_plus : p.y_minus;
        vx.push_back(sx);
        vy.push_back(sy);
        squeezed.push_back(0.5 * (sx + sy));
        anti.push_back(0.5 * (ax + ay));
      }
    }
    const MeanAndError sq = mean_and_error(squeezed);
    const MeanAndError an = mean_and_error(anti);
    SpectrumEstimate est;
    est.omega_norm = omega_norms[o];
    est.v_estimate = sq.mean;
    est.std_error = sq.std_error;
    est.n_effective = static_cast<long>(squeezed.size());
    est.v_x = mean_and_error(vx).mean;
    est.v_y = mean_and_error(vy).mean;
    est.v_antisqueezed = an.mean;
    est.antisqueezed_std_error = an.std_error;
    est.regime = config.regime();
    results.push_back(est);
  }
  return results;
}

SpectrumEstimate simulate_spectrum(const SimConfig& config, double omega_norm, Execution exec) {
  const double omegas[] = {omega_norm};
  return simulate_spectra(config, omegas, exec).front();
}

}  // namespace hgopo
