#pragma once

#include <string>

namespace hgopo {

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite_polynomial(int n, double x);

/// Normalized 1D Hermite-Gauss factor (2/pi)^(1/4) w^(-1/2) (2^n n!)^(-1/2) H_n(sqrt2 x/w) exp(-x^2/w^2).
///
/// Evaluated with the orthonormal Hermite-function recurrence so that high
/// orders neither overflow nor lose precision far from the axis.
double hg_factor(int n, double waist, double x);

/**
 * Hermite-Gauss transverse mode HG_nm at the waist plane.
 *
 * The profile is real (curvature and Gouy phases vanish at the waist) and
 * normalized so that the integral of u^2 over the transverse plane is 1.
 */
class HGMode {
 public:
  HGMode(int n, int m, double waist);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  double waist() const noexcept { return waist_; }
  int order() const noexcept { return n_ + m_; }

  /// u_nm(x, y).
  double amplitude(double x, double y) const {
    return hg_factor(n_, waist_, x) * hg_factor(m_, waist_, y);
  }

  HGMode with_waist(double waist) const { return HGMode(n_, m_, waist); }

  /// "HG10" style label.
  std::string label() const;

  friend bool operator==(const HGMode&, const HGMode&) = default;

 private:
  int n_;
  int m_;
  double waist_;
};

/// Free-function form of HGMode::amplitude.
inline double amplitude(const HGMode& mode, double x, double y) { return mode.amplitude(x, y); }

/// Parse "10" / "HG10" / "hg_1_0" style mode names. Two-digit form means n, m < 10.
HGMode parse_mode(const std::string& text, double waist);

}  // namespace hgopo
