#include "hgopo/hg_modes.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hgopo/errors.hpp"

namespace hgopo {

double hermite_polynomial(int n, double x) {
  if (n <= 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hg_factor(int n, double waist, double x) {
  // psi_k(xi) orthonormal in xi; xi = sqrt2 x / w, dxi = sqrt2/w dx.
  const double xi = std::numbers::sqrt2 * x / waist;
  const double gauss = std::exp(-0.5 * xi * xi);
  double prev = 0.0;
  double cur = gauss / std::sqrt(std::sqrt(std::numbers::pi));
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return std::sqrt(std::numbers::sqrt2 / waist) * cur;
}

HGMode::HGMode(int n, int m, double waist) : n_(n), m_(m), waist_(waist) {
  if (n < 0 || m < 0) throw InvalidConfiguration("HG mode indices must be non-negative");
  if (!(waist > 0.0) || !std::isfinite(waist)) throw InvalidConfiguration("HG mode waist must be positive");
}

std::string HGMode::label() const {
  if (n_ < 10 && m_ < 10) return "HG" + std::to_string(n_) + std::to_string(m_);
  return "HG_" + std::to_string(n_) + "_" + std::to_string(m_);
}

HGMode parse_mode(const std::string& text, double waist) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.rfind("hg", 0) == 0) s = s.substr(2);
  if (!s.empty() && s.front() == '_') s = s.substr(1);

  std::vector<int> idx;
  if (s.find('_') != std::string::npos) {
    const auto pos = s.find('_');
    try {
      idx = {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
    } catch (const std::exception&) {
      throw UsageError("cannot parse mode '" + text + "'");
    }
  } else if (s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])) &&
             std::isdigit(static_cast<unsigned char>(s[1]))) {
    idx = {s[0] - '0', s[1] - '0'};
  } else {
    throw UsageError("cannot parse mode '" + text + "' (expected e.g. 10 or HG10)");
  }
  return HGMode(idx[0], idx[1], waist);
}

}  // namespace hgopo
