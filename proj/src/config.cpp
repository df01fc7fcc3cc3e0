#include "hgopo/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "hgopo/errors.hpp"
#include "hgopo/pump_optimizer.hpp"

namespace hgopo {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(v)) throw ConfigError(key, "expected a number, got '" + value + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  if (used != value.size()) throw ConfigError(key, "expected an integer, got '" + value + "'");
  return v;
}

void require_unit(const std::string& key, double v) {
  if (!(v > 0.0 && v <= 1.0)) throw ConfigError(key, "must lie in (0,1]");
}

}  // namespace

std::string PumpModeSpec::name() const {
  switch (kind) {
    case Kind::hg00: return "hg00";
    case Kind::hg20: return "hg20";
    case Kind::optimal: return "optimal";
    case Kind::custom: break;
  }
  std::string s = "custom:";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (i) s += ",";
    std::ostringstream os;
    os << coefficients[i];
    s += os.str();
  }
  return s;
}

PumpModeSpec parse_pump_mode(const std::string& text) {
  const std::string t = trim(text);
  if (t == "hg00") return {PumpModeSpec::Kind::hg00, {}};
  if (t == "hg20") return {PumpModeSpec::Kind::hg20, {}};
  if (t == "optimal" || t == "opt") return {PumpModeSpec::Kind::optimal, {}};
  if (t.rfind("custom:", 0) == 0) {
    PumpModeSpec spec{PumpModeSpec::Kind::custom, {}};
    std::stringstream ss(t.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        spec.coefficients.push_back(std::stod(trim(item), &used));
        if (used != trim(item).size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("bad custom pump coefficient '" + item + "'");
      }
    }
    if (spec.coefficients.empty()) throw UsageError("custom pump needs coefficients, e.g. custom:0.6,0,0.8");
    const double norm2 =
        std::inner_product(spec.coefficients.begin(), spec.coefficients.end(), spec.coefficients.begin(), 0.0);
    if (std::abs(norm2 - 1.0) > 1e-9)
      throw UsageError("custom pump coefficients must have unit norm (sum c^2 = " + std::to_string(norm2) + ")");
    return spec;
  }
  throw UsageError("unknown pump mode '" + text + "' (expected hg00, hg20, optimal or custom:c0,c1,...)");
}

PumpSuperposition resolve_pump(const PumpModeSpec& spec, const HGMode& signal, const QuadratureOptions& opts) {
  const double wp = default_pump_waist(signal.waist());
  switch (spec.kind) {
    case PumpModeSpec::Kind::hg00: return PumpSuperposition::single(0, wp);
    case PumpModeSpec::Kind::hg20: return PumpSuperposition::single(2, wp);
    case PumpModeSpec::Kind::optimal: {
      std::vector<int> basis(kOptimalBasisMaxOrder + 1);
      std::iota(basis.begin(), basis.end(), 0);
      return optimize_pump(signal, signal, basis, opts).coefficients;
    }
    case PumpModeSpec::Kind::custom: break;
  }
  // Coefficients were checked to 1e-9 at parse time; renormalize the residual.
  return PumpSuperposition::normalized(spec.coefficients, wp);
}

void ExperimentConfig::validate() const {
  auto positive = [](const std::string& key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
  };
  require_unit("cavity.gamma_s", cavity.gamma_s);
  if (cavity.gamma_i != cavity.gamma_s) throw ConfigError("cavity.gamma_i", "must equal cavity.gamma_s");
  if (!(cavity.mu >= 0.0) || !std::isfinite(cavity.mu)) throw ConfigError("cavity.mu", "must be >= 0");
  positive("cavity.tau", cavity.tau);
  positive("cavity.chi", cavity.chi);
  if (cavity.gamma_p != 1.0) throw ConfigError("cavity.gamma_p", "is fixed at 1");
  require_unit("eff.eta_prop", efficiencies.eta_prop);
  require_unit("eff.eta_hd", efficiencies.eta_hd);
  require_unit("eff.eta_phot", efficiencies.eta_phot);
  require_unit("eff.eta_esc", efficiencies.eta_esc);
  if (!(omega_norm >= 0.0)) throw ConfigError("analysis.omega_norm", "must be >= 0");
  if (!(reference_threshold_mw > 0.0)) throw ConfigError("pump.reference_threshold_mw", "must be positive");
  try {
    signal_mode();
  } catch (const Error& e) {
    throw ConfigError("signal.mode", e.what());
  }
  if (sim.trajectories < 1) throw ConfigError("sim.trajectories", "must be positive");
  if (sim.segments < 1) throw ConfigError("sim.segments", "must be positive");
  if (!(sim.segment_lifetimes >= 20.0)) throw ConfigError("sim.segment_lifetimes", "must be at least 20");
  if (!(sim.steps_per_lifetime >= 50.0)) throw ConfigError("sim.steps_per_lifetime", "must be at least 50");
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
  auto real = [&](double& target) {
    return [&target](const std::string& k, const std::string& v) { target = parse_double(k, v); };
  };
  setters["cavity.gamma_s"] = real(cfg.cavity.gamma_s);
  setters["cavity.gamma_i"] = real(cfg.cavity.gamma_i);
  setters["cavity.mu"] = real(cfg.cavity.mu);
  setters["cavity.tau"] = real(cfg.cavity.tau);
  setters["cavity.chi"] = real(cfg.cavity.chi);
  setters["cavity.gamma_p"] = real(cfg.cavity.gamma_p);
  setters["eff.eta_prop"] = real(cfg.efficiencies.eta_prop);
  setters["eff.eta_hd"] = real(cfg.efficiencies.eta_hd);
  setters["eff.eta_phot"] = real(cfg.efficiencies.eta_phot);
  setters["eff.eta_esc"] = real(cfg.efficiencies.eta_esc);
  double lumped_eta_det = 0.0;
  setters["eff.eta_det"] = real(lumped_eta_det);
  setters["analysis.omega_norm"] = real(cfg.omega_norm);
  setters["pump.reference_threshold_mw"] = real(cfg.reference_threshold_mw);
  setters["pump.mode"] = [&](const std::string& k, const std::string& v) {
    try {
      cfg.pump_mode = parse_pump_mode(v);
    } catch (const UsageError& e) {
      throw ConfigError(k, e.what());
    }
  };
  setters["signal.mode"] = [&](const std::string&, const std::string& v) { cfg.signal = v; };
  setters["sim.trajectories"] = [&](const std::string& k, const std::string& v) {
    cfg.sim.trajectories = static_cast<int>(parse_integer(k, v));
  };
  setters["sim.segments"] = [&](const std::string& k, const std::string& v) {
    cfg.sim.segments = static_cast<int>(parse_integer(k, v));
  };
  setters["sim.segment_lifetimes"] = real(cfg.sim.segment_lifetimes);
  setters["sim.steps_per_lifetime"] = real(cfg.sim.steps_per_lifetime);
  setters["sim.seed"] = [&](const std::string& k, const std::string& v) {
    const long long s = parse_integer(k, v);
    if (s < 0) throw ConfigError(k, "must be non-negative");
    cfg.sim.seed = static_cast<std::uint64_t>(s);
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, source + ":" + std::to_string(lineno) + ": unknown key");
    it->second(key, value);
  }

  if (lumped_eta_det != 0.0) {
    require_unit("eff.eta_det", lumped_eta_det);
    cfg.efficiencies = EfficiencyChain::from_totals(lumped_eta_det, cfg.efficiencies.eta_esc);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace hgopo
