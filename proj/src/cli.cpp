#include "hgopo/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hgopo/config.hpp"
#include "hgopo/errors.hpp"
#include "hgopo/langevin.hpp"
#include "hgopo/opo_model.hpp"
#include "hgopo/overlap.hpp"
#include "hgopo/pump_optimizer.hpp"

namespace hgopo {

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
      }
      s += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return s;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write CSV file '" + path + "'");
    f << render();
    if (!f) throw Error("failed writing CSV file '" + path + "'");
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double v, int digits = 5) {
  if (std::isinf(v)) return "inf";
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

ExperimentConfig config_from(const std::string& path) { return path.empty() ? ExperimentConfig{} : load_config(path); }

HGMode signal_from(const ExperimentConfig& cfg, const std::string& override_text) {
  return override_text.empty() ? cfg.signal_mode() : parse_mode(override_text, 1.0);
}

std::string column_name(const PumpModeSpec& spec) {
  return spec.kind == PumpModeSpec::Kind::custom ? std::string("custom") : spec.name();
}

// ---------------------------------------------------------------- gamma

struct GammaArgs {
  std::string pump = "optimal";
  std::string signal = "10";
  std::string idler;
  std::string csv;
};

int cmd_gamma(const GammaArgs& a, std::ostream& out) {
  const PumpModeSpec spec = parse_pump_mode(a.pump);
  const HGMode signal = parse_mode(a.signal, 1.0);
  const HGMode idler = a.idler.empty() ? signal : parse_mode(a.idler, 1.0);
  const PumpSuperposition pump = resolve_pump(spec, signal);
  const CouplingResult r = coupling_coefficient(pump, signal, idler);

  out << "pump " << spec.name() << "  signal " << signal.label() << "  idler " << idler.label() << "\n";
  out << "order  c_n       Gamma_n\n";
  CsvTable csv({"order", "coefficient", "gamma_n"});
  for (int n = 0; n < pump.size(); ++n) {
    out << std::setw(5) << n << "  " << std::setw(8) << fixed(pump.coefficient(n)) << "  " << std::setw(8)
        << fixed(r.per_order[n]) << "\n";
    csv.add({std::to_string(n), csv_number(pump.coefficient(n)), csv_number(r.per_order[n])});
  }
  csv.add({"total", "", csv_number(r.gamma)});
  out << "Gamma = " << fixed(r.gamma) << "\n";
  if (!a.csv.empty()) csv.write(a.csv);
  return kExitOk;
}

// ---------------------------------------------------------------- threshold

struct ThresholdArgs {
  std::string config;
  std::string signal;
  std::string csv;
};

int cmd_threshold(const ThresholdArgs& a, std::ostream& out) {
  const ExperimentConfig cfg = config_from(a.config);
  const HGMode signal = signal_from(cfg, a.signal);
  std::vector<PumpModeSpec> modes = {parse_pump_mode("hg00"), parse_pump_mode("hg20"), parse_pump_mode("optimal")};
  if (cfg.pump_mode.kind == PumpModeSpec::Kind::custom) modes.push_back(cfg.pump_mode);

  const double reference = threshold(cfg.cavity, 1.0).power;
  out << "signal " << signal.label() << ", reference p_th(00->00) = " << csv_number(cfg.reference_threshold_mw)
      << " mW\n";
  out << "pump          Gamma     p_th/p_th(00->00)  p_th [mW]\n";
  CsvTable csv({"pump_mode", "gamma", "threshold_ratio", "threshold_mw"});
  for (const auto& spec : modes) {
    const double gamma = coupling_coefficient(resolve_pump(spec, signal), signal, signal).gamma;
    double ratio = kInf;
    try {
      ratio = threshold(cfg.cavity, gamma).power / reference;
    } catch (const NoOscillation&) {
    }
    const double mw = ratio * cfg.reference_threshold_mw;
    out << std::left << std::setw(12) << spec.name() << std::right << "  " << fixed(gamma) << "  " << std::setw(17)
        << fixed(ratio) << "  " << (std::isinf(mw) ? std::string("no oscillation") : csv_number(mw)) << "\n";
    csv.add({spec.name(), csv_number(gamma), std::isinf(ratio) ? "" : csv_number(ratio),
             std::isinf(mw) ? "" : csv_number(mw)});
  }
  if (!a.csv.empty()) csv.write(a.csv);
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string config;
  std::string signal;
  std::vector<int> basis = {0, 1, 2, 3, 4, 5, 6};
  std::string csv;
};

void print_competition(const CompetitionReport& rep, const HGMode& target, double reference_mw, std::ostream& out,
                       const std::string& prefix) {
  const double scale = reference_mw / rep.reference_threshold;
  out << prefix << "target " << target.label() << " threshold " << csv_number(rep.target_threshold * scale)
      << " mW; first to oscillate: " << rep.first_oscillator.label() << "\n";
  for (const auto& e : rep.per_mode) {
    if (e.is_target) continue;
    out << prefix << "  competitor " << e.mode.label() << ": threshold "
        << (std::isinf(e.threshold) ? std::string("inf (uncoupled)") : csv_number(e.threshold * scale) + " mW")
        << ", coupled pump fraction " << csv_number(e.coupled_power_fraction) << ", coupled power at target threshold "
        << csv_number(rep.coupled_power_at_target_threshold(e.mode) * scale) << " mW\n";
  }
  out << prefix << "max safe pump " << (std::isinf(rep.max_safe_pump) ? std::string("inf") : csv_number(rep.max_safe_pump * scale) + " mW")
      << ", achievable p/p_th(" << target.label() << ") = " << csv_number(rep.achievable_pump_ratio) << "\n";
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const ExperimentConfig cfg = config_from(a.config);
  const HGMode signal = signal_from(cfg, a.signal);
  const OptimizationResult r = optimize_pump(signal, signal, a.basis);

  out << "signal " << signal.label() << ", basis orders:";
  for (int n : r.basis_orders) out << " " << n;
  out << "\norder  Gamma_n   c_n\n";
  CsvTable csv({"order", "gamma_n", "coefficient"});
  for (std::size_t k = 0; k < r.basis_orders.size(); ++k) {
    const int n = r.basis_orders[k];
    out << std::setw(5) << n << "  " << fixed(r.basis_gammas[k]) << "  " << fixed(r.coefficients.coefficient(n))
        << "\n";
    csv.add({std::to_string(n), csv_number(r.basis_gammas[k]), csv_number(r.coefficients.coefficient(n))});
  }
  out << "Gamma_max = " << fixed(r.gamma_max) << "\n";
  out << "p_th/p_th(00->00) = " << fixed(r.threshold_ratio) << "  ("
      << csv_number(r.threshold_ratio * cfg.reference_threshold_mw) << " mW)\n";
  const auto competitors = default_competitors(signal);
  print_competition(competing_mode_analysis(r.coefficients, signal, competitors, cfg.cavity), signal,
                    cfg.reference_threshold_mw, out, "");
  if (!a.csv.empty()) csv.write(a.csv);
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config;
  std::string signal;
  std::vector<std::string> pumps = {"hg00", "hg20", "optimal"};
  double from = 0.0;
  double to = -1.0;
  double step = -1.0;
  bool ideal = false;
  std::string csv;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = config_from(a.config);
  if (a.ideal) {
    cfg.efficiencies = EfficiencyChain::ideal();
    cfg.omega_norm = 0.0;
  }
  const HGMode target = signal_from(cfg, a.signal);
  const double ref_mw = cfg.reference_threshold_mw;
  const double to = a.to < 0.0 ? 2.0 * ref_mw : a.to;
  const double step = a.step < 0.0 ? ref_mw / 100.0 : a.step;
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (!(a.from >= 0.0) || !(to >= a.from)) throw UsageError("empty power range [" + csv_number(a.from) + ", " + csv_number(to) + "]");
  if (a.pumps.empty()) throw UsageError("no pump modes selected");

  struct Column {
    std::string name;
    double target_mw;
    double safe_mw;
  };
  std::vector<Column> columns;
  // Annotations go to stdout when the CSV has its own file, stderr otherwise.
  std::ostream& note = a.csv.empty() ? err : out;
  const auto competitors = default_competitors(target);
  for (const auto& text : a.pumps) {
    const PumpModeSpec spec = parse_pump_mode(text);
    const PumpSuperposition pump = resolve_pump(spec, target);
    const CompetitionReport rep = competing_mode_analysis(pump, target, competitors, cfg.cavity);
    const double scale = ref_mw / rep.reference_threshold;
    columns.push_back({column_name(spec), rep.target_threshold * scale, rep.max_safe_pump * scale});
    print_competition(rep, target, ref_mw, note, "# " + spec.name() + ": ");
  }

  std::vector<std::string> header = {"power_mw", "pump_ratio"};
  for (const auto& c : columns) {
    header.push_back("V_" + c.name);
    header.push_back("oscillates_" + c.name);
  }
  CsvTable csv(header);
  const long n_rows = static_cast<long>(std::floor((to - a.from) / step + 1e-9)) + 1;
  for (long k = 0; k < n_rows; ++k) {
    const double p = a.from + static_cast<double>(k) * step;
    std::vector<std::string> row = {csv_number(p), csv_number(p / ref_mw)};
    for (const auto& c : columns) {
      const bool competitor_on = p > c.safe_mw * (1.0 + 1e-9);
      const bool target_on = p >= c.target_mw * (1.0 - 1e-12);
      if (competitor_on || target_on) {
        row.push_back("");
        row.push_back("1");
      } else {
        row.push_back(csv_number(inseparability(p / c.target_mw, cfg.omega_norm, cfg.efficiencies)));
        row.push_back("0");
      }
    }
    csv.add(std::move(row));
  }
  if (a.csv.empty()) {
    out << csv.render();
  } else {
    csv.write(a.csv);
    out << "wrote " << n_rows << " rows to " << a.csv << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- insep

struct InsepArgs {
  double db_x = 0.0;
  double db_y = 0.0;
  double eta_det = -1.0;
  double reference = -1.0;
  std::string csv;
};

int cmd_insep(const InsepArgs& a, std::ostream& out) {
  const double v = inseparability_from_db(a.db_x, a.db_y);
  out << "V = " << fixed(v, 4) << (v < 2.0 ? "  (entangled, V < 2)" : "  (not entangled, V >= 2)") << "\n";
  CsvTable csv({"db_x_sum", "db_y_diff", "v", "eta_det", "v_source", "enhancement_pct"});
  std::vector<std::string> row = {csv_number(a.db_x), csv_number(a.db_y), csv_number(v), "", "", ""};
  if (a.eta_det > 0.0) {
    const double src = infer_source_inseparability(v, a.eta_det);
    out << "V_source (eta_det = " << csv_number(a.eta_det) << ") = " << fixed(src, 4) << "\n";
    row[3] = csv_number(a.eta_det);
    row[4] = csv_number(src);
    if (a.reference > 0.0) {
      const double pct = enhancement(a.reference, src);
      out << "enhancement vs reference " << csv_number(a.reference) << " = " << fixed(pct, 1) << " %\n";
      row[5] = csv_number(pct);
    }
  } else if (a.reference > 0.0) {
    const double pct = enhancement(a.reference, v);
    out << "enhancement vs reference " << csv_number(a.reference) << " = " << fixed(pct, 1) << " %\n";
    row[5] = csv_number(pct);
  }
  csv.add(row);
  if (!a.csv.empty()) csv.write(a.csv);
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  double sigma = 0.0;
  double omega = -1.0;
  long long seed = -1;
  double mu = -1.0;
  int trajectories = 0;
  std::string regime = "deamplification";
  bool serial = false;
  std::string csv;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentConfig cfg = config_from(a.config);
  if (!(a.sigma >= 0.0 && a.sigma < 0.95)) throw UsageError("--sigma must lie in [0, 0.95) (linearization margin)");
  if (a.mu >= 0.0) cfg.cavity.mu = a.mu;
  if (a.trajectories > 0) cfg.sim.trajectories = a.trajectories;
  const double omega = a.omega >= 0.0 ? a.omega : cfg.omega_norm;
  Regime regime;
  if (a.regime == "deamplification" || a.regime == "deamp") {
    regime = Regime::deamplification;
  } else if (a.regime == "amplification" || a.regime == "amp") {
    regime = Regime::amplification;
  } else {
    throw UsageError("--regime must be amplification or deamplification");
  }
  cfg.cavity.validate();

  const HGMode signal = cfg.signal_mode();
  const double gamma = coupling_coefficient(resolve_pump(cfg.pump_mode, signal), signal, signal).gamma;

  SimConfig sim;
  sim.params = cfg.cavity;
  sim.gamma_coupling = gamma;
  sim.pump_ratio = a.sigma * a.sigma;
  sim.relative_phase = regime == Regime::deamplification ? std::numbers::pi : 0.0;
  sim.dt = cfg.cavity.lifetime() / cfg.sim.steps_per_lifetime;
  sim.segment_lifetimes = cfg.sim.segment_lifetimes;
  sim.duration = cfg.sim.segments * cfg.sim.segment_lifetimes * cfg.cavity.lifetime();
  sim.seed = a.seed >= 0 ? static_cast<std::uint64_t>(a.seed) : cfg.sim.seed;
  sim.n_trajectories = cfg.sim.trajectories;

  const SpectrumEstimate est = simulate_spectrum(sim, omega, a.serial ? Execution::serial : Execution::parallel);
  const EfficiencyChain cavity_only = EfficiencyChain::from_totals(1.0, cfg.cavity.escape_efficiency());
  const double analytic = correlation_spectrum(sim.pump_ratio, omega, cavity_only, regime).v_x;
  const double analytic_anti = antisqueezed_variance(sim.pump_ratio, omega, cavity_only);
  const double tol = std::max(0.05 * analytic, 3.0 * est.std_error);
  const bool pass = std::abs(est.v_estimate - analytic) <= tol;

  out << "regime " << to_string(regime) << ", sigma " << csv_number(a.sigma) << ", Omega " << csv_number(omega)
      << ", escape efficiency " << csv_number(cfg.cavity.escape_efficiency()) << ", seed " << sim.seed << "\n";
  out << "squeezed      analytic " << csv_number(analytic) << "  simulated " << csv_number(est.v_estimate) << " +- "
      << csv_number(est.std_error) << "  (" << est.n_effective << " segments)\n";
  out << "antisqueezed  analytic " << csv_number(analytic_anti) << "  simulated " << csv_number(est.v_antisqueezed)
      << " +- " << csv_number(est.antisqueezed_std_error) << "\n";
  out << "uncertainty product " << csv_number(est.v_estimate * est.v_antisqueezed) << "\n";
  out << (pass ? "PASS" : "FAIL") << " (|diff| " << csv_number(std::abs(est.v_estimate - analytic)) << " vs tolerance "
      << csv_number(tol) << ")\n";

  if (!a.csv.empty()) {
    CsvTable csv({"sigma", "omega_norm", "regime", "analytic", "estimate", "std_error", "antisqueezed_analytic",
                  "antisqueezed_estimate", "antisqueezed_std_error", "n_segments", "seed", "pass"});
    csv.add({csv_number(a.sigma), csv_number(omega), to_string(regime), csv_number(analytic),
             csv_number(est.v_estimate), csv_number(est.std_error), csv_number(analytic_anti),
             csv_number(est.v_antisqueezed), csv_number(est.antisqueezed_std_error), std::to_string(est.n_effective),
             std::to_string(sim.seed), pass ? "1" : "0"});
    csv.write(a.csv);
  }
  return pass ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite-Gauss mode-selective OPO toolkit: couplings, thresholds, entanglement spectra"};
  app.require_subcommand(1);

  GammaArgs gamma;
  auto* g = app.add_subcommand("gamma", "coupling coefficient of a pump mode to a signal/idler mode");
  g->add_option("--pump", gamma.pump, "hg00 | hg20 | optimal | custom:c0,c1,...")->capture_default_str();
  g->add_option("--signal", gamma.signal, "signal mode, e.g. 10 or HG10")->capture_default_str();
  g->add_option("--idler", gamma.idler, "idler mode (defaults to the signal mode)");
  g->add_option("--csv", gamma.csv, "write the table as CSV");

  ThresholdArgs thr;
  auto* t = app.add_subcommand("threshold", "oscillation thresholds per pump mode");
  t->add_option("--config", thr.config, "config file");
  t->add_option("--signal", thr.signal, "signal mode (overrides signal.mode)");
  t->add_option("--csv", thr.csv, "write the table as CSV");

  OptimizeArgs opt;
  auto* o = app.add_subcommand("optimize", "optimal pump superposition for a signal mode");
  o->add_option("--config", opt.config, "config file");
  o->add_option("--signal", opt.signal, "signal mode (overrides signal.mode)");
  o->add_option("--basis", opt.basis, "pump basis orders")->delimiter(',')->capture_default_str();
  o->add_option("--csv", opt.csv, "write the table as CSV");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "inseparability versus pump power for each pump mode");
  s->add_option("--config", sw.config, "config file");
  s->add_option("--signal", sw.signal, "signal mode (overrides signal.mode)");
  s->add_option("--pump", sw.pumps, "pump modes to sweep")->capture_default_str();
  s->add_option("--from", sw.from, "first pump power in mW")->capture_default_str();
  s->add_option("--to", sw.to, "last pump power in mW (default 2 x reference threshold)");
  s->add_option("--step", sw.step, "power step in mW (default reference threshold / 100)");
  s->add_flag("--ideal", sw.ideal, "unit efficiencies and Omega = 0");
  s->add_option("--csv", sw.csv, "write the CSV to this path instead of stdout");

  InsepArgs in;
  auto* i = app.add_subcommand("insep", "inseparability from measured noise powers in dB below shot noise");
  i->add_option("db_x_sum", in.db_x, "squeezing of X_s+X_i in dB")->required();
  i->add_option("db_y_diff", in.db_y, "squeezing of Y_s-Y_i in dB")->required();
  i->add_option("--eta-det", in.eta_det, "detection efficiency for source inference");
  i->add_option("--reference", in.reference, "reference inseparability for the enhancement figure");
  i->add_option("--csv", in.csv, "write the result as CSV");

  SimulateArgs sim;
  auto* m = app.add_subcommand("simulate", "Langevin simulation versus the analytic spectrum");
  m->add_option("--config", sim.config, "config file");
  m->add_option("--sigma", sim.sigma, "normalized pump amplitude sqrt(p/p_th)")->required();
  m->add_option("--omega", sim.omega, "normalized analysis frequency (default analysis.omega_norm)");
  m->add_option("--seed", sim.seed, "RNG seed (default sim.seed)");
  m->add_option("--mu", sim.mu, "override cavity.mu (0 = perfect escape)");
  m->add_option("--trajectories", sim.trajectories, "override sim.trajectories");
  m->add_option("--regime", sim.regime, "amplification | deamplification")->capture_default_str();
  m->add_flag("--serial", sim.serial, "run the serial reference kernel");
  m->add_option("--csv", sim.csv, "write the comparison as CSV");

  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  std::string prog = "hgopo";
  argv.push_back(prog.data());
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gamma(gamma, out);
    if (t->parsed()) return cmd_threshold(thr, out);
    if (o->parsed()) return cmd_optimize(opt, out);
    if (s->parsed()) return cmd_sweep(sw, out, err);
    if (i->parsed()) return cmd_insep(in, out);
    if (m->parsed()) return cmd_simulate(sim, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hgopo
