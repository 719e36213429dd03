#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dressed/calibration.hpp"
#include "dressed/config_file.hpp"
#include "dressed/csv.hpp"
#include "dressed/effective_field.hpp"
#include "dressed/propagator.hpp"
#include "dressed/scan.hpp"
#include "dressed/units.hpp"

namespace dressed::cli {

namespace {

constexpr double eta_warning = 0.3;

struct Console {
  std::ostream& out;
  std::ostream& err;
  bool color;

  void warn(const std::string& msg) const {
    err << (color ? "\033[33mwarning:\033[0m " : "warning: ") << msg << '\n';
  }
  void fail(const std::string& msg) const { err << (color ? "\033[31merror:\033[0m " : "error: ") << msg << '\n'; }
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDressingFrequency:
    case ErrorCode::NegativeAmplitude:
    case ErrorCode::DuplicateTuningAxis:
    case ErrorCode::ZeroHarmonicTuning:
    case ErrorCode::NonFiniteValue:
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidData:
      return usage;
    case ErrorCode::SeriesNotConverged:
    case ErrorCode::NoConvergence:
    case ErrorCode::UnitarityLost:
    case ErrorCode::DegenerateField:
    case ErrorCode::NoOscillation:
      return numerical;
    case ErrorCode::FitDiverged:
    case ErrorCode::FitRejected:
    case ErrorCode::DegenerateData:
      return fit;
  }
  return numerical;
}

// Writes to the -o file when given, otherwise to stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw std::invalid_argument(fmt::format("cannot open output file '{}'", path));
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

double khz(double rad) { return units::rad_to_khz(rad); }

void warn_eta(const Console& con, double eta) {
  if (eta > eta_warning)
    con.warn(fmt::format("eta = {:.3g} > {}: first-order predictions are not reliable", eta, eta_warning));
}

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string output;

  void attach(CLI::App* cmd, bool needs_config = true) {
    if (needs_config) cmd->add_option("config", config, "configuration file")->required();
    cmd->add_option("--set", overrides, "override, section.key=value (repeatable)");
    cmd->add_option("-o,--output", output, "write CSV here instead of stdout");
  }
  DriveConfiguration load() const { return load_config(config, overrides); }
};

int cmd_effective_field(const Console& con, const Common& common, bool csv) {
  const DriveConfiguration config = common.load();
  const EffectiveField h = rectified_field(config);
  const FloquetFirstOrder f = floquet_first_order(config, uniform_period_grid(257));
  warn_eta(con, h.eta);

  if (!csv && common.output.empty()) {
    con.out << fmt::format("xi           {:.10g}\n", config.xi());
    con.out << fmt::format("hx_kHz       {:.10g}\n", khz(h.hx));
    con.out << fmt::format("hy_kHz       {:.10g}\n", khz(h.hy));
    con.out << fmt::format("hz_kHz       {:.10g}\n", khz(h.hz));
    con.out << fmt::format("omega_L_kHz  {:.10g}\n", khz(h.omega_L));
    con.out << fmt::format("eta          {:.6g}\n", h.eta);
    con.out << fmt::format("p1_norm_max  {:.6g}\n", f.p1_norm_max);
    return ok;
  }
  Sink sink(common.output, con.out);
  auto& o = sink.stream();
  o << csv_schema_tag << '\n';
  for (const auto& line : describe(config)) o << "# " << line << '\n';
  o << "xi,hx_kHz,hy_kHz,hz_kHz,omega_L_kHz,eta,p1_norm_max\n";
  o << format_number(config.xi()) << ',' << format_number(khz(h.hx)) << ',' << format_number(khz(h.hy)) << ','
    << format_number(khz(h.hz)) << ',' << format_number(khz(h.omega_L)) << ',' << format_number(h.eta) << ','
    << format_number(f.p1_norm_max) << '\n';
  return ok;
}

int cmd_simulate(const Console& con, const Common& common, std::optional<double> t_end, int samples,
                 const std::string& method) {
  if (samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const DriveConfiguration config = common.load();
  const EffectiveField h = rectified_field(config);
  warn_eta(con, h.eta);

  double duration = 0.0;
  if (t_end) {
    if (!(*t_end > 0.0)) throw std::invalid_argument("--t-end must be > 0");
    duration = *t_end;
  } else if (h.omega_L > 0.0) {
    duration = 10.0 * units::two_pi / h.omega_L;
  } else {
    duration = 1e-3;
  }

  std::optional<CoherenceSeries> analytic, numeric;
  if (method == "analytic" || method == "both") analytic = analytic_coherences(config, duration, samples);
  if (method == "numeric" || method == "both") {
    numeric = config.spin == Spin::half ? propagate_spin_half(config, duration, samples)
                                        : propagate_bloch_spin1(config, duration, samples);
  }
  Sink sink(common.output, con.out);
  write_series_csv(sink.stream(), config, analytic ? &*analytic : nullptr, numeric ? &*numeric : nullptr);
  return ok;
}

struct ScanArgs {
  std::string sweep;
  std::string from;
  std::string to;
  int points = 0;
  std::vector<std::string> methods{"perturbative"};
  int jobs = 0;
};

double parse_endpoint(SweepParameter s, const std::string& text) {
  switch (s) {
    case SweepParameter::phi: return parse_angle(text);
    case SweepParameter::omega0x: return parse_frequency(text);
    case SweepParameter::xi: break;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument(fmt::format("'{}' is not a number", text));
  return v;
}

int cmd_scan(const Console& con, const Common& common, const ScanArgs& a) {
  if (a.points < 2) throw std::invalid_argument("--points must be >= 2");
  ScanSpec spec;
  spec.swept = a.sweep == "xi" ? SweepParameter::xi : a.sweep == "phi" ? SweepParameter::phi : SweepParameter::omega0x;
  spec.grid = linear_grid(parse_endpoint(spec.swept, a.from), parse_endpoint(spec.swept, a.to), a.points);
  spec.base = common.load();
  spec.methods.clear();
  for (const auto& m : a.methods) {
    if (m == "perturbative") spec.methods.push_back(Method::perturbative);
    else if (m == "monodromy") spec.methods.push_back(Method::monodromy);
    else if (m == "timeseries") spec.methods.push_back(Method::timeseries);
    else throw std::invalid_argument(fmt::format("unknown method '{}'", m));
  }
  spec.check();

  ScanResult result = run_scan(spec, a.jobs);

  const double eta = std::max_element(result.rows.begin(), result.rows.end(), [](const auto& x, const auto& y) {
                       return x.eta < y.eta;
                     })->eta;
  warn_eta(con, eta);

  Sink sink(common.output, con.out);
  write_scan_csv(sink.stream(), spec.base, result);

  std::size_t failed = 0;
  for (const auto& r : result.rows)
    if (!r.error.empty()) ++failed;
  if (failed > 0) con.warn(fmt::format("{} of {} rows have errors", failed, result.rows.size()));
  if (failed == result.rows.size()) {
    con.fail("every grid point failed");
    return numerical;
  }
  return ok;
}

struct CalibrateArgs {
  std::string data;
  std::string omega0z;
  std::string omega;
  bool synthetic = false;
  std::uint64_t seed = 1;
  double scale = 1.0;
  double tilt = 0.03;
  double xi = 1.833;
  double noise = 0.002;
  std::string save_data;
};

int cmd_calibrate(const Console& con, const Common& common, const CalibrateArgs& a) {
  CalibrationFixed fixed;
  std::vector<RatioPoint> data;
  if (a.synthetic) {
    fixed.omega0z = parse_frequency(a.omega0z.empty() ? "5.979" : a.omega0z);
    fixed.omega = parse_frequency(a.omega.empty() ? "30" : a.omega);
    const auto grid = default_calibration_grid();
    data = synthetic_calibration_data(grid, fixed, a.scale, a.tilt, a.xi, a.noise, a.seed);
    if (!a.save_data.empty()) {
      Sink sink(a.save_data, con.out);
      write_ratio_csv(sink.stream(), data);
    }
  } else {
    if (a.data.empty()) throw std::invalid_argument("give a data CSV or --synthetic");
    if (a.omega0z.empty() || a.omega.empty()) throw std::invalid_argument("--omega0z and --omega are required");
    fixed.omega0z = parse_frequency(a.omega0z);
    fixed.omega = parse_frequency(a.omega);
    std::ifstream in(a.data, std::ios::binary);
    if (!in) throw std::invalid_argument(fmt::format("cannot open data file '{}'", a.data));
    data = read_ratio_csv(in);
  }

  const CalibrationFit f = calibrate(data, fixed);
  con.out << fmt::format("scale          {:.8g} +- {:.2g}\n", f.scale, f.ci95[0]);
  con.out << fmt::format("tilt           {:.8g} +- {:.2g}\n", f.tilt, f.ci95[1]);
  con.out << fmt::format("xi             {:.8g} +- {:.2g}\n", f.xi, f.ci95[2]);
  con.out << fmt::format("omega_d_kHz    {:.8g}\n", khz(f.omega_d(fixed)));
  con.out << fmt::format("residual_norm  {:.4g}\n", f.residual_norm);
  con.out << fmt::format("iterations     {}\n", f.iterations);

  if (!common.output.empty()) {
    Sink sink(common.output, con.out);
    auto& o = sink.stream();
    o << csv_schema_tag << '\n' << "parameter,value,std_error,ci95\n";
    const char* names[] = {"scale", "tilt", "xi"};
    const double values[] = {f.scale, f.tilt, f.xi};
    for (int i = 0; i < 3; ++i)
      o << names[i] << ',' << format_number(values[i]) << ',' << format_number(f.std_error[i]) << ','
        << format_number(f.ci95[i]) << '\n';
  }
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  const Console con{out, err, color};

  CLI::App app{"Dressed-spin Larmor frequency simulator", "dressed"};
  app.require_subcommand(1);

  Common common;

  bool csv = false;
  auto* eff = app.add_subcommand("effective-field", "first-order rectified field and Larmor frequency");
  common.attach(eff);
  eff->add_flag("--csv", csv, "print one CSV row instead of the report");

  std::optional<double> t_end;
  int samples = 1001;
  std::string method = "analytic";
  auto* sim = app.add_subcommand("simulate", "coherence time series");
  common.attach(sim);
  sim->add_option("--t-end", t_end, "duration in seconds (default: 10 Larmor periods)");
  sim->add_option("--samples", samples, "number of samples including t = 0");
  sim->add_option("--method", method, "analytic, numeric or both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "sweep xi, the tuning phase or omega0x");
  common.attach(sc);
  sc->add_option("--sweep", scan.sweep, "xi, phi or omega0x")->required()->check(CLI::IsMember({"xi", "phi", "omega0x"}));
  sc->add_option("--from", scan.from, "first grid value (phi: angle literal, omega0x: kHz)")->required();
  sc->add_option("--to", scan.to, "last grid value")->required();
  sc->add_option("--points", scan.points, "grid points, >= 2")->required();
  sc->add_option("--methods", scan.methods, "perturbative, monodromy, timeseries")->delimiter(',');
  sc->add_option("--jobs", scan.jobs, "threads (0: OpenMP default)");

  CalibrateArgs cal;
  auto* ca = app.add_subcommand("calibrate", "fit scale, tilt and xi to measured frequency ratios");
  common.attach(ca, false);
  ca->add_option("data", cal.data, "CSV with columns omega0x_kHz, ratio");
  ca->add_option("--omega0z", cal.omega0z, "static z field, kHz");
  ca->add_option("--omega", cal.omega, "dressing frequency, kHz");
  ca->add_flag("--synthetic", cal.synthetic, "fit generated data instead of a file");
  ca->add_option("--seed", cal.seed, "noise seed for --synthetic");
  ca->add_option("--true-scale", cal.scale, "generating scale for --synthetic");
  ca->add_option("--true-tilt", cal.tilt, "generating tilt for --synthetic");
  ca->add_option("--true-xi", cal.xi, "generating xi for --synthetic");
  ca->add_option("--noise", cal.noise, "relative frequency noise for --synthetic");
  ca->add_option("--save-data", cal.save_data, "write the generated ratios to this CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (eff->parsed()) return cmd_effective_field(con, common, csv);
    if (sim->parsed()) return cmd_simulate(con, common, t_end, samples, method);
    if (sc->parsed()) return cmd_scan(con, common, scan);
    if (ca->parsed()) return cmd_calibrate(con, common, cal);
  } catch (const Error& e) {
    con.fail(e.what());
    return exit_code(e.code());
  } catch (const std::invalid_argument& e) {
    con.fail(e.what());
    return usage;
  } catch (const std::exception& e) {
    con.fail(e.what());
    return numerical;
  }
  return usage;
}

}  // namespace dressed::cli
