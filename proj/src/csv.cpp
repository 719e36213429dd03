#include "dressed/csv.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "dressed/errors.hpp"
#include "dressed/units.hpp"

namespace dressed {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", v == 0.0 ? 0.0 : v);  // no "-0"
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double khz(double rad) { return units::rad_to_khz(rad); }

std::string opt_khz(const std::optional<double>& v) { return v ? format_number(khz(*v)) : "nan"; }

// error text goes into a single unquoted field
std::string token(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return s;
}

void write_comments(std::ostream& out, const std::vector<std::string>& lines) {
  out << csv_schema_tag << '\n';
  for (const auto& l : lines) out << "# " << l << '\n';
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      first = false;
      if (line.rfind("# dressed-csv", 0) == 0) {
        if (line != csv_schema_tag)
          throw Error(ErrorCode::InvalidData, fmt::format("unsupported CSV schema '{}'", line));
        continue;
      }
    }
    if (trim(line).empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(trim(std::string_view(line).substr(1)));
      continue;
    }
    auto fields = split(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw Error(ErrorCode::InvalidData,
                  fmt::format("row {} has {} fields, header has {}", t.rows.size() + 1, fields.size(), t.header.size()));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

std::vector<std::string> describe(const DriveConfiguration& config) {
  const DimensionlessParams d = dimensionless(config);
  std::vector<std::string> out;
  out.push_back(fmt::format("spin = {}", to_string(d.spin)));
  out.push_back(fmt::format("omega_kHz = {}", format_number(khz(config.dressing.omega))));
  out.push_back(fmt::format("xi = {}", format_number(d.xi)));
  out.push_back(fmt::format("omega0/omega = {}, {}, {}", format_number(d.static_ratio[0]),
                            format_number(d.static_ratio[1]), format_number(d.static_ratio[2])));
  for (const auto& t : d.tuning)
    out.push_back(fmt::format("tuning {}: amplitude/omega = {}, harmonic = {}, phase_rad = {}", to_string(t.axis),
                              format_number(t.amplitude), t.harmonic, format_number(t.phase)));
  out.push_back(fmt::format("eta = {}", format_number(perturbation_strength(config))));
  return out;
}

void write_series_csv(std::ostream& out, const DriveConfiguration& config, const CoherenceSeries* analytic,
                      const CoherenceSeries* numeric) {
  if (!analytic && !numeric) throw std::invalid_argument("write_series_csv: no series");
  const CoherenceSeries& ref = analytic ? *analytic : *numeric;
  if (analytic && numeric && analytic->size() != numeric->size())
    throw std::invalid_argument("write_series_csv: series lengths differ");

  auto comments = describe(config);
  if (analytic && analytic->degenerate) comments.push_back("analytic: Omega_L = 0, no precession");
  if (numeric) {
    comments.push_back(fmt::format("numeric: steps_per_period = {}", numeric->steps_per_period));
    comments.push_back(fmt::format("numeric: max_norm_drift = {}", format_number(numeric->max_norm_drift)));
  }
  write_comments(out, comments);

  out << "t_s";
  if (analytic) out << ",sx_an,sy_an,sz_an";
  if (numeric) out << ",sx_num,sy_num,sz_num";
  out << '\n';
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out << format_number(ref.times[i]);
    for (const CoherenceSeries* s : {analytic, numeric}) {
      if (!s) continue;
      out << ',' << format_number(s->sx[i]) << ',' << format_number(s->sy[i]) << ',' << format_number(s->sz[i]);
    }
    out << '\n';
  }
}

void write_scan_csv(std::ostream& out, const DriveConfiguration& base, const ScanResult& result) {
  auto comments = describe(base);
  comments.push_back(fmt::format("sweep = {}", to_string(result.swept)));
  write_comments(out, comments);

  const char* swept = result.swept == SweepParameter::xi    ? "xi"
                      : result.swept == SweepParameter::phi ? "phi_rad"
                                                            : "omega0x_kHz";
  auto has = [&](Method m) {
    for (auto x : result.methods)
      if (x == m) return true;
    return false;
  };
  out << swept << ",hx_kHz,hy_kHz,hz_kHz";
  if (has(Method::perturbative)) out << ",omega_L_pert_kHz";
  if (has(Method::monodromy)) out << ",omega_L_mono_kHz,alias_ambiguous,branch_unresolved";
  if (has(Method::timeseries)) out << ",omega_L_ts_kHz,omega_L_ts_err_kHz";
  out << ",eta,p1_norm_max,error\n";

  for (const auto& r : result.rows) {
    const double v = result.swept == SweepParameter::omega0x ? khz(r.value) : r.value;
    out << format_number(v) << ',' << format_number(khz(r.field.hx)) << ',' << format_number(khz(r.field.hy)) << ','
        << format_number(khz(r.field.hz));
    if (has(Method::perturbative)) out << ',' << opt_khz(r.perturbative);
    if (has(Method::monodromy))
      out << ',' << opt_khz(r.monodromy) << ',' << int(r.alias_ambiguous) << ',' << int(r.branch_unresolved);
    if (has(Method::timeseries)) out << ',' << opt_khz(r.timeseries) << ',' << opt_khz(r.timeseries_error);
    out << ',' << format_number(r.eta) << ',' << format_number(r.p1_norm_max) << ',' << token(r.error) << '\n';
  }
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& data) {
  write_comments(out, {});
  out << "omega0x_kHz,ratio\n";
  for (const auto& p : data) out << format_number(khz(p.omega0x_nominal)) << ',' << format_number(p.ratio) << '\n';
}

std::vector<RatioPoint> read_ratio_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  const int cx = t.column("omega0x_kHz");
  const int cr = t.column("ratio");
  if (cx < 0 || cr < 0) throw Error(ErrorCode::InvalidData, "ratio CSV needs columns omega0x_kHz and ratio");
  if (t.rows.empty()) throw Error(ErrorCode::InvalidData, "ratio CSV has no data rows");
  std::vector<RatioPoint> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    RatioPoint p;
    try {
      std::size_t used = 0;
      p.omega0x_nominal = units::khz_to_rad(std::stod(t.rows[i][cx], &used));
      if (used != t.rows[i][cx].size()) throw std::invalid_argument("trailing");
      p.ratio = std::stod(t.rows[i][cr], &used);
      if (used != t.rows[i][cr].size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidData, fmt::format("row {}: not a number", i + 1));
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace dressed
