#include "dressed/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>
#include <fmt/format.h>

#include "dressed/frequency.hpp"
#include "dressed/units.hpp"

namespace dressed {

std::string_view to_string(SweepParameter s) {
  switch (s) {
    case SweepParameter::xi: return "xi";
    case SweepParameter::phi: return "phi";
    case SweepParameter::omega0x: return "omega0x";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::perturbative: return "perturbative";
    case Method::monodromy: return "monodromy";
    case Method::timeseries: return "timeseries";
  }
  return "?";
}

bool ScanSpec::wants(Method m) const { return std::find(methods.begin(), methods.end(), m) != methods.end(); }

void ScanSpec::check() const {
  if (grid.empty()) throw std::invalid_argument("scan: empty grid");
  if (grid.size() > 1) {
    const bool up = grid[1] > grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))
        throw std::invalid_argument("scan: grid must be strictly monotone");
  }
  if (methods.empty()) throw std::invalid_argument("scan: no methods requested");
  integrator.check();
  if (swept == SweepParameter::phi && base.tuning.empty())
    throw std::invalid_argument("scan: phase sweep needs a tuning field");
}

DriveConfiguration configure_point(const ScanSpec& spec, double value) {
  DriveConfiguration c = spec.base;
  switch (spec.swept) {
    case SweepParameter::xi: c.dressing.omega_d = value * c.dressing.omega; break;
    case SweepParameter::phi: {
      TuningComponent* t = c.tuning_on(Axis::y);
      if (!t) t = &c.tuning.front();
      t->phase = value;
      break;
    }
    case SweepParameter::omega0x: c.static_field.omega0x = value; break;
  }
  return c;
}

namespace {

void note(ScanRow& row, Method m, const std::string& what) {
  if (!row.error.empty()) row.error += "; ";
  row.error += fmt::format("{}: {}", to_string(m), what);
}

constexpr int p1_grid_points = 129;
constexpr double timeseries_larmor_periods = 12.0;
constexpr int timeseries_samples = 1024;
constexpr double timeseries_max_dressing_periods = 4000.0;

}  // namespace

ScanRow evaluate_point(const ScanSpec& spec, double value) {
  ScanRow row;
  row.value = value;
  DriveConfiguration config;
  try {
    config = validate(configure_point(spec, value));
  } catch (const std::exception& e) {
    for (const Method m : spec.methods) note(row, m, e.what());
    return row;
  }
  row.eta = perturbation_strength(config);
  row.field = rectified_field(config);
  if (spec.wants(Method::perturbative)) {
    row.perturbative = row.field.omega_L;
    static const std::vector<double> grid = uniform_period_grid(p1_grid_points);
    try {
      row.p1_norm_max = floquet_first_order(config, grid).p1_norm_max;
    } catch (const std::exception& e) {
      row.p1_norm_max = std::numeric_limits<double>::quiet_NaN();
      note(row, Method::perturbative, e.what());
    }
  }
  if (spec.wants(Method::monodromy)) {
    try {
      const QuasiEnergy q = monodromy_quasienergy(config, spec.integrator);
      row.monodromy = q.omega_L_numeric;
      row.alias_ambiguous = q.alias_ambiguous;
    } catch (const std::exception& e) {
      note(row, Method::monodromy, e.what());
    }
  }
  if (spec.wants(Method::timeseries)) {
    const double guess = row.monodromy.value_or(row.field.omega_L);
    const double omega = config.dressing.omega;
    const double t_end = guess > 0.0 ? timeseries_larmor_periods * units::two_pi / guess : 0.0;
    if (!(guess > 0.0) || omega * t_end / units::two_pi > timeseries_max_dressing_periods) {
      note(row, Method::timeseries, "precession too slow for a time-series estimate");
    } else {
      try {
        const CoherenceSeries s = config.spin == Spin::half
                                      ? propagate_spin_half(config, t_end, timeseries_samples,
                                                            sigma_x_eigenstate(), spec.integrator)
                                      : propagate_bloch_spin1(config, t_end, timeseries_samples, {1.0, 0.0, 0.0},
                                                              spec.integrator);
        const FrequencyEstimate f = extract_frequency(s);
        row.timeseries = f.omega;
        row.timeseries_error = f.std_error;
      } catch (const std::exception& e) {
        note(row, Method::timeseries, e.what());
      }
    }
  }
  return row;
}

void resolve_branches(ScanResult& result, double omega) {
  std::optional<double> prev1, prev2;
  for (ScanRow& row : result.rows) {
    if (!row.monodromy) continue;
    const double v = *row.monodromy;
    double ref = v;
    if (prev1 && prev2)
      ref = 2.0 * *prev1 - *prev2;
    else if (prev1)
      ref = *prev1;
    else if (row.perturbative)
      ref = *row.perturbative;

    const int kmax = static_cast<int>(std::ceil(std::max(ref, 0.0) / omega)) + 1;
    std::vector<double> candidates;
    for (int k = 0; k <= kmax; ++k)
      for (const double c : {k * omega + v, k * omega - v})
        if (c >= 0.0) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end(),
              [ref](double a, double b) { return std::abs(a - ref) < std::abs(b - ref); });
    const double best = candidates.front();
    const double d1 = std::abs(best - ref);
    double d2 = std::numeric_limits<double>::infinity();
    for (const double c : candidates)
      if (std::abs(c - best) > 1e-12 * omega) {
        d2 = std::abs(c - ref);
        break;
      }
    row.branch_unresolved = (d2 - d1) < 0.05 * omega;
    row.monodromy = best;
    prev2 = prev1;
    prev1 = best;
  }
}

namespace {

ScanResult empty_result(const ScanSpec& spec) {
  ScanResult result;
  result.swept = spec.swept;
  result.methods = spec.methods;
  result.rows.resize(spec.grid.size());
  return result;
}

}  // namespace

ScanResult run_scan(const ScanSpec& spec, int jobs) {
  spec.check();
  ScanResult result = empty_result(spec);
  const int n = static_cast<int>(spec.grid.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) result.rows[i] = evaluate_point(spec, spec.grid[i]);
  if (spec.wants(Method::monodromy)) resolve_branches(result, spec.base.dressing.omega);
  return result;
}

ScanResult run_scan_serial(const ScanSpec& spec) {
  spec.check();
  ScanResult result = empty_result(spec);
  for (std::size_t i = 0; i < spec.grid.size(); ++i) result.rows[i] = evaluate_point(spec, spec.grid[i]);
  if (spec.wants(Method::monodromy)) resolve_branches(result, spec.base.dressing.omega);
  return result;
}

std::vector<double> linear_grid(double from, double to, int points) {
  if (points < 1) throw std::invalid_argument("linear_grid: points must be >= 1");
  if (points == 1) return {from};
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = from + (to - from) * static_cast<double>(i) / (points - 1);
  g.back() = to;
  return g;
}

}  // namespace dressed
