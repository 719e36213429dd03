#pragma once

// Parameter sweeps over xi, the tuning phase or omega0x. Grid points are
// independent: run_scan() distributes them over OpenMP threads and
// run_scan_serial() is the single-threaded reference used in tests.

#include <optional>
#include <string>
#include <vector>

#include "dressed/effective_field.hpp"
#include "dressed/propagator.hpp"

namespace dressed {

enum class SweepParameter { xi, phi, omega0x };
enum class Method { perturbative, monodromy, timeseries };

std::string_view to_string(SweepParameter s);
std::string_view to_string(Method m);

struct ScanSpec {
  SweepParameter swept = SweepParameter::xi;
  std::vector<double> grid;  ///< dimensionless, radians or rad/s
  DriveConfiguration base;
  std::vector<Method> methods{Method::perturbative};
  IntegratorControl integrator{};

  /// Throws std::invalid_argument for an empty or non-monotone grid, no
  /// methods, or a phase sweep without a tuning field.
  void check() const;
  bool wants(Method m) const;
};

struct ScanRow {
  double value = 0.0;
  EffectiveField field;  ///< signed first-order components
  std::optional<double> perturbative;
  std::optional<double> monodromy;
  std::optional<double> timeseries;
  std::optional<double> timeseries_error;  ///< fit standard error, rad/s
  std::string error;                       ///< "method: message; ..." for failed methods
  double eta = 0.0;
  double p1_norm_max = 0.0;
  bool alias_ambiguous = false;
  bool branch_unresolved = false;
};

struct ScanResult {
  SweepParameter swept = SweepParameter::xi;
  std::vector<Method> methods;
  std::vector<ScanRow> rows;
};

/// The base configuration with the swept parameter set to `value`. Phase
/// sweeps act on the y tuning field if present, otherwise the first one.
DriveConfiguration configure_point(const ScanSpec& spec, double value);

/// Every requested method at one grid point; failures are recorded in the row.
ScanRow evaluate_point(const ScanSpec& spec, double value);

/// `jobs` <= 0 uses the OpenMP default thread count.
ScanResult run_scan(const ScanSpec& spec, int jobs = 0);
ScanResult run_scan_serial(const ScanSpec& spec);

/// Lifts principal-branch monodromy values onto the branch k omega +- v
/// closest to a linear extrapolation of the previous rows.
void resolve_branches(ScanResult& result, double omega);

std::vector<double> linear_grid(double from, double to, int points);

}  // namespace dressed
