#pragma once

// Physical parameters of a spin driven by a static field, a strong dressing
// field along x and up to three weak harmonic tuning fields.
//
// All frequencies are angular (rad/s) and already multiplied by the
// gyromagnetic ratio, i.e. omega0j = gamma * B0j. Phases are radians.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dressed/errors.hpp"

namespace dressed {

enum class Axis { x = 0, y = 1, z = 2 };
enum class Spin { half, one };

std::string_view to_string(Axis axis);
std::string_view to_string(Spin spin);

struct StaticField {
  double omega0x = 0.0;
  double omega0y = 0.0;
  double omega0z = 0.0;

  bool operator==(const StaticField&) const = default;
};

struct DressingField {
  double omega_d = 0.0;  ///< Rabi frequency of the dressing field
  double omega = 0.0;    ///< dressing angular frequency, must be > 0

  bool operator==(const DressingField&) const = default;
};

/// One harmonic tuning field: amplitude * cos(harmonic * omega * t + phase)
/// along `axis`.
struct TuningComponent {
  Axis axis = Axis::y;
  double amplitude = 0.0;
  int harmonic = 1;
  double phase = 0.0;

  bool operator==(const TuningComponent&) const = default;
};

struct DriveConfiguration {
  StaticField static_field;
  DressingField dressing;
  std::vector<TuningComponent> tuning;
  Spin spin = Spin::half;

  /// Dressing parameter Omega_d / omega.
  double xi() const { return dressing.omega_d / dressing.omega; }

  const TuningComponent* tuning_on(Axis axis) const;
  TuningComponent* tuning_on(Axis axis);

  bool operator==(const DriveConfiguration&) const = default;
};

struct Violation {
  ErrorCode code;
  std::string key;  ///< dotted name of the offending field, e.g. "dressing.omega"
  std::string detail;
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Every violated invariant of `config`; empty when valid.
std::vector<Violation> check(const DriveConfiguration& config);

/// Returns `config` with phases normalized to [0, 2pi). Throws
/// ConfigurationError listing every violation otherwise.
DriveConfiguration validate(const DriveConfiguration& config);

double normalize_phase(double phase);

struct DimensionlessTuning {
  Axis axis;
  double amplitude;  ///< amplitude / omega
  int harmonic;
  double phase;

  bool operator==(const DimensionlessTuning&) const = default;
};

/// Everything the dynamics depends on once time is measured as tau = omega t.
struct DimensionlessParams {
  double xi = 0.0;
  std::array<double, 3> static_ratio{};  ///< omega0j / omega
  std::vector<DimensionlessTuning> tuning;
  Spin spin = Spin::half;

  double static_component(Axis axis) const { return static_ratio[static_cast<int>(axis)]; }
  const DimensionlessTuning* tuning_on(Axis axis) const;

  bool operator==(const DimensionlessParams&) const = default;
};

DimensionlessParams dimensionless(const DriveConfiguration& config);

/// Perturbative-validity indicator max(|omega0j|/omega, amplitude/omega).
double perturbation_strength(const DriveConfiguration& config);

/// Convenience for the single y-axis tuning field of the main configuration.
DriveConfiguration make_y_tuned(double omega0z, double omega, double xi, double tuning_amplitude,
                                int harmonic, double phase);

}  // namespace dressed
