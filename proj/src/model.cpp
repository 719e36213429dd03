#include "dressed/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dressed/units.hpp"

namespace dressed {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDressingFrequency: return "NonPositiveDressingFrequency";
    case ErrorCode::NegativeAmplitude: return "NegativeAmplitude";
    case ErrorCode::DuplicateTuningAxis: return "DuplicateTuningAxis";
    case ErrorCode::ZeroHarmonicTuning: return "ZeroHarmonicTuning";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnitarityLost: return "UnitarityLost";
    case ErrorCode::DegenerateField: return "DegenerateField";
    case ErrorCode::NoOscillation: return "NoOscillation";
    case ErrorCode::FitDiverged: return "FitDiverged";
    case ErrorCode::FitRejected: return "FitRejected";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::InvalidData: return "InvalidData";
  }
  return "Unknown";
}

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

std::string_view to_string(Spin spin) { return spin == Spin::half ? "half" : "one"; }

const TuningComponent* DriveConfiguration::tuning_on(Axis axis) const {
  auto it = std::find_if(tuning.begin(), tuning.end(),
                         [axis](const TuningComponent& t) { return t.axis == axis; });
  return it == tuning.end() ? nullptr : &*it;
}

TuningComponent* DriveConfiguration::tuning_on(Axis axis) {
  auto it = std::find_if(tuning.begin(), tuning.end(),
                         [axis](const TuningComponent& t) { return t.axis == axis; });
  return it == tuning.end() ? nullptr : &*it;
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += fmt::format("{} at {}: {}", to_string(v.code), v.key, v.detail);
  }
  return out;
}

}  // namespace

ConfigurationError::ConfigurationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::ConfigParse : violations.front().code,
            summarize(violations)),
      violations_(std::move(violations)) {}

std::vector<Violation> check(const DriveConfiguration& config) {
  std::vector<Violation> out;
  auto finite = [&](double v, std::string name) {
    if (!std::isfinite(v)) out.push_back({ErrorCode::NonFiniteValue, name, "not a finite number"});
  };
  finite(config.static_field.omega0x, "static.omega0x");
  finite(config.static_field.omega0y, "static.omega0y");
  finite(config.static_field.omega0z, "static.omega0z");
  finite(config.dressing.omega_d, "dressing.omega_d");
  finite(config.dressing.omega, "dressing.omega");

  if (!(config.dressing.omega > 0.0))
    out.push_back({ErrorCode::NonPositiveDressingFrequency, "dressing.omega", "must be > 0"});
  if (config.dressing.omega_d < 0.0)
    out.push_back({ErrorCode::NegativeAmplitude, "dressing.omega_d", "must be >= 0"});

  std::array<int, 3> per_axis{};
  for (const auto& t : config.tuning) {
    const auto name = fmt::format("tuning.{}", to_string(t.axis));
    if (++per_axis[static_cast<int>(t.axis)] == 2)
      out.push_back({ErrorCode::DuplicateTuningAxis, name + ".axis", "more than one tuning field on this axis"});
    if (!std::isfinite(t.amplitude))
      out.push_back({ErrorCode::NonFiniteValue, name + ".amplitude", "not a finite number"});
    if (!std::isfinite(t.phase))
      out.push_back({ErrorCode::NonFiniteValue, name + ".phase", "not a finite number"});
    if (t.amplitude < 0.0)
      out.push_back({ErrorCode::NegativeAmplitude, name + ".amplitude", "must be >= 0"});
    if (t.harmonic < 0 || (t.amplitude > 0.0 && t.harmonic < 1))
      out.push_back({ErrorCode::ZeroHarmonicTuning, name + ".harmonic",
                     "must be >= 1 (a static offset belongs in [static])"});
  }
  return out;
}

double normalize_phase(double phase) {
  double r = std::fmod(phase, units::two_pi);
  if (r < 0.0) r += units::two_pi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi
  if (r >= units::two_pi) r = 0.0;
  return r;
}

DriveConfiguration validate(const DriveConfiguration& config) {
  auto violations = check(config);
  if (!violations.empty()) throw ConfigurationError(std::move(violations));
  DriveConfiguration out = config;
  for (auto& t : out.tuning) t.phase = normalize_phase(t.phase);
  return out;
}

const DimensionlessTuning* DimensionlessParams::tuning_on(Axis axis) const {
  auto it = std::find_if(tuning.begin(), tuning.end(),
                         [axis](const DimensionlessTuning& t) { return t.axis == axis; });
  return it == tuning.end() ? nullptr : &*it;
}

DimensionlessParams dimensionless(const DriveConfiguration& raw) {
  const DriveConfiguration config = validate(raw);
  const double w = config.dressing.omega;
  DimensionlessParams out;
  out.xi = config.dressing.omega_d / w;
  out.static_ratio = {config.static_field.omega0x / w, config.static_field.omega0y / w,
                      config.static_field.omega0z / w};
  out.spin = config.spin;
  for (const auto& t : config.tuning) {
    if (t.amplitude == 0.0) continue;
    out.tuning.push_back({t.axis, t.amplitude / w, t.harmonic, t.phase});
  }
  return out;
}

double perturbation_strength(const DriveConfiguration& config) {
  const double w = config.dressing.omega;
  double eta = std::max({std::abs(config.static_field.omega0x), std::abs(config.static_field.omega0y),
                         std::abs(config.static_field.omega0z)}) / w;
  for (const auto& t : config.tuning) eta = std::max(eta, t.amplitude / w);
  return eta;
}

DriveConfiguration make_y_tuned(double omega0z, double omega, double xi, double tuning_amplitude,
                                int harmonic, double phase) {
  DriveConfiguration c;
  c.static_field.omega0z = omega0z;
  c.dressing = {xi * omega, omega};
  c.tuning.push_back({Axis::y, tuning_amplitude, harmonic, phase});
  return c;
}

}  // namespace dressed
