#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dressed {

enum class ErrorCode {
  // configuration
  NonPositiveDressingFrequency,
  NegativeAmplitude,
  DuplicateTuningAxis,
  ZeroHarmonicTuning,
  NonFiniteValue,
  ConfigParse,
  // numerics
  SeriesNotConverged,
  NoConvergence,
  UnitarityLost,
  DegenerateField,
  // analysis
  NoOscillation,
  FitDiverged,
  FitRejected,
  DegenerateData,
  InvalidData,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dressed
