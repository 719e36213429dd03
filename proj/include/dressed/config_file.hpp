#pragma once

// Text configuration files.
//
//   spin = half            # or "one"
//
//   [static]               # kHz (value / 2pi); "Hz" and "kHz" suffixes accepted
//   omega0x = 0
//   omega0y = 0
//   omega0z = 2.040
//
//   [dressing]
//   omega = 9              # kHz
//   omega_d = 21.64        # kHz, or give `xi = 2.404826` instead
//
//   [[tuning]]             # repeatable, at most one block per axis
//   axis = y
//   amplitude = 4.97       # kHz
//   harmonic = 1
//   phase = 90deg          # "deg" or "rad" suffix; a bare number is radians
//
// `#` starts a comment. Values may be double-quoted. Overrides are
// `section.key=value`, `tuning.<axis>.key=value` or `spin=value` and are
// applied after the file is read.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "dressed/model.hpp"

namespace dressed {

class ConfigParseError : public Error {
 public:
  ConfigParseError(int line, std::string key, const std::string& message);

  /// 1-based line in the file; 0 for overrides and whole-file errors.
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Parses `input`, applies `overrides`, checks every invariant.
/// Throws ConfigParseError (syntax, unknown keys, invariant violations).
DriveConfiguration parse_config(std::istream& input, const std::vector<std::string>& overrides = {});

DriveConfiguration load_config(const std::filesystem::path& path,
                               const std::vector<std::string>& overrides = {});

/// Frequency literal in kHz ("2.04", "2040Hz", "2.04kHz") to rad/s.
double parse_frequency(const std::string& text);

/// Angle literal ("90deg", "1.5708rad", "1.5708") to radians.
double parse_angle(const std::string& text);

/// Serializes a configuration in the format above (frequencies in kHz,
/// phases in rad). parse_config(write_config(c)) reproduces c up to the
/// rounding of the kHz conversion.
std::string write_config(const DriveConfiguration& config);

}  // namespace dressed
