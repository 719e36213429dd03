#pragma once

// Comma-separated output: first line is the schema tag, further '#' lines
// are comments, then one header line and the data rows. Frequencies are in
// kHz (value / 2pi).

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "dressed/calibration.hpp"
#include "dressed/propagator.hpp"
#include "dressed/scan.hpp"

namespace dressed {

inline constexpr std::string_view csv_schema_tag = "# dressed-csv v1";

/// Fixed-format rendering used in every CSV column ("nan" for NaN).
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const;  ///< -1 when absent
};

/// Rejects schema tags other than v1 (an untagged file is accepted).
/// Throws Error(InvalidData).
CsvTable read_csv(std::istream& in);

/// Comment lines describing the dimensionless parameter bundle.
std::vector<std::string> describe(const DriveConfiguration& config);

void write_series_csv(std::ostream& out, const DriveConfiguration& config, const CoherenceSeries* analytic,
                      const CoherenceSeries* numeric);

void write_scan_csv(std::ostream& out, const DriveConfiguration& base, const ScanResult& result);

void write_ratio_csv(std::ostream& out, const std::vector<RatioPoint>& data);

/// Columns omega0x_kHz and ratio. Throws Error(InvalidData).
std::vector<RatioPoint> read_ratio_csv(std::istream& in);

}  // namespace dressed
