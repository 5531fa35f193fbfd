#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lrv/harness.hpp"

namespace lrv::cli {

/// Shortest decimal string that parses back to exactly `v`.
[[nodiscard]] std::string format_double(double v);

/**
 * @brief Reads one numeric column from a headed CSV stream.
 *
 * Takes the column named `x` when the header has one, otherwise the first
 * column. Double-quoted fields are accepted; blank lines are skipped.
 *
 * @throws std::runtime_error on a missing header, no data rows, or a non-numeric cell.
 */
[[nodiscard]] std::vector<double> read_series_csv(std::istream& in);
[[nodiscard]] std::vector<double> read_series_file(const std::string& path);

/// Single-column CSV with header "x".
void write_series_csv(std::ostream& out, const std::vector<double>& values);

inline constexpr const char* kResultsHeader =
    "spec_id,ar,ma,estimator,parameter,mean_adaptive_length,truth,bias,variance,mse";

void write_results_csv(std::ostream& out, const std::vector<MetricRecord>& records);

}  // namespace lrv::cli
