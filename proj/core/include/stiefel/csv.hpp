#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stiefel/harness.hpp"
#include "stiefel/trajectory.hpp"

namespace stiefel {

inline constexpr std::string_view kReportHeader =
    "method,manifold,h,N,mean_error,relative_error,runtime_ms";

/// %.12g formatting used for every float in emitted files.
std::string format_number(double v);

std::string format_report_csv(const std::vector<ErrorReport>& rows);
std::vector<ErrorReport> parse_report_csv(std::string_view text);

/// Per-sample "t,error" rows of one report.
std::string format_plot_data(const ErrorReport& report);

/// "t,s_0_0,s_0_1,..." with the embedded matrix entries in row-major order.
std::string format_trajectory_csv(const TrajectoryRecord& rec);

/// Writes text to path; throws IoError on failure.
void write_file(const std::string& path, std::string_view text);
std::string read_file(const std::string& path);

inline void emit_csv(const std::vector<ErrorReport>& rows, const std::string& path) {
  write_file(path, format_report_csv(rows));
}

}  // namespace stiefel
