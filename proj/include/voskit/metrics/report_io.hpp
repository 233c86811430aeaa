#pragma once

#include <filesystem>
#include <string>

#include "voskit/core/types.hpp"

namespace voskit::metrics {

// Full-precision JSON dump of a report.
std::string report_to_json(const MetricReport& report);

// Per-track rows "sequence,object,J,F,J&F" with 4-decimal display rounding.
std::string report_to_csv(const MetricReport& report);

void save_report(const std::filesystem::path& json_path, const std::filesystem::path& csv_path,
                 const MetricReport& report);

} // namespace voskit::metrics
