#pragma once

#include <string>
#include <vector>

#include "cheese/verify.hpp"
#include "config_io.hpp"

namespace cheese::tools {

struct ReportFile {
    std::string suite;
    std::string params;
    std::vector<CertReport> rows;

    [[nodiscard]] int failures() const;
};

/// Text format "swisscheese-report 1": one "check" line per row with hex
/// measured/bound/margin and quoted free-text fields, then a summary line.
std::string format_report(const ReportFile& r);
ReportFile parse_report(const std::string& text);

void write_report(const ReportFile& r, const std::string& path);
ReportFile read_report(const std::string& path);

} // namespace cheese::tools
