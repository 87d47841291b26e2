#pragma once

#include <stdexcept>
#include <string>

#include "cheese/construction.hpp"

namespace cheese::tools {

/// File access or format trouble: unreadable path, bad header, short file.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Line-oriented text format "swisscheese-config 1". Doubles are written as
/// hex floats and rationals as p/q, so a write/parse cycle is exact and two
/// equal configurations always serialize to identical bytes.
std::string format_config(const CheeseConfig& cfg);
CheeseConfig parse_config(const std::string& text);

void write_config(const CheeseConfig& cfg, const std::string& path);
CheeseConfig read_config(const std::string& path);

/// Hex-float formatting used across the persisted formats.
std::string hexf(double v);
double parse_hexf(const std::string& token);

} // namespace cheese::tools
