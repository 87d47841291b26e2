#pragma once

#include <string>

#include "cheese/geometry.hpp"

namespace cheese::tools {

/// Complex literal parser for command lines: "0", "i", "-i", "2i", "1+2i",
/// "1e-3-2.5e+2i". Throws IoError on anything else.
Complex parse_complex(const std::string& text);

/// Entry point shared by the binary and the tests. Exit codes: 0 success,
/// 1 usage or file trouble, 2 domain/budget violation, 3 resource cap,
/// 4 failed checks or exhausted search, 5 only the derivation-bound rows
/// failed (sup norms are lower estimates, so that outcome is inconclusive).
int run_cli(int argc, const char* const* argv);

} // namespace cheese::tools
