#pragma once

#include "spectral/bounds.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spectral::cli {

enum ExitCode { kOk = 0, kUnexpected = 1, kUsage = 2 };

nlohmann::ordered_json report_to_json(const ScanReport& rep);

// Runs one command line; output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral::cli
