#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qcoh/repro.hpp"

namespace qcoh::cli {

/// Exit codes: 0 success, 1 input or validation error, 2 reproduction failure.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kReproFailure = 2;

/// Prints checks as a table (or JSON) and maps them to kOk / kReproFailure.
int report_reproduction(const std::vector<repro::ReproCheck>& checks, bool as_json,
                        std::ostream& out);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcoh::cli
