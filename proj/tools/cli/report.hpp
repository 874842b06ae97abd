#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace shuffle_lab::cli {

using Json = nlohmann::ordered_json;

/// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInvalid = 2;

struct Outcome {
    Json report;
    bool pass = true;
    int exit_code() const noexcept { return pass ? kExitPass : kExitFail; }
};

/// Indented "key: value" rendering of a report.
void write_text(std::ostream& out, const Json& report);

}  // namespace shuffle_lab::cli
