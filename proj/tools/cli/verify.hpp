#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "cli/report.hpp"

namespace shuffle_lab::cli {

struct VerifyOptions {
    std::string profile = "quick";  // quick | full
    std::uint64_t seed = 12345;
    std::optional<std::size_t> cap;     // group order bound; profile default otherwise
    std::optional<std::size_t> trials;  // per configuration; profile default otherwise
};

/// Runs the ten acceptance criteria; pass iff all do.
Outcome cmd_verify(const VerifyOptions& options);

}  // namespace shuffle_lab::cli
