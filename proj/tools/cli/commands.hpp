#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "cli/report.hpp"
#include "shuffle_lab/unipotent.hpp"
#include "shuffle_lab/words.hpp"

namespace shuffle_lab::cli {

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// "3" is the alphabet {a, b, c}; anything else lists the letters.
Alphabet parse_alphabet(const std::string& spec);

Outcome cmd_lyndon(const Alphabet& alphabet, std::size_t s);

Outcome cmd_shuffle(const Alphabet& alphabet, const std::string& f, const std::string& g);

Outcome cmd_indec(const Alphabet& alphabet, std::size_t s, std::uint64_t p, bool snf);

Outcome cmd_unipotent(std::size_t n, std::size_t s, std::uint64_t p, std::size_t cap);

/// Exhaustive when |U_s(Z/q)| fits under the cap, sampled otherwise.
Outcome cmd_exponent(std::size_t s, std::uint64_t q, std::size_t trials, std::uint64_t seed, std::size_t cap);

Outcome cmd_magnus(const Alphabet& alphabet, const std::string& sigma, const std::string& w, std::size_t n,
                   std::uint64_t p);

}  // namespace shuffle_lab::cli
