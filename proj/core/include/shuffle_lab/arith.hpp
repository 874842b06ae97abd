#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

namespace shuffle_lab {

/// Unbounded exact integer. Every coefficient and binomial in the library
/// is carried in this type.
using ExactInt = mpz_class;

/// Trial division; inputs are small.
bool is_prime(std::uint64_t n) noexcept;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
};

/// Decomposes q = p^k with k >= 1, or nullopt if q is not a prime power.
std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept;

/// True iff n = p^j for some j >= 0 (1 counts as p^0).
bool is_power_of(std::uint64_t n, std::uint64_t p) noexcept;

/// p^e, throwing std::overflow_error on 64-bit overflow.
std::uint64_t ipow(std::uint64_t p, unsigned e);

/// floor(log_p(t)) for t >= 1, p >= 2.
unsigned floor_log(std::uint64_t t, std::uint64_t p);

/// Largest e with p^e | n. Throws std::domain_error for n = 0 and
/// std::invalid_argument when p is not prime.
unsigned p_adic_valuation(const ExactInt& n, std::uint64_t p);

/// C(n, k); zero outside 0 <= k <= n.
ExactInt binomial(std::uint64_t n, std::int64_t k);

/// Möbius function.
int moebius(std::uint64_t d);

/// Witt's necklace count (1/s) sum_{d|s} mu(d) m^{s/d}. The division is
/// checked to be exact.
ExactInt necklace_phi(std::uint64_t s, std::uint64_t m);

/// As above with nullopt standing for an infinite alphabet, which maps to
/// an infinite count.
std::optional<ExactInt> necklace_phi(std::uint64_t s, std::optional<std::uint64_t> m);

/// gcd{ C(s, i) : 1 <= i <= s-1 } for s >= 2.
ExactInt h_gcd(std::uint64_t s);

}  // namespace shuffle_lab
