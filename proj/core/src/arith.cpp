#include "shuffle_lab/arith.hpp"

#include <stdexcept>
#include <string>

namespace shuffle_lab {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept {
    if (q < 2) return std::nullopt;
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    unsigned k = 0;
    while (q % p == 0) {
        q /= p;
        ++k;
    }
    if (q != 1) return std::nullopt;
    return PrimePower{p, k};
}

bool is_power_of(std::uint64_t n, std::uint64_t p) noexcept {
    if (n == 0 || p < 2) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

std::uint64_t ipow(std::uint64_t p, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, p, &r)) throw std::overflow_error("ipow: 64-bit overflow");
    }
    return r;
}

unsigned floor_log(std::uint64_t t, std::uint64_t p) {
    if (t == 0 || p < 2) throw std::invalid_argument("floor_log: need t >= 1 and p >= 2");
    unsigned e = 0;
    while (t >= p) {
        t /= p;
        ++e;
    }
    return e;
}

unsigned p_adic_valuation(const ExactInt& n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("p_adic_valuation: valuation of 0 is infinite");
    if (!is_prime(p)) throw std::invalid_argument("p_adic_valuation: " + std::to_string(p) + " is not prime");
    ExactInt r = abs(n);
    const ExactInt pp(static_cast<unsigned long>(p));
    unsigned e = 0;
    while (mpz_divisible_p(r.get_mpz_t(), pp.get_mpz_t())) {
        r /= pp;
        ++e;
    }
    return e;
}

ExactInt binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    if (kk > n - kk) kk = n - kk;
    // Each partial product C(n, i) is an integer, so the division is exact.
    ExactInt c = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        c *= static_cast<unsigned long>(n - kk + i);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return c;
}

int moebius(std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("moebius: argument must be positive");
    int sign = 1;
    for (std::uint64_t f = 2; f * f <= d; ++f) {
        if (d % f != 0) continue;
        d /= f;
        if (d % f == 0) return 0;
        sign = -sign;
    }
    if (d > 1) sign = -sign;
    return sign;
}

ExactInt necklace_phi(std::uint64_t s, std::uint64_t m) {
    if (s == 0) throw std::invalid_argument("necklace_phi: s must be positive");
    ExactInt sum = 0;
    for (std::uint64_t d = 1; d <= s; ++d) {
        if (s % d != 0) continue;
        const int mu = moebius(d);
        if (mu == 0) continue;
        ExactInt term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(s / d));
        if (mu > 0) sum += term; else sum -= term;
    }
    const ExactInt ss(static_cast<unsigned long>(s));
    if (!mpz_divisible_p(sum.get_mpz_t(), ss.get_mpz_t())) {
        throw std::logic_error("necklace_phi: Möbius sum not divisible by s");
    }
    mpz_divexact(sum.get_mpz_t(), sum.get_mpz_t(), ss.get_mpz_t());
    return sum;
}

std::optional<ExactInt> necklace_phi(std::uint64_t s, std::optional<std::uint64_t> m) {
    if (s == 0) throw std::invalid_argument("necklace_phi: s must be positive");
    if (!m) return std::nullopt;
    return necklace_phi(s, *m);
}

ExactInt h_gcd(std::uint64_t s) {
    if (s < 2) throw std::invalid_argument("h_gcd: s must be at least 2");
    ExactInt g = 0;
    for (std::uint64_t i = 1; i < s; ++i) {
        g = gcd(g, binomial(s, static_cast<std::int64_t>(i)));
        if (g == 1) break;
    }
    return g;
}

}  // namespace shuffle_lab
