#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle_lab/unipotent.hpp"
#include "shuffle_lab/words.hpp"

namespace shuffle_lab {

struct Syllable {
    Letter letter = 0;
    int exponent = 1;  // +1 or -1

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A word in the generators of the free group and their inverses. Words
/// are never freely reduced.
class GroupWord {
public:
    GroupWord() = default;
    explicit GroupWord(std::vector<Syllable> syllables);

    /// "abA" or "ab a^-1": an uppercase letter (or a trailing "^-1") is the
    /// inverse generator. "" and "1" are the identity.
    static GroupWord parse(const Alphabet& alphabet, std::string_view text);
    /// Uniform syllable count in [0, max_length], uniform letters and signs.
    static GroupWord random(std::size_t alphabet_size, std::mt19937_64& rng, std::size_t max_length = 20);

    const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
    std::size_t size() const noexcept { return syllables_.size(); }
    bool empty() const noexcept { return syllables_.empty(); }

    GroupWord inverse() const;
    friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
    friend bool operator==(const GroupWord&, const GroupWord&) = default;

    /// Inverse letters render uppercase when the name is a lowercase
    /// letter, and as "x^-1" otherwise.
    std::string render(const Alphabet& alphabet) const;

private:
    std::vector<Syllable> syllables_;
};

/// Element of (Z/q)<<X>> modulo all words longer than the degree bound.
/// Only nonzero coefficients are stored.
class TruncSeries {
public:
    using Coefficients = std::map<Word, std::uint64_t>;

    TruncSeries(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus);

    static TruncSeries one(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus);
    /// 1 + x.
    static TruncSeries one_plus_letter(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus, Letter x);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t degree_bound() const noexcept { return degree_bound_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const Coefficients& coefficients() const noexcept { return coeffs_; }

    /// Coefficient of w. Throws std::invalid_argument if |w| exceeds the bound.
    Residue coefficient(const Word& w) const;
    /// Adds c * w (reduced); words beyond the bound are dropped.
    void add_term(const Word& w, std::uint64_t c);

    /// Coefficientwise reduction to a modulus dividing the current one.
    TruncSeries reduce_mod(std::uint64_t modulus) const;

    std::string render() const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

private:
    Alphabet alphabet_;
    std::size_t degree_bound_;
    std::uint64_t modulus_;
    Coefficients coeffs_;
};

/// Concatenation product, discarding words longer than the bound.
TruncSeries trunc_mul(const TruncSeries& f, const TruncSeries& g);

/// Multiplicative inverse; throws std::domain_error if the constant term
/// is not a unit mod q.
TruncSeries trunc_inv(const TruncSeries& f);

/// The Magnus image of sigma: product of 1 + x (or its inverse) over the
/// syllables, truncated at degree_bound.
TruncSeries magnus_eval(const Alphabet& alphabet, const GroupWord& sigma, std::uint64_t modulus,
                        std::size_t degree_bound);

/// Coefficient of w in magnus_eval(sigma, modulus, degree_bound).
Residue epsilon(const Alphabet& alphabet, const GroupWord& sigma, const Word& w, std::uint64_t modulus,
                std::size_t degree_bound);

/// The (s+1) x (s+1) unitriangular matrix over Z/p^(n-s+1) whose (i, j)
/// entry is the Magnus coefficient of the subword w[i..j). Needs
/// 1 <= s = |w| <= n and n >= 2.
UniMatrix rho_w(const Alphabet& alphabet, const GroupWord& sigma, const Word& w, std::size_t n, std::uint64_t p);

/// Same matrix read off an already computed Magnus image.
UniMatrix rho_from_series(const TruncSeries& image, const Word& w);

/// Which product of coefficient functionals is asserted.
enum class ShuffleIdentity {
    /// eps_u eps_v = sum_w (u ⧢ v)_w eps_w. Fails for the 1 + x expansion.
    naive_shuffle,
    /// eps_u eps_v = sum_w (u ↑ v)_w eps_w over all lengths; its top-degree
    /// part is the shuffle product, the lower terms come from merged letters.
    infiltration,
};

const char* to_string(ShuffleIdentity kind) noexcept;

/// Both sides of the chosen identity at sigma over Z/modulus.
struct ShuffleRelationSides {
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    bool holds() const noexcept { return lhs == rhs; }
};

ShuffleRelationSides shuffle_relation_sides(const Alphabet& alphabet, const Word& u, const Word& v,
                                            const TruncSeries& image, ShuffleIdentity kind);

/// Evaluates at magnus_eval(sigma, modulus, |u| + |v|). Defaults to the
/// calibrated (infiltration) form.
bool check_shuffle_relation(const Alphabet& alphabet, const Word& u, const Word& v, const GroupWord& sigma,
                            std::uint64_t modulus, ShuffleIdentity kind = ShuffleIdentity::infiltration);

struct TrialReport {
    std::string check;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> failures;  // first few counterexamples
    std::size_t failure_count = 0;
    bool pass() const noexcept { return failure_count == 0; }
};

/// magnus_eval(sigma tau) = magnus_eval(sigma) magnus_eval(tau) and
/// magnus_eval(sigma^-1) = magnus_eval(sigma)^-1 on random words.
TrialReport check_magnus_homomorphism(const Alphabet& alphabet, std::uint64_t modulus, std::size_t degree_bound,
                                      std::size_t trials, std::uint64_t seed);

/// rho_w(sigma tau) = rho_w(sigma) rho_w(tau) on random words.
TrialReport check_rho_homomorphism(const Alphabet& alphabet, const Word& w, std::size_t n, std::uint64_t p,
                                   std::size_t trials, std::uint64_t seed);

/// magnus_eval(sigma, p^a) reduced mod p^b equals magnus_eval(sigma, p^b).
TrialReport check_functoriality(const Alphabet& alphabet, std::uint64_t p, unsigned a, unsigned b,
                                std::size_t degree_bound, std::size_t trials, std::uint64_t seed);

/// The chosen identity for every pair of nonempty u, v with |u| + |v| <=
/// max_total, each against `trials` random sigma.
TrialReport check_shuffle_relations(const Alphabet& alphabet, std::size_t max_total, std::uint64_t modulus,
                                    std::size_t trials, std::uint64_t seed,
                                    ShuffleIdentity kind = ShuffleIdentity::infiltration);

}  // namespace shuffle_lab
