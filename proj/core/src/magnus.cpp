#include "shuffle_lab/magnus.hpp"

#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/shuffle_poly.hpp"

namespace shuffle_lab {

namespace {

constexpr std::size_t kMaxRecordedFailures = 5;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<UInt128>(a) * b % m);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t quot = old_r / r;
        old_r -= quot * r;
        std::swap(old_r, r);
        old_s -= quot * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) throw std::domain_error("element is not a unit");
    const auto mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((old_s % mm) + mm) % mm);
}

std::uint64_t reduce(const ExactInt& c, std::uint64_t m) {
    ExactInt r;
    const ExactInt mm(static_cast<unsigned long>(m));
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

void require_compatible(const TruncSeries& f, const TruncSeries& g) {
    if (!(f.alphabet() == g.alphabet()) || f.degree_bound() != g.degree_bound() || f.modulus() != g.modulus()) {
        throw std::invalid_argument("truncated series with different alphabet, degree bound or modulus");
    }
}

void record_failure(TrialReport& report, std::string what) {
    ++report.failure_count;
    if (report.failures.size() < kMaxRecordedFailures) report.failures.push_back(std::move(what));
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupWord

GroupWord::GroupWord(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {
    for (const auto& s : syllables_) {
        if (s.exponent != 1 && s.exponent != -1) throw std::invalid_argument("syllable exponent must be +1 or -1");
    }
}

GroupWord GroupWord::parse(const Alphabet& alphabet, std::string_view text) {
    std::vector<Syllable> out;
    std::size_t i = 0;
    if (text == "1") return GroupWord{};
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Syllable syl;
        if (auto x = alphabet.find(c)) {
            syl.letter = *x;
        } else if (std::isupper(static_cast<unsigned char>(c)) &&
                   alphabet.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))))) {
            syl.letter = *alphabet.find(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            syl.exponent = -1;
        } else {
            throw std::invalid_argument(std::string("group word: '") + c + "' is not a generator of \"" +
                                        alphabet.names() + "\"");
        }
        ++i;
        if (text.substr(i, 3) == "^-1") {
            syl.exponent = -syl.exponent;
            i += 3;
        }
        out.push_back(syl);
    }
    return GroupWord(std::move(out));
}

GroupWord GroupWord::random(std::size_t alphabet_size, std::mt19937_64& rng, std::size_t max_length) {
    std::uniform_int_distribution<std::size_t> length(0, max_length);
    std::uniform_int_distribution<std::size_t> letter(0, alphabet_size - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    const std::size_t n = length(rng);
    std::vector<Syllable> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Syllable s;
        s.letter = static_cast<Letter>(letter(rng));
        s.exponent = sign(rng) ? 1 : -1;
        out.push_back(s);
    }
    return GroupWord(std::move(out));
}

GroupWord GroupWord::inverse() const {
    std::vector<Syllable> out(syllables_.rbegin(), syllables_.rend());
    for (auto& s : out) s.exponent = -s.exponent;
    return GroupWord(std::move(out));
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
    std::vector<Syllable> out = a.syllables_;
    out.insert(out.end(), b.syllables_.begin(), b.syllables_.end());
    return GroupWord(std::move(out));
}

std::string GroupWord::render(const Alphabet& alphabet) const {
    if (syllables_.empty()) return "1";
    std::string out;
    for (const auto& s : syllables_) {
        const char name = alphabet.name(s.letter);
        if (s.exponent > 0) {
            out.push_back(name);
        } else if (std::islower(static_cast<unsigned char>(name))) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(name))));
        } else {
            out.push_back(name);
            out += "^-1";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus)
    : alphabet_(std::move(alphabet)), degree_bound_(degree_bound), modulus_(modulus) {
    if (modulus < 2) throw std::invalid_argument("TruncSeries: modulus must be at least 2");
}

TruncSeries TruncSeries::one(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus) {
    TruncSeries f(std::move(alphabet), degree_bound, modulus);
    f.add_term(Word{}, 1);
    return f;
}

TruncSeries TruncSeries::one_plus_letter(Alphabet alphabet, std::size_t degree_bound, std::uint64_t modulus,
                                         Letter x) {
    TruncSeries f = one(std::move(alphabet), degree_bound, modulus);
    f.add_term(Word{x}, 1);
    return f;
}

Residue TruncSeries::coefficient(const Word& w) const {
    if (w.size() > degree_bound_) {
        throw std::invalid_argument("coefficient of a word longer than the degree bound " +
                                    std::to_string(degree_bound_));
    }
    auto it = coeffs_.find(w);
    return Residue(it == coeffs_.end() ? 0 : it->second, modulus_);
}

void TruncSeries::add_term(const Word& w, std::uint64_t c) {
    if (w.size() > degree_bound_) return;
    if (!alphabet_.contains(w)) throw std::invalid_argument("word uses a letter outside the alphabet");
    c %= modulus_;
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(w, c);
    if (!inserted) {
        it->second = (it->second + c) % modulus_;
        if (it->second == 0) coeffs_.erase(it);
    }
}

TruncSeries TruncSeries::reduce_mod(std::uint64_t modulus) const {
    if (modulus < 2 || modulus_ % modulus != 0) {
        throw std::invalid_argument("reduce_mod: target modulus must divide " + std::to_string(modulus_));
    }
    TruncSeries out(alphabet_, degree_bound_, modulus);
    for (const auto& [w, c] : coeffs_) out.add_term(w, c);
    return out;
}

std::string TruncSeries::render() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : coeffs_) {
        if (!first) out << " + ";
        first = false;
        if (c != 1) out << c << "*";
        out << alphabet_.render(w);
    }
    return out.str();
}

TruncSeries trunc_mul(const TruncSeries& f, const TruncSeries& g) {
    require_compatible(f, g);
    const std::size_t bound = f.degree_bound();
    const std::uint64_t q = f.modulus();
    TruncSeries out(f.alphabet(), bound, q);
    for (const auto& [u, a] : f.coefficients()) {
        for (const auto& [v, b] : g.coefficients()) {
            if (u.size() + v.size() > bound) continue;
            out.add_term(u + v, mulmod(a, b, q));
        }
    }
    return out;
}

TruncSeries trunc_inv(const TruncSeries& f) {
    const std::uint64_t q = f.modulus();
    const std::uint64_t c0 = f.coefficient(Word{}).value();
    std::uint64_t c0_inv = 0;
    try {
        c0_inv = inverse_mod(c0, q);
    } catch (const std::domain_error&) {
        throw std::domain_error("trunc_inv: constant term " + std::to_string(c0) + " is not a unit mod " +
                                std::to_string(q));
    }
    // f = c0 (1 + h) with h in the augmentation ideal, so
    // f^-1 = sum_{i <= D} (-h)^i c0^-1 since h^{D+1} vanishes.
    TruncSeries minus_h(f.alphabet(), f.degree_bound(), q);
    for (const auto& [w, c] : f.coefficients()) {
        if (w.empty()) continue;
        minus_h.add_term(w, q - mulmod(c, c0_inv, q));
    }
    TruncSeries sum = TruncSeries::one(f.alphabet(), f.degree_bound(), q);
    TruncSeries power = sum;
    for (std::size_t i = 1; i <= f.degree_bound(); ++i) {
        power = trunc_mul(power, minus_h);
        if (power.coefficients().empty()) break;
        for (const auto& [w, c] : power.coefficients()) sum.add_term(w, c);
    }
    TruncSeries out(f.alphabet(), f.degree_bound(), q);
    for (const auto& [w, c] : sum.coefficients()) out.add_term(w, mulmod(c, c0_inv, q));
    return out;
}

TruncSeries magnus_eval(const Alphabet& alphabet, const GroupWord& sigma, std::uint64_t modulus,
                        std::size_t degree_bound) {
    std::vector<TruncSeries> forward, backward;
    forward.reserve(alphabet.size());
    backward.reserve(alphabet.size());
    for (std::size_t x = 0; x < alphabet.size(); ++x) {
        forward.push_back(TruncSeries::one_plus_letter(alphabet, degree_bound, modulus, static_cast<Letter>(x)));
        backward.push_back(trunc_inv(forward.back()));
    }
    TruncSeries acc = TruncSeries::one(alphabet, degree_bound, modulus);
    for (const auto& s : sigma.syllables()) {
        if (s.letter >= alphabet.size()) throw std::invalid_argument("group word uses a letter outside the alphabet");
        acc = trunc_mul(acc, s.exponent > 0 ? forward[s.letter] : backward[s.letter]);
    }
    return acc;
}

Residue epsilon(const Alphabet& alphabet, const GroupWord& sigma, const Word& w, std::uint64_t modulus,
                std::size_t degree_bound) {
    if (w.size() > degree_bound) {
        throw std::invalid_argument("epsilon: |w| = " + std::to_string(w.size()) + " exceeds the degree bound " +
                                    std::to_string(degree_bound));
    }
    return magnus_eval(alphabet, sigma, modulus, degree_bound).coefficient(w);
}

UniMatrix rho_from_series(const TruncSeries& image, const Word& w) {
    const std::size_t s = w.size();
    if (s == 0) throw std::invalid_argument("rho: w must be nonempty");
    if (image.degree_bound() < s) throw std::invalid_argument("rho: series truncated below |w|");
    UniMatrix m = UniMatrix::identity(s, image.modulus());
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i + 1; j <= s; ++j) m.set(i, j, image.coefficient(w.subword(i, j - i)).value());
    }
    return m;
}

UniMatrix rho_w(const Alphabet& alphabet, const GroupWord& sigma, const Word& w, std::size_t n, std::uint64_t p) {
    const std::size_t s = w.size();
    if (s < 1 || n < 2 || s > n) throw std::invalid_argument("rho_w: need 1 <= |w| <= n and n >= 2");
    if (!is_prime(p)) throw std::invalid_argument("rho_w: " + std::to_string(p) + " is not prime");
    const std::uint64_t q = ipow(p, static_cast<unsigned>(n - s + 1));
    return rho_from_series(magnus_eval(alphabet, sigma, q, s), w);
}

const char* to_string(ShuffleIdentity kind) noexcept {
    switch (kind) {
        case ShuffleIdentity::naive_shuffle: return "naive_shuffle";
        case ShuffleIdentity::infiltration: return "infiltration";
    }
    return "unknown";
}

namespace {

WordPoly relation_polynomial(const Alphabet& alphabet, const Word& u, const Word& v, ShuffleIdentity kind) {
    return kind == ShuffleIdentity::naive_shuffle ? shuffle_words(alphabet, u, v)
                                                  : infiltration_words(alphabet, u, v);
}

ShuffleRelationSides evaluate_sides(const std::vector<std::pair<Word, std::uint64_t>>& rhs_terms, const Word& u,
                                    const Word& v, const TruncSeries& image) {
    const std::uint64_t q = image.modulus();
    ShuffleRelationSides sides;
    sides.lhs = (image.coefficient(u) * image.coefficient(v)).value();
    std::uint64_t rhs = 0;
    for (const auto& [w, c] : rhs_terms) rhs = (rhs + mulmod(c, image.coefficient(w).value(), q)) % q;
    sides.rhs = rhs;
    return sides;
}

std::vector<std::pair<Word, std::uint64_t>> reduced_terms(const WordPoly& f, std::uint64_t q) {
    std::vector<std::pair<Word, std::uint64_t>> out;
    for (const auto& [w, c] : f.terms()) out.emplace_back(w, reduce(c, q));
    return out;
}

}  // namespace

ShuffleRelationSides shuffle_relation_sides(const Alphabet& alphabet, const Word& u, const Word& v,
                                            const TruncSeries& image, ShuffleIdentity kind) {
    if (u.empty() || v.empty()) throw std::invalid_argument("shuffle relation: u and v must be nonempty");
    if (image.degree_bound() < u.size() + v.size()) {
        throw std::invalid_argument("shuffle relation: series truncated below |u| + |v|");
    }
    const auto terms = reduced_terms(relation_polynomial(alphabet, u, v, kind), image.modulus());
    return evaluate_sides(terms, u, v, image);
}

bool check_shuffle_relation(const Alphabet& alphabet, const Word& u, const Word& v, const GroupWord& sigma,
                            std::uint64_t modulus, ShuffleIdentity kind) {
    const auto image = magnus_eval(alphabet, sigma, modulus, u.size() + v.size());
    return shuffle_relation_sides(alphabet, u, v, image, kind).holds();
}

TrialReport check_magnus_homomorphism(const Alphabet& alphabet, std::uint64_t modulus, std::size_t degree_bound,
                                      std::size_t trials, std::uint64_t seed) {
    TrialReport report{"magnus_homomorphism", trials, seed, {}, 0};
    std::mt19937_64 rng(seed);
    const auto unit = TruncSeries::one(alphabet, degree_bound, modulus);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto sigma = GroupWord::random(alphabet.size(), rng);
        const auto tau = GroupWord::random(alphabet.size(), rng);
        const auto fs = magnus_eval(alphabet, sigma, modulus, degree_bound);
        const auto ft = magnus_eval(alphabet, tau, modulus, degree_bound);
        if (!(magnus_eval(alphabet, sigma * tau, modulus, degree_bound) == trunc_mul(fs, ft))) {
            record_failure(report, "product: sigma=" + sigma.render(alphabet) + " tau=" + tau.render(alphabet));
        }
        const auto inv = magnus_eval(alphabet, sigma.inverse(), modulus, degree_bound);
        if (!(inv == trunc_inv(fs)) || !(trunc_mul(fs, inv) == unit) || !(trunc_mul(inv, fs) == unit)) {
            record_failure(report, "inverse: sigma=" + sigma.render(alphabet));
        }
        if (fs.coefficient(Word{}).value() != 1) {
            record_failure(report, "constant term: sigma=" + sigma.render(alphabet));
        }
    }
    return report;
}

TrialReport check_rho_homomorphism(const Alphabet& alphabet, const Word& w, std::size_t n, std::uint64_t p,
                                   std::size_t trials, std::uint64_t seed) {
    TrialReport report{"rho_homomorphism", trials, seed, {}, 0};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto sigma = GroupWord::random(alphabet.size(), rng);
        const auto tau = GroupWord::random(alphabet.size(), rng);
        const auto lhs = rho_w(alphabet, sigma * tau, w, n, p);
        const auto rhs = uni_mul(rho_w(alphabet, sigma, w, n, p), rho_w(alphabet, tau, w, n, p));
        if (!(lhs == rhs)) {
            record_failure(report, "w=" + alphabet.render(w) + " sigma=" + sigma.render(alphabet) +
                                       " tau=" + tau.render(alphabet));
        }
    }
    return report;
}

TrialReport check_functoriality(const Alphabet& alphabet, std::uint64_t p, unsigned a, unsigned b,
                                std::size_t degree_bound, std::size_t trials, std::uint64_t seed) {
    if (b == 0 || b >= a) throw std::invalid_argument("check_functoriality: need 1 <= b < a");
    TrialReport report{"functoriality", trials, seed, {}, 0};
    const std::uint64_t big = ipow(p, a);
    const std::uint64_t small = ipow(p, b);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto sigma = GroupWord::random(alphabet.size(), rng);
        if (!(magnus_eval(alphabet, sigma, big, degree_bound).reduce_mod(small) ==
              magnus_eval(alphabet, sigma, small, degree_bound))) {
            record_failure(report, "sigma=" + sigma.render(alphabet));
        }
    }
    return report;
}

TrialReport check_shuffle_relations(const Alphabet& alphabet, std::size_t max_total, std::uint64_t modulus,
                                    std::size_t trials, std::uint64_t seed, ShuffleIdentity kind) {
    TrialReport report{std::string("shuffle_relation/") + to_string(kind), trials, seed, {}, 0};
    std::mt19937_64 rng(seed);
    std::vector<GroupWord> sigmas;
    std::vector<TruncSeries> images;
    sigmas.reserve(trials);
    images.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        sigmas.push_back(GroupWord::random(alphabet.size(), rng));
        images.push_back(magnus_eval(alphabet, sigmas.back(), modulus, max_total));
    }
    for (std::size_t total = 2; total <= max_total; ++total) {
        for (std::size_t a = 1; a < total; ++a) {
            for (const auto& u : all_words(alphabet, a)) {
                for (const auto& v : all_words(alphabet, total - a)) {
                    const auto terms = reduced_terms(relation_polynomial(alphabet, u, v, kind), modulus);
                    for (std::size_t t = 0; t < trials; ++t) {
                        const auto sides = evaluate_sides(terms, u, v, images[t]);
                        if (!sides.holds()) {
                            record_failure(report, "u=" + alphabet.render(u) + " v=" + alphabet.render(v) +
                                                       " sigma=" + sigmas[t].render(alphabet) +
                                                       " lhs=" + std::to_string(sides.lhs) +
                                                       " rhs=" + std::to_string(sides.rhs));
                        }
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace shuffle_lab
