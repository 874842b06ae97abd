#include "shuffle_lab/shuffle_poly.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace shuffle_lab {

WordPoly::WordPoly(Alphabet alphabet, const Word& w, ExactInt coeff) : alphabet_(std::move(alphabet)) {
    add_term(w, coeff);
}

ExactInt WordPoly::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? ExactInt(0) : it->second;
}

void WordPoly::add_term(const Word& w, const ExactInt& c) {
    if (c == 0) return;
    if (!alphabet_.contains(w)) throw std::invalid_argument("word uses a letter outside the alphabet");
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<std::size_t> WordPoly::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::size_t d = terms_.begin()->first.size();
    for (const auto& [w, c] : terms_) {
        if (w.size() != d) return std::nullopt;
    }
    return d;
}

std::string WordPoly::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        ExactInt mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        first = false;
        if (mag != 1) {
            out += mag.get_str();
            out += "*";
        }
        out += alphabet_.render(w);
    }
    return out;
}

WordPoly WordPoly::parse(const Alphabet& alphabet, std::string_view text) {
    WordPoly out(alphabet);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) -> WordPoly {
        throw std::invalid_argument("cannot parse polynomial \"" + std::string(text) + "\": " + why);
    };

    skip_ws();
    if (i == text.size()) return WordPoly::one(alphabet);
    if (text.substr(i) == "0") return out;

    bool expect_term = true;
    int sign = 1;
    while (true) {
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i == text.size()) return fail("dangling sign");

        ExactInt coeff = 1;
        bool has_number = false;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) {
            has_number = true;
            coeff = ExactInt(std::string(text.substr(start, i - start)));
            skip_ws();
        }
        Word w;
        if (has_number && i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
            start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '+' &&
                   text[i] != '-') {
                ++i;
            }
            if (i == start) return fail("missing word after '*'");
            w = alphabet.parse(text.substr(start, i - start));
        } else if (!has_number) {
            start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '+' &&
                   text[i] != '-') {
                ++i;
            }
            if (i == start) return fail("expected a term");
            w = alphabet.parse(text.substr(start, i - start));
        }
        // A bare integer is a multiple of the empty word.
        out.add_term(w, sign < 0 ? ExactInt(-coeff) : coeff);
        expect_term = false;
        sign = 1;

        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '+' && text[i] != '-') return fail("expected '+' or '-'");
        expect_term = true;
    }
    if (expect_term) return fail("trailing operator");
    return out;
}

void WordPoly::require_same_alphabet(const WordPoly& rhs) const {
    if (!(alphabet_ == rhs.alphabet_)) throw std::invalid_argument("polynomials over different alphabets");
}

WordPoly& WordPoly::operator+=(const WordPoly& rhs) {
    require_same_alphabet(rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, c);
    return *this;
}

WordPoly& WordPoly::operator-=(const WordPoly& rhs) {
    require_same_alphabet(rhs);
    for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
    return *this;
}

WordPoly& WordPoly::operator*=(const ExactInt& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

namespace {

using Table = std::vector<std::vector<WordPoly::Terms>>;

void accumulate(WordPoly::Terms& into, const WordPoly::Terms& from, Letter append) {
    for (const auto& [w, c] : from) {
        Word ext = w;
        ext.push_back(append);
        auto [it, inserted] = into.try_emplace(std::move(ext), c);
        if (!inserted) it->second += c;
    }
}

// Prefix-merge table: cell (i, j) holds the product of u[0..i) and v[0..j).
// With `infiltrate` set, equal last letters may also be merged.
WordPoly::Terms merge_words(const Word& u, const Word& v, bool infiltrate) {
    const std::size_t r = u.size();
    const std::size_t t = v.size();
    Table table(r + 1, std::vector<WordPoly::Terms>(t + 1));
    table[0][0].emplace(Word{}, 1);
    for (std::size_t i = 0; i <= r; ++i) {
        for (std::size_t j = 0; j <= t; ++j) {
            if (i == 0 && j == 0) continue;
            auto& cell = table[i][j];
            if (i > 0) accumulate(cell, table[i - 1][j], u[i - 1]);
            if (j > 0) accumulate(cell, table[i][j - 1], v[j - 1]);
            if (infiltrate && i > 0 && j > 0 && u[i - 1] == v[j - 1]) {
                accumulate(cell, table[i - 1][j - 1], u[i - 1]);
            }
        }
        // Row i - 1 is no longer needed.
        if (i > 0) table[i - 1].clear();
    }
    return std::move(table[r][t]);
}

template <typename WordProduct>
WordPoly bilinear(const WordPoly& f, const WordPoly& g, WordProduct&& product) {
    if (!(f.alphabet() == g.alphabet())) throw std::invalid_argument("polynomials over different alphabets");
    WordPoly out(f.alphabet());
    for (const auto& [u, a] : f.terms()) {
        for (const auto& [v, b] : g.terms()) {
            const ExactInt ab = a * b;
            for (const auto& [w, c] : product(u, v)) out.add_term(w, c * ab);
        }
    }
    return out;
}

}  // namespace

WordPoly shuffle_words(const Alphabet& alphabet, const Word& u, const Word& v) {
    WordPoly out(alphabet);
    for (const auto& [w, c] : merge_words(u, v, false)) out.add_term(w, c);
    return out;
}

WordPoly shuffle(const WordPoly& f, const WordPoly& g) {
    return bilinear(f, g, [](const Word& u, const Word& v) { return merge_words(u, v, false); });
}

WordPoly concat_mul(const WordPoly& f, const WordPoly& g) {
    return bilinear(f, g, [](const Word& u, const Word& v) {
        WordPoly::Terms single;
        single.emplace(u + v, 1);
        return single;
    });
}

WordPoly infiltration_words(const Alphabet& alphabet, const Word& u, const Word& v) {
    WordPoly out(alphabet);
    for (const auto& [w, c] : merge_words(u, v, true)) out.add_term(w, c);
    return out;
}

WordPoly infiltration(const WordPoly& f, const WordPoly& g) {
    return bilinear(f, g, [](const Word& u, const Word& v) { return merge_words(u, v, true); });
}

WordPoly shuffle_power(const Alphabet& alphabet, const Word& u, std::size_t i) {
    if (i == 0) throw std::invalid_argument("shuffle_power: exponent must be positive");
    const WordPoly base(alphabet, u);
    WordPoly acc = base;
    for (std::size_t k = 1; k < i; ++k) acc = shuffle(acc, base);
    return acc;
}

WordPoly radford_Q(const Alphabet& alphabet, const Word& w) {
    if (w.empty()) throw std::invalid_argument("radford_Q: empty word");
    if (!alphabet.contains(w)) throw std::invalid_argument("radford_Q: word uses a letter outside the alphabet");
    WordPoly acc = WordPoly::one(alphabet);
    ExactInt denominator = 1;
    for (const auto& [lyndon, mult] : cfl_factorize(w)) {
        acc = shuffle(acc, shuffle_power(alphabet, lyndon, mult));
        ExactInt fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(mult));
        denominator *= fact;
    }
    if (denominator == 1) return acc;
    WordPoly out(alphabet);
    for (const auto& [v, c] : acc.terms()) {
        if (!mpz_divisible_p(c.get_mpz_t(), denominator.get_mpz_t())) {
            throw std::logic_error("radford_Q: coefficient of " + alphabet.render(v) +
                                   " not divisible by factorial denominator");
        }
        ExactInt q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), denominator.get_mpz_t());
        out.add_term(v, q);
    }
    return out;
}

}  // namespace shuffle_lab
