#include "shuffle_lab/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace shuffle_lab {

namespace {

bool reserved_name(char c) {
    return c == '*' || c == '+' || c == '-' || c == '^' || c == ' ' || (c >= '0' && c <= '9') ||
           c < 0x21 || c > 0x7e;
}

}  // namespace

Alphabet::Alphabet(std::size_t size) {
    if (size == 0 || size > 26) {
        throw std::invalid_argument("alphabet size must be in [1, 26]");
    }
    for (std::size_t i = 0; i < size; ++i) {
        names_.push_back(static_cast<char>('a' + i));
    }
}

Alphabet Alphabet::from_letters(std::string_view letters) {
    if (letters.empty()) {
        throw std::invalid_argument("alphabet must have at least one letter");
    }
    std::string names(letters);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (reserved_name(names[i])) {
            throw std::invalid_argument(std::string("invalid letter name '") + names[i] + "'");
        }
        if (names.find(names[i], i + 1) != std::string::npos) {
            throw std::invalid_argument(std::string("duplicate letter '") + names[i] + "'");
        }
    }
    return Alphabet(std::move(names));
}

std::optional<Letter> Alphabet::find(char name) const noexcept {
    auto pos = names_.find(name);
    if (pos == std::string::npos) return std::nullopt;
    return static_cast<Letter>(pos);
}

bool Alphabet::contains(const Word& w) const noexcept {
    return std::all_of(w.begin(), w.end(), [&](Letter x) { return x < size(); });
}

Word Alphabet::parse(std::string_view text) const {
    if (text == "1") return Word{};
    Word w;
    for (char c : text) {
        auto x = find(c);
        if (!x) {
            throw std::invalid_argument(std::string("letter '") + c + "' not in alphabet \"" + names_ +
                                        "\"");
        }
        w.push_back(*x);
    }
    return w;
}

std::string Alphabet::render(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    out.reserve(w.size());
    for (Letter x : w) out.push_back(name(x));
    return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    if (pos + len > letters_.size()) throw std::out_of_range("subword out of range");
    return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word& Word::operator+=(const Word& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
}

Word Word::power(std::size_t i) const {
    Word out;
    out.letters_.reserve(letters_.size() * i);
    for (std::size_t k = 0; k < i; ++k) out += *this;
    return out;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter x : w) {
        h ^= static_cast<std::size_t>(x) + 1;
        h *= 0x100000001b3ULL;
    }
    return h ^ w.size();
}

std::strong_ordering compare_lex(const Alphabet& alphabet, const Word& u, const Word& v) {
    if (!alphabet.contains(u) || !alphabet.contains(v)) {
        throw std::invalid_argument("compare_lex: word uses a letter outside the alphabet");
    }
    return u <=> v;
}

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (!(w < w.suffix(i))) return false;
    }
    return true;
}

std::vector<Word> lyndon_words(const Alphabet& alphabet, std::size_t s) {
    if (s == 0) throw std::invalid_argument("lyndon_words: length must be positive");
    const auto m = static_cast<Letter>(alphabet.size());
    std::vector<Word> out;
    // Duval: visits every Lyndon word of length <= s in lexicographic order.
    std::vector<Letter> w{0};
    while (!w.empty()) {
        if (w.size() == s) out.emplace_back(w);
        const std::size_t n = w.size();
        while (w.size() < s) w.push_back(w[w.size() - n]);
        while (!w.empty() && w.back() == m - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t s) {
    const std::size_t m = alphabet.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < s; ++i) count *= m;
    std::vector<Word> out;
    out.reserve(count);
    std::vector<Letter> digits(s, 0);
    for (std::size_t k = 0; k < count; ++k) {
        out.emplace_back(digits);
        for (std::size_t i = s; i-- > 0;) {
            if (++digits[i] < m) break;
            digits[i] = 0;
        }
    }
    return out;
}

std::size_t lex_index(const Alphabet& alphabet, const Word& w) {
    std::size_t index = 0;
    for (Letter x : w) {
        if (x >= alphabet.size()) throw std::invalid_argument("lex_index: letter outside alphabet");
        index = index * alphabet.size() + x;
    }
    return index;
}

CflFactorization cfl_factorize(const Word& w) {
    if (w.empty()) throw std::invalid_argument("cfl_factorize: empty word");
    CflFactorization out;
    const std::size_t n = w.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        std::size_t k = i;
        while (j < n && w[k] <= w[j]) {
            k = (w[k] < w[j]) ? i : k + 1;
            ++j;
        }
        const std::size_t period = j - k;
        Word factor = w.subword(i, period);
        std::size_t reps = 0;
        while (i <= k) {
            i += period;
            ++reps;
        }
        if (!out.empty() && out.back().lyndon == factor) {
            out.back().multiplicity += reps;
        } else {
            out.push_back({std::move(factor), reps});
        }
    }
    return out;
}

Word concatenate(const CflFactorization& factors) {
    Word out;
    for (const auto& f : factors) out += f.lyndon.power(f.multiplicity);
    return out;
}

}  // namespace shuffle_lab
