#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shuffle_lab {

using Letter = std::uint16_t;

class Word;

/// A finite, totally ordered alphabet. Letters are the dense indices
/// 0..size()-1 and are ordered by index; the display names only matter
/// for parsing and rendering.
class Alphabet {
public:
    /// Letters named 'a', 'b', 'c', ... Throws std::invalid_argument for
    /// size 0 or more than 26 letters.
    explicit Alphabet(std::size_t size);

    /// Letters named by the characters of `letters`, in increasing order.
    /// Names must be distinct printable non-space characters other than
    /// '*', '+', '-', '^' and digits.
    static Alphabet from_letters(std::string_view letters);

    std::size_t size() const noexcept { return names_.size(); }
    char name(Letter letter) const { return names_.at(letter); }
    const std::string& names() const noexcept { return names_; }
    std::optional<Letter> find(char name) const noexcept;

    bool contains(const Word& w) const noexcept;

    /// Parses "aab". The empty string and "1" parse to the empty word.
    Word parse(std::string_view text) const;
    /// Renders a word; the empty word renders as "1".
    std::string render(const Word& w) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    explicit Alphabet(std::string names) : names_(std::move(names)) {}
    std::string names_;
};

/// An element of the free monoid X*: a finite sequence of letter indices.
/// Comparison is lexicographic with a proper prefix ordered first.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Letter>& letters() const noexcept { return letters_; }

    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    /// Contiguous factor of length `len` starting at `pos`.
    Word subword(std::size_t pos, std::size_t len) const;
    Word suffix(std::size_t pos) const { return subword(pos, size() - pos); }

    void push_back(Letter x) { letters_.push_back(x); }
    Word& operator+=(const Word& rhs);
    friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }

    /// i-fold concatenation power.
    Word power(std::size_t i) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& u, const Word& v) {
        return u.letters_ <=> v.letters_;
    }

private:
    std::vector<Letter> letters_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Lexicographic comparison. Throws std::invalid_argument if either word
/// uses a letter outside `alphabet`.
std::strong_ordering compare_lex(const Alphabet& alphabet, const Word& u, const Word& v);

/// True iff w is nonempty and strictly smaller than each of its proper
/// nonempty suffixes.
bool is_lyndon(const Word& w);

/// All Lyndon words of length exactly s, increasing. Duval's generation.
std::vector<Word> lyndon_words(const Alphabet& alphabet, std::size_t s);

/// X^s in increasing lexicographic order; element i has base-m digits i.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t s);

/// Position of w within all_words(alphabet, w.size()).
std::size_t lex_index(const Alphabet& alphabet, const Word& w);

struct CflFactor {
    Word lyndon;
    std::size_t multiplicity = 0;

    friend bool operator==(const CflFactor&, const CflFactor&) = default;
};

/// w = u_1^{i_1} ... u_k^{i_k} with Lyndon u_1 > ... > u_k.
using CflFactorization = std::vector<CflFactor>;

/// Chen-Fox-Lyndon factorization (Duval). Throws std::invalid_argument for
/// the empty word.
CflFactorization cfl_factorize(const Word& w);

/// Concatenates the factors back into a word.
Word concatenate(const CflFactorization& factors);

}  // namespace shuffle_lab
