#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/words.hpp"

namespace shuffle_lab {

/// A finitely supported integer combination of words, i.e. an element of
/// Z<X>. Terms iterate in lexicographic word order and no zero
/// coefficient is ever stored.
class WordPoly {
public:
    using Terms = std::map<Word, ExactInt>;

    explicit WordPoly(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    WordPoly(Alphabet alphabet, const Word& w, ExactInt coeff = 1);

    /// The unit: the empty word with coefficient one.
    static WordPoly one(Alphabet alphabet) { return WordPoly(std::move(alphabet), Word{}); }

    /// Parses the rendering syntax: "2*aab + aba", "-ab + 3*1", "0".
    static WordPoly parse(const Alphabet& alphabet, std::string_view text);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// f_w; zero when w is not in the support.
    ExactInt coefficient(const Word& w) const;

    /// Adds c*w, dropping the term if it cancels.
    void add_term(const Word& w, const ExactInt& c);

    /// Degree of a homogeneous polynomial, nullopt if zero or mixed.
    std::optional<std::size_t> homogeneous_degree() const;

    /// "2*aab + aba"; "0" for the zero polynomial.
    std::string render() const;

    WordPoly& operator+=(const WordPoly& rhs);
    WordPoly& operator-=(const WordPoly& rhs);
    WordPoly& operator*=(const ExactInt& c);
    friend WordPoly operator+(WordPoly a, const WordPoly& b) { return a += b; }
    friend WordPoly operator-(WordPoly a, const WordPoly& b) { return a -= b; }
    friend WordPoly operator*(WordPoly a, const ExactInt& c) { return a *= c; }

    friend bool operator==(const WordPoly&, const WordPoly&) = default;

private:
    void require_same_alphabet(const WordPoly& rhs) const;

    Alphabet alphabet_;
    Terms terms_;
};

/// Coefficient of w in f.
inline ExactInt coefficient(const WordPoly& f, const Word& w) { return f.coefficient(w); }

/// Shuffle of two words, u ⧢ v, as a polynomial over `alphabet`.
WordPoly shuffle_words(const Alphabet& alphabet, const Word& u, const Word& v);

/// Bilinear shuffle product.
WordPoly shuffle(const WordPoly& f, const WordPoly& g);

/// Bilinear concatenation product.
WordPoly concat_mul(const WordPoly& f, const WordPoly& g);

/// u ⧢ u ⧢ ... ⧢ u (i copies), i >= 1.
WordPoly shuffle_power(const Alphabet& alphabet, const Word& u, std::size_t i);

/// Infiltration product u ↑ v: like the shuffle, but letters of u and v
/// that coincide may also be merged into a single position.
WordPoly infiltration_words(const Alphabet& alphabet, const Word& u, const Word& v);

/// Bilinear infiltration product.
WordPoly infiltration(const WordPoly& f, const WordPoly& g);

/// Radford's polynomial Q_w = u_1^{⧢i_1} ⧢ ... ⧢ u_k^{⧢i_k} / (i_1! ... i_k!)
/// for the CFL factorization of w. Division by the factorials is exact
/// and is checked coefficient by coefficient.
WordPoly radford_Q(const Alphabet& alphabet, const Word& w);

}  // namespace shuffle_lab
