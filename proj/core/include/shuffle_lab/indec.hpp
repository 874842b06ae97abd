#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/shuffle_poly.hpp"
#include "shuffle_lab/words.hpp"

namespace shuffle_lab {

/// Dense vector over Z/p indexed by X^s in lexicographic order.
struct ModPVector {
    std::uint64_t p = 0;
    std::size_t degree = 0;
    std::vector<std::uint32_t> entries;

    friend bool operator==(const ModPVector&, const ModPVector&) = default;
};

/// Reduces a polynomial supported in degree `degree` to a dense vector
/// mod p. Throws std::invalid_argument if some term has another degree.
ModPVector reduce_mod_p(const WordPoly& f, std::size_t degree, std::uint64_t p);

/// Exact integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    ExactInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const ExactInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static IntMatrix diagonal(std::span<const long> values);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<ExactInt> data_;
};

/// Row i holds the coefficients of polys[i] against X^degree in lex order.
IntMatrix coefficient_matrix(const Alphabet& alphabet, std::span<const WordPoly> polys, std::size_t degree);

/// u ⧢ v for all nonempty u <= v with |u| + |v| = s; the degree-s
/// weakly decomposable submodule is their Z-span. Ordered by |u|, then u,
/// then v.
std::vector<WordPoly> decomposable_generators(const Alphabet& alphabet, std::size_t s);

/// Rank over F_p by Gaussian elimination, first-nonzero pivoting in input
/// order. Throws std::invalid_argument on mixed lengths or moduli.
std::size_t rank_mod_p(std::span<const ModPVector> vectors, std::uint64_t p);

/// Dimension over F_p of the degree-s indecomposable quotient tensored
/// with Z/p: m^s minus the rank of the decomposables mod p (m for s = 1).
std::size_t indec_dim_mod_p(const Alphabet& alphabet, std::size_t s, std::uint64_t p);

/// Elementary divisors d_1 | d_2 | ... of M, nonzero ones only, by
/// gcd-driven row and column reduction.
std::vector<ExactInt> smith_normal_form(const IntMatrix& m);

struct LyndonBasisReport {
    std::size_t lyndon_count = 0;
    std::size_t decomposable_rank = 0;
    std::size_t combined_rank = 0;
    std::size_t ambient_dim = 0;  // m^s
    bool spans = false;           // combined_rank == ambient_dim
    bool independent = false;     // lyndon_count + decomposable_rank == ambient_dim
    bool holds() const noexcept { return spans && independent; }
};

/// Checks that the images of the length-s Lyndon words form a basis of
/// the indecomposable quotient mod p. Requires 1 <= s < p.
LyndonBasisReport lyndon_basis_check(const Alphabet& alphabet, std::size_t s, std::uint64_t p);

/// The same ranks without the s < p restriction; used to exhibit the
/// failure at s = p.
LyndonBasisReport lyndon_rank_report(const Alphabet& alphabet, std::size_t s, std::uint64_t p);

struct IndecReport {
    std::size_t m = 0;
    std::size_t s = 0;
    std::uint64_t p = 0;
    std::size_t dim = 0;
    ExactInt phi;
    std::size_t lyndon_count = 0;
    std::size_t decomposable_rank = 0;
    bool match = false;  // dim == phi
};

IndecReport indec_report(const Alphabet& alphabet, std::size_t s, std::uint64_t p);

/// Column w holds Q_w: entry (v, w) is the coefficient of v in Q_w, rows
/// and columns in lex order of X^s.
IntMatrix radford_matrix(const Alphabet& alphabet, std::size_t s);

bool is_upper_unitriangular(const IntMatrix& m);

}  // namespace shuffle_lab
