#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace shuffle_lab {

__extension__ typedef unsigned __int128 UInt128;

/// A canonical residue in [0, modulus).
class Residue {
public:
    Residue(std::uint64_t value, std::uint64_t modulus);

    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    friend Residue operator+(Residue a, Residue b);
    friend Residue operator-(Residue a, Residue b);
    friend Residue operator*(Residue a, Residue b);
    friend bool operator==(const Residue&, const Residue&) = default;

private:
    std::uint64_t value_;
    std::uint64_t modulus_;
};

/// Upper unitriangular (degree+1) x (degree+1) matrix over Z/modulus, an
/// element of U_degree(Z/q). Only the strictly upper entries are stored,
/// row-major. Indices are 0-based.
class UniMatrix {
public:
    static UniMatrix identity(std::size_t degree, std::uint64_t modulus);
    /// I + c E_{i,j}, i < j.
    static UniMatrix elementary(std::size_t degree, std::uint64_t modulus, std::size_t i, std::size_t j,
                                std::uint64_t c = 1);
    /// I + N with N the full superdiagonal of ones.
    static UniMatrix superdiagonal(std::size_t degree, std::uint64_t modulus);
    /// Uniformly random element.
    static UniMatrix random(std::size_t degree, std::uint64_t modulus, std::mt19937_64& rng);

    std::size_t degree() const noexcept { return dim_ - 1; }
    std::size_t dim() const noexcept { return dim_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    /// Entry (i, j) of the full matrix: 1 on the diagonal, 0 below.
    std::uint64_t at(std::size_t i, std::size_t j) const;
    Residue residue(std::size_t i, std::size_t j) const { return Residue(at(i, j), modulus_); }
    /// Sets a strictly upper entry (reduced mod the modulus).
    void set(std::size_t i, std::size_t j, std::uint64_t value);

    const std::vector<std::uint64_t>& upper_entries() const noexcept { return upper_; }

    bool is_identity() const noexcept;

    friend bool operator==(const UniMatrix&, const UniMatrix&) = default;

    std::string render() const;

private:
    UniMatrix(std::size_t dim, std::uint64_t modulus);
    std::size_t offset(std::size_t i, std::size_t j) const noexcept {
        return i * (2 * dim_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t dim_;
    std::uint64_t modulus_;
    std::vector<std::uint64_t> upper_;

    friend UniMatrix uni_mul(const UniMatrix& a, const UniMatrix& b);
    friend UniMatrix uni_inv(const UniMatrix& a);
};

UniMatrix uni_mul(const UniMatrix& a, const UniMatrix& b);
/// Back-substitution on the unitriangular system.
UniMatrix uni_inv(const UniMatrix& a);
UniMatrix uni_pow(const UniMatrix& a, std::uint64_t e);
/// [g, h] = g^-1 h^-1 g h.
UniMatrix commutator(const UniMatrix& g, const UniMatrix& h);

/// Least e >= 1 with A^e = I. Always a power of the modulus' prime.
std::uint64_t element_order(const UniMatrix& a);

/// q * p^floor(log_p s) for q = p^k, k >= 1.
std::uint64_t group_exponent_formula(std::size_t s, std::uint64_t q);

/// Standard generators I + E_{i,i+1} of U_s(Z/q).
std::vector<UniMatrix> standard_generators(std::size_t degree, std::uint64_t modulus);

/// Thrown when a group closure would exceed the configured element cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Packs a UniMatrix into a 128-bit key, fixed bits per entry.
class MatrixCodec {
public:
    using Key = UInt128;
    MatrixCodec(std::size_t degree, std::uint64_t modulus);

    Key encode(const UniMatrix& m) const;
    UniMatrix decode(Key key) const;

    std::size_t degree() const noexcept { return degree_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

private:
    std::size_t degree_;
    std::uint64_t modulus_;
    unsigned bits_;
    std::size_t entries_;
};

struct KeyHash {
    std::size_t operator()(MatrixCodec::Key k) const noexcept {
        auto lo = static_cast<std::uint64_t>(k);
        auto hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + (lo << 6) + (lo >> 2));
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

/// A finite subgroup of U_degree(Z/q), stored as its full element set
/// together with a generating set. Elements are listed in discovery
/// order with the identity first.
class FiniteGroupSet {
public:
    using Key = MatrixCodec::Key;

    std::size_t degree() const noexcept { return codec_.degree(); }
    std::uint64_t modulus() const noexcept { return codec_.modulus(); }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<UniMatrix>& generators() const noexcept { return generators_; }

    bool contains(const UniMatrix& m) const;
    UniMatrix element(std::size_t i) const { return codec_.decode(elements_.at(i)); }
    std::vector<UniMatrix> elements() const;
    const MatrixCodec& codec() const noexcept { return codec_; }
    const std::vector<Key>& keys() const noexcept { return elements_; }

    bool is_trivial() const noexcept { return elements_.size() == 1; }

    /// Same underlying element set.
    bool same_elements(const FiniteGroupSet& other) const;

private:
    friend class GroupBuilder;
    FiniteGroupSet(std::size_t degree, std::uint64_t modulus) : codec_(degree, modulus) {}

    MatrixCodec codec_;
    std::vector<Key> elements_;
    std::unordered_set<Key, KeyHash> members_;
    std::vector<UniMatrix> generators_;
};

/// Incremental breadth-first closure. Generators already in the current
/// subgroup are skipped, so the recorded generating set stays small.
class GroupBuilder {
public:
    GroupBuilder(std::size_t degree, std::uint64_t modulus, std::size_t cap = kDefaultCap);

    /// Returns false (and does nothing) if g already lies in the subgroup.
    bool add_generator(const UniMatrix& g);
    bool contains(const UniMatrix& g) const { return group_.contains(g); }
    std::size_t order() const noexcept { return group_.order(); }

    /// Closes under conjugation by `conjugators`.
    void normalize_under(std::span<const UniMatrix> conjugators);

    const FiniteGroupSet& group() const noexcept { return group_; }
    FiniteGroupSet build() && { return std::move(group_); }

private:
    void insert(MatrixCodec::Key key);

    FiniteGroupSet group_;
    std::size_t cap_;
};

/// Subgroup generated by `generators` (all of the given degree/modulus).
FiniteGroupSet generate_group(std::size_t degree, std::uint64_t modulus, std::span<const UniMatrix> generators,
                              std::size_t cap = kDefaultCap);

/// The full group U_degree(Z/modulus).
FiniteGroupSet full_unitriangular_group(std::size_t degree, std::uint64_t modulus, std::size_t cap = kDefaultCap);

/// Largest element order over the whole group.
std::uint64_t measured_exponent(const FiniteGroupSet& g);

/// [G^(1,p), ..., G^(max_n,p)]: G^(1,p) = G and G^(n+1,p) is generated by
/// the p-th powers of G^(n,p) and the commutators [G^(n,p), G]. Each layer
/// is built from the previous layer's generators as a normal closure in G;
/// normality of every layer is re-checked. Throws std::invalid_argument if
/// |G| is not a power of p.
std::vector<FiniteGroupSet> lower_p_central_series(const FiniteGroupSet& g, std::uint64_t p, std::size_t max_n,
                                                   std::size_t cap = kDefaultCap);

/// True iff every generator of n, conjugated by every generator of g, lies in n.
bool is_normal_in(const FiniteGroupSet& n, const FiniteGroupSet& g);

/// G/N as coset representatives with induced multiplication.
class CosetGroup {
public:
    std::size_t order() const noexcept { return representatives_.size(); }
    const UniMatrix& representative(std::size_t i) const { return representatives_.at(i); }
    /// Coset index of g; g must lie in G.
    std::size_t coset_of(const UniMatrix& g) const;
    std::size_t multiply(std::size_t i, std::size_t j) const;
    std::size_t identity() const noexcept { return 0; }
    std::uint64_t element_order(std::size_t i) const;
    std::uint64_t exponent() const;
    /// Images of the generators of G commute pairwise.
    bool is_abelian() const;
    /// Dense table, only for small quotients.
    std::vector<std::vector<std::size_t>> multiplication_table() const;

private:
    friend CosetGroup quotient_mod(const FiniteGroupSet& g, const FiniteGroupSet& n);
    MatrixCodec codec_{1, 2};
    std::vector<UniMatrix> representatives_;
    std::vector<UniMatrix> generators_;
    std::unordered_map<MatrixCodec::Key, std::uint32_t, KeyHash> coset_index_;
};

/// Throws std::invalid_argument if n is not contained in g or not normal.
CosetGroup quotient_mod(const FiniteGroupSet& g, const FiniteGroupSet& n);

struct ExponentReport {
    std::size_t s = 0;
    std::uint64_t q = 0;
    std::uint64_t formula = 0;
    std::uint64_t witness_order = 0;     // order of I + N
    std::uint64_t max_sampled_order = 0;
    std::size_t samples = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    bool pass = false;
};

/// Samples `sample` random elements (checking their order divides the
/// formula value) and checks the superdiagonal witness attains it.
ExponentReport verify_exponent(std::size_t s, std::uint64_t q, std::size_t sample, std::uint64_t seed);

/// Same checks over every element of U_s(Z/q).
ExponentReport verify_exponent_exhaustive(std::size_t s, std::uint64_t q, std::size_t cap = kDefaultCap);

struct FiltrationReport {
    std::size_t n = 0;
    std::size_t s = 0;
    std::uint64_t p = 0;
    std::uint64_t modulus = 0;
    std::size_t order = 0;
    std::vector<std::size_t> layers;  // |U^(1,p)|, ..., |U^(n+1,p)|
    bool lemma_a = false;  // U^(n,p) = {I + c p^(n-s) E_{1,s+1}} of order p
    bool lemma_b = false;  // U^(n,p) is central
    bool lemma_c = false;  // U^(n+1,p) = 1
    bool layers_normal = false;
    bool quotients_elementary = false;  // successive quotients of exponent p
    std::uint64_t exponent_formula = 0;
    std::uint64_t exponent_measured = 0;

    bool pass() const noexcept {
        return lemma_a && lemma_b && lemma_c && layers_normal && quotients_elementary &&
               exponent_formula == exponent_measured;
    }
};

/// Brute-force check of the filtration structure of U_s(Z/p^(n-s+1)).
/// Requires n >= 2, 1 <= s <= n, p prime.
FiltrationReport verify_filtration_lemma(std::size_t n, std::size_t s, std::uint64_t p,
                                         std::size_t cap = kDefaultCap);

/// |U_s(Z/q)| = q^(s(s+1)/2); 0 if that overflows 64 bits.
std::uint64_t unitriangular_order(std::size_t s, std::uint64_t q) noexcept;

}  // namespace shuffle_lab
