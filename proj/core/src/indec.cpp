#include "shuffle_lab/indec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace shuffle_lab {

namespace {

std::size_t ambient_dimension(const Alphabet& alphabet, std::size_t s) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < s; ++i) n *= alphabet.size();
    return n;
}

void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

ModPVector indicator(const Alphabet& alphabet, const Word& w, std::uint64_t p) {
    ModPVector v{p, w.size(), std::vector<std::uint32_t>(ambient_dimension(alphabet, w.size()), 0)};
    v.entries[lex_index(alphabet, w)] = 1 % static_cast<std::uint32_t>(p);
    return v;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    // Fermat; p is prime.
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result;
}

}  // namespace

ModPVector reduce_mod_p(const WordPoly& f, std::size_t degree, std::uint64_t p) {
    require_prime(p);
    const Alphabet& alphabet = f.alphabet();
    ModPVector v{p, degree, std::vector<std::uint32_t>(ambient_dimension(alphabet, degree), 0)};
    const ExactInt modulus(static_cast<unsigned long>(p));
    for (const auto& [w, c] : f.terms()) {
        if (w.size() != degree) {
            throw std::invalid_argument("reduce_mod_p: term " + alphabet.render(w) + " has degree " +
                                        std::to_string(w.size()) + ", expected " + std::to_string(degree));
        }
        ExactInt r;
        mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
        v.entries[lex_index(alphabet, w)] = static_cast<std::uint32_t>(r.get_ui());
    }
    return v;
}

IntMatrix IntMatrix::diagonal(std::span<const long> values) {
    IntMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

IntMatrix coefficient_matrix(const Alphabet& alphabet, std::span<const WordPoly> polys, std::size_t degree) {
    IntMatrix m(polys.size(), ambient_dimension(alphabet, degree));
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (const auto& [w, c] : polys[i].terms()) {
            if (w.size() != degree) throw std::invalid_argument("coefficient_matrix: inhomogeneous input");
            m(i, lex_index(alphabet, w)) = c;
        }
    }
    return m;
}

std::vector<WordPoly> decomposable_generators(const Alphabet& alphabet, std::size_t s) {
    if (s < 2) throw std::invalid_argument("decomposable_generators: s must be at least 2");
    std::vector<WordPoly> out;
    for (std::size_t a = 1; a < s; ++a) {
        const auto left = all_words(alphabet, a);
        const auto right = all_words(alphabet, s - a);
        for (const auto& u : left) {
            for (const auto& v : right) {
                if (u <= v) out.push_back(shuffle_words(alphabet, u, v));
            }
        }
    }
    return out;
}

std::size_t rank_mod_p(std::span<const ModPVector> vectors, std::uint64_t p) {
    require_prime(p);
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().entries.size();
    struct Pivot {
        std::size_t column;
        std::vector<std::uint64_t> row;  // row[column] == 1
    };
    std::vector<Pivot> basis;
    std::vector<std::uint64_t> work(n);
    for (const auto& v : vectors) {
        if (v.entries.size() != n || v.degree != vectors.front().degree) {
            throw std::invalid_argument("rank_mod_p: vectors of mixed dimensions");
        }
        if (v.p != p) throw std::invalid_argument("rank_mod_p: vector reduced modulo a different prime");
        std::copy(v.entries.begin(), v.entries.end(), work.begin());
        for (const auto& [col, row] : basis) {
            const std::uint64_t f = work[col];
            if (f == 0) continue;
            const std::uint64_t neg = p - f;
            for (std::size_t j = col; j < n; ++j) {
                if (row[j] != 0) work[j] = (work[j] + neg * row[j]) % p;
            }
        }
        auto lead = std::find_if(work.begin(), work.end(), [](std::uint64_t x) { return x != 0; });
        if (lead == work.end()) continue;
        const auto col = static_cast<std::size_t>(lead - work.begin());
        const std::uint64_t inv = inverse_mod(*lead, p);
        std::vector<std::uint64_t> row(n, 0);
        for (std::size_t j = col; j < n; ++j) row[j] = work[j] * inv % p;
        basis.push_back({col, std::move(row)});
        if (basis.size() == n) break;
    }
    return basis.size();
}

std::size_t indec_dim_mod_p(const Alphabet& alphabet, std::size_t s, std::uint64_t p) {
    require_prime(p);
    if (s == 0) throw std::invalid_argument("indec_dim_mod_p: s must be positive");
    if (s == 1) return alphabet.size();
    std::vector<ModPVector> rows;
    for (const auto& g : decomposable_generators(alphabet, s)) rows.push_back(reduce_mod_p(g, s, p));
    return ambient_dimension(alphabet, s) - rank_mod_p(rows, p);
}

std::vector<ExactInt> smith_normal_form(const IntMatrix& input) {
    IntMatrix a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<ExactInt> divisors;

    auto swap_rows = [&](std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(i, j), a(k, j));
    };
    auto swap_cols = [&](std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, j), a(i, k));
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        auto move_min_to_pivot = [&](bool whole_block) -> bool {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (!whole_block && i != t && j != t) continue;
                    if (a(i, j) == 0) continue;
                    if (bi == rows || abs(a(i, j)) < abs(a(bi, bj))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == rows) return false;
            swap_rows(t, bi);
            swap_cols(t, bj);
            return true;
        };
        if (!move_min_to_pivot(true)) break;

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                ExactInt q;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                ExactInt q;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                move_min_to_pivot(false);
                continue;
            }
            // Row and column are clear; enforce the divisibility chain.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
                        divides_all = false;
                        break;
                    }
                }
            }
            if (divides_all) break;
        }
        divisors.push_back(abs(a(t, t)));
    }
    return divisors;
}

LyndonBasisReport lyndon_rank_report(const Alphabet& alphabet, std::size_t s, std::uint64_t p) {
    require_prime(p);
    if (s == 0) throw std::invalid_argument("lyndon_rank_report: s must be positive");
    LyndonBasisReport report;
    report.ambient_dim = ambient_dimension(alphabet, s);
    std::vector<ModPVector> rows;
    if (s >= 2) {
        for (const auto& g : decomposable_generators(alphabet, s)) rows.push_back(reduce_mod_p(g, s, p));
    }
    report.decomposable_rank = rank_mod_p(rows, p);
    const auto lyndon = lyndon_words(alphabet, s);
    report.lyndon_count = lyndon.size();
    for (const auto& w : lyndon) rows.push_back(indicator(alphabet, w, p));
    report.combined_rank = rank_mod_p(rows, p);
    report.spans = report.combined_rank == report.ambient_dim;
    report.independent = report.lyndon_count + report.decomposable_rank == report.ambient_dim;
    return report;
}

LyndonBasisReport lyndon_basis_check(const Alphabet& alphabet, std::size_t s, std::uint64_t p) {
    if (s == 0 || s >= p) {
        throw std::invalid_argument("lyndon_basis_check: requires 1 <= s < p (got s=" + std::to_string(s) +
                                    ", p=" + std::to_string(p) + ")");
    }
    return lyndon_rank_report(alphabet, s, p);
}

IndecReport indec_report(const Alphabet& alphabet, std::size_t s, std::uint64_t p) {
    IndecReport r;
    r.m = alphabet.size();
    r.s = s;
    r.p = p;
    const auto ranks = lyndon_rank_report(alphabet, s, p);
    r.dim = ranks.ambient_dim - ranks.decomposable_rank;
    r.decomposable_rank = ranks.decomposable_rank;
    r.lyndon_count = ranks.lyndon_count;
    r.phi = necklace_phi(s, static_cast<std::uint64_t>(alphabet.size()));
    r.match = ExactInt(static_cast<unsigned long>(r.dim)) == r.phi;
    return r;
}

IntMatrix radford_matrix(const Alphabet& alphabet, std::size_t s) {
    const auto words = all_words(alphabet, s);
    IntMatrix m(words.size(), words.size());
    for (std::size_t col = 0; col < words.size(); ++col) {
        const WordPoly q = radford_Q(alphabet, words[col]);
        for (const auto& [v, c] : q.terms()) m(lex_index(alphabet, v), col) = c;
    }
    return m;
}

bool is_upper_unitriangular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 1) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (m(i, j) != 0) return false;
        }
    }
    return true;
}

}  // namespace shuffle_lab
