#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/unipotent.hpp"

using namespace shuffle_lab;

namespace {

oracle::Dense to_dense(const UniMatrix& m) {
    oracle::Dense d(m.dim(), m.modulus());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) d(i, j) = m.at(i, j);
    return d;
}

// The lower p-central series from the definition, over all elements:
// next = < g^p, [g, h] : g in current, h in G >.
std::vector<std::set<std::vector<std::uint64_t>>> series_oracle(std::size_t s, std::uint64_t q, std::uint64_t p,
                                                               std::size_t max_n) {
    const auto full = full_unitriangular_group(s, q);
    const auto all = full.elements();
    std::vector<UniMatrix> current = all;
    std::vector<std::set<std::vector<std::uint64_t>>> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::set<std::vector<std::uint64_t>> layer;
        for (const auto& g : current) layer.insert(g.upper_entries());
        out.push_back(layer);
        std::set<std::vector<std::uint64_t>> distinct;
        for (const auto& g : current) {
            distinct.insert(to_dense(uni_pow(g, p)).a);
            for (const auto& h : all) distinct.insert(to_dense(commutator(g, h)).a);
        }
        std::vector<oracle::Dense> gens;
        for (const auto& a : distinct) {
            oracle::Dense d(s + 1, q);
            d.a = a;
            gens.push_back(d);
        }
        const auto closure = oracle::naive_closure(gens, s + 1, q);
        current.clear();
        for (const auto& a : closure) {
            auto m = UniMatrix::identity(s, q);
            for (std::size_t i = 0; i <= s; ++i)
                for (std::size_t j = i + 1; j <= s; ++j) m.set(i, j, a[i * (s + 1) + j]);
            current.push_back(m);
        }
    }
    return out;
}

std::set<std::vector<std::uint64_t>> as_set(const FiniteGroupSet& g) {
    std::set<std::vector<std::uint64_t>> out;
    for (const auto& e : g.elements()) out.insert(e.upper_entries());
    return out;
}

}  // namespace

TEST_CASE("residue arithmetic") {
    const Residue a(7, 9), b(5, 9);
    CHECK((a + b).value() == 3);
    CHECK((b - a).value() == 7);
    CHECK((a * b).value() == 8);
    CHECK(Residue(20, 9).value() == 2);
    CHECK_THROWS_AS(a + Residue(1, 4), std::invalid_argument);
}

TEST_CASE("uni_mul, uni_inv, uni_pow examples") {
    std::mt19937_64 rng(1);
    const auto a = UniMatrix::random(3, 9, rng);
    CHECK(uni_mul(UniMatrix::identity(3, 9), a) == a);
    CHECK(uni_mul(a, UniMatrix::identity(3, 9)) == a);

    const auto e12 = UniMatrix::elementary(1, 5, 0, 1);
    CHECK(uni_inv(e12) == UniMatrix::elementary(1, 5, 0, 1, 4));

    for (std::size_t s = 1; s <= 4; ++s) {
        for (std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
            const auto n = UniMatrix::superdiagonal(s, q);
            const auto r = group_exponent_formula(s, q);
            CHECK(uni_pow(n, r).is_identity());
            CHECK_FALSE(uni_pow(n, r / as_prime_power(q)->prime).is_identity());
        }
    }
    CHECK_THROWS_AS(uni_mul(UniMatrix::identity(2, 3), UniMatrix::identity(2, 9)), std::invalid_argument);
    CHECK_THROWS_AS(uni_mul(UniMatrix::identity(2, 3), UniMatrix::identity(3, 3)), std::invalid_argument);
}

TEST_CASE("products agree with dense matrix arithmetic") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        const std::size_t s = 1 + static_cast<std::size_t>(t % 5);
        const std::uint64_t q = std::array<std::uint64_t, 4>{4, 8, 9, 25}[static_cast<std::size_t>(t % 4)];
        const auto a = UniMatrix::random(s, q, rng);
        const auto b = UniMatrix::random(s, q, rng);
        CHECK(to_dense(uni_mul(a, b)) == to_dense(a) * to_dense(b));
        CHECK((to_dense(uni_inv(a)) * to_dense(a)) == oracle::Dense::identity(s + 1, q));
    }
}

TEST_CASE("group axioms on random triples") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const auto a = UniMatrix::random(4, 8, rng);
        const auto b = UniMatrix::random(4, 8, rng);
        const auto c = UniMatrix::random(4, 8, rng);
        CHECK(uni_mul(uni_mul(a, b), c) == uni_mul(a, uni_mul(b, c)));
        CHECK(uni_mul(a, uni_inv(a)).is_identity());
        CHECK(uni_mul(uni_inv(a), a).is_identity());
        CHECK(uni_inv(uni_inv(a)) == a);
        CHECK(uni_pow(a, 5) == uni_mul(uni_pow(a, 2), uni_pow(a, 3)));
        CHECK(uni_mul(uni_mul(a, b), commutator(b, a)) == uni_mul(b, a));
    }
}

TEST_CASE("element_order examples") {
    CHECK(element_order(UniMatrix::identity(3, 9)) == 1);
    CHECK(element_order(UniMatrix::elementary(1, 4, 0, 1)) == 4);
    CHECK(element_order(UniMatrix::superdiagonal(2, 2)) == 4);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto a = UniMatrix::random(3, 9, rng);
        const auto e = element_order(a);
        CHECK(is_power_of(e, 3));
        CHECK(uni_pow(a, e).is_identity());
        if (e > 1) CHECK_FALSE(uni_pow(a, e / 3).is_identity());
    }
}

TEST_CASE("group_exponent_formula examples") {
    CHECK(group_exponent_formula(2, 2) == 4);
    CHECK(group_exponent_formula(3, 3) == 9);
    CHECK(group_exponent_formula(1, 27) == 27);
    CHECK(group_exponent_formula(4, 2) == 8);
    CHECK_THROWS_AS(group_exponent_formula(2, 6), std::invalid_argument);
    CHECK_THROWS_AS(group_exponent_formula(2, 1), std::invalid_argument);
}

TEST_CASE("codec round-trips") {
    std::mt19937_64 rng(5);
    for (std::size_t s = 1; s <= 5; ++s) {
        const MatrixCodec codec(s, 25);
        for (int t = 0; t < 50; ++t) {
            const auto a = UniMatrix::random(s, 25, rng);
            CHECK(codec.decode(codec.encode(a)) == a);
        }
    }
}

TEST_CASE("generate_group examples") {
    CHECK(generate_group(2, 3, {}).order() == 1);
    CHECK(full_unitriangular_group(2, 3).order() == 27);
    CHECK(full_unitriangular_group(2, 9).order() == 729);
    CHECK_THROWS_AS(full_unitriangular_group(3, 9, 1000), CapExceeded);
    const auto gens = standard_generators(3, 2);
    CHECK_THROWS_AS(generate_group(3, 2, gens, 10), CapExceeded);
}

TEST_CASE("closure agrees with the naive fixed point") {
    for (auto [s, q] : {std::pair<std::size_t, std::uint64_t>{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        const auto gens = standard_generators(s, q);
        std::vector<oracle::Dense> dense;
        for (const auto& g : gens) dense.push_back(to_dense(g));
        const auto naive = oracle::naive_closure(dense, s + 1, q);
        const auto g = generate_group(s, q, gens);
        CHECK(g.order() == naive.size());
    }
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        const std::vector<UniMatrix> gens{UniMatrix::random(2, 9, rng), UniMatrix::random(2, 9, rng)};
        const auto g = generate_group(2, 9, gens);
        std::vector<oracle::Dense> dense;
        for (const auto& x : gens) dense.push_back(to_dense(x));
        const auto naive = oracle::naive_closure(dense, 3, 9);
        std::set<std::vector<std::uint64_t>> lib;
        for (const auto& e : g.elements()) lib.insert(to_dense(e).a);
        CHECK(lib == naive);
    }
}

TEST_CASE("orders of full groups are q^(s(s+1)/2)") {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        CHECK(full_unitriangular_group(1, q).order() == q);
        CHECK(full_unitriangular_group(2, q).order() == unitriangular_order(2, q));
    }
    for (std::uint64_t q : {2, 3, 4, 5}) CHECK(full_unitriangular_group(3, q).order() == unitriangular_order(3, q));
    CHECK(unitriangular_order(3, 5) == 15625);
}

TEST_CASE("exponent by enumeration matches the formula") {
    for (auto [s, q] : {std::pair<std::size_t, std::uint64_t>{1, 2}, {1, 9}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2},
                        {3, 3}, {4, 2}}) {
        const auto r = verify_exponent_exhaustive(s, q);
        CHECK(r.pass);
        CHECK(r.exhaustive);
        CHECK(r.max_sampled_order == group_exponent_formula(s, q));
    }
    const auto sampled = verify_exponent(2, 3, 1000, 42);
    CHECK(sampled.pass);
    CHECK(sampled.formula == 3);
    CHECK(verify_exponent_exhaustive(2, 2).formula == 4);
    CHECK(verify_exponent_exhaustive(3, 2).samples == 64);
}

TEST_CASE("lower p-central series examples") {
    const auto z3 = full_unitriangular_group(1, 3);
    const auto trivial_tail = lower_p_central_series(z3, 3, 4);
    REQUIRE(trivial_tail.size() == 4);
    CHECK(trivial_tail[0].order() == 3);
    for (std::size_t i = 1; i < 4; ++i) CHECK(trivial_tail[i].is_trivial());

    const auto u23 = full_unitriangular_group(2, 3);
    const auto s23 = lower_p_central_series(u23, 3, 3);
    CHECK(s23[1].order() == 3);
    for (const auto& e : s23[1].elements()) {
        CHECK(e.at(0, 1) == 0);
        CHECK(e.at(1, 2) == 0);
    }
    CHECK(s23[2].is_trivial());

    const auto u29 = full_unitriangular_group(2, 9);
    const auto s29 = lower_p_central_series(u29, 3, 4);
    CHECK(s29[2].order() == 3);
    for (const auto& e : s29[2].elements()) {
        CHECK(e.at(0, 1) == 0);
        CHECK(e.at(1, 2) == 0);
        CHECK(e.at(0, 2) % 3 == 0);
    }
    CHECK(s29[3].is_trivial());

    const auto u24 = full_unitriangular_group(2, 4);
    CHECK_THROWS_AS(lower_p_central_series(u24, 3, 2), std::invalid_argument);
}

TEST_CASE("series agrees with the all-elements definition") {
    for (auto [s, q, p] : {std::tuple<std::size_t, std::uint64_t, std::uint64_t>{2, 2, 2}, {2, 4, 2}, {2, 3, 3},
                           {3, 2, 2}, {2, 9, 3}, {1, 8, 2}}) {
        const auto expected = series_oracle(s, q, p, 4);
        const auto got = lower_p_central_series(full_unitriangular_group(s, q), p, 4);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(as_set(got[i]) == expected[i]);
    }
}

TEST_CASE("series is descending, normal, with elementary quotients") {
    for (auto [s, q, p] : {std::tuple<std::size_t, std::uint64_t, std::uint64_t>{2, 9, 3}, {3, 4, 2}, {3, 3, 3}}) {
        const auto g = full_unitriangular_group(s, q);
        const auto series = lower_p_central_series(g, p, 5);
        for (std::size_t i = 0; i < series.size(); ++i) {
            CHECK(is_normal_in(series[i], g));
            if (i + 1 < series.size()) {
                for (const auto& e : series[i + 1].elements()) CHECK(series[i].contains(e));
                const auto quotient = quotient_mod(series[i], series[i + 1]);
                CHECK(quotient.order() * series[i + 1].order() == series[i].order());
                CHECK((quotient.exponent() == 1 || quotient.exponent() == p));
            }
        }
    }
}

TEST_CASE("filtration lemma instances") {
    for (auto [n, s, p] : {std::tuple<std::size_t, std::size_t, std::uint64_t>{2, 2, 3}, {3, 2, 3}, {3, 3, 5}}) {
        const auto r = verify_filtration_lemma(n, s, p);
        CHECK(r.lemma_a);
        CHECK(r.lemma_b);
        CHECK(r.lemma_c);
        CHECK(r.pass());
    }
    const auto r = verify_filtration_lemma(3, 2, 3);
    CHECK(r.order == 729);
    CHECK(r.modulus == 9);
    CHECK_THROWS_AS(verify_filtration_lemma(1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(verify_filtration_lemma(4, 2, 5, 1000), CapExceeded);
}

TEST_CASE("quotient examples") {
    const auto g = full_unitriangular_group(2, 3);
    CHECK(quotient_mod(g, g).order() == 1);

    const auto series = lower_p_central_series(g, 3, 2);
    const auto q = quotient_mod(g, series[1]);
    CHECK(q.order() == 9);
    CHECK(q.exponent() == 3);
    CHECK(q.is_abelian());
    const auto table = q.multiplication_table();
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) CHECK(table[i][j] == table[j][i]);

    for (std::uint64_t p : {2, 3, 5}) {
        for (std::size_t n = 2; n <= 4; ++n) {
            const std::uint64_t pn = ipow(p, static_cast<unsigned>(n));
            if (pn > 200) continue;
            const auto u1 = full_unitriangular_group(1, pn);
            const auto s = lower_p_central_series(u1, p, n);
            const auto c = quotient_mod(u1, s[n - 1]);
            CHECK(c.order() == pn / p);
            CHECK(c.exponent() == pn / p);
        }
    }

    const auto u29 = full_unitriangular_group(2, 9);
    CHECK_THROWS_AS(quotient_mod(g, u29), std::invalid_argument);
    const auto e12 = generate_group(2, 3, std::vector<UniMatrix>{UniMatrix::elementary(2, 3, 0, 1)});
    CHECK_THROWS_AS(quotient_mod(g, e12), std::invalid_argument);
}

TEST_CASE("binomial expansion of (I + N)^(p^k)") {
    std::mt19937_64 rng(8);
    for (std::uint64_t p : {2, 3, 5}) {
        for (unsigned k = 1; k <= 3; ++k) {
            const std::uint64_t q = ipow(p, 2);
            for (std::size_t s = 1; s <= 4; ++s) {
                for (int t = 0; t < 10; ++t) {
                    const auto a = UniMatrix::random(s, q, rng);
                    oracle::Dense nil = to_dense(a);
                    for (std::size_t i = 0; i <= s; ++i) nil(i, i) = 0;
                    const std::uint64_t pk = ipow(p, k);
                    oracle::Dense sum(s + 1, q);
                    oracle::Dense power = oracle::Dense::identity(s + 1, q);
                    for (std::uint64_t l = 0; l <= std::min<std::uint64_t>(s, pk); ++l) {
                        const mpz_class c = binomial(pk, static_cast<std::int64_t>(l)) % static_cast<unsigned long>(q);
                        sum = sum + power.scaled(c.get_ui());
                        power = power * nil;
                    }
                    CHECK(to_dense(uni_pow(a, pk)) == sum);
                }
            }
        }
    }
}
