#include <doctest.h>

#include "shuffle_lab/indec.hpp"

using namespace shuffle_lab;

namespace {

std::vector<std::string> render_all(const std::vector<WordPoly>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.render());
    return out;
}

ModPVector vec(std::uint64_t p, std::vector<std::uint32_t> e) { return ModPVector{p, 2, std::move(e)}; }

}  // namespace

TEST_CASE("decomposable_generators examples") {
    const Alphabet ab(2);
    CHECK(render_all(decomposable_generators(ab, 2)) == std::vector<std::string>{"2*aa", "ab + ba", "2*bb"});

    // s = 3: all 8 unordered {|u|,|v|} = {1,2} pairs, each once.
    const auto gens3 = decomposable_generators(ab, 3);
    CHECK(gens3.size() == 8);
    for (const auto& g : gens3) CHECK(g.homogeneous_degree() == std::optional<std::size_t>(3));

    const Alphabet x = Alphabet::from_letters("x");
    for (std::size_t s = 2; s <= 9; ++s) {
        const auto gens = decomposable_generators(x, s);
        REQUIRE(gens.size() == s / 2);
        for (std::size_t i = 1; i <= s / 2; ++i) {
            CHECK(gens[i - 1] == WordPoly(x, Word{0}.power(s), binomial(s, static_cast<std::int64_t>(i))));
        }
    }
    CHECK_THROWS_AS(decomposable_generators(ab, 1), std::invalid_argument);
}

TEST_CASE("rank_mod_p") {
    CHECK(rank_mod_p({}, 5) == 0);
    const std::vector<ModPVector> pair{vec(5, {1, 2, 0, 3}), vec(5, {2, 4, 0, 1})};
    CHECK(rank_mod_p(pair, 5) == 1);
    const std::vector<ModPVector> indep{vec(5, {1, 0, 0, 0}), vec(5, {0, 1, 0, 0}), vec(5, {1, 1, 0, 0}),
                                        vec(5, {0, 0, 0, 4})};
    CHECK(rank_mod_p(indep, 5) == 3);

    const Alphabet ab(2);
    std::vector<ModPVector> rows;
    for (const auto& g : decomposable_generators(ab, 2)) rows.push_back(reduce_mod_p(g, 2, 5));
    CHECK(rank_mod_p(rows, 5) == 3);
    // mod 2 the squares vanish
    rows.clear();
    for (const auto& g : decomposable_generators(ab, 2)) rows.push_back(reduce_mod_p(g, 2, 2));
    CHECK(rank_mod_p(rows, 2) == 1);

    const std::vector<ModPVector> mixed{vec(5, {1, 0, 0, 0}), ModPVector{5, 3, {1, 0}}};
    CHECK_THROWS_AS(rank_mod_p(mixed, 5), std::invalid_argument);
    CHECK_THROWS_AS(rank_mod_p(pair, 4), std::invalid_argument);
}

TEST_CASE("reduce_mod_p rejects other degrees and reduces negatives") {
    const Alphabet ab(2);
    const auto f = WordPoly::parse(ab, "ab - 2*ba");
    const auto v = reduce_mod_p(f, 2, 5);
    CHECK(v.entries == std::vector<std::uint32_t>{0, 1, 3, 0});
    CHECK_THROWS_AS(reduce_mod_p(f, 3, 5), std::invalid_argument);
}

TEST_CASE("indec_dim_mod_p examples") {
    CHECK(indec_dim_mod_p(Alphabet(2), 2, 5) == 1);
    CHECK(indec_dim_mod_p(Alphabet(1), 5, 5) == 1);
    CHECK(indec_dim_mod_p(Alphabet(1), 6, 5) == 0);
    CHECK(indec_dim_mod_p(Alphabet(3), 1, 2) == 3);
    for (std::uint64_t p : {2, 3, 5}) CHECK(indec_dim_mod_p(Alphabet(1), p, p) == 1);
}

TEST_CASE("smith_normal_form") {
    const long id[] = {1, 1};
    CHECK(smith_normal_form(IntMatrix::diagonal(id)) == std::vector<ExactInt>{1, 1});
    const long d26[] = {2, 6};
    CHECK(smith_normal_form(IntMatrix::diagonal(d26)) == std::vector<ExactInt>{2, 6});
    const long d64[] = {6, 4};
    CHECK(smith_normal_form(IntMatrix::diagonal(d64)) == std::vector<ExactInt>{2, 12});

    IntMatrix m(3, 3);
    const long vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = vals[i][j];
    CHECK(smith_normal_form(m) == std::vector<ExactInt>{2, 6, 12});

    CHECK(smith_normal_form(IntMatrix(2, 3)).empty());

    const Alphabet x = Alphabet::from_letters("x");
    const auto gens = decomposable_generators(x, 4);
    CHECK(smith_normal_form(coefficient_matrix(x, gens, 4)) == std::vector<ExactInt>{2});
    for (std::size_t s = 2; s <= 12; ++s) {
        const auto g = decomposable_generators(x, s);
        CHECK(smith_normal_form(coefficient_matrix(x, g, s)) == std::vector<ExactInt>{h_gcd(s)});
    }
}

TEST_CASE("lyndon_basis_check examples") {
    const auto r22 = lyndon_basis_check(Alphabet(2), 2, 5);
    CHECK(r22.holds());
    CHECK(r22.lyndon_count == 1);
    CHECK(r22.decomposable_rank == 3);
    CHECK(r22.combined_rank == 4);

    const auto r23 = lyndon_basis_check(Alphabet(2), 3, 5);
    CHECK(r23.holds());
    CHECK(r23.lyndon_count == 2);

    const auto r34 = lyndon_basis_check(Alphabet(3), 4, 7);
    CHECK(r34.holds());
    CHECK(r34.lyndon_count == 18);

    CHECK_THROWS_AS(lyndon_basis_check(Alphabet(2), 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(lyndon_basis_check(Alphabet(2), 0, 5), std::invalid_argument);

    const auto fail = lyndon_rank_report(Alphabet(1), 3, 3);
    CHECK(fail.lyndon_count == 0);
    CHECK_FALSE(fail.spans);
}

TEST_CASE("indec_report") {
    const auto r = indec_report(Alphabet(2), 2, 5);
    CHECK(r.dim == 1);
    CHECK(r.phi == 1);
    CHECK(r.match);
    const auto bad = indec_report(Alphabet(1), 5, 5);
    CHECK(bad.dim == 1);
    CHECK(bad.phi == 0);
    CHECK_FALSE(bad.match);
}

TEST_CASE("radford matrix is upper unitriangular with unit determinant") {
    for (std::size_t s = 1; s <= 6; ++s) {
        const auto m = radford_matrix(Alphabet(2), s);
        CHECK(is_upper_unitriangular(m));
        const auto snf = smith_normal_form(m);
        CHECK(snf.size() == m.rows());
        for (const auto& d : snf) CHECK(d == 1);
    }
    CHECK(is_upper_unitriangular(radford_matrix(Alphabet(1), 3)));
}
