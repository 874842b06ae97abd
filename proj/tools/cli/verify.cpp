#include "cli/verify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/indec.hpp"
#include "shuffle_lab/magnus.hpp"
#include "shuffle_lab/shuffle_poly.hpp"
#include "shuffle_lab/unipotent.hpp"

namespace shuffle_lab::cli {

namespace {

struct Limits {
    std::size_t cap;
    std::size_t trials_magnus;
    std::size_t trials_shuffle;
    std::uint64_t seed;
};

Json criterion(int id, const std::string& name, bool pass, Json detail) {
    return Json{{"id", id}, {"name", name}, {"pass", pass}, {"detail", std::move(detail)}};
}

Json dimension_formula() {
    std::size_t cases = 0;
    Json mismatches = Json::array();
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::uint64_t p : {2, 3, 5, 7}) {
            for (std::size_t s = 1; s < p && s <= 6; ++s) {
                ++cases;
                const auto dim = indec_dim_mod_p(Alphabet(m), s, p);
                const ExactInt phi = necklace_phi(s, m);
                if (phi != static_cast<unsigned long>(dim)) {
                    mismatches.push_back(Json{{"m", m}, {"s", s}, {"p", p}, {"dim", dim}, {"phi", phi.get_str()}});
                }
            }
        }
    }
    return criterion(1, "dimension formula", mismatches.empty(), Json{{"cases", cases}, {"mismatches", mismatches}});
}

Json counterexample() {
    bool pass = true;
    Json rows = Json::array();
    for (std::uint64_t p : {2, 3, 5}) {
        const Alphabet x(1);
        const auto dim = indec_dim_mod_p(x, p, p);
        const ExactInt phi = necklace_phi(p, 1);
        const auto lyn = lyndon_words(x, p).size();
        pass = pass && dim == 1 && phi == 0 && lyn == 0;
        rows.push_back(Json{{"p", p}, {"dim", dim}, {"phi", phi.get_si()}, {"lyndon_count", lyn}});
    }
    return criterion(2, "counterexample at s = p", pass, Json{{"cases", rows}});
}

Json radford() {
    const Alphabet ab(2);
    std::size_t words = 0;
    Json failures = Json::array();
    for (std::size_t s = 1; s <= 6; ++s) {
        for (const auto& w : all_words(ab, s)) {
            ++words;
            bool ok = true;
            try {
                const auto q = radford_Q(ab, w);
                ok = q.coefficient(w) == 1;
                for (const auto& [v, c] : q.terms()) ok = ok && v.size() == s && v <= w && c > 0;
            } catch (const std::logic_error&) {
                ok = false;
            }
            if (!ok) failures.push_back(ab.render(w));
        }
    }
    return criterion(3, "Radford triangularity", failures.empty(), Json{{"words", words}, {"failures", failures}});
}

Json single_letter() {
    const Alphabet x(1);
    Json snf_failures = Json::array();
    for (std::size_t s = 2; s <= 12; ++s) {
        const auto gens = decomposable_generators(x, s);
        const auto divisors = smith_normal_form(coefficient_matrix(x, gens, s));
        if (divisors != std::vector<ExactInt>{h_gcd(s)}) snf_failures.push_back(s);
    }
    Json pp_failures = Json::array();
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t s = 2; s <= 200; ++s) {
            const bool divides = mpz_divisible_ui_p(h_gcd(s).get_mpz_t(), p) != 0;
            if (divides != is_power_of(s, p)) pp_failures.push_back(Json{{"s", s}, {"p", p}});
        }
    }
    return criterion(4, "single-letter integral structure", snf_failures.empty() && pp_failures.empty(),
                     Json{{"snf_range", "2..12"},
                          {"snf_failures", snf_failures},
                          {"p_power_range", "2..200"},
                          {"p_power_failures", pp_failures}});
}

Json exponent(const Limits& limits) {
    bool pass = true;
    Json rows = Json::array();
    Json skipped = Json::array();
    for (auto [s, q] : {std::pair<std::size_t, std::uint64_t>{1, 2}, {1, 9}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2},
                        {3, 3}, {4, 2}}) {
        const auto order = unitriangular_order(s, q);
        if (order > limits.cap) {
            skipped.push_back(Json{{"s", s}, {"q", q}, {"order", order}});
            continue;
        }
        const auto r = verify_exponent_exhaustive(s, q, limits.cap);
        const bool ok = r.pass && r.max_sampled_order == r.formula;
        pass = pass && ok;
        rows.push_back(Json{{"s", s}, {"q", q}, {"formula", r.formula}, {"measured", r.max_sampled_order}, {"pass", ok}});
    }
    return criterion(5, "unipotent exponent", pass, Json{{"cases", rows}, {"skipped", skipped}});
}

Json filtration(const Limits& limits) {
    bool pass = true;
    Json rows = Json::array();
    Json skipped = Json::array();
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::size_t n = 2; n <= 4; ++n) {
            for (std::size_t s = 1; s <= n; ++s) {
                const std::uint64_t q = ipow(p, static_cast<unsigned>(n - s + 1));
                const auto order = unitriangular_order(s, q);
                if (order == 0 || order > limits.cap) {
                    skipped.push_back(Json{{"n", n}, {"s", s}, {"p", p}, {"order", order}});
                    continue;
                }
                const auto r = verify_filtration_lemma(n, s, p, limits.cap);
                const bool ok = r.lemma_a && r.lemma_b && r.lemma_c;
                pass = pass && ok && r.pass();
                rows.push_back(Json{{"n", n},
                                    {"s", s},
                                    {"p", p},
                                    {"order", r.order},
                                    {"lemma_a", r.lemma_a},
                                    {"lemma_b", r.lemma_b},
                                    {"lemma_c", r.lemma_c},
                                    {"layers_normal", r.layers_normal},
                                    {"quotients_elementary", r.quotients_elementary}});
            }
        }
    }
    return criterion(6, "filtration lemma", pass, Json{{"cases", rows}, {"skipped", skipped}});
}

Json binomial_suite() {
    std::size_t checks = 0;
    Json failures = Json::array();
    auto fail = [&](const char* part, Json where) { failures.push_back(Json{{"part", part}, {"at", std::move(where)}}); };
    for (std::uint64_t p : {2, 3, 5}) {
        for (unsigned k = 1; k <= 4; ++k) {
            const std::uint64_t pk = ipow(p, k);
            std::vector<ExactInt> row(pk + 1);
            for (std::uint64_t l = 0; l <= pk; ++l) row[l] = binomial(pk, static_cast<std::int64_t>(l));
            for (std::uint64_t l = 1; l <= pk; ++l) {
                ++checks;
                const std::uint64_t d = pk / std::gcd(pk, l);
                if (!mpz_divisible_ui_p(row[l].get_mpz_t(), d)) fail("a", Json{{"p", p}, {"k", k}, {"l", l}});
            }
            for (unsigned j = 0; j <= k; ++j) {
                ++checks;
                if (p_adic_valuation(row[ipow(p, j)], p) != k - j) fail("b", Json{{"p", p}, {"k", k}, {"j", j}});
            }
            for (unsigned e = 0; e <= k + 1; ++e) {
                const std::uint64_t q = ipow(p, e);
                bool all = true;
                for (std::uint64_t t = 1; t <= pk; ++t) {
                    all = all && mpz_divisible_ui_p(row[t].get_mpz_t(), q);
                    ++checks;
                    const bool rhs = pk % (q * ipow(p, floor_log(t, p))) == 0;
                    if (all != rhs) fail("c", Json{{"p", p}, {"k", k}, {"q", q}, {"t", t}});
                }
            }
        }
    }
    for (std::uint64_t p : {2, 3, 5, 7}) {
        for (std::uint64_t m = 1; m <= 200; ++m) {
            ++checks;
            bool all = true;
            for (std::uint64_t l = 1; l < m && all; ++l) {
                all = mpz_divisible_ui_p(binomial(m, static_cast<std::int64_t>(l)).get_mpz_t(), p) != 0;
            }
            if (all != is_power_of(m, p)) fail("d", Json{{"p", p}, {"m", m}});
        }
    }
    return criterion(7, "binomial lemma suite", failures.empty(), Json{{"checks", checks}, {"failures", failures}});
}

void absorb(Json& rows, bool& pass, const TrialReport& r, Json params) {
    pass = pass && r.pass();
    params["trials"] = r.trials;
    params["seed"] = r.seed;
    params["failures"] = r.failure_count;
    if (!r.pass()) params["examples"] = r.failures;
    rows.push_back(Json{{"check", r.check}, {"params", std::move(params)}});
}

Json magnus_properties(const Limits& limits) {
    const Alphabet ab(2);
    bool pass = true;
    Json rows = Json::array();
    std::uint64_t seed = limits.seed;
    std::size_t configs = 0;
    for (std::uint64_t q : {4, 8, 9, 25}) {
        for (std::size_t d = 1; d <= 5; ++d) {
            const auto r = check_magnus_homomorphism(ab, q, d, limits.trials_magnus, seed++);
            ++configs;
            if (!r.pass()) absorb(rows, pass, r, Json{{"q", q}, {"D", d}});
        }
    }
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::size_t len = 1; len <= 4; ++len) {
            for (const auto& w : all_words(ab, len)) {
                for (std::size_t n = std::max<std::size_t>(2, len); n <= 5; ++n) {
                    if (ipow(p, static_cast<unsigned>(n - len + 1)) > 25) continue;
                    const auto r = check_rho_homomorphism(ab, w, n, p, limits.trials_magnus, seed++);
                    ++configs;
                    if (!r.pass()) absorb(rows, pass, r, Json{{"w", ab.render(w)}, {"n", n}, {"p", p}});
                }
            }
        }
    }
    for (auto [p, a, b] : {std::tuple<std::uint64_t, unsigned, unsigned>{2, 3, 1}, {2, 3, 2}, {3, 2, 1}, {5, 2, 1}}) {
        const auto r = check_functoriality(ab, p, a, b, 5, limits.trials_magnus, seed++);
        ++configs;
        if (!r.pass()) absorb(rows, pass, r, Json{{"p", p}, {"a", a}, {"b", b}});
    }
    return criterion(8, "Magnus properties", pass,
                     Json{{"configurations", configs},
                          {"trials_per_configuration", limits.trials_magnus},
                          {"first_seed", limits.seed},
                          {"failed", rows}});
}

Json shuffle_relations(const Limits& limits) {
    const Alphabet ab(2);
    const auto r = check_shuffle_relations(ab, 5, 125, limits.trials_shuffle, limits.seed);

    // The naive shuffle form must fail on the documented case.
    const auto image = magnus_eval(ab, GroupWord::parse(ab, "aa"), 125, 2);
    const auto a = ab.parse("a");
    const auto naive = shuffle_relation_sides(ab, a, a, image, ShuffleIdentity::naive_shuffle);
    const auto calibrated = shuffle_relation_sides(ab, a, a, image, ShuffleIdentity::infiltration);
    const bool naive_documented = naive.lhs == 4 && naive.rhs == 2 && calibrated.holds();

    std::size_t pairs = 0;
    for (std::size_t total = 2; total <= 5; ++total) {
        for (std::size_t a = 1; a < total; ++a) pairs += all_words(ab, a).size() * all_words(ab, total - a).size();
    }

    Json detail{{"identity", to_string(ShuffleIdentity::infiltration)},
                {"modulus", 125},
                {"max_total_length", 5},
                {"trials_per_pair", limits.trials_shuffle},
                {"seed", r.seed},
                {"pairs", pairs},
                {"checked", pairs * r.trials},
                {"failures", r.failure_count},
                {"naive_counterexample",
                 Json{{"u", "a"}, {"v", "a"}, {"sigma", "aa"}, {"lhs", naive.lhs}, {"naive_rhs", naive.rhs},
                      {"calibrated_rhs", calibrated.rhs}}}};
    if (!r.pass()) detail["examples"] = r.failures;
    return criterion(9, "shuffle-relation coefficient identity", r.pass() && naive_documented, detail);
}

Json lyndon_count() {
    Json mismatches = Json::array();
    std::size_t cases = 0;
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t s = 1; s <= 7; ++s) {
            ++cases;
            const auto count = lyndon_words(Alphabet(m), s).size();
            if (necklace_phi(s, m) != static_cast<unsigned long>(count)) {
                mismatches.push_back(Json{{"m", m}, {"s", s}, {"count", count}});
            }
        }
    }
    return criterion(10, "Lyndon count", mismatches.empty(), Json{{"cases", cases}, {"mismatches", mismatches}});
}

}  // namespace

Outcome cmd_verify(const VerifyOptions& options) {
    if (options.profile != "quick" && options.profile != "full") {
        throw std::invalid_argument("profile must be quick or full, not " + options.profile);
    }
    const bool quick = options.profile == "quick";
    Limits limits{quick ? std::size_t{10'000} : std::size_t{1'000'000}, quick ? 100u : 500u, quick ? 100u : 1000u,
                  options.seed};
    if (options.cap) limits.cap = *options.cap;
    if (options.trials) {
        limits.trials_magnus = *options.trials;
        limits.trials_shuffle = *options.trials;
    }

    Json criteria = Json::array({dimension_formula(), counterexample(), radford(), single_letter(), exponent(limits),
                                 filtration(limits), binomial_suite(), magnus_properties(limits),
                                 shuffle_relations(limits), lyndon_count()});
    Outcome out;
    for (const auto& c : criteria) out.pass = out.pass && c["pass"].get<bool>();
    out.report = Json{{"command", "verify"},
                      {"profile", options.profile},
                      {"seed", options.seed},
                      {"cap", limits.cap},
                      {"criteria", criteria},
                      {"pass", out.pass}};
    return out;
}

}  // namespace shuffle_lab::cli
