#include "cli/commands.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "shuffle_lab/arith.hpp"
#include "shuffle_lab/indec.hpp"
#include "shuffle_lab/magnus.hpp"
#include "shuffle_lab/shuffle_poly.hpp"

namespace shuffle_lab::cli {

namespace {

Json exact(const ExactInt& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Json matrix_rows(const UniMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

Alphabet parse_alphabet(const std::string& spec) {
    if (!spec.empty() && std::all_of(spec.begin(), spec.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        const unsigned long m = std::stoul(spec);
        return Alphabet(m);
    }
    return Alphabet::from_letters(spec);
}

Outcome cmd_lyndon(const Alphabet& alphabet, std::size_t s) {
    Json words = Json::array();
    const auto lyn = lyndon_words(alphabet, s);
    for (const auto& w : lyn) words.push_back(alphabet.render(w));
    const ExactInt phi = necklace_phi(s, alphabet.size());
    Outcome out;
    out.pass = phi == static_cast<unsigned long>(lyn.size());
    out.report = Json{{"command", "lyndon"},
                      {"alphabet", alphabet.names()},
                      {"m", alphabet.size()},
                      {"s", s},
                      {"words", words},
                      {"count", lyn.size()},
                      {"phi", exact(phi)},
                      {"match", out.pass}};
    return out;
}

Outcome cmd_shuffle(const Alphabet& alphabet, const std::string& f, const std::string& g) {
    const auto pf = WordPoly::parse(alphabet, f);
    const auto pg = WordPoly::parse(alphabet, g);
    Outcome out;
    out.report = Json{{"command", "shuffle"},
                      {"alphabet", alphabet.names()},
                      {"f", pf.render()},
                      {"g", pg.render()},
                      {"shuffle", shuffle(pf, pg).render()}};
    return out;
}

Outcome cmd_indec(const Alphabet& alphabet, std::size_t s, std::uint64_t p, bool snf) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    const auto r = indec_report(alphabet, s, p);
    const bool applies = s < p;
    Outcome out;
    out.report = Json{{"command", "indec"},
                      {"m", r.m},
                      {"s", r.s},
                      {"p", r.p},
                      {"dim", r.dim},
                      {"phi", exact(r.phi)},
                      {"lyndon_count", r.lyndon_count},
                      {"decomposable_rank", r.decomposable_rank},
                      {"match", r.match},
                      {"formula_applies", applies}};
    out.pass = !applies || r.match;
    if (applies && s >= 2) {
        const auto basis = lyndon_basis_check(alphabet, s, p);
        out.report["lyndon_basis"] = Json{{"combined_rank", basis.combined_rank},
                                          {"ambient_dim", basis.ambient_dim},
                                          {"spans", basis.spans},
                                          {"independent", basis.independent}};
        out.pass = out.pass && basis.holds();
    }
    if (snf && s >= 2) {
        const auto gens = decomposable_generators(alphabet, s);
        Json divisors = Json::array();
        for (const auto& d : smith_normal_form(coefficient_matrix(alphabet, gens, s))) divisors.push_back(exact(d));
        out.report["elementary_divisors"] = divisors;
        if (alphabet.size() == 1) out.report["h_gcd"] = exact(h_gcd(s));
    }
    out.report["pass"] = out.pass;
    return out;
}

Outcome cmd_unipotent(std::size_t n, std::size_t s, std::uint64_t p, std::size_t cap) {
    const auto r = verify_filtration_lemma(n, s, p, cap);
    Outcome out;
    out.pass = r.pass();
    out.report = Json{{"command", "unipotent"},
                      {"n", r.n},
                      {"s", r.s},
                      {"p", r.p},
                      {"modulus", r.modulus},
                      {"order", r.order},
                      {"layers", r.layers},
                      {"lemma_a", r.lemma_a},
                      {"lemma_b", r.lemma_b},
                      {"lemma_c", r.lemma_c},
                      {"layers_normal", r.layers_normal},
                      {"quotients_elementary", r.quotients_elementary},
                      {"exponent_formula", r.exponent_formula},
                      {"exponent_measured", r.exponent_measured},
                      {"pass", out.pass}};
    return out;
}

Outcome cmd_exponent(std::size_t s, std::uint64_t q, std::size_t trials, std::uint64_t seed, std::size_t cap) {
    const std::uint64_t order = unitriangular_order(s, q);
    const bool exhaustive = order != 0 && order <= cap;
    const auto r = exhaustive ? verify_exponent_exhaustive(s, q, cap) : verify_exponent(s, q, trials, seed);
    Outcome out;
    out.pass = r.pass;
    out.report = Json{{"command", "exponent"},
                      {"s", r.s},
                      {"q", r.q},
                      {"formula", r.formula},
                      {"witness_order", r.witness_order},
                      {"max_order", r.max_sampled_order},
                      {"elements_checked", r.samples},
                      {"exhaustive", r.exhaustive}};
    if (!r.exhaustive) out.report["seed"] = r.seed;
    out.report["pass"] = r.pass;
    return out;
}

Outcome cmd_magnus(const Alphabet& alphabet, const std::string& sigma, const std::string& w, std::size_t n,
                   std::uint64_t p) {
    const auto g = GroupWord::parse(alphabet, sigma);
    const auto word = alphabet.parse(w);
    const auto rho = rho_w(alphabet, g, word, n, p);
    const auto image = magnus_eval(alphabet, g, rho.modulus(), word.size());

    Json coeffs = Json::object();
    for (std::size_t i = 0; i < word.size(); ++i) {
        for (std::size_t j = i + 1; j <= word.size(); ++j) {
            const Word sub = word.subword(i, j - i);
            coeffs[alphabet.render(sub)] = image.coefficient(sub).value();
        }
    }
    Outcome out;
    out.report = Json{{"command", "magnus"},
                      {"alphabet", alphabet.names()},
                      {"sigma", g.render(alphabet)},
                      {"w", alphabet.render(word)},
                      {"n", n},
                      {"p", p},
                      {"modulus", rho.modulus()},
                      {"magnus_image", image.render()},
                      {"subword_coefficients", coeffs},
                      {"rho", matrix_rows(rho)}};
    return out;
}

}  // namespace shuffle_lab::cli
