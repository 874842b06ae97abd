#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/report.hpp"
#include "cli/verify.hpp"

using namespace shuffle_lab;
using namespace shuffle_lab::cli;

namespace {

int emit(const Outcome& outcome, bool json) {
    if (json) {
        std::cout << outcome.report.dump(2) << '\n';
    } else {
        write_text(std::cout, outcome.report);
    }
    return outcome.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shuffle algebras, unitriangular groups and Magnus expansions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "shuffle-lab 0.1.0");

    std::string alphabet = "2";
    std::size_t degree = 1;
    std::size_t n = 2;
    std::uint64_t prime = 2;
    std::uint64_t modulus = 2;
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = 1000;
    std::size_t cap = kDefaultCap;
    bool json = false;
    app.add_flag("--json", json, "JSON output");

    auto* lyndon = app.add_subcommand("lyndon", "Lyndon words of length s and the necklace count");
    lyndon->add_option("--alphabet", alphabet, "letter count (\"3\") or letters (\"xyz\")")->capture_default_str();
    lyndon->add_option("-s,--degree", degree, "word length")->required();

    std::string f, g;
    auto* shuf = app.add_subcommand("shuffle", "Shuffle product of two polynomials");
    shuf->add_option("--alphabet", alphabet)->capture_default_str();
    shuf->add_option("f", f, "polynomial, e.g. \"2*aab + aba\"")->required();
    shuf->add_option("g", g, "polynomial (empty string is 1)")->required();

    bool snf = false;
    auto* indec = app.add_subcommand("indec", "Indecomposables of the shuffle algebra mod p in degree s");
    indec->add_option("--alphabet", alphabet)->capture_default_str();
    indec->add_option("-s,--degree", degree)->required();
    indec->add_option("-p,--prime", prime)->required();
    indec->add_flag("--snf", snf, "elementary divisors of the decomposables over Z");

    auto* uni = app.add_subcommand("unipotent", "Lower p-central filtration of U_s(Z/p^(n-s+1))");
    uni->add_option("--n", n)->required();
    uni->add_option("-s,--degree", degree)->required();
    uni->add_option("-p,--prime", prime)->required();
    uni->add_option("--cap", cap, "largest group order to enumerate")->capture_default_str();

    auto* expo = app.add_subcommand("exponent", "Exponent of U_s(Z/q)");
    expo->add_option("-s,--degree", degree)->required();
    expo->add_option("-q,--modulus", modulus)->required();
    expo->add_option("--trials", trials, "samples when the group exceeds the cap")->capture_default_str();
    expo->add_option("--seed", seed)->capture_default_str();
    expo->add_option("--cap", cap)->capture_default_str();

    std::string sigma, word;
    auto* mag = app.add_subcommand("magnus", "Magnus coefficients and the matrix rho_w(sigma)");
    mag->add_option("--alphabet", alphabet)->capture_default_str();
    mag->add_option("sigma", sigma, "group word, uppercase = inverse, e.g. \"abA\"")->required();
    mag->add_option("w", word, "word of length s <= n")->required();
    mag->add_option("--n", n)->required();
    mag->add_option("-p,--prime", prime)->required();

    std::string profile = "quick";
    std::optional<std::size_t> verify_cap, verify_trials;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    verify->add_option("--seed", seed)->capture_default_str();
    verify->add_option("--cap", verify_cap, "largest group order to enumerate");
    verify->add_option("--trials", verify_trials, "random trials per configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInvalid;
    }

    try {
        if (*lyndon) return emit(cmd_lyndon(parse_alphabet(alphabet), degree), json);
        if (*shuf) return emit(cmd_shuffle(parse_alphabet(alphabet), f, g), json);
        if (*indec) return emit(cmd_indec(parse_alphabet(alphabet), degree, prime, snf), json);
        if (*uni) return emit(cmd_unipotent(n, degree, prime, cap), json);
        if (*expo) return emit(cmd_exponent(degree, modulus, trials, seed, cap), json);
        if (*mag) return emit(cmd_magnus(parse_alphabet(alphabet), sigma, word, n, prime), json);
        if (*verify) return emit(cmd_verify(VerifyOptions{profile, seed, verify_cap, verify_trials}), json);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --cap)\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
