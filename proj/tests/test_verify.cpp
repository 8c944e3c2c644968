#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>

#include "sqzqfi/verify.hpp"

using namespace sqzqfi;

TEST_CASE("verification suite") {
    SECTION("coarse run passes everything") {
        const auto report = verify_suite(1);
        REQUIRE(report.all_pass());
        REQUIRE(report.checks.size() >= 18);
    }
    SECTION("refined grid gives the identical pass set") {
        const auto coarse = verify_suite(1);
        const auto fine = verify_suite(3);
        REQUIRE(coarse.checks.size() == fine.checks.size());
        std::map<std::string, bool> coarse_pass;
        for (const auto& c : coarse.checks) coarse_pass[c.name] = c.pass;
        for (const auto& c : fine.checks) {
            INFO(c.name);
            REQUIRE(coarse_pass.at(c.name) == c.pass);
        }
        REQUIRE(fine.all_pass());
    }
    SECTION("swapped decay factors trip the boundary identities") {
        const auto report = verify_suite(1, FaultInjection::swap_b1_b2);
        REQUIRE_FALSE(report.all_pass());
        const auto* boundary = report.find("boundary-identities-and-phase-matching");
        REQUIRE(boundary != nullptr);
        REQUIRE_FALSE(boundary->pass);
    }
    SECTION("density must be positive") {
        REQUIRE_THROWS_AS(verify_suite(0), std::domain_error);
    }
}
