#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "sqzqfi/qubit_state.hpp"
#include "sqzqfi/reservoir.hpp"

using namespace sqzqfi;
using Catch::Matchers::WithinAbs;

TEST_CASE("mean photon number") {
    SECTION("zero temperature limit") {
        REQUIRE(mean_photon_number(0.0) == 0.0);
    }
    SECTION("kT = 1/ln 2 gives n = 1") {
        REQUIRE_THAT(mean_photon_number(1.0 / std::log(2.0)), WithinAbs(1.0, 1e-14));
    }
    SECTION("kT = 0.5 gives 1/(e^2 - 1)") {
        // frozen from an independent high-precision evaluation of 1/(e^2 - 1)
        REQUIRE_THAT(mean_photon_number(0.5), WithinAbs(0.15651764274966565, 1e-15));
        REQUIRE_THAT(mean_photon_number(0.5), WithinAbs(1.0 / (std::exp(2.0) - 1.0), 1e-15));
    }
    SECTION("strictly increasing in kT") {
        double prev = 0.0;
        for (double kT = 0.05; kT < 5.0; kT += 0.05) {
            const double n = mean_photon_number(kT);
            REQUIRE(n > prev);
            prev = n;
        }
    }
    SECTION("rejects bad input") {
        REQUIRE_THROWS_AS(mean_photon_number(-0.1), std::domain_error);
        REQUIRE_THROWS_AS(mean_photon_number(std::nan("")), std::domain_error);
        REQUIRE_THROWS_AS(mean_photon_number(std::numeric_limits<double>::infinity()),
                          std::domain_error);
    }
}

TEST_CASE("bath coefficients") {
    SECTION("no squeezing: N = n, M = 0") {
        for (double theta : {0.0, 1.3, 5.0}) {
            const auto bc = bath_coefficients(0.0, theta, 0.8);
            REQUIRE(bc.N == 0.8);
            REQUIRE(std::abs(bc.M) == 0.0);
        }
    }
    SECTION("squeezed vacuum saturates |M|^2 = N(N+1)") {
        for (double r : {0.2, 1.0, 2.0}) {
            const auto bc = bath_coefficients(r, 0.7, 0.0);
            REQUIRE_THAT(bc.N, WithinAbs(std::sinh(r) * std::sinh(r), 1e-13));
            REQUIRE_THAT(std::norm(bc.M), WithinAbs(bc.N * (bc.N + 1.0), 1e-9));
        }
    }
    SECTION("values at r = 1.5, theta = 0, kT = 0.5") {
        // frozen from an independent evaluation of N and M at these parameters
        const auto bc = bath_coefficients(1.5, 0.0, mean_photon_number(0.5));
        REQUIRE_THAT(bc.N, WithinAbs(6.109597721468412, 1e-12));
        REQUIRE_THAT(bc.M.real(), WithinAbs(-6.5769116327041255, 1e-12));
        REQUIRE_THAT(bc.M.imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("|M|^2 <= N(N+1) on a random grid") {
        std::mt19937 rng(321);
        std::uniform_real_distribution<double> u_r(0.0, 2.5), u_n(0.0, 4.0),
            u_th(0.0, 2.0 * M_PI);
        for (int i = 0; i < 500; ++i) {
            const auto bc = bath_coefficients(u_r(rng), u_th(rng), u_n(rng));
            REQUIRE(std::norm(bc.M) <= bc.N * (bc.N + 1.0) + 1e-12);
        }
    }
    SECTION("rejects negative inputs") {
        REQUIRE_THROWS_AS(bath_coefficients(-0.1, 0.0, 0.0), std::domain_error);
        REQUIRE_THROWS_AS(bath_coefficients(0.1, 0.0, -1.0), std::domain_error);
    }
}

TEST_CASE("prepared output state") {
    SECTION("phi = 0 is the equal superposition") {
        const auto s = prepare_output_state(0.0);
        REQUIRE_THAT(s.matrix()(0, 0).real(), WithinAbs(0.5, 1e-15));
        REQUIRE_THAT(s.matrix()(0, 1).real(), WithinAbs(0.5, 1e-15));
        REQUIRE_THAT(s.matrix()(0, 1).imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("phi = pi flips the coherence sign") {
        const auto s = prepare_output_state(M_PI);
        REQUIRE_THAT(s.matrix()(0, 1).real(), WithinAbs(-0.5, 1e-15));
    }
    SECTION("pure for any phi") {
        for (double phi : {0.0, 0.3, 2.0, 4.4}) {
            const auto s = prepare_output_state(phi);
            REQUIRE_THAT(s.purity(), WithinAbs(1.0, 1e-12));
            const auto [lo, hi] = QubitState::eigenvalues(s.matrix());
            REQUIRE_THAT(lo, WithinAbs(0.0, 1e-12));
            REQUIRE_THAT(hi, WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("Bloch map") {
    SECTION("reference points") {
        const auto mixed = state_from_bloch({0.0, 0.0, 0.0});
        const auto v0 = bloch_vector(mixed);
        REQUIRE(v0.norm() == 0.0);

        const auto vx = bloch_vector(prepare_output_state(0.0));
        REQUIRE_THAT(vx.x, WithinAbs(1.0, 1e-15));
        REQUIRE_THAT(vx.y, WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(vx.z, WithinAbs(0.0, 1e-15));

        Eigen::Matrix2cd excited = Eigen::Matrix2cd::Zero();
        excited(0, 0) = 1.0;
        const auto vz = bloch_vector(QubitState(excited));
        REQUIRE_THAT(vz.z, WithinAbs(1.0, 1e-15));
        REQUIRE_THAT(vz.x, WithinAbs(0.0, 1e-15));
    }
    SECTION("round trip on random states") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            BlochVector v{u(rng), u(rng), u(rng)};
            if (const double norm = v.norm(); norm > 1.0) {
                v.x /= norm * 1.001;
                v.y /= norm * 1.001;
                v.z /= norm * 1.001;
            }
            const auto state = state_from_bloch(v);
            const auto w = bloch_vector(state);
            REQUIRE_THAT(w.x, WithinAbs(v.x, 1e-12));
            REQUIRE_THAT(w.y, WithinAbs(v.y, 1e-12));
            REQUIRE_THAT(w.z, WithinAbs(v.z, 1e-12));
            const auto again = state_from_bloch(w);
            REQUIRE((again.matrix() - state.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    SECTION("rejects vectors outside the ball") {
        REQUIRE_THROWS_AS(state_from_bloch({1.2, 0.0, 0.0}), std::domain_error);
    }
}

TEST_CASE("reservoir and state validation") {
    SECTION("reservoir parameter invariants") {
        ReservoirSpec spec;
        spec.lambda_over_gamma = 0.0;
        REQUIRE_THROWS_AS(spec.validate(), std::domain_error);
        spec.lambda_over_gamma = 0.1;
        spec.r = -1.0;
        REQUIRE_THROWS_AS(spec.validate(), std::domain_error);
        spec.r = 0.0;
        spec.kT_over_omega = -0.5;
        REQUIRE_THROWS_AS(spec.validate(), std::domain_error);
        spec.kT_over_omega = 0.0;
        REQUIRE_NOTHROW(spec.validate());
        REQUIRE(spec.mean_photon_number() == 0.0);
    }
    SECTION("density matrix invariants enforced") {
        Eigen::Matrix2cd bad;
        bad << 0.7, 0.1, 0.3, 0.3; // not Hermitian
        REQUIRE_THROWS_AS(QubitState(bad), std::domain_error);

        bad << 0.7, 0.0, 0.0, 0.7; // trace 1.4
        REQUIRE_THROWS_AS(QubitState(bad), std::domain_error);

        bad << 1.2, 0.0, 0.0, -0.2; // negative eigenvalue
        REQUIRE_THROWS_AS(QubitState(bad), std::domain_error);
    }
    SECTION("phase scenario") {
        PhaseScenario ok{0.3, 10};
        REQUIRE_NOTHROW(ok.validate());
        PhaseScenario bad_nu{0.3, 0};
        REQUIRE_THROWS_AS(bad_nu.validate(), std::domain_error);
    }
}
