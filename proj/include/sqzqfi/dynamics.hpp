#ifndef SQZQFI_DYNAMICS_HPP
#define SQZQFI_DYNAMICS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqzqfi/qubit_state.hpp"
#include "sqzqfi/reservoir.hpp"

namespace sqzqfi {

enum class EvolutionMode { nonMarkovian, markovian };

inline const char* to_string(EvolutionMode mode) {
    return mode == EvolutionMode::markovian ? "markovian" : "nonMarkovian";
}

class integration_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time-dependent decay rate of the master equation: (gamma/2)(1 - e^{-lambda t})
/// for the Lorentzian bath, the constant gamma in the markovian convention.
/// Returned as complex so the generator can keep its alpha and alpha* terms
/// distinct even though the Lorentzian rate is real.
inline std::complex<double> alpha(double t, const ReservoirSpec& spec, EvolutionMode mode) {
    if (!(std::isfinite(t) && t >= 0.0))
        throw std::domain_error("alpha: t must be finite and >= 0");
    if (mode == EvolutionMode::markovian) return {spec.gamma, 0.0};
    return {0.5 * spec.gamma * (-std::expm1(-spec.lambda() * t)), 0.0};
}

/// Accumulated decay clock vartheta = integral_0^t alpha(tau) dtau:
/// (gamma/2)(t + (e^{-lambda t} - 1)/lambda), or gamma*t in markovian mode.
inline double vartheta(double t, const ReservoirSpec& spec, EvolutionMode mode) {
    if (!(std::isfinite(t) && t >= 0.0))
        throw std::domain_error("vartheta: t must be finite and >= 0");
    if (mode == EvolutionMode::markovian) return spec.gamma * t;
    const double lam = spec.lambda();
    return 0.5 * spec.gamma * (t + std::expm1(-lam * t) / lam);
}

/// The closed-form solution parameters. vartheta = 0 gives (A,B1,B2) = (0,1,1)
/// exactly; A decreases monotonically toward -1/((1+2n) cosh 2r). The
/// complements 1 - B1^2 and 1 - B2^2 are carried at full relative accuracy
/// (via expm1) so consumers stay conditioned near the pure point, where the
/// B's themselves round to 1.
struct SolutionCoefficients {
    double vartheta = 0.0;
    double A = 0.0;
    double B1 = 1.0;
    double B2 = 1.0;
    double one_minus_B1sq = 0.0;
    double one_minus_B2sq = 0.0;

    bool is_initial() const { return vartheta == 0.0 && A == 0.0 && B1 == 1.0 && B2 == 1.0; }
};

inline SolutionCoefficients solution_coefficients(double vt, double n, double r) {
    if (!std::isfinite(vt) || !std::isfinite(n) || !std::isfinite(r))
        throw std::domain_error("solution_coefficients: inputs must be finite");
    if (vt < 0.0 || n < 0.0 || r < 0.0)
        throw std::domain_error("solution_coefficients: vt, n, r must be >= 0");
    const double cosh2r = std::cosh(2.0 * r);
    const double occ = 1.0 + 2.0 * n;
    SolutionCoefficients c;
    c.vartheta = vt;
    c.A = std::expm1(-2.0 * occ * vt * cosh2r) / (occ * cosh2r);
    c.B1 = std::exp(-std::exp(2.0 * r) * occ * vt);
    c.B2 = std::exp(-std::exp(-2.0 * r) * occ * vt);
    c.one_minus_B1sq = -std::expm1(-2.0 * std::exp(2.0 * r) * occ * vt);
    c.one_minus_B2sq = -std::expm1(-2.0 * std::exp(-2.0 * r) * occ * vt);
    return c;
}

/// Density matrix of the evolved output state. The excited population relaxes
/// through A while the coherence splits into the B1 (cos) and B2 (sin)
/// quadratures relative to the squeezing phase.
inline QubitState closed_form_state(double phi, double theta, const SolutionCoefficients& c) {
    const double delta = phi - 0.5 * theta;
    const std::complex<double> off =
        0.5 * std::exp(std::complex<double>(0.0, 0.5 * theta)) *
        std::complex<double>(std::cos(delta) * c.B1, std::sin(delta) * c.B2);
    Eigen::Matrix2cd rho;
    rho(0, 0) = 0.5 * (1.0 + c.A);
    rho(1, 1) = 1.0 - rho(0, 0).real();
    rho(0, 1) = off;
    rho(1, 0) = std::conj(off);
    return QubitState(rho);
}

namespace detail {

inline const Eigen::Matrix2cd& sigma_plus() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 0, 0).finished();
    return m;
}
inline const Eigen::Matrix2cd& sigma_minus() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 0, 1, 0).finished();
    return m;
}

/// Right-hand side of the interaction-picture master equation, written as the
/// literal five-term operator sum so the closed form stays an independent check.
inline Eigen::Matrix2cd generator_rhs(const Eigen::Matrix2cd& rho, std::complex<double> a,
                                      const BathCoefficients& bc) {
    const auto& sp = sigma_plus();
    const auto& sm = sigma_minus();
    const std::complex<double> ac = std::conj(a);
    const double N = bc.N;
    const std::complex<double> M = bc.M;

    Eigen::Matrix2cd rhs = -(N + 1.0) * a * (sp * sm * rho - sm * rho * sp);
    rhs += -(N + 1.0) * ac * (rho * sp * sm - sm * rho * sp);
    rhs += -N * a * (rho * sm * sp - sp * rho * sm);
    rhs += -N * ac * (sm * sp * rho - sp * rho * sm);
    rhs += 2.0 * (ac * M * (sp * rho * sp) + a * std::conj(M) * (sm * rho * sm));
    return rhs;
}

} // namespace detail

/// d(rho)/dt at time t. The markovian variant is the same operator sum with
/// the constant rate. The result is traceless and Hermitian.
inline Eigen::Matrix2cd master_generator(const QubitState& state, double t,
                                         const ReservoirSpec& spec, EvolutionMode mode) {
    spec.validate();
    const auto bc = bath_coefficients(spec.r, spec.theta, spec.mean_photon_number());
    return detail::generator_rhs(state.matrix(), alpha(t, spec, mode), bc);
}

struct TrajectoryPoint {
    double t = 0.0;
    QubitState state;
};

/// Ordered samples (t, rho(t)) with strictly increasing t.
using Trajectory = std::vector<TrajectoryPoint>;

/// Classical fixed-step RK4 over the master-equation generator. Every stored
/// state is checked (not renormalized) against a 1e-7 invariant budget;
/// violations abort with advice to shrink dt.
inline Trajectory evolve_numeric(const QubitState& initial, const ReservoirSpec& spec,
                                 EvolutionMode mode, double t_end, double dt) {
    spec.validate();
    if (!(std::isfinite(t_end) && t_end >= 0.0))
        throw std::domain_error("evolve_numeric: t_end must be finite and >= 0");

    const StateTolerance integration_tol{1e-7, 1e-7, 1e-7};
    Trajectory traj;
    traj.push_back({0.0, initial});
    if (t_end == 0.0) return traj;

    if (!(std::isfinite(dt) && dt > 0.0 && dt <= t_end))
        throw std::domain_error("evolve_numeric: dt must satisfy 0 < dt <= t_end");

    const auto bc = bath_coefficients(spec.r, spec.theta, spec.mean_photon_number());
    const auto rate = [&](double t) { return alpha(t, spec, mode); };

    const auto n_full = static_cast<long long>(std::floor(t_end / dt + 1e-9));
    const double remainder = t_end - static_cast<double>(n_full) * dt;
    const long long n_steps = n_full + (remainder > 1e-12 * dt ? 1 : 0);

    traj.reserve(static_cast<std::size_t>(n_steps) + 1);
    Eigen::Matrix2cd rho = initial.matrix();
    for (long long i = 0; i < n_steps; ++i) {
        const double t0 = static_cast<double>(i) * dt;
        const double h = (i < n_full) ? dt : remainder;
        const double t1 = (i + 1 == n_steps) ? t_end : t0 + dt;

        const Eigen::Matrix2cd k1 = detail::generator_rhs(rho, rate(t0), bc);
        const Eigen::Matrix2cd k2 = detail::generator_rhs(rho + 0.5 * h * k1, rate(t0 + 0.5 * h), bc);
        const Eigen::Matrix2cd k3 = detail::generator_rhs(rho + 0.5 * h * k2, rate(t0 + 0.5 * h), bc);
        const Eigen::Matrix2cd k4 = detail::generator_rhs(rho + h * k3, rate(t0 + h), bc);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        try {
            traj.push_back({t1, QubitState(rho, integration_tol)});
        } catch (const std::domain_error& e) {
            throw integration_error(std::string("evolve_numeric: state invariant violated at t = ") +
                                    std::to_string(t1) + " (" + e.what() +
                                    "); retry with a smaller dt");
        }
    }
    return traj;
}

} // namespace sqzqfi

#endif
