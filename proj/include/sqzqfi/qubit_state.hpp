#ifndef SQZQFI_QUBIT_STATE_HPP
#define SQZQFI_QUBIT_STATE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sqzqfi {

/// Tolerances a density matrix is held to. The defaults are the strict ones
/// for analytically constructed states; the integrator checks against a
/// looser budget (see evolve_numeric).
struct StateTolerance {
    double hermiticity = 1e-12;
    double trace = 1e-12;
    double eigenvalue_slack = 1e-9;
};

/// A qubit density matrix in the basis (|e>, |g>), row/column 0 = |e>.
/// Construction validates Hermiticity, unit trace and positivity (with
/// numerical slack); the matrix is immutable afterwards.
class QubitState {
public:
    explicit QubitState(const Eigen::Matrix2cd& rho, const StateTolerance& tol = {}) : rho_(rho) {
        validate(rho_, tol);
    }

    const Eigen::Matrix2cd& matrix() const { return rho_; }

    double excited_population() const { return rho_(0, 0).real(); }
    std::complex<double> coherence() const { return rho_(0, 1); } // rho[e,g]
    double purity() const { return (rho_ * rho_).trace().real(); }

    /// Eigenvalues of a 2x2 Hermitian matrix, closed form, ascending.
    static std::pair<double, double> eigenvalues(const Eigen::Matrix2cd& m) {
        const double a = m(0, 0).real();
        const double b = m(1, 1).real();
        const double h = 0.5 * (a - b);
        const double disc = std::sqrt(h * h + std::norm(m(0, 1)));
        const double mid = 0.5 * (a + b);
        return {mid - disc, mid + disc};
    }

    static void validate(const Eigen::Matrix2cd& rho, const StateTolerance& tol = {}) {
        const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (herm > tol.hermiticity)
            throw std::domain_error("QubitState: not Hermitian, deviation " + std::to_string(herm));
        const double tr_err = std::abs(rho.trace() - std::complex<double>(1.0));
        if (tr_err > tol.trace)
            throw std::domain_error("QubitState: trace != 1, deviation " + std::to_string(tr_err));
        const auto [lo, hi] = eigenvalues(rho);
        if (lo < -tol.eigenvalue_slack || hi > 1.0 + tol.eigenvalue_slack)
            throw std::domain_error("QubitState: eigenvalues outside [0,1], got [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }

private:
    Eigen::Matrix2cd rho_;
};

/// Bloch parameterization. Convention: z = 2*rho[e,e] - 1 and
/// x + i y = 2*rho[e,g], so |e><e| maps to (0,0,1) and the equal
/// superposition with phase phi to (cos phi, sin phi, 0).
struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const QubitState& state) {
    const auto& rho = state.matrix();
    return {2.0 * rho(0, 1).real(), 2.0 * rho(0, 1).imag(), 2.0 * rho(0, 0).real() - 1.0};
}

inline QubitState state_from_bloch(const BlochVector& v) {
    if (v.norm() > 1.0 + 1e-9)
        throw std::domain_error("state_from_bloch: |r| > 1, got " + std::to_string(v.norm()));
    Eigen::Matrix2cd rho;
    rho(0, 0) = 0.5 * (1.0 + v.z);
    rho(1, 1) = 0.5 * (1.0 - v.z);
    rho(0, 1) = 0.5 * std::complex<double>(v.x, v.y);
    rho(1, 0) = std::conj(rho(0, 1));
    return QubitState(rho);
}

/// State after the phase gate acts on the equal superposition (|e>+|g>)/sqrt2:
/// a pure state with rho[e,g] = e^{i phi}/2.
inline QubitState prepare_output_state(double phi) {
    if (!std::isfinite(phi)) throw std::domain_error("prepare_output_state: phi must be finite");
    Eigen::Matrix2cd rho;
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = 0.5 * std::exp(std::complex<double>(0.0, phi));
    rho(1, 0) = std::conj(rho(0, 1));
    return QubitState(rho);
}

} // namespace sqzqfi

#endif
