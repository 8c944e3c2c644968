#ifndef SQZQFI_METROLOGY_HPP
#define SQZQFI_METROLOGY_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "sqzqfi/dynamics.hpp"
#include "sqzqfi/qubit_state.hpp"

namespace sqzqfi {

class singularity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quantum Fisher information of the imprinted phase, closed form.
///
///   F = [B1^2 (A^2 + B2^2 - 1) - (1 - A^2)(B2^2 - B1^2) cos^2(phi - theta/2)]
///       / [A^2 + B1^2 cos^2(phi - theta/2) + B2^2 sin^2(phi - theta/2) - 1]
///
/// Numerator and denominator are both negative for valid mixed states. The
/// initial pure state makes both vanish; that removable 0/0 is branched to
/// the pure-state value F = 1.
inline double qfi_analytic(double phi, double theta, const SolutionCoefficients& c) {
    if (!std::isfinite(phi) || !std::isfinite(theta))
        throw std::domain_error("qfi_analytic: phi and theta must be finite");
    if (c.is_initial()) return 1.0;

    const double delta = phi - 0.5 * theta;
    const double cos2 = std::cos(delta) * std::cos(delta);
    const double sin2 = std::sin(delta) * std::sin(delta);
    const double B1sq = c.B1 * c.B1;

    // hand-assembled coefficients may lack the accurate complements
    double u1 = c.one_minus_B1sq;
    double u2 = c.one_minus_B2sq;
    if (std::abs(1.0 - B1sq - u1) > 1e-9 || std::abs(1.0 - c.B2 * c.B2 - u2) > 1e-9) {
        u1 = 1.0 - B1sq;
        u2 = 1.0 - c.B2 * c.B2;
    }

    // the verbatim expression regrouped through the complements:
    //   A^2 + B2^2 - 1 = A^2 - u2,  B2^2 - B1^2 = u1 - u2,
    //   A^2 + B1^2 cos^2 + B2^2 sin^2 - 1 = A^2 - (u1 cos^2 + u2 sin^2),
    // which removes every 1 - (near 1) subtraction near the pure point
    const double a_sq = c.A * c.A;
    const double v = (1.0 + c.A) * (1.0 - c.A); // 1 - A^2, A <= 0 so no cancellation
    const double den = a_sq - (u1 * cos2 + u2 * sin2);
    if (std::abs(den) < 1e-14)
        throw singularity_error("qfi_analytic: vanishing denominator away from the initial state "
                                "(vartheta = " + std::to_string(c.vartheta) +
                                ", A = " + std::to_string(c.A) + ", B1 = " + std::to_string(c.B1) +
                                ", B2 = " + std::to_string(c.B2) +
                                ", phi = " + std::to_string(phi) +
                                ", theta = " + std::to_string(theta) + ")");
    const double num = B1sq * (a_sq - u2) - v * (u1 - u2) * cos2;
    return num / den;
}

/// QFI from the eigendecomposition of rho:
///   F = sum_i (d lambda_i)^2 / lambda_i + sum_{i != j} 2 |<i|drho|j>|^2 / (lambda_i + lambda_j).
/// The cross term is the perturbation-theory expression
/// 2 (lambda_i - lambda_j)^2/(lambda_i + lambda_j) |<i|d j>|^2 after the
/// identity (lambda_i - lambda_j)^2 |<i|d j>|^2 = |<i|drho|j>|^2 cancels the
/// gap, so no division by a (near-)degenerate gap ever happens. Terms with
/// lambda_i < 1e-12 (resp. lambda_i + lambda_j < 1e-12) vanish in the
/// operator limit and are dropped.
inline double qfi_eigen(const QubitState& state, const Eigen::Matrix2cd& drho) {
    const double herm = (drho - drho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10)
        throw std::domain_error("qfi_eigen: drho not Hermitian, deviation " + std::to_string(herm));
    if (std::abs(drho.trace()) > 1e-10)
        throw std::domain_error("qfi_eigen: drho not traceless, trace " +
                                std::to_string(std::abs(drho.trace())));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(state.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("qfi_eigen: eigendecomposition failed");
    const Eigen::Vector2d lam = es.eigenvalues();
    const Eigen::Matrix2cd d = es.eigenvectors().adjoint() * drho * es.eigenvectors();

    double f = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (lam(i) < 1e-12) continue;
        const double dl = d(i, i).real();
        f += dl * dl / lam(i);
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == j) continue;
            const double denom = lam(i) + lam(j);
            if (denom < 1e-12) continue;
            f += 2.0 * std::norm(d(i, j)) / denom;
        }
    return f;
}

/// Single-qubit QFI in Bloch coordinates, used as the third, independent
/// route: F = |dr|^2 + (r . dr)^2 / (1 - |r|^2) for mixed states, F = |dr|^2
/// on the pure boundary.
inline double qfi_bloch(const BlochVector& rv, const BlochVector& drv) {
    const double r2 = rv.x * rv.x + rv.y * rv.y + rv.z * rv.z;
    if (r2 > 1.0 + 1e-9)
        throw std::domain_error("qfi_bloch: |r| > 1, |r|^2 = " + std::to_string(r2));
    const double d2 = drv.x * drv.x + drv.y * drv.y + drv.z * drv.z;
    const double rd = rv.x * drv.x + rv.y * drv.y + rv.z * drv.z;
    const double gap = 1.0 - r2;
    if (gap < 1e-10) {
        if (std::abs(rd) < 1e-8) return d2; // pure branch
        if (gap <= 0.0)
            throw std::domain_error("qfi_bloch: pure-boundary state with r.dr = " +
                                    std::to_string(rd) + " has no mixed-state value");
    }
    return d2 + rd * rd / gap;
}

/// d(rho)/d(phi) of the closed-form state. The populations do not depend on
/// phi, so the diagonal is exactly zero.
inline Eigen::Matrix2cd drho_analytic(double phi, double theta, const SolutionCoefficients& c) {
    if (!std::isfinite(phi) || !std::isfinite(theta))
        throw std::domain_error("drho_analytic: phi and theta must be finite");
    const double delta = phi - 0.5 * theta;
    const std::complex<double> off =
        0.5 * std::exp(std::complex<double>(0.0, 0.5 * theta)) *
        std::complex<double>(-std::sin(delta) * c.B1, std::cos(delta) * c.B2);
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 1) = off;
    d(1, 0) = std::conj(off);
    return d;
}

/// Central finite difference for state families without a closed-form
/// derivative (e.g. integrator output). h trades truncation against rounding
/// for roughly 1e-9 accuracy.
template <class StateFn>
Eigen::Matrix2cd drho_central_difference(StateFn&& state_at, double phi, double h = 1e-6) {
    const Eigen::Matrix2cd hi = state_at(phi + h).matrix();
    const Eigen::Matrix2cd lo = state_at(phi - h).matrix();
    return (hi - lo) / (2.0 * h);
}

/// Mapped derivative for the Bloch route, same convention as bloch_vector.
inline BlochVector bloch_derivative(const Eigen::Matrix2cd& drho) {
    return {2.0 * drho(0, 1).real(), 2.0 * drho(0, 1).imag(), 2.0 * drho(0, 0).real()};
}

/// Symmetric logarithmic derivative L solving 2 drho = L rho + rho L.
struct SldMatrix {
    Eigen::Matrix2cd L;
};

inline SldMatrix sld(const QubitState& state, const Eigen::Matrix2cd& drho) {
    const double herm = (drho - drho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10)
        throw std::domain_error("sld: drho not Hermitian, deviation " + std::to_string(herm));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(state.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("sld: eigendecomposition failed");
    const Eigen::Vector2d lam = es.eigenvalues();
    const Eigen::Matrix2cd d = es.eigenvectors().adjoint() * drho * es.eigenvectors();

    Eigen::Matrix2cd l_eig = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double denom = lam(i) + lam(j);
            if (denom < 1e-12) {
                if (std::abs(d(i, j)) > 1e-10)
                    throw std::runtime_error(
                        "sld: drho has support on the kernel of rho; component (" +
                        std::to_string(i) + "," + std::to_string(j) + ") with weight " +
                        std::to_string(std::abs(d(i, j))) + " is unresolvable");
                continue;
            }
            l_eig(i, j) = 2.0 * d(i, j) / denom;
        }
    return {es.eigenvectors() * l_eig * es.eigenvectors().adjoint()};
}

/// QFI of a plain thermal reservoir (no squeezing): e^{-2(1+2n) vartheta}.
inline double qfi_thermal(double vt, double n) {
    if (!std::isfinite(vt) || !std::isfinite(n) || vt < 0.0 || n < 0.0)
        throw std::domain_error("qfi_thermal: vt and n must be finite and >= 0");
    return std::exp(-2.0 * (1.0 + 2.0 * n) * vt);
}

/// Closed-form threshold for the squeezing advantage: F > F_th holds exactly
/// when cos^2(phi - theta/2) exceeds
///   (A^2 + B2^2 - 1)(B1^2 - F_th) / [(B1^2 - B2^2)(A^2 + F_th - 1)],
/// obtained by eliminating the denominators between the two QFI expressions.
/// Undefined (returned as +inf, i.e. never exceeded) when B1 = B2.
inline double advantage_threshold(const SolutionCoefficients& c, double n) {
    const double f_th = qfi_thermal(c.vartheta, n);
    const double A2 = c.A * c.A;
    const double B1sq = c.B1 * c.B1;
    const double B2sq = c.B2 * c.B2;
    const double den = (B1sq - B2sq) * (A2 + f_th - 1.0);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return (A2 + B2sq - 1.0) * (B1sq - f_th) / den;
}

struct AdvantageResult {
    bool advantage = false;
    double margin = 0.0;
};

/// Direct comparison against the thermal baseline. B1 == B2 identifies the
/// unsqueezed family, where the two expressions are algebraically identical;
/// the margin is then exactly zero rather than rounding noise.
inline AdvantageResult squeezing_advantage(double phi, double theta,
                                           const SolutionCoefficients& c, double n) {
    if (c.B1 == c.B2) return {false, 0.0};
    const double margin = qfi_analytic(phi, theta, c) - qfi_thermal(c.vartheta, n);
    return {margin > 0.0, margin};
}

/// Cramer-Rao bound on the phase deviation over nu repetitions: 1/sqrt(nu F).
inline double cramer_rao_bound(double qfi, unsigned long nu) {
    if (!std::isfinite(qfi) || qfi <= 0.0)
        throw std::domain_error("cramer_rao_bound: QFI must be finite and > 0");
    if (nu < 1) throw std::domain_error("cramer_rao_bound: nu must be >= 1");
    return 1.0 / std::sqrt(static_cast<double>(nu) * qfi);
}

/// All QFI routes at one parameter point plus agreement and advantage
/// diagnostics. For this state family every route lies in [0, 1].
struct QfiReport {
    double qfi_analytic = 1.0;
    double qfi_eigen = 1.0;
    double qfi_bloch = 1.0;
    double max_pairwise_disagreement = 0.0;
    double thermal_baseline = 1.0;
    bool advantage = false;
    double advantage_margin = 0.0;
    double cos2_delta = 1.0;        // left side of the closed-form condition
    double advantage_threshold = 0.0; // right side; +inf when undefined
};

inline QfiReport make_qfi_report(double phi, double theta, const SolutionCoefficients& c,
                                 double n) {
    QfiReport rep;
    rep.qfi_analytic = qfi_analytic(phi, theta, c);

    const QubitState rho = closed_form_state(phi, theta, c);
    const Eigen::Matrix2cd drho = drho_analytic(phi, theta, c);
    rep.qfi_eigen = qfi_eigen(rho, drho);
    rep.qfi_bloch = qfi_bloch(bloch_vector(rho), bloch_derivative(drho));

    rep.max_pairwise_disagreement =
        std::max({std::abs(rep.qfi_analytic - rep.qfi_eigen),
                  std::abs(rep.qfi_analytic - rep.qfi_bloch),
                  std::abs(rep.qfi_eigen - rep.qfi_bloch)});
    rep.thermal_baseline = qfi_thermal(c.vartheta, n);

    const auto adv = squeezing_advantage(phi, theta, c, n);
    rep.advantage = adv.advantage;
    rep.advantage_margin = adv.margin;
    const double delta = phi - 0.5 * theta;
    rep.cos2_delta = std::cos(delta) * std::cos(delta);
    rep.advantage_threshold = sqzqfi::advantage_threshold(c, n);

    for (double f : {rep.qfi_analytic, rep.qfi_eigen, rep.qfi_bloch, rep.thermal_baseline})
        if (!(f >= 0.0 && f <= 1.0 + 1e-9))
            throw std::runtime_error("make_qfi_report: QFI outside [0, 1], got " +
                                     std::to_string(f));
    return rep;
}

/// Closed-form split of the QFI into the eigenvalue (population) part and the
/// eigenvector (coherence) part, with m = 2[A^2 + B1^2 cos^2 + B2^2 sin^2]:
///   population = (B1^2 - B2^2)^2 sin^2(2 phi - theta) / [m (2 - m)]
///   coherence  = {2 A^2 [B1^2 sin^2 + B2^2 cos^2] + 2 B1^2 B2^2} / m
/// The gap factor in the population term must enter squared for the split to
/// reproduce the QFI; see qfi_population_term_linear_gap for the diagnostic.
struct QfiSplit {
    double population_term = 0.0;
    double coherence_term = 1.0;

    double total() const { return population_term + coherence_term; }
};

inline QfiSplit qfi_split(double phi, double theta, const SolutionCoefficients& c) {
    const double delta = phi - 0.5 * theta;
    const double cos2 = std::cos(delta) * std::cos(delta);
    const double sin2 = std::sin(delta) * std::sin(delta);
    const double B1sq = c.B1 * c.B1;
    const double B2sq = c.B2 * c.B2;
    const double m = 2.0 * (c.A * c.A + B1sq * cos2 + B2sq * sin2);

    QfiSplit split;
    const double gap = B1sq - B2sq;
    const double s2 = std::sin(2.0 * phi - theta);
    split.population_term = (gap == 0.0 || s2 == 0.0)
                                ? 0.0
                                : gap * gap * s2 * s2 / (m * (2.0 - m));
    split.coherence_term =
        (2.0 * c.A * c.A * (B1sq * sin2 + B2sq * cos2) + 2.0 * B1sq * B2sq) / m;
    return split;
}

/// Population term with the gap factor entering linearly instead of squared.
/// Does not reproduce the QFI; kept as a diagnostic for the split identity.
inline double qfi_population_term_linear_gap(double phi, double theta,
                                             const SolutionCoefficients& c) {
    const double delta = phi - 0.5 * theta;
    const double cos2 = std::cos(delta) * std::cos(delta);
    const double sin2 = std::sin(delta) * std::sin(delta);
    const double B1sq = c.B1 * c.B1;
    const double B2sq = c.B2 * c.B2;
    const double m = 2.0 * (c.A * c.A + B1sq * cos2 + B2sq * sin2);
    const double gap = B1sq - B2sq;
    const double s2 = std::sin(2.0 * phi - theta);
    return (gap == 0.0 || s2 == 0.0) ? 0.0 : gap * s2 * s2 / (m * (2.0 - m));
}

} // namespace sqzqfi

#endif
