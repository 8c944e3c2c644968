#ifndef SQZQFI_RESERVOIR_HPP
#define SQZQFI_RESERVOIR_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqzqfi {

/// Mean photon number n of a thermal mode at temperature kT/omega0.
/// The T = 0 value is the continuous limit n = 0 (never evaluates e^inf).
inline double mean_photon_number(double kT_over_omega) {
    if (!std::isfinite(kT_over_omega) || kT_over_omega < 0.0)
        throw std::domain_error("mean_photon_number: kT/omega must be finite and >= 0, got " +
                                std::to_string(kT_over_omega));
    if (kT_over_omega == 0.0) return 0.0;
    // n = 1/(e^{beta*omega} - 1), beta*omega = 1/(kT/omega)
    const double x = std::expm1(1.0 / kT_over_omega);
    return std::isinf(x) ? 0.0 : 1.0 / x;
}

/// Bath and coupling parameters. gamma sets the time unit: with the default
/// gamma = 1 every time argument is gamma*t and every width is lambda/gamma.
struct ReservoirSpec {
    double gamma = 1.0;             // system decay rate (time unit)
    double lambda_over_gamma = 1.0; // spectral width of the Lorentzian, > 0
    double r = 0.0;                 // squeezing magnitude, >= 0
    double theta = 0.0;             // squeezing reference phase [rad]
    double kT_over_omega = 0.0;     // temperature in units of omega0 (k_B absorbed)

    double lambda() const { return lambda_over_gamma * gamma; }
    double mean_photon_number() const { return sqzqfi::mean_photon_number(kT_over_omega); }

    void validate() const {
        if (!(std::isfinite(gamma) && gamma > 0.0))
            throw std::domain_error("ReservoirSpec: gamma must be finite and > 0");
        if (!(std::isfinite(lambda_over_gamma) && lambda_over_gamma > 0.0))
            throw std::domain_error("ReservoirSpec: lambda/gamma must be finite and > 0");
        if (!(std::isfinite(r) && r >= 0.0))
            throw std::domain_error("ReservoirSpec: r must be finite and >= 0");
        if (!std::isfinite(theta))
            throw std::domain_error("ReservoirSpec: theta must be finite");
        if (!(std::isfinite(kT_over_omega) && kT_over_omega >= 0.0))
            throw std::domain_error("ReservoirSpec: kT/omega must be finite and >= 0");
    }
};

/// Effective occupation N and two-photon correlation M of the squeezed
/// thermal bath. |M|^2 <= N(N+1), with equality exactly at n = 0.
struct BathCoefficients {
    double N = 0.0;
    std::complex<double> M{0.0, 0.0};
};

inline BathCoefficients bath_coefficients(double r, double theta, double n) {
    if (!std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(n))
        throw std::domain_error("bath_coefficients: inputs must be finite");
    if (r < 0.0 || n < 0.0)
        throw std::domain_error("bath_coefficients: r and n must be >= 0");
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    BathCoefficients bc;
    bc.N = n * (ch * ch + sh * sh) + sh * sh;
    bc.M = -ch * sh * (2.0 * n + 1.0) * std::exp(std::complex<double>(0.0, theta));
    return bc;
}

/// Estimation scenario: the imprinted phase and the repetition count used by
/// the Cramer-Rao bound.
struct PhaseScenario {
    double phi = 0.0;
    unsigned long nu = 1;

    void validate() const {
        if (!std::isfinite(phi)) throw std::domain_error("PhaseScenario: phi must be finite");
        if (nu < 1) throw std::domain_error("PhaseScenario: nu must be >= 1");
    }
};

} // namespace sqzqfi

#endif
