#ifndef SQZQFI_VERIFY_HPP
#define SQZQFI_VERIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqzqfi/dynamics.hpp"
#include "sqzqfi/metrology.hpp"
#include "sqzqfi/qubit_state.hpp"
#include "sqzqfi/reservoir.hpp"
#include "sqzqfi/sweep.hpp"

namespace sqzqfi {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double worst_error = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const VerifyCheck& c) { return c.pass; });
    }
    const VerifyCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// Test hook: lets the CLI demonstrate that a corrupted computation trips the
/// suite (exit code 3) without rebuilding.
enum class FaultInjection { none, swap_b1_b2 };

namespace detail {

struct GridPoint {
    double r, kT, theta, phi, lambda;
    EvolutionMode mode;
};

/// The standing verification grid: r x kT x theta x phi x lambda for the
/// Lorentzian-rate mode, plus the lambda-independent markovian points.
inline std::vector<GridPoint> verification_grid() {
    std::vector<GridPoint> grid;
    const double rs[] = {0.0, 0.5, 1.0, 1.5};
    const double kTs[] = {0.0, 0.5, 1.0};
    const double thetas[] = {0.0, 1.0};
    const double phis[] = {0.0, 0.7};
    const double lambdas[] = {0.1, 2.0};
    for (double r : rs)
        for (double kT : kTs)
            for (double theta : thetas)
                for (double phi : phis) {
                    for (double lam : lambdas)
                        grid.push_back({r, kT, theta, phi, lam, EvolutionMode::nonMarkovian});
                    grid.push_back({r, kT, theta, phi, 0.1, EvolutionMode::markovian});
                }
    return grid;
}

inline ReservoirSpec bath_of(const GridPoint& g) {
    ReservoirSpec spec;
    spec.lambda_over_gamma = g.lambda;
    spec.r = g.r;
    spec.theta = g.theta;
    spec.kT_over_omega = g.kT;
    return spec;
}

inline double rel_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    const double diff = std::abs(a - b);
    return diff <= 1e-12 ? 0.0 : diff / std::max(scale, 1e-300);
}

class CheckRunner {
public:
    explicit CheckRunner(VerifyReport& report) : report_(report) {}

    template <class Fn>
    void run(const std::string& name, double tolerance, Fn&& body) {
        VerifyCheck check;
        check.name = name;
        check.tolerance = tolerance;
        const auto start = std::chrono::steady_clock::now();
        try {
            check.worst_error = body(check);
            check.pass = check.worst_error <= tolerance;
        } catch (const std::exception& e) {
            check.pass = false;
            check.worst_error = std::numeric_limits<double>::infinity();
            check.note = e.what();
        }
        check.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                            .count();
        report_.checks.push_back(std::move(check));
    }

private:
    VerifyReport& report_;
};

} // namespace detail

/// Run the whole cross-check battery: closed form vs integrator, the three
/// QFI routes against each other, the algebraic identities, and the
/// qualitative orderings behind the reference figures. grid_density >= 1
/// refines the sampling; the pass set must not depend on it.
inline VerifyReport verify_suite(int grid_density = 1, FaultInjection fault = FaultInjection::none) {
    if (grid_density < 1) throw std::domain_error("verify_suite: grid_density must be >= 1");
    const int density = grid_density;

    VerifyReport report;
    detail::CheckRunner runner(report);
    const auto grid = detail::verification_grid();

    auto coeffs_at = [fault](double vt, double n, double r) {
        SolutionCoefficients c = solution_coefficients(vt, n, r);
        if (fault == FaultInjection::swap_b1_b2) {
            std::swap(c.B1, c.B2);
            std::swap(c.one_minus_B1sq, c.one_minus_B2sq);
        }
        return c;
    };

    // 1. closed form against the RK4 integrator over the standing grid
    runner.run("closed-form-vs-integrator", 1e-6, [&](VerifyCheck& check) {
        const double dt = 1e-3;
        const double t_end = 10.0;
        const long compare_stride = std::max(1L, 100L / density);
        double worst = 0.0;
        for (const auto& g : grid) {
            const auto bath = detail::bath_of(g);
            const double n = bath.mean_photon_number();
            const auto traj =
                evolve_numeric(prepare_output_state(g.phi), bath, g.mode, t_end, dt);
            for (std::size_t i = 0; i < traj.size(); i += static_cast<std::size_t>(compare_stride)) {
                const auto& pt = traj[i];
                const auto c = coeffs_at(vartheta(pt.t, bath, g.mode), n, g.r);
                const auto ref = closed_form_state(g.phi, g.theta, c);
                worst = std::max(worst,
                                 (pt.state.matrix() - ref.matrix()).cwiseAbs().maxCoeff());
                // trajectory invariants ride along
                const double tr = std::abs(pt.state.matrix().trace() - std::complex<double>(1.0));
                if (tr > 1e-9) {
                    check.note = "trace drift " + format_brief(tr);
                    return 1.0;
                }
            }
        }
        return worst;
    });

    // 2. analytic vs eigendecomposition vs Bloch QFI (relative, 1e-12 floor);
    //    every route must stay inside [0, 1] for this family
    runner.run("three-route-agreement", 1e-8, [&](VerifyCheck& check) {
        const auto times = linspace(0.0, 10.0, 6 * density + 1);
        double worst = 0.0;
        for (const auto& g : grid) {
            const auto bath = detail::bath_of(g);
            const double n = bath.mean_photon_number();
            for (double t : times) {
                const auto c = coeffs_at(vartheta(t, bath, g.mode), n, g.r);
                const double fa = qfi_analytic(g.phi, g.theta, c);
                const auto rho = closed_form_state(g.phi, g.theta, c);
                const auto drho = drho_analytic(g.phi, g.theta, c);
                const double fe = qfi_eigen(rho, drho);
                const double fb = qfi_bloch(bloch_vector(rho), bloch_derivative(drho));
                worst = std::max({worst, detail::rel_gap(fa, fe), detail::rel_gap(fa, fb)});
                for (double f : {fa, fe, fb})
                    if (!(f >= 0.0 && f <= 1.0 + 1e-9)) {
                        check.note = "QFI outside [0, 1]: " + format_brief(f);
                        return 1.0;
                    }
            }
        }
        return worst;
    });

    // 3. r = 0 reduces the general QFI to the thermal expression
    runner.run("thermal-reduction", 1e-12, [&](VerifyCheck&) {
        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> u_vt(0.01, 5.0), u_n(0.0, 3.0),
            u_angle(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 1000 * density; ++i) {
            const double vt = u_vt(rng), n = u_n(rng);
            const auto c = coeffs_at(vt, n, 0.0);
            worst = std::max(worst, std::abs(qfi_analytic(u_angle(rng), u_angle(rng), c) -
                                             qfi_thermal(vt, n)));
        }
        return worst;
    });

    // 4. boundary identities F(theta/2) = B2^2, F(theta/2 + pi/2) = B1^2 and
    //    the phase-matching argmax on a dense scan. The reference values come
    //    from the untouched coefficients so an injected fault in the
    //    evaluation path is caught.
    runner.run("boundary-identities-and-phase-matching", 1e-12, [&](VerifyCheck& check) {
        double worst = 0.0;
        const int scan_points = 10000;
        for (double vt : {0.2, 1.0, 3.0})
            for (double n : {0.0, 0.5})
                for (double r : {0.3, 1.0, 1.5})
                    for (double theta : {0.0, 1.0, 2.5}) {
                        const auto c = coeffs_at(vt, n, r);
                        const auto ref = solution_coefficients(vt, n, r);
                        worst = std::max(worst, std::abs(qfi_analytic(0.5 * theta, theta, c) -
                                                         ref.B2 * ref.B2));
                        worst = std::max(
                            worst, std::abs(qfi_analytic(0.5 * theta + 0.5 * M_PI, theta, c) -
                                            ref.B1 * ref.B1));

                        double best_f = -1.0, best_phi = 0.0;
                        for (int k = 0; k < scan_points; ++k) {
                            const double phi = 2.0 * M_PI * k / scan_points;
                            const double f = qfi_analytic(phi, theta, c);
                            if (f > best_f) {
                                best_f = f;
                                best_phi = phi;
                            }
                        }
                        const double step = 2.0 * M_PI / scan_points;
                        double dist = std::fmod(std::abs(best_phi - 0.5 * theta), M_PI);
                        dist = std::min(dist, M_PI - dist);
                        if (dist > step || best_f > ref.B2 * ref.B2 + 1e-12) {
                            check.note = "argmax off the matched phase by " + format_brief(dist);
                            return 1.0;
                        }
                    }
        return worst;
    });

    // 5. periodicity: pi in phi, 2 pi in theta
    runner.run("periodicity", 1e-12, [&](VerifyCheck&) {
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> u_vt(0.05, 4.0), u_n(0.0, 2.0), u_r(0.0, 1.8),
            u_angle(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 300 * density; ++i) {
            const auto c = coeffs_at(u_vt(rng), u_n(rng), u_r(rng));
            const double phi = u_angle(rng), theta = u_angle(rng);
            const double f = qfi_analytic(phi, theta, c);
            worst = std::max(worst, std::abs(qfi_analytic(phi + M_PI, theta, c) - f));
            worst = std::max(worst, std::abs(qfi_analytic(phi, theta + 2.0 * M_PI, c) - f));
        }
        return worst;
    });

    // 6. temperature ordering and markovian-vs-Lorentzian comparison at gamma_t = 2
    runner.run("temperature-ordering", 0.0, [&](VerifyCheck& check) {
        ReservoirSpec bath;
        bath.lambda_over_gamma = 0.1;
        const double kTs[] = {0.0, 0.5, 1.0, 2.0};
        double prev_nm = 2.0, prev_m = 2.0;
        for (double kT : kTs) {
            bath.kT_over_omega = kT;
            const double n = bath.mean_photon_number();
            const double f_nm = qfi_analytic(
                0.3, 0.0, coeffs_at(vartheta(2.0, bath, EvolutionMode::nonMarkovian), n, 0.0));
            const double f_m = qfi_analytic(
                0.3, 0.0, coeffs_at(vartheta(2.0, bath, EvolutionMode::markovian), n, 0.0));
            if (!(f_nm < prev_nm && f_m < prev_m && f_m < f_nm)) {
                check.note = "ordering broken at kT = " + format_brief(kT);
                return 1.0;
            }
            prev_nm = f_nm;
            prev_m = f_m;
        }
        return 0.0;
    });

    // 7. squeezing crossover without matching, uniform gain with matching
    runner.run("squeezing-crossover-and-matching", 0.0, [&](VerifyCheck& check) {
        const double rs[] = {0.0, 0.2, 0.5, 1.0};
        ReservoirSpec bath;
        bath.lambda_over_gamma = 0.1;
        const double vt_nm = vartheta(5.0, bath, EvolutionMode::nonMarkovian);
        const double vt_m = vartheta(0.8, bath, EvolutionMode::markovian);
        for (double vt : {vt_nm, vt_m}) {
            for (double dphi : {-0.05, 0.0, 0.05}) {
                double prev_near = -1.0, prev_far = 2.0;
                for (double r : rs) {
                    const auto c = coeffs_at(vt, 0.0, r);
                    const double f_near = qfi_analytic(dphi, 0.0, c);
                    const double f_far = qfi_analytic(0.5 * M_PI + dphi, 0.0, c);
                    if (!(f_near > prev_near)) {
                        check.note = "no growth in r near the matched phase";
                        return 1.0;
                    }
                    if (!(f_far < prev_far)) {
                        check.note = "no decay in r near the anti-matched phase";
                        return 1.0;
                    }
                    prev_near = f_near;
                    prev_far = f_far;
                }
            }
            // matched case: non-decreasing in r for every phi
            for (int k = 0; k < 25 * density; ++k) {
                const double phi = 2.0 * M_PI * k / (25 * density);
                double prev = -1.0;
                for (double r : rs) {
                    const double theta = 2.0 * (phi - 0.01);
                    const double f = qfi_analytic(phi, theta, coeffs_at(vt, 0.0, r));
                    if (f + 1e-15 < prev) {
                        check.note = "matched QFI decreased in r at phi = " + format_brief(phi);
                        return 1.0;
                    }
                    prev = f;
                }
            }
        }
        return 0.0;
    });

    // 8. matched long-time surface: QFI grows with r, falls with kT
    runner.run("matched-sweep-surface", 0.0, [&](VerifyCheck& check) {
        ReservoirSpec bath;
        bath.lambda_over_gamma = 0.1;
        const double vt = vartheta(10.0, bath, EvolutionMode::nonMarkovian);
        const auto kTs = linspace(0.0, 2.0, 4 * density + 1);
        const auto rs = linspace(0.0, 1.5, 5 * density + 1);
        std::vector<std::vector<double>> f(kTs.size(), std::vector<double>(rs.size()));
        for (std::size_t i = 0; i < kTs.size(); ++i) {
            const double n = mean_photon_number(kTs[i]);
            for (std::size_t j = 0; j < rs.size(); ++j)
                f[i][j] = qfi_analytic(0.01, 0.0, coeffs_at(vt, n, rs[j]));
        }
        for (std::size_t i = 0; i < kTs.size(); ++i)
            for (std::size_t j = 0; j + 1 < rs.size(); ++j)
                if (!(f[i][j] < f[i][j + 1])) {
                    check.note = "not increasing in r at kT = " + format_brief(kTs[i]);
                    return 1.0;
                }
        for (std::size_t j = 0; j < rs.size(); ++j)
            for (std::size_t i = 0; i + 1 < kTs.size(); ++i)
                if (!(f[i][j] > f[i + 1][j])) {
                    check.note = "not decreasing in kT at r = " + format_brief(rs[j]);
                    return 1.0;
                }
        return 0.0;
    });

    // 9. narrower spectral width, slower QFI decay (pointwise in gamma_t)
    runner.run("spectral-width-ordering", 0.0, [&](VerifyCheck& check) {
        const double lams[] = {0.05, 0.1, 0.5, 2.0};
        const double n = mean_photon_number(0.5);
        for (int k = 1; k <= 50 * density; ++k) {
            const double t = 10.0 * k / (50.0 * density);
            double prev = 2.0;
            for (double lam : lams) {
                ReservoirSpec bath;
                bath.lambda_over_gamma = lam;
                const double f = qfi_analytic(
                    0.01, 0.0,
                    coeffs_at(vartheta(t, bath, EvolutionMode::nonMarkovian), n, 0.5));
                if (!(f < prev)) {
                    check.note = "ordering broken at gamma_t = " + format_brief(t) +
                                 ", lambda = " + format_brief(lam);
                    return 1.0;
                }
                prev = f;
            }
        }
        return 0.0;
    });

    // 10. t = 0: exact unit QFI and Cramer-Rao 1/sqrt(nu)
    runner.run("initial-point", 0.0, [&](VerifyCheck& check) {
        ReservoirSpec bath;
        const auto c = coeffs_at(vartheta(0.0, bath, EvolutionMode::nonMarkovian),
                                 mean_photon_number(0.7), 1.2);
        if (qfi_analytic(0.4, 0.9, c) != 1.0) {
            check.note = "QFI at t = 0 is not exactly 1";
            return 1.0;
        }
        for (unsigned long nu : {1ul, 4ul, 100ul, 10000ul})
            if (cramer_rao_bound(1.0, nu) != 1.0 / std::sqrt(static_cast<double>(nu))) {
                check.note = "Cramer-Rao at t = 0 differs from 1/sqrt(nu)";
                return 1.0;
            }
        return 0.0;
    });

    // ---- module invariants beyond the numbered criteria ----

    runner.run("bath-coefficient-bound", 1e-12, [&](VerifyCheck&) {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u_r(0.0, 2.5), u_n(0.0, 4.0),
            u_th(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 500 * density; ++i) {
            const auto bc = bath_coefficients(u_r(rng), u_th(rng), u_n(rng));
            worst = std::max(worst, std::norm(bc.M) - bc.N * (bc.N + 1.0));
        }
        // equality at n = 0
        for (double r : {0.0, 0.7, 1.5}) {
            const auto bc = bath_coefficients(r, 1.0, 0.0);
            worst = std::max(worst, std::abs(std::norm(bc.M) - bc.N * (bc.N + 1.0)));
        }
        return std::max(worst, 0.0);
    });

    runner.run("mean-photon-monotone", 0.0, [&](VerifyCheck& check) {
        double prev = -1.0;
        for (double kT : linspace(0.0, 4.0, 40 * density + 1)) {
            const double n = mean_photon_number(kT);
            if (!(n > prev) && kT > 0.0) {
                check.note = "not strictly increasing at kT = " + format_brief(kT);
                return 1.0;
            }
            prev = n;
        }
        return 0.0;
    });

    runner.run("bloch-roundtrip", 1e-12, [&](VerifyCheck&) {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100 * density; ++i) {
            BlochVector v{u(rng), u(rng), u(rng)};
            const double norm = v.norm();
            if (norm > 1.0) {
                const double shrink = 0.999 / norm;
                v.x *= shrink;
                v.y *= shrink;
                v.z *= shrink;
            }
            const auto w = bloch_vector(state_from_bloch(v));
            worst = std::max({worst, std::abs(w.x - v.x), std::abs(w.y - v.y),
                              std::abs(w.z - v.z)});
        }
        return worst;
    });

    runner.run("vartheta-quadrature", 1e-9, [&](VerifyCheck&) {
        const long panels = 100000;
        double worst = 0.0;
        for (double lam : {0.05, 0.1, 0.5, 2.0})
            for (double t_end : {0.5, 2.0, 10.0}) {
                ReservoirSpec bath;
                bath.lambda_over_gamma = lam;
                const double h = t_end / panels;
                double acc = 0.5 * (alpha(0.0, bath, EvolutionMode::nonMarkovian).real() +
                                    alpha(t_end, bath, EvolutionMode::nonMarkovian).real());
                for (long i = 1; i < panels; ++i)
                    acc += alpha(h * i, bath, EvolutionMode::nonMarkovian).real();
                worst = std::max(worst, std::abs(acc * h - vartheta(t_end, bath,
                                                                    EvolutionMode::nonMarkovian)));
            }
        return worst;
    });

    runner.run("coherence-monotone-and-markovian-dominance", 0.0, [&](VerifyCheck& check) {
        for (const auto& g : grid) {
            const auto bath = detail::bath_of(g);
            const double n = bath.mean_photon_number();
            double prev = 1.0;
            for (double t : linspace(0.0, 10.0, 30 * density + 1)) {
                const double vt_nm = vartheta(t, bath, EvolutionMode::nonMarkovian);
                const double vt_m = vartheta(t, bath, EvolutionMode::markovian);
                if (vt_m + 1e-15 < vt_nm) {
                    check.note = "markovian clock fell behind at t = " + format_brief(t);
                    return 1.0;
                }
                const auto c = coeffs_at(vt_nm, n, g.r);
                const auto cm = coeffs_at(vt_m, n, g.r);
                const double coh =
                    std::abs(closed_form_state(g.phi, g.theta, c).coherence());
                const double coh_m =
                    std::abs(closed_form_state(g.phi, g.theta, cm).coherence());
                if (coh > prev + 1e-12 || coh_m > coh + 1e-12) {
                    check.note = "coherence ordering broken at t = " + format_brief(t);
                    return 1.0;
                }
                prev = coh;
            }
        }
        return 0.0;
    });

    runner.run("qfi-split-identity", 1e-9, [&](VerifyCheck& check) {
        double worst = 0.0, worst_linear = 0.0;
        for (const auto& g : grid) {
            const auto bath = detail::bath_of(g);
            const double n = bath.mean_photon_number();
            for (double t : linspace(0.5, 10.0, 5 * density + 1)) {
                const auto c = coeffs_at(vartheta(t, bath, g.mode), n, g.r);
                const double f = qfi_analytic(g.phi + 0.3, g.theta, c);
                const auto split = qfi_split(g.phi + 0.3, g.theta, c);
                worst = std::max(worst, std::abs(split.total() - f));
                const double linear = qfi_population_term_linear_gap(g.phi + 0.3, g.theta, c) +
                                      split.coherence_term;
                worst_linear = std::max(worst_linear, std::abs(linear - f));
            }
        }
        check.note = "linear-gap variant deviates by up to " + format_brief(worst_linear) +
                     " (squared gap factor is the consistent reading)";
        return worst;
    });

    runner.run("sld-and-derivative-consistency", 1e-8, [&](VerifyCheck&) {
        double worst = 0.0;
        for (double vt : {0.3, 1.5, 5.0})
            for (double n : {0.0, 0.7})
                for (double r : {0.0, 0.8, 1.5})
                    for (double phi : {0.2, 1.3}) {
                        const double theta = 0.6;
                        const auto c = coeffs_at(vt, n, r);
                        const auto rho = closed_form_state(phi, theta, c);
                        const auto drho = drho_analytic(phi, theta, c);
                        // central difference against the analytic derivative
                        const auto fd = drho_central_difference(
                            [&](double p) { return closed_form_state(p, theta, c); }, phi);
                        worst = std::max(worst, (drho - fd).cwiseAbs().maxCoeff());
                        // Tr(rho L^2) must reproduce the eigendecomposition QFI
                        const auto l = sld(rho, drho);
                        const double f_l = (rho.matrix() * l.L * l.L).trace().real();
                        worst = std::max(worst, std::abs(f_l - qfi_eigen(rho, drho)));
                        const Eigen::Matrix2cd residual =
                            2.0 * drho - l.L * rho.matrix() - rho.matrix() * l.L;
                        worst = std::max(worst, residual.cwiseAbs().maxCoeff());
                    }
        return worst;
    });

    runner.run("advantage-consistency", 0.0, [&](VerifyCheck& check) {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> u_vt(0.05, 4.0), u_n(0.0, 2.0), u_r(0.05, 1.8),
            u_angle(0.0, 2.0 * M_PI);
        for (int i = 0; i < 400 * density; ++i) {
            const double vt = u_vt(rng), n = u_n(rng), r = u_r(rng);
            const auto c = coeffs_at(vt, n, r);
            const double phi = u_angle(rng), theta = u_angle(rng);
            const auto adv = squeezing_advantage(phi, theta, c, n);
            if (std::abs(adv.margin) < 1e-13) continue; // too close to call either way
            const double delta = phi - 0.5 * theta;
            const bool by_threshold =
                std::cos(delta) * std::cos(delta) > advantage_threshold(c, n);
            if (by_threshold != adv.advantage) {
                check.note = "threshold and direct comparison disagree (margin " +
                             format_brief(adv.margin) + ")";
                return 1.0;
            }
        }
        return 0.0;
    });

    runner.run("sweep-determinism", 0.0, [&](VerifyCheck& check) {
        auto spec = figure_preset("fig4c", 21);
        spec.outputs = {SweepOutput::qfi_analytic, SweepOutput::qfi_thermal,
                        SweepOutput::advantage};
        const auto a = run_sweep(spec, 1);
        const auto b = run_sweep(spec, 4);
        std::ostringstream sa, sb;
        a.write_csv(sa);
        b.write_csv(sb);
        if (sa.str() != sb.str()) {
            check.note = "serial and 4-thread sweeps differ";
            return 1.0;
        }
        return 0.0;
    });

    return report;
}

inline void print_verify_report(const VerifyReport& report, std::ostream& os) {
    for (const auto& c : report.checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        for (std::size_t i = c.name.size(); i < 44; ++i) os << ' ';
        os << " worst " << format_brief(c.worst_error) << " (tol " << format_brief(c.tolerance)
           << ", " << format_brief(c.seconds) << " s)";
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << '\n';
    }
    std::size_t failures = 0;
    for (const auto& c : report.checks)
        if (!c.pass) ++failures;
    os << (report.all_pass() ? "overall: PASS" : "overall: FAIL") << " (" << report.checks.size()
       << " checks, " << failures << " failures)\n";
}

} // namespace sqzqfi

#endif
